#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "rsz/bitkit.hpp"
#include "rsz/workload.hpp"

using rsz::lsb;
using rsz::msb;
using rsz::PackedCounters;
using u64 = std::uint64_t;

namespace {

// Reference implementations by linear scan.
unsigned msb_linear(u64 x) {
    unsigned r = 0;
    while (x >>= 1) ++r;
    return r;
}
unsigned lsb_linear(u64 x) {
    unsigned r = 0;
    while (!(x & 1)) {
        x >>= 1;
        ++r;
    }
    return r;
}

}  // namespace

TEST_CASE("msb and lsb match a linear scan") {
    for (u64 x = 1; x <= 5000; ++x) {
        CHECK(msb(x) == msb_linear(x));
        CHECK(lsb(x) == lsb_linear(x));
    }
    rsz::SplitMix64 rng(123);
    for (int i = 0; i < 20000; ++i) {
        const u64 x = rng.next() | 1;  // nonzero
        CHECK(msb(x) == msb_linear(x));
        CHECK(lsb(x) == lsb_linear(x));
    }
    for (unsigned s = 0; s < 64; ++s) {
        CHECK(msb(u64{1} << s) == s);
        CHECK(lsb(u64{1} << s) == s);
    }
    CHECK(msb(~u64{0}) == 63);
    CHECK(lsb(~u64{0}) == 0);
}

TEST_CASE("msb and lsb reject zero") {
    CHECK_THROWS_AS(msb(0), std::invalid_argument);
    CHECK_THROWS_AS(lsb(0), std::invalid_argument);
}

TEST_CASE("packed counters store digits up to 2B and round-trip") {
    for (unsigned b = 2; b <= 6; ++b) {
        const unsigned r = 62 / b < 8 ? 62 / b : 8;
        PackedCounters pc(r, b);
        const u64 base = u64{1} << b;
        CHECK(pc.base() == base);

        rsz::SplitMix64 rng(b);
        std::vector<u64> shadow(r, 0);
        for (int round = 0; round < 2000; ++round) {
            const unsigned j = static_cast<unsigned>(rng.next() % r);
            const u64 v = rng.next() % (2 * base + 1);
            pc.set_digit(j, v);
            shadow[j] = v;

            // Every digit reads back and prefix sums agree with a loop.
            u64 acc = 0;
            for (unsigned k = 0; k <= r; ++k) {
                CHECK(pc.prefix(k) == acc);
                if (k < r) {
                    CHECK(pc.digit(k) == shadow[k]);
                    acc += shadow[k] << (b * k);
                }
            }
            CHECK(pc.value() == acc);

            // first_nonzero against a scan.
            for (unsigned from = 0; from <= r; ++from) {
                unsigned want = from;
                while (want < r && shadow[want] == 0) ++want;
                CHECK(pc.first_nonzero(from) == want);
            }
        }
    }
}

TEST_CASE("packed counters validate their inputs") {
    CHECK_THROWS_AS(PackedCounters(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(PackedCounters(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(PackedCounters(32, 2), std::invalid_argument);  // r*b = 64 > 62
    PackedCounters pc(5, 4);
    CHECK_THROWS_AS(pc.set_digit(0, 33), std::invalid_argument);  // 2B = 32
    CHECK_NOTHROW(pc.set_digit(0, 32));
    CHECK_THROWS_AS(pc.set_digit(5, 0), std::out_of_range);
    CHECK_THROWS_AS(pc.digit(5), std::out_of_range);
    CHECK_THROWS_AS(pc.prefix(6), std::out_of_range);
}

TEST_CASE("the two packed words sum to the counter value") {
    // The defining identity of the representation: reading n0 and n1 as
    // plain integers, value = n0 + (n1 << b).
    PackedCounters pc(6, 4);
    rsz::SplitMix64 rng(99);
    for (int round = 0; round < 500; ++round) {
        pc.set_digit(static_cast<unsigned>(rng.next() % 6), rng.next() % 33);
        CHECK(pc.value() == pc.word_n0() + (pc.word_n1() << 4));
    }
}
