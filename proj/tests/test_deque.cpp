#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <deque>
#include <stdexcept>

#include "rsz/space_model.hpp"
#include "rsz/tiered_deque.hpp"
#include "rsz/workload.hpp"

using rsz::SpaceTracker;
using rsz::TieredDeque;
using rsz::TieredOptions;
using rsz::Word;

TEST_CASE("first pop_front moves half the items over") {
    SpaceTracker t;
    TieredDeque d(t, {.levels = 2, .min_block = 4});
    for (Word v = 1; v <= 5; ++v) d.push_back(v);
    CHECK(d.front_half().length() == 0);
    CHECK(d.back_half().length() == 5);

    d.pop_front();  // rebalance moves ceil(5/2) = 3 over, then pops one
    CHECK(d.rebalances() == 1);
    CHECK(d.front_half().length() == 2);
    CHECK(d.back_half().length() == 2);
    CHECK(d.length() == 4);
    for (std::uint64_t i = 0; i < 4; ++i) CHECK(d.get(i) == i + 2);

    // the next pops hit the refilled side without another rebalance
    d.pop_front();
    d.pop_back();
    CHECK(d.rebalances() == 1);
    CHECK(d.length() == 2);
    CHECK(d.get(0) == 3);
    CHECK(d.get(1) == 4);
}

TEST_CASE("one-sided drains rebalance logarithmically often") {
    SpaceTracker t;
    {
        TieredDeque d(t, {.levels = 3, .min_block = 4});
        for (Word v = 0; v < 100; ++v) d.push_back(v);
        for (int i = 0; i < 100; ++i) d.pop_front();
        CHECK(d.length() == 0);
        // transfer sizes halve: 50, 25, 13, 6, 3, 2, 1
        CHECK(d.rebalances() == 7);

        for (Word v = 0; v < 100; ++v) d.push_front(v);
        for (int i = 0; i < 100; ++i) d.pop_back();
        CHECK(d.rebalances() == 14);
        CHECK(d.structural_events() >= d.rebalances());
    }
    CHECK(t.live_words() == 0);
    CHECK(t.report().allocations == t.report().deallocations);
}

TEST_CASE("empty pops throw, out-of-range access throws") {
    SpaceTracker t;
    TieredDeque d(t);
    CHECK_THROWS_AS(d.pop_front(), std::logic_error);
    CHECK_THROWS_AS(d.pop_back(), std::logic_error);
    CHECK_THROWS_AS(d.get(0), std::out_of_range);
    CHECK_THROWS_AS(d.set(0, 1), std::out_of_range);
    d.push_back(7);
    CHECK_THROWS_AS(d.get(1), std::out_of_range);
    CHECK_THROWS_AS(d.set(1, 1), std::out_of_range);
    d.pop_back();
    CHECK_THROWS_AS(d.pop_front(), std::logic_error);
}

TEST_CASE("set reaches both halves") {
    SpaceTracker t;
    TieredDeque d(t, {.levels = 2, .min_block = 4});
    for (Word v = 0; v < 10; ++v) d.push_front(v);
    for (Word v = 10; v < 20; ++v) d.push_back(v);
    CHECK(d.front_half().length() == 10);
    for (std::uint64_t i = 0; i < 20; ++i) d.set(i, 100 + i);
    for (std::uint64_t i = 0; i < 20; ++i) CHECK(d.get(i) == 100 + i);
}

TEST_CASE("mixed operations track std::deque") {
    for (auto opt : {TieredOptions{.levels = 2, .min_block = 4},
                     TieredOptions{.levels = 3, .min_block = 4},
                     TieredOptions{.levels = 3, .min_block = 4,
                                   .chunk = TieredOptions::kChunkAuto}}) {
        SpaceTracker t;
        {
            TieredDeque d(t, opt);
            std::deque<Word> shadow;
            rsz::SplitMix64 rng(0xdec0de + opt.levels + opt.chunk);
            for (std::uint64_t op = 1; op <= 20000; ++op) {
                double roll = rng.next_unit();
                double pushy = op * 3 <= 40000 ? 0.62 : 0.38;
                if (shadow.empty() || roll < pushy) {
                    if (rng.next() & 1) {
                        d.push_front(op);
                        shadow.push_front(op);
                    } else {
                        d.push_back(op);
                        shadow.push_back(op);
                    }
                } else if (rng.next() & 1) {
                    d.pop_front();
                    shadow.pop_front();
                } else {
                    d.pop_back();
                    shadow.pop_back();
                }
                if (!shadow.empty() && rng.next_unit() < 0.15) {
                    std::uint64_t i = rng.next() % shadow.size();
                    d.set(i, op ^ 0x9e3779b9);
                    shadow[i] = op ^ 0x9e3779b9;
                }
                if (!shadow.empty()) {
                    std::uint64_t i = rng.next() % shadow.size();
                    REQUIRE(d.get(i) == shadow[i]);
                }
                if (op % 1499 == 0) {
                    REQUIRE(d.length() == shadow.size());
                    for (std::uint64_t i = 0; i < shadow.size(); ++i)
                        REQUIRE(d.get(i) == shadow[i]);
                }
            }
            REQUIRE(d.length() == shadow.size());
            for (std::uint64_t i = 0; i < shadow.size(); ++i)
                REQUIRE(d.get(i) == shadow[i]);
            REQUIRE(d.control_words() ==
                    4 + d.front_half().control_words() + d.back_half().control_words());
        }
        CHECK(t.live_words() == 0);
        CHECK(t.report().allocations == t.report().deallocations);
    }
}
