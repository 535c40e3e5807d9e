#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsz/space_model.hpp"
#include "rsz/tiered_array.hpp"
#include "rsz/workload.hpp"

using rsz::MeasurementRow;
using rsz::parse_workload;
using rsz::run_workload;
using rsz::SpaceTracker;
using rsz::TieredArray;
using rsz::WorkloadPhase;

namespace {

struct RowCopy {
    std::uint64_t op_index;
    std::string op_kind;
    std::uint64_t n;
    std::uint64_t live;
    std::uint64_t peak;
    std::uint64_t assignments;
    friend bool operator==(const RowCopy&, const RowCopy&) = default;
};

std::vector<RowCopy> collect(TieredArray& arr, SpaceTracker& t,
                             const std::string& spec, std::uint64_t seed,
                             std::uint64_t sample_every, rsz::BenchResult* out = nullptr) {
    std::vector<RowCopy> rows;
    auto res = run_workload(arr, t, parse_workload(spec, seed), sample_every,
                            [&](const MeasurementRow& r) {
                                rows.push_back({r.op_index, r.op_kind, r.n, r.live_words,
                                                r.peak_words_since_last_row,
                                                r.assignments_total});
                            });
    if (out) *out = res;
    return rows;
}

}  // namespace

TEST_CASE("workload grammar: accepted forms") {
    auto phases = parse_workload("grow:5,shrink:3,mix:100:0.7:42,sawtooth:64:3", 9);
    REQUIRE(phases.size() == 4);
    CHECK(phases[0].kind == WorkloadPhase::Kind::kGrow);
    CHECK(phases[0].count == 5);
    CHECK(phases[1].kind == WorkloadPhase::Kind::kShrink);
    CHECK(phases[1].count == 3);
    CHECK(phases[2].kind == WorkloadPhase::Kind::kMix);
    CHECK(phases[2].count == 100);
    CHECK(phases[2].grow_prob == doctest::Approx(0.7));
    CHECK(phases[2].seed == 42);
    CHECK(phases[3].kind == WorkloadPhase::Kind::kSawtooth);
    CHECK(phases[3].peak == 64);
    CHECK(phases[3].cycles == 3);

    // mix without an explicit seed inherits the default
    CHECK(parse_workload("mix:10:0.5", 777)[0].seed == 777);
    CHECK(parse_workload("mix:10:0.5:3", 777)[0].seed == 3);
}

TEST_CASE("workload grammar: rejected forms") {
    for (const char* bad :
         {"", "grow", "grow:", "grow:x", "grow:5:", "shrink:-1", "hop:3",
          "mix:10", "mix:10:1.5", "mix:10:0.5:abc", "mix:10:0.5:1:2",
          "sawtooth:0:5", "sawtooth:8", "grow:5,,shrink:3",
          "grow:18446744073709551616"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_workload(bad, 0), std::invalid_argument);
    }
}

TEST_CASE("rows appear at structural events and at the end") {
    SpaceTracker t;
    TieredArray arr(t, {.levels = 2, .min_block = 4});
    rsz::BenchResult res;
    auto rows = collect(arr, t, "grow:100", 0, 0, &res);
    CHECK(res.ops == 100);
    CHECK(res.final_n == 100);
    CHECK(res.rows == rows.size());
    // r=2 rebuilds when N crosses 16 and 64; the final op is flushed too
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].op_index == 17);
    CHECK(rows[1].op_index == 65);
    CHECK(rows[2].op_index == 100);
    for (const auto& r : rows) {
        CHECK(r.op_kind == "grow");
        CHECK(r.n == r.op_index);
        CHECK(r.peak >= r.live);
    }
}

TEST_CASE("periodic sampling interleaves with event rows") {
    SpaceTracker t;
    TieredArray arr(t, {.levels = 2, .min_block = 4});
    auto rows = collect(arr, t, "grow:100", 0, 10);
    const std::uint64_t expected[] = {10, 17, 20, 30, 40, 50, 60, 65, 70, 80, 90, 100};
    REQUIRE(rows.size() == 12);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].op_index == expected[i]);
    // assignment totals are cumulative, op indexes strictly increase
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].op_index > rows[i - 1].op_index);
        CHECK(rows[i].assignments >= rows[i - 1].assignments);
    }
}

TEST_CASE("peak column covers exactly the gap between rows") {
    SpaceTracker t;
    TieredArray arr(t, {.levels = 2, .min_block = 4});
    auto rows = collect(arr, t, "grow:100,shrink:100", 0, 1);  // row per op
    REQUIRE(rows.size() == 200);
    for (const auto& r : rows) CHECK(r.peak >= r.live);
    // the first rebuild interleaves frees and allocations so tightly that the
    // transient never rises above the final footprint
    CHECK(rows[16].op_index == 17);
    CHECK(rows[16].peak == 60);
    CHECK(rows[16].live == 60);
    // the second one keeps a 16-word destination block alive while both
    // source blocks still exist, and the window records that excursion
    CHECK(rows[64].op_index == 65);
    CHECK(rows[64].live == 132);
    CHECK(rows[64].peak == 148);
    // shrinks that release blocks leave the window peak above the live line
    CHECK(rows[184].op_index == 185);
    CHECK(rows[184].op_kind == "shrink");
    CHECK(rows[184].live == 52);
    CHECK(rows[184].peak == 84);
}

TEST_CASE("identical seeds replay identical measurement streams") {
    const std::string spec = "mix:5000:0.6,shrink:40,sawtooth:100:2";
    SpaceTracker t1, t2;
    TieredArray a1(t1, {.levels = 3, .min_block = 4});
    TieredArray a2(t2, {.levels = 3, .min_block = 4});
    auto r1 = collect(a1, t1, spec, 1234, 100);
    auto r2 = collect(a2, t2, spec, 1234, 100);
    REQUIRE(r1 == r2);

    SpaceTracker t3;
    TieredArray a3(t3, {.levels = 3, .min_block = 4});
    auto r3 = collect(a3, t3, spec, 4321, 100);
    CHECK(r1 != r3);  // the default seed feeds the mix phase
}

TEST_CASE("shrink on an empty array is clamped to a grow") {
    SpaceTracker t;
    TieredArray arr(t, {.levels = 2, .min_block = 4});
    rsz::BenchResult res;
    // probability 0 means every op asks to shrink; the clamp alternates them
    auto rows = collect(arr, t, "mix:50:0.0:7", 0, 0, &res);
    CHECK(res.ops == 50);
    CHECK(res.final_n == 0);
    REQUIRE(!rows.empty());
    CHECK(rows.back().op_index == 50);
    CHECK(rows.back().n == 0);
    CHECK(rows.back().op_kind == "shrink");
}

TEST_CASE("sawtooth cycles return to empty") {
    SpaceTracker t;
    TieredArray arr(t, {.levels = 3, .min_block = 4});
    rsz::BenchResult res;
    auto rows = collect(arr, t, "sawtooth:40:2", 0, 0, &res);
    CHECK(res.ops == 160);  // 2 * (40 up + 40 down)
    CHECK(res.final_n == 0);
    CHECK(rows.back().op_index == 160);
    CHECK(rows.back().n == 0);
}

TEST_CASE("the CSV header is pinned") {
    CHECK(std::string(rsz::kMeasurementHeader) ==
          "op_index,op_kind,N,live_words,peak_words_since_last_row,assignments_total");
}
