#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rsz/resizable_array.hpp"
#include "rsz/space_model.hpp"

namespace rsz {

// splitmix64 — tiny public-domain generator with full 64-bit state; chosen so
// seeded workloads replay byte-identically on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// One segment of a workload description.  The textual form is a
// comma-separated list of:
//   grow:COUNT
//   shrink:COUNT
//   mix:COUNT:GROW_PROB[:SEED]     (shrink at N = 0 is replaced by grow)
//   sawtooth:PEAK:CYCLES           (grow to PEAK, shrink to 0, repeat)
struct WorkloadPhase {
    enum class Kind { kGrow, kShrink, kMix, kSawtooth };
    Kind kind = Kind::kGrow;
    std::uint64_t count = 0;   // grow / shrink / mix
    double grow_prob = 0.5;    // mix
    std::uint64_t seed = 0;    // mix
    std::uint64_t peak = 0;    // sawtooth
    std::uint64_t cycles = 0;  // sawtooth
};

// Parses the textual form; mix segments without an explicit seed get
// `default_seed`.  Throws std::invalid_argument on malformed input.
std::vector<WorkloadPhase> parse_workload(const std::string& spec,
                                          std::uint64_t default_seed);

struct MeasurementRow {
    std::uint64_t op_index = 0;
    const char* op_kind = "grow";
    std::uint64_t n = 0;
    std::uint64_t live_words = 0;
    std::uint64_t peak_words_since_last_row = 0;
    std::uint64_t assignments_total = 0;
};

// Exact CSV header the harness emits.
inline constexpr const char* kMeasurementHeader =
    "op_index,op_kind,N,live_words,peak_words_since_last_row,assignments_total";

struct BenchResult {
    std::uint64_t ops = 0;
    std::uint64_t rows = 0;
    std::uint64_t final_n = 0;
};

// Runs the workload against `arr`, reporting a row every `sample_every`
// operations (0 = only event/final rows), after every operation that
// triggered a structural event (combine/split/rebuild), and after the final
// operation.  The tracker's peak watermark is reset after each row so the
// peak column covers exactly the gap since the previous row.
BenchResult run_workload(ResizableArray& arr, SpaceTracker& tracker,
                         const std::vector<WorkloadPhase>& phases,
                         std::uint64_t sample_every,
                         const std::function<void(const MeasurementRow&)>& sink);

}  // namespace rsz
