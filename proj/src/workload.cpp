#include "rsz/workload.hpp"

#include <charconv>
#include <stdexcept>

namespace rsz {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("workload: bad ") + what + " '" + s + "'");
    return value;
}

double parse_prob(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || v < 0.0 || v > 1.0) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("workload: bad probability '" + s + "'");
    }
}

}  // namespace

std::vector<WorkloadPhase> parse_workload(const std::string& spec,
                                          std::uint64_t default_seed) {
    if (spec.empty()) throw std::invalid_argument("workload: empty description");
    std::vector<WorkloadPhase> phases;
    for (const std::string& segment : split(spec, ',')) {
        const std::vector<std::string> f = split(segment, ':');
        WorkloadPhase p;
        if (f[0] == "grow" && f.size() == 2) {
            p.kind = WorkloadPhase::Kind::kGrow;
            p.count = parse_u64(f[1], "count");
        } else if (f[0] == "shrink" && f.size() == 2) {
            p.kind = WorkloadPhase::Kind::kShrink;
            p.count = parse_u64(f[1], "count");
        } else if (f[0] == "mix" && (f.size() == 3 || f.size() == 4)) {
            p.kind = WorkloadPhase::Kind::kMix;
            p.count = parse_u64(f[1], "count");
            p.grow_prob = parse_prob(f[2]);
            p.seed = f.size() == 4 ? parse_u64(f[3], "seed") : default_seed;
        } else if (f[0] == "sawtooth" && f.size() == 3) {
            p.kind = WorkloadPhase::Kind::kSawtooth;
            p.peak = parse_u64(f[1], "peak");
            p.cycles = parse_u64(f[2], "cycles");
            if (p.peak == 0) throw std::invalid_argument("workload: sawtooth peak must be positive");
        } else {
            throw std::invalid_argument("workload: unrecognized segment '" + segment + "'");
        }
        phases.push_back(p);
    }
    return phases;
}

BenchResult run_workload(ResizableArray& arr, SpaceTracker& tracker,
                         const std::vector<WorkloadPhase>& phases,
                         std::uint64_t sample_every,
                         const std::function<void(const MeasurementRow&)>& sink) {
    BenchResult result;
    bool last_emitted = false;
    const char* last_kind = "grow";

    auto step = [&](bool grow_op) {
        // A shrink on an empty array is clamped to a grow (mix workloads may
        // schedule one; fixed phases never do).
        if (!grow_op && arr.length() == 0) grow_op = true;
        ++result.ops;
        const std::uint64_t events_before = arr.structural_events();
        if (grow_op)
            arr.grow(static_cast<Word>(result.ops));
        else
            arr.shrink();
        last_kind = grow_op ? "grow" : "shrink";
        const bool structural = arr.structural_events() != events_before;
        const bool periodic = sample_every != 0 && result.ops % sample_every == 0;
        last_emitted = structural || periodic;
        if (last_emitted) {
            sink({result.ops, last_kind, arr.length(), tracker.live_words(),
                  tracker.peak_words(), tracker.assignments()});
            ++result.rows;
            tracker.reset_peak();
        }
    };

    for (const WorkloadPhase& p : phases) switch (p.kind) {
            case WorkloadPhase::Kind::kGrow:
                for (std::uint64_t i = 0; i < p.count; ++i) step(true);
                break;
            case WorkloadPhase::Kind::kShrink:
                for (std::uint64_t i = 0; i < p.count; ++i) step(false);
                break;
            case WorkloadPhase::Kind::kMix: {
                SplitMix64 rng(p.seed);
                for (std::uint64_t i = 0; i < p.count; ++i)
                    step(rng.next_unit() < p.grow_prob);
                break;
            }
            case WorkloadPhase::Kind::kSawtooth:
                for (std::uint64_t c = 0; c < p.cycles; ++c) {
                    while (arr.length() < p.peak) step(true);
                    while (arr.length() > 0) step(false);
                }
                break;
        }

    if (result.ops > 0 && !last_emitted) {
        sink({result.ops, last_kind, arr.length(), tracker.live_words(),
              tracker.peak_words(), tracker.assignments()});
        ++result.rows;
        tracker.reset_peak();
    }
    result.final_n = arr.length();
    return result;
}

}  // namespace rsz
