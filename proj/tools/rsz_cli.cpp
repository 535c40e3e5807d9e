// Command-line harness: benchmark workloads over the registered resizable
// arrays (bench), run the invariant suites (verify), and explore the growth
// game (game solve/replay/counter/sweep).
//
// Exit codes: 0 success, 1 check failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <string>

#include "rsz/growth_game.hpp"
#include "rsz/resizable_array.hpp"
#include "rsz/space_model.hpp"
#include "rsz/verify.hpp"
#include "rsz/workload.hpp"

namespace {

using rsz::ArrayConfig;
using u64 = std::uint64_t;

rsz::Rational parse_alpha(const std::string& text) {
    const std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            const u64 p = std::stoull(text);
            if (p == 0) throw std::invalid_argument(text);
            return {p, 1};
        }
        const u64 p = std::stoull(text.substr(0, slash));
        const u64 q = std::stoull(text.substr(slash + 1));
        if (p == 0 || q == 0) throw std::invalid_argument(text);
        return {p, q};
    } catch (const std::exception&) {
        throw std::invalid_argument("--alpha expects P or P/Q with P,Q >= 1, got '" +
                                    text + "'");
    }
}

// Writes one measurement row; all columns are integers, so the bytes are
// reproducible across platforms.
void write_row(std::ostream& os, const rsz::MeasurementRow& r) {
    os << r.op_index << ',' << r.op_kind << ',' << r.n << ',' << r.live_words
       << ',' << r.peak_words_since_last_row << ',' << r.assignments_total
       << '\n';
}

struct BenchArgs {
    std::string impl = "tiered";
    unsigned r = 3;
    std::string alpha = "1";
    u64 b0 = 4;
    u64 chunk = 0;
    std::string ops;
    u64 sample = 0;
    u64 seed = 0;
    std::string csv;
};

int run_bench(const BenchArgs& args) {
    ArrayConfig config;
    config.levels = args.r;
    config.alpha = parse_alpha(args.alpha);
    config.min_block = args.b0;
    config.chunk = args.chunk;

    rsz::SpaceTracker tracker;
    std::unique_ptr<rsz::ResizableArray> arr =
        rsz::make_array(args.impl, tracker, config);
    const auto phases = rsz::parse_workload(args.ops, args.seed);

    std::ofstream file;
    if (!args.csv.empty()) {
        file.open(args.csv, std::ios::trunc);
        if (!file) throw std::invalid_argument("cannot open '" + args.csv + "'");
    }
    std::ostream& os = args.csv.empty() ? std::cout : file;

    os << rsz::kMeasurementHeader << '\n';
    const auto result = rsz::run_workload(
        *arr, tracker, phases, args.sample,
        [&os](const rsz::MeasurementRow& row) { write_row(os, row); });
    std::cerr << "ran " << result.ops << " ops, wrote " << result.rows
              << " rows, final N=" << result.final_n << '\n';
    return 0;
}

int run_verify(const std::string& suite) {
    const rsz::verify::Report report = rsz::verify::run_suite(suite);
    for (const auto& check : report)
        std::cout << (check.pass ? "PASS" : "FAIL") << "  " << check.name
                  << (check.detail.empty() ? "" : "  [" + check.detail + "]")
                  << '\n';
    return rsz::verify::all_passed(report) ? 0 : 1;
}

std::string state_text(const std::vector<u64>& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
}

int game_solve(u64 n, unsigned k, u64 l) {
    u64 cost = 0;
    std::vector<u64> state;
    if (l == 0) {
        cost = rsz::game::cost_closed_form(n, k);
        state = rsz::game::optimal_state_witness(n, k);
    } else {
        cost = rsz::game::cost_with_slack(n, k, l);  // throws unless (l+1) | N
        state = rsz::game::optimal_state_witness(n / (l + 1), k);
        for (u64& v : state) v *= l + 1;  // replicated play scales each subarray
    }
    std::cout << "N=" << n << " k=" << k << " l=" << l
              << " n=" << rsz::game::rank_n(n, k) << " cost=" << cost;
    if (n > 0)
        std::cout << " amortized=" << std::fixed << std::setprecision(6)
                  << static_cast<double>(cost) / static_cast<double>(n);
    std::cout << '\n';
    if (!state.empty()) std::cout << "optimal state: " << state_text(state) << '\n';
    return 0;
}

int game_replay(u64 n, unsigned k) {
    const rsz::game::Replay replay = rsz::game::optimal_replay(n, k);
    for (std::size_t i = 0; i < replay.moves.size(); ++i) {
        const auto& mv = replay.moves[i];
        std::cout << std::setw(4) << i + 1 << ": subarray " << mv.index
                  << "  cost " << mv.cost << "  state " << state_text(mv.state_after)
                  << '\n';
    }
    std::cout << "total cost " << replay.total_cost << ", final state "
              << state_text(replay.final_state) << '\n';
    return 0;
}

int game_counter(unsigned k, u64 steps) {
    rsz::game::BinomialCounter counter(k);
    for (u64 i = 1; i <= steps; ++i) {
        const auto mv = counter.increment();
        std::cout << std::setw(4) << i << ": digit " << mv.index << "  cost "
                  << mv.cost << "  a=" << state_text(counter.a())
                  << " b=" << state_text(counter.b()) << '\n';
    }
    std::cout << "total cost " << counter.total_cost() << '\n';
    return 0;
}

int game_sweep(u64 nmax, unsigned kmax, u64 l, const std::string& csv) {
    std::ofstream file;
    if (!csv.empty()) {
        file.open(csv, std::ios::trunc);
        if (!file) throw std::invalid_argument("cannot open '" + csv + "'");
    }
    std::ostream& os = csv.empty() ? std::cout : file;
    os << "N,k,l,n,cost,amortized\n";
    for (u64 n = 1; n <= nmax; ++n)
        for (unsigned k = 1; k <= kmax; ++k) {
            if (l != 0 && n % (l + 1) != 0) continue;  // no closed form otherwise
            const u64 cost = l == 0 ? rsz::game::cost_closed_form(n, k)
                                    : rsz::game::cost_with_slack(n, k, l);
            os << n << ',' << k << ',' << l << ',' << rsz::game::rank_n(n, k)
               << ',' << cost << ',' << std::fixed << std::setprecision(6)
               << static_cast<double>(cost) / static_cast<double>(n) << '\n';
        }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"resizable-array space benchmark and verification harness"};
    app.require_subcommand(1);

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "run a workload, emit CSV");
    bench->add_option("--impl", bench_args.impl,
                      "implementation: naive|geometric|hat|brodnik|tiered|deque");
    bench->add_option("--r", bench_args.r, "tiered levels (r >= 2)");
    bench->add_option("--alpha", bench_args.alpha, "geometric factor P or P/Q");
    bench->add_option("--b0", bench_args.b0, "smallest block size (power of two)");
    bench->add_option("--chunk", bench_args.chunk,
                      "tiered chunk threshold: 0=off, 1=auto, else power of two");
    bench->add_option("--ops", bench_args.ops,
                      "workload, e.g. grow:1000,mix:500:0.5:7,sawtooth:64:3")
        ->required();
    bench->add_option("--sample", bench_args.sample,
                      "emit a row every K ops (0: only events and final)");
    bench->add_option("--seed", bench_args.seed, "default seed for mix segments");
    bench->add_option("--csv", bench_args.csv, "output path (default stdout)");

    std::string suite;
    CLI::App* verify = app.add_subcommand("verify", "run an invariant suite");
    verify->add_option("suite", suite, "space|amortized|oracle|access")->required();

    CLI::App* game = app.add_subcommand("game", "growth-game calculators");
    game->require_subcommand(1);
    u64 game_n = 0, game_l = 0, game_steps = 0, game_nmax = 20;
    unsigned game_k = 2, game_kmax = 4;
    std::string game_csv;

    CLI::App* solve = game->add_subcommand("solve", "minimum cost and a witness state");
    solve->add_option("--n", game_n, "items")->required();
    solve->add_option("--k", game_k, "subarrays")->required();
    solve->add_option("--l", game_l, "vacancies per fresh subarray");

    CLI::App* replay = game->add_subcommand("replay", "one optimal move sequence");
    replay->add_option("--n", game_n, "items")->required();
    replay->add_option("--k", game_k, "subarrays")->required();

    CLI::App* counter = game->add_subcommand("counter", "binomial counter trace");
    counter->add_option("--k", game_k, "digits")->required();
    counter->add_option("--steps", game_steps, "increments")->required();

    CLI::App* sweep = game->add_subcommand("sweep", "closed-form cost table as CSV");
    sweep->add_option("--nmax", game_nmax, "largest N");
    sweep->add_option("--kmax", game_kmax, "largest k");
    sweep->add_option("--l", game_l, "vacancies per fresh subarray");
    sweep->add_option("--csv", game_csv, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help/error text
        return code == 0 ? 0 : 2;
    }

    try {
        if (bench->parsed()) return run_bench(bench_args);
        if (verify->parsed()) return run_verify(suite);
        if (solve->parsed()) return game_solve(game_n, game_k, game_l);
        if (replay->parsed()) return game_replay(game_n, game_k);
        if (counter->parsed()) return game_counter(game_k, game_steps);
        if (sweep->parsed()) return game_sweep(game_nmax, game_kmax, game_l, game_csv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
