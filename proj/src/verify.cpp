#include "rsz/verify.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsz/baseline_arrays.hpp"
#include "rsz/growth_game.hpp"
#include "rsz/space_model.hpp"
#include "rsz/tiered_array.hpp"
#include "rsz/tiered_deque.hpp"
#include "rsz/workload.hpp"

namespace rsz::verify {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::string num(u64 v) { return std::to_string(v); }

u128 ipow(u128 base, unsigned exp) {
    u128 r = 1;
    while (exp--) r *= base;
    return r;
}

// Worst observed slack of a "lhs <= rhs" family of checks, for reporting.
struct BoundWatch {
    bool ok = true;
    __int128 worst_slack = static_cast<__int128>(1) << 100;  // above any real slack
    u64 worst_lhs = 0, worst_rhs = 0, worst_at = 0;

    void observe(u64 lhs, u64 rhs, u64 at) {
        const __int128 slack = static_cast<__int128>(rhs) - static_cast<__int128>(lhs);
        if (slack < 0) ok = false;
        if (slack < worst_slack) {
            worst_slack = slack;
            worst_lhs = lhs;
            worst_rhs = rhs;
            worst_at = at;
        }
    }
    std::string detail() const {
        return "tightest " + num(worst_lhs) + " vs " + num(worst_rhs) + " at N=" +
               num(worst_at);
    }
};

// Independent index mapping for the tiered layout: walk the level counts
// from the top; level i occupies the next counts[i]*B^i logical positions,
// the partial block comes last.  Uses only the audited counts — none of the
// packed-counter machinery.
TieredArray::Location linear_scan_locate(const TieredArray::AuditReport& rep,
                                         u64 i) {
    u64 base = 0;
    for (unsigned level = rep.r; level-- > 1;) {
        const u64 bsize = static_cast<u64>(ipow(rep.B, level));
        const u64 span = rep.counts[level] * bsize;
        if (i < base + span) {
            const u64 pos = i - base;
            return {level, pos / bsize, pos % bsize};
        }
        base += span;
    }
    return {0, 0, i - base};
}

Report& add(Report& r, const std::string& name, bool pass, std::string detail) {
    r.push_back({name, pass, std::move(detail)});
    return r;
}

// ------------------------------------------------------------------ space

void tiered_grow_space_checks(Report& out, unsigned r, u64 chunk, u64 target) {
    SpaceTracker t;
    TieredArray arr(t, {.levels = r, .chunk = chunk});
    const u64 c0 = arr.control_words();
    BoundWatch live_w, peak_w, window_w;
    for (u64 i = 1; i <= target; ++i) {
        const u64 live_before = t.live_words();
        t.reset_peak();
        arr.grow(i);
        const u64 big = arr.block_size();
        // Post-operation geometry; grow-only runs only ever enlarge B.
        if (chunk == 0)
            live_w.observe(t.live_words(), i + (2 * r + 1) * (big + 1) + c0, i);
        const u64 transient = chunk == 0
                                  ? static_cast<u64>(ipow(big, r - 1))
                                  : arr.chunk_threshold();
        peak_w.observe(t.peak_words() - live_before, transient + 2 * big + c0, i);
        if (i >= 2 && ipow(big, r) >= ipow(4, r) * i) window_w.ok = false;
    }
    const std::string tag = "tiered r=" + num(r) + (chunk ? " chunked" : "");
    if (chunk == 0)
        add(out, tag + ": live words <= N + (2r+1)(B+1) + c0 on every grow",
            live_w.ok, live_w.detail());
    add(out,
        tag + (chunk ? ": per-op peak extra <= T + 2B + c0"
                     : ": per-op peak extra <= B^(r-1) + 2B + c0"),
        peak_w.ok, peak_w.detail());
    add(out, tag + ": block size stays below 4*N^(1/r)", window_w.ok,
        "checked through N=" + num(target));
}

void tiered_sawtooth_space_checks(Report& out, unsigned r, u64 peak_n) {
    SpaceTracker t;
    TieredArray arr(t, {.levels = r});
    const u64 c0 = arr.control_words();
    BoundWatch live_w, peak_w;
    u64 prev_b = arr.block_size();
    auto step = [&](bool up) {
        const u64 live_before = t.live_words();
        t.reset_peak();
        if (up)
            arr.grow(arr.length());
        else
            arr.shrink();
        // Shrink rebuilds drain blocks sized by the pre-op B, so the peak
        // budget uses whichever geometry is larger.
        const u64 big = std::max(prev_b, arr.block_size());
        prev_b = arr.block_size();
        const u64 n = arr.length();
        live_w.observe(t.live_words(), n + (2 * r + 1) * (big + 1) + c0, n);
        peak_w.observe(t.peak_words() - live_before,
                       static_cast<u64>(ipow(big, r - 1)) + 2 * big + c0, n);
    };
    for (unsigned cycle = 0; cycle < 2; ++cycle) {
        while (arr.length() < peak_n) step(true);
        while (arr.length() > 0) step(false);
    }
    add(out, "tiered r=" + num(r) + " sawtooth: live bound under shrinking",
        live_w.ok, live_w.detail());
    add(out, "tiered r=" + num(r) + " sawtooth: peak bound under shrinking",
        peak_w.ok, peak_w.detail());
}

Report run_space() {
    Report out;
    tiered_grow_space_checks(out, 2, 0, 40000);
    tiered_grow_space_checks(out, 3, 0, 40000);
    tiered_grow_space_checks(out, 4, 0, 40000);
    tiered_grow_space_checks(out, 3, TieredOptions::kChunkAuto, 40000);
    tiered_grow_space_checks(out, 4, TieredOptions::kChunkAuto, 40000);
    tiered_sawtooth_space_checks(out, 3, 9000);

    {
        SpaceTracker t;
        HatArray arr(t);
        const u64 c0 = arr.control_words();
        BoundWatch w;
        for (u64 i = 1; i <= 4096; ++i) {
            arr.grow(i);
            w.observe(t.live_words(), i + 3 * arr.block_size() + 2 + c0, i);
        }
        add(out, "hat: live words <= N + 3B + 2 + c0 on every grow", w.ok,
            w.detail());
    }
    return out;
}

// -------------------------------------------------------------- amortized

Report run_amortized() {
    Report out;
    for (unsigned r : {2u, 3u, 4u}) {
        SpaceTracker t;
        TieredArray arr(t, {.levels = r});
        const u64 n = 200000;
        for (u64 i = 1; i <= n; ++i) arr.grow(i);
        add(out,
            "tiered r=" + num(r) + ": grow-only assignments <= (2r+2)N",
            t.assignments() <= (2 * r + 2) * n,
            num(t.assignments()) + " vs " + num((2 * r + 2) * n));
    }
    {
        SpaceTracker t;
        TieredArray arr(t, {.levels = 3});
        SplitMix64 rng(42);
        const u64 ops = 100000;
        for (u64 i = 0; i < ops; ++i) {
            if (arr.length() == 0 || rng.next_unit() < 0.5)
                arr.grow(i);
            else
                arr.shrink();
        }
        add(out, "tiered r=3: mixed-op assignments <= (5r+3)*ops",
            t.assignments() <= (5 * 3 + 3) * ops,
            num(t.assignments()) + " vs " + num((5 * 3 + 3) * ops));
    }
    {
        SpaceTracker t;
        GeometricArray arr(t, {1, 1});
        const u64 n = u64{1} << 17;
        for (u64 i = 1; i <= n; ++i) arr.grow(i);
        add(out, "geometric alpha=1: assignments <= 2 per grow",
            t.assignments() <= 2 * n, num(t.assignments()) + " vs " + num(2 * n));
    }
    {
        SpaceTracker t;
        BrodnikArray arr(t);
        const u64 n = 100000;
        for (u64 i = 1; i <= n; ++i) arr.grow(i);
        add(out, "block-list: grow-only assignments exactly N",
            t.assignments() == n, num(t.assignments()) + " vs " + num(n));
    }
    {
        SpaceTracker t;
        NaiveArray arr(t);
        const u64 n = 2000;
        for (u64 i = 1; i <= n; ++i) arr.grow(i);
        add(out, "naive: grow-only assignments exactly N(N+1)/2",
            t.assignments() == n * (n + 1) / 2,
            num(t.assignments()) + " vs " + num(n * (n + 1) / 2));
    }
    return out;
}

// ----------------------------------------------------------------- oracle

Report run_oracle() {
    Report out;
    {
        bool ok = true;
        std::string detail = "all (N,k) cells agree";
        for (unsigned k = 1; k <= 4 && ok; ++k) {
            const auto table = game::oracle_min_cost({.n_items = 30, .k = k});
            for (u64 n = 0; n <= 30; ++n)
                if (table.min_cost(n) != game::cost_closed_form(n, k)) {
                    ok = false;
                    detail = "mismatch at N=" + num(n) + " k=" + num(k);
                    break;
                }
        }
        add(out, "closed-form cost equals shortest-path oracle (N<=30, k<=4)", ok,
            detail);
    }
    {
        bool ok = true;
        std::string detail = "differences telescope";
        for (unsigned k = 1; k <= 5 && ok; ++k)
            for (u64 n = 1; n <= 150; ++n)
                if (game::cost_closed_form(n, k) - game::cost_closed_form(n - 1, k) !=
                    game::marginal(n, k)) {
                    ok = false;
                    detail = "mismatch at N=" + num(n) + " k=" + num(k);
                    break;
                }
        add(out, "marginal cost matches consecutive-cost difference (N<=150, k<=5)",
            ok, detail);
    }
    {
        bool ok = true;
        std::string detail = "tables agree";
        const auto table = game::decompose_cost_table(120, 5);
        for (unsigned k = 1; k <= 5 && ok; ++k)
            for (u64 n = 0; n <= 120; ++n)
                if (table[k][n] != game::cost_closed_form(n, k)) {
                    ok = false;
                    detail = "mismatch at N=" + num(n) + " k=" + num(k);
                    break;
                }
        add(out, "decomposition recurrence equals closed form (N<=120, k<=5)", ok,
            detail);
    }
    {
        bool ok = true;
        std::string detail = "counter states and totals match";
        for (u64 n = 1; n <= 4 && ok; ++n) {
            game::BinomialCounter c(4);
            const mpz_class total_items = game::binomial(n + 4, 4) - 1;
            for (mpz_class i = 0; i < total_items; ++i) {
                c.increment();
                for (unsigned j = 1; j <= 4; ++j)
                    if (game::binomial(c.b()[j - 1] + j - 1, j) != c.a()[j - 1])
                        ok = false;
            }
            // Total cost at the full counter: (k n / (k+1)) * C(n+k, k).
            mpz_class want = mpz_class(4 * n) * game::binomial(n + 4, 4) / 5;
            if (!ok || want != c.total_cost()) {
                ok = false;
                detail = "mismatch at n=" + num(n);
            }
        }
        add(out, "binomial counter: digit identity and boundary totals (k=4)", ok,
            detail);
    }
    {
        bool ok = true;
        std::string detail = "identity holds for all n,k <= 64";
        for (u64 n = 0; n <= 64 && ok; ++n)
            for (u64 k = 0; k <= 64; ++k) {
                mpz_class sum = 0;
                // At n = 0, i = 0 the index wraps to 2^64-1; C(anything, 0)
                // is 1 either way, which is the intended C(-1, 0) = 1.
                for (u64 i = 0; i <= k; ++i) sum += game::binomial(n + i - 1, i);
                if (sum != game::binomial(n + k, k)) {
                    ok = false;
                    detail = "mismatch at n=" + num(n) + " k=" + num(k);
                    break;
                }
            }
        add(out, "hockey-stick identity sum C(n+i-1,i) = C(n+k,k)", ok, detail);
    }
    return out;
}

// ----------------------------------------------------------------- access

void tiered_access_checks(Report& out, unsigned r, u64 chunk) {
    SpaceTracker t;
    TieredArray arr(t, {.levels = r, .chunk = chunk});
    std::vector<Word> shadow;
    SplitMix64 rng(7);
    bool content_ok = true, locate_ok = true;
    for (u64 op = 0; op < 4000; ++op) {
        if (shadow.empty() || rng.next_unit() < 0.55) {
            const Word v = rng.next();
            arr.grow(v);
            shadow.push_back(v);
        } else {
            arr.shrink();
            shadow.pop_back();
        }
        if (!shadow.empty()) {
            const u64 j = rng.next() % shadow.size();
            const Word v = rng.next();
            arr.set(j, v);
            shadow[j] = v;
        }
        const auto rep = arr.audit();
        for (u64 i = 0; i < shadow.size(); ++i) {
            if (arr.get(i) != shadow[i]) content_ok = false;
            if (arr.locate(i) != linear_scan_locate(rep, i)) locate_ok = false;
        }
        if (!content_ok || !locate_ok) break;
    }
    const std::string tag = "tiered r=" + num(r) + (chunk ? " chunked" : "");
    add(out, tag + ": locate agrees with linear-scan mapping after every op",
        locate_ok, "N up to " + num(shadow.size()));
    add(out, tag + ": content matches shadow list", content_ok, "");
}

Report run_access() {
    Report out;
    tiered_access_checks(out, 2, 0);
    tiered_access_checks(out, 3, 0);
    tiered_access_checks(out, 4, 0);
    tiered_access_checks(out, 3, TieredOptions::kChunkAuto);

    {
        // The packed two-word counters and the explicit prefix block must
        // induce identical mappings.
        SpaceTracker t1, t2;
        TieredArray packed(t1, {.levels = 3});
        TieredArray explicit_pfx(t2, {.levels = 3, .force_explicit_prefix = true});
        bool ok = packed.packed_counters_active() &&
                  !explicit_pfx.packed_counters_active();
        SplitMix64 rng(11);
        for (u64 op = 0; op < 3000 && ok; ++op) {
            const bool up = packed.length() == 0 || rng.next_unit() < 0.6;
            if (up) {
                packed.grow(op);
                explicit_pfx.grow(op);
            } else {
                packed.shrink();
                explicit_pfx.shrink();
            }
            for (u64 i = 0; i < packed.length(); ++i)
                if (packed.locate(i) != explicit_pfx.locate(i)) ok = false;
        }
        add(out, "tiered: packed counters and explicit prefixes agree", ok, "");
    }
    {
        SpaceTracker t;
        TieredDeque dq(t);
        std::deque<Word> shadow;
        SplitMix64 rng(13);
        bool ok = true;
        for (u64 op = 0; op < 6000 && ok; ++op) {
            const double roll = rng.next_unit();
            if (shadow.empty() || roll < 0.3) {
                dq.push_front(op);
                shadow.push_front(op);
            } else if (roll < 0.6) {
                dq.push_back(op);
                shadow.push_back(op);
            } else if (roll < 0.8) {
                dq.pop_front();
                shadow.pop_front();
            } else {
                dq.pop_back();
                shadow.pop_back();
            }
            if (dq.length() != shadow.size()) ok = false;
            for (u64 i = 0; ok && i < shadow.size(); ++i)
                if (dq.get(i) != shadow[i]) ok = false;
        }
        add(out, "deque: content matches shadow double-ended queue", ok, "");
    }
    return out;
}

}  // namespace

Report space_suite() { return run_space(); }
Report amortized_suite() { return run_amortized(); }
Report oracle_suite() { return run_oracle(); }
Report access_suite() { return run_access(); }

Report run_suite(const std::string& name) {
    if (name == "space") return space_suite();
    if (name == "amortized") return amortized_suite();
    if (name == "oracle") return oracle_suite();
    if (name == "access") return access_suite();
    throw std::invalid_argument("unknown verification suite '" + name + "'");
}

std::vector<std::string> suite_names() {
    return {"space", "amortized", "oracle", "access"};
}

bool all_passed(const Report& report) {
    return std::all_of(report.begin(), report.end(),
                       [](const CheckResult& c) { return c.pass; });
}

}  // namespace rsz::verify
