#include "rsz/growth_game.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>

namespace rsz::game {
namespace {

// Oracle states are packed into one word: 12 bits per subarray size plus a
// vacancy nibble.  That caps the exhaustive search at k <= 5 and N <= 4095,
// far beyond what a forward search can visit anyway.
constexpr unsigned kFieldBits = 12;
constexpr std::uint64_t kFieldMask = (std::uint64_t{1} << kFieldBits) - 1;
constexpr unsigned kMaxOracleK = 5;
constexpr std::uint64_t kMaxOracleItems = kFieldMask;
constexpr std::uint64_t kMaxOracleSlack = 15;
constexpr std::uint64_t kInf = OracleTable::kNotReached;

std::uint64_t pack_state(const std::vector<std::uint64_t>& a, std::uint64_t vac) {
    std::uint64_t key = vac << (kFieldBits * kMaxOracleK);
    for (std::size_t i = 0; i < a.size(); ++i) key |= a[i] << (kFieldBits * i);
    return key;
}

void unpack_state(std::uint64_t key, unsigned k, std::vector<std::uint64_t>& a,
                  std::uint64_t& vac) {
    a.assign(k, 0);
    for (unsigned i = 0; i < k; ++i) a[i] = (key >> (kFieldBits * i)) & kFieldMask;
    vac = key >> (kFieldBits * kMaxOracleK);
}

// Zero-prefix normal form: empty subarrays move to the front, nonempty ones
// keep their relative order.
void canonicalize(std::vector<std::uint64_t>& a) {
    std::stable_partition(a.begin(), a.end(),
                          [](std::uint64_t v) { return v == 0; });
}

struct Edge {
    std::uint64_t key;   // destination state
    std::uint64_t cost;  // move cost
    unsigned index;      // 1-based subarray the item lands in (informational)
};

// All moves that add one item to (a, vac).  `slack` is the vacancy grant for
// fresh subarrays; `extended` also allows merging an arbitrary subset of the
// nonempty subarrays together with the new item (result at the largest
// participating index, then renormalized).
void item_moves(const std::vector<std::uint64_t>& a, std::uint64_t vac,
                std::uint64_t slack, bool extended, std::vector<Edge>& out) {
    out.clear();
    const unsigned k = static_cast<unsigned>(a.size());
    std::vector<std::uint64_t> b;
    if (vac > 0) {
        // The newest subarray still has reserved room: filling it is forced.
        unsigned fnz = 0;
        while (fnz < k && a[fnz] == 0) ++fnz;
        b = a;
        b[fnz] += 1;
        out.push_back({pack_state(b, vac - 1), 1, fnz + 1});
        return;
    }
    unsigned zeros = 0;
    while (zeros < k && a[zeros] == 0) ++zeros;
    if (zeros > 0) {
        // Open a fresh one-item subarray at the last empty slot.
        b = a;
        b[zeros - 1] = 1;
        out.push_back({pack_state(b, slack), 1, zeros});
    }
    if (!extended) {
        // Merge the prefix 1..i plus the new item into a fresh A_i, for any
        // i; empty subarrays in the prefix are legal and contribute nothing.
        // For i inside the empty prefix this collapses (after renormalizing)
        // to the open move above, which was pushed first and wins ties.
        std::uint64_t sum = 0;
        for (unsigned i = 0; i < k; ++i) {
            sum += a[i];
            b = a;
            for (unsigned j = 0; j < i; ++j) b[j] = 0;
            b[i] = sum + 1;
            canonicalize(b);
            out.push_back({pack_state(b, slack), sum + 1, i + 1});
        }
        return;
    }
    // Extended game (only defined for slack 0): merge any nonempty subset of
    // the nonempty subarrays with the new item.
    std::vector<unsigned> nz;
    for (unsigned i = 0; i < k; ++i)
        if (a[i] != 0) nz.push_back(i);
    const unsigned sets = 1u << nz.size();
    for (unsigned mask = 1; mask < sets; ++mask) {
        std::uint64_t sum = 0;
        unsigned hi = 0;
        for (unsigned t = 0; t < nz.size(); ++t)
            if (mask & (1u << t)) {
                sum += a[nz[t]];
                hi = nz[t];
            }
        b = a;
        for (unsigned t = 0; t < nz.size(); ++t)
            if (mask & (1u << t)) b[nz[t]] = 0;
        b[hi] = sum + 1;
        canonicalize(b);
        out.push_back({pack_state(b, 0), sum + 1, hi + 1});
    }
}

// Extended-game merges that do not consume an item (at least two subarrays).
void merge_moves(const std::vector<std::uint64_t>& a, std::vector<Edge>& out) {
    out.clear();
    const unsigned k = static_cast<unsigned>(a.size());
    std::vector<unsigned> nz;
    for (unsigned i = 0; i < k; ++i)
        if (a[i] != 0) nz.push_back(i);
    const unsigned sets = 1u << nz.size();
    std::vector<std::uint64_t> b;
    for (unsigned mask = 1; mask < sets; ++mask) {
        if (std::popcount(mask) < 2) continue;
        std::uint64_t sum = 0;
        unsigned hi = 0;
        for (unsigned t = 0; t < nz.size(); ++t)
            if (mask & (1u << t)) {
                sum += a[nz[t]];
                hi = nz[t];
            }
        b = a;
        for (unsigned t = 0; t < nz.size(); ++t)
            if (mask & (1u << t)) b[nz[t]] = 0;
        b[hi] = sum;
        canonicalize(b);
        out.push_back({pack_state(b, 0), sum, hi + 1});
    }
}

void relax(std::unordered_map<std::uint64_t, std::uint64_t>& m,
           std::uint64_t key, std::uint64_t cost) {
    auto [it, inserted] = m.try_emplace(key, cost);
    if (!inserted && cost < it->second) it->second = cost;
}

std::uint64_t to_u64(const mpz_class& v, const char* what) {
    if (v < 0 || !v.fits_ulong_p())
        throw std::overflow_error(std::string(what) + " exceeds 64 bits");
    return static_cast<std::uint64_t>(v.get_ui());
}

}  // namespace

mpz_class binomial(std::uint64_t n, std::uint64_t k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::uint64_t rank_n(std::uint64_t n_items, unsigned k) {
    if (k == 0) throw std::invalid_argument("rank_n: k must be positive");
    // Least n with C(n+k, k) >= N + 1, by doubling then bisection.
    auto enough = [&](std::uint64_t n) {
        mpz_class c = binomial(n + k, k);
        return mpz_cmp_ui(c.get_mpz_t(), n_items) > 0;  // C(n+k,k) - 1 >= N
    };
    if (enough(0)) return 0;
    std::uint64_t lo = 0, hi = 1;
    while (!enough(hi)) {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        (enough(mid) ? hi : lo) = mid;
    }
    return hi;
}

std::uint64_t cost_closed_form(std::uint64_t n_items, unsigned k) {
    const std::uint64_t n = rank_n(n_items, k);
    mpz_class cost = (mpz_class(n_items) + 1) * n - binomial(n + k, k + 1);
    return to_u64(cost, "cost_closed_form");
}

std::uint64_t marginal(std::uint64_t n_items, unsigned k) {
    if (n_items == 0)
        throw std::invalid_argument("marginal: undefined for zero items");
    // The unique n with C(n+k-1,k) <= N < C(n+k,k) is exactly the least n
    // with C(n+k,k) > N.
    return rank_n(n_items, k);
}

std::uint64_t cost_with_slack(std::uint64_t n_items, unsigned k, std::uint64_t l) {
    if (l == 0) return cost_closed_form(n_items, k);
    if (n_items % (l + 1) != 0)
        throw std::invalid_argument(
            "cost_with_slack: item count must be a multiple of slack + 1");
    mpz_class cost = mpz_class(l + 1) * cost_closed_form(n_items / (l + 1), k);
    return to_u64(cost, "cost_with_slack");
}

std::vector<std::vector<std::uint64_t>> optimal_states(std::uint64_t n_items,
                                                       unsigned k) {
    if (k == 0) throw std::invalid_argument("optimal_states: k must be positive");
    // Guard value: the unique n with C(n+k-1,k) - 1 <= N < C(n+k,k) - 1.  At
    // a boundary N = C(m+k,k) - 1 this is m + 1, one above rank_n.
    std::uint64_t n = rank_n(n_items, k);
    if (binomial(n + k, k) - 1 == static_cast<unsigned long>(n_items)) ++n;

    // Component bounds C(n+i-2, i) <= a_i <= C(n+i-1, i), clamped to the
    // remaining item budget during enumeration.  cover[i] bounds what levels
    // 1..i can hold in total, pruning branches with no feasible completion.
    std::vector<mpz_class> cover(k + 1);
    for (unsigned i = 1; i <= k; ++i) cover[i] = cover[i - 1] + binomial(n + i - 1, i);

    std::vector<std::vector<std::uint64_t>> found;
    std::vector<std::uint64_t> a(k, 0);
    // Choose a_k down to a_1; a zero entry forces all entries before it to
    // zero as well.
    std::function<void(unsigned, std::uint64_t, bool)> rec =
        [&](unsigned i, std::uint64_t rem, bool zero_above) {
            if (i == 0) {
                if (rem == 0) found.push_back(a);
                return;
            }
            if (mpz_cmp_ui(cover[i].get_mpz_t(), rem) < 0) return;
            mpz_class lo_z = binomial(n + i - 2, i);
            mpz_class floor_z = rem - cover[i - 1];  // leave a coverable rest
            if (floor_z > lo_z) lo_z = floor_z;
            mpz_class hi_z = binomial(n + i - 1, i);
            std::uint64_t lo =
                mpz_cmp_ui(lo_z.get_mpz_t(), rem) > 0 ? rem + 1 : lo_z.get_ui();
            std::uint64_t hi =
                mpz_cmp_ui(hi_z.get_mpz_t(), rem) > 0 ? rem : hi_z.get_ui();
            if (zero_above) {
                if (lo == 0) rec(i - 1, rem, true);
                return;
            }
            for (std::uint64_t v = lo; v <= hi && v <= rem; ++v) {
                a[i - 1] = v;
                rec(i - 1, rem - v, v == 0);
                a[i - 1] = 0;
            }
        };
    rec(k, n_items, false);
    std::sort(found.begin(), found.end());
    return found;
}

std::vector<std::uint64_t> optimal_state_witness(std::uint64_t n_items, unsigned k) {
    if (k == 0)
        throw std::invalid_argument("optimal_state_witness: k must be positive");
    std::uint64_t n = rank_n(n_items, k);
    if (binomial(n + k, k) - 1 == static_cast<unsigned long>(n_items)) ++n;

    // cover[i] = sum of the upper bounds over levels i+1..k.
    std::vector<mpz_class> cover(k + 1);
    for (unsigned i = k; i-- > 0;) cover[i] = cover[i + 1] + binomial(n + i, i + 1);

    // Greedy lexicographic minimum: each a_i takes the least value in its box
    // range that leaves the rest of the budget coverable by the levels above.
    std::vector<std::uint64_t> a(k);
    mpz_class rem = static_cast<unsigned long>(n_items);
    for (unsigned i = 0; i < k; ++i) {
        mpz_class v = rem - cover[i + 1];
        mpz_class lo = binomial(n + i - 1, i + 1);
        if (v < lo) v = lo;
        if (v > rem || v > binomial(n + i, i + 1))
            throw std::logic_error("optimal_state_witness: no state in the box");
        a[i] = to_u64(v, "witness component");
        rem -= v;
    }
    if (rem != 0) throw std::logic_error("optimal_state_witness: box misses N");
    return a;
}

std::uint64_t OracleTable::min_cost(std::uint64_t size) const {
    if (size >= best_by_size_.size())
        throw std::out_of_range("OracleTable: size beyond searched horizon");
    return best_by_size_[size];
}

std::uint64_t OracleTable::state_cost(const std::vector<std::uint64_t>& a) const {
    if (a.size() != k_)
        throw std::invalid_argument("OracleTable: state arity mismatch");
    std::uint64_t best = kNotReached;
    for (std::uint64_t vac = 0; vac <= l_; ++vac) {
        auto it = cost_.find(pack_state(a, vac));
        if (it != cost_.end()) best = std::min(best, it->second);
    }
    return best;
}

std::vector<std::vector<std::uint64_t>> OracleTable::optimal_final_states(
    std::uint64_t size) const {
    const std::uint64_t best = min_cost(size);
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> a;
    std::uint64_t vac = 0;
    for (const auto& [key, cost] : cost_) {
        if (cost != best) continue;
        unpack_state(key, k_, a, vac);
        std::uint64_t sum = 0;
        for (std::uint64_t v : a) sum += v;
        if (sum == size) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

OracleTable oracle_min_cost(const OracleOptions& opt) {
    if (opt.k < 1 || opt.k > kMaxOracleK)
        throw std::invalid_argument("oracle: k out of range");
    if (opt.n_items > kMaxOracleItems)
        throw std::invalid_argument("oracle: item count out of range");
    if (opt.l > kMaxOracleSlack)
        throw std::invalid_argument("oracle: slack out of range");
    if (opt.extended && opt.l != 0)
        throw std::invalid_argument("oracle: extended moves require zero slack");

    OracleTable t;
    t.k_ = opt.k;
    t.n_ = opt.n_items;
    t.l_ = opt.l;
    t.best_by_size_.assign(opt.n_items + 1, kInf);

    // Tentative costs per item count; every item move goes from layer m to
    // layer m+1, so layers settle in order.
    std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> tentative(
        opt.n_items + 1);
    tentative[0].emplace(pack_state(std::vector<std::uint64_t>(opt.k, 0), 0), 0);

    std::vector<std::uint64_t> a;
    std::uint64_t vac = 0;
    std::vector<Edge> edges;
    for (std::uint64_t m = 0; m <= opt.n_items; ++m) {
        auto& layer = tentative[m];
        if (opt.extended) {
            // Item-free merges stay inside the layer; settle it with a
            // Dijkstra pass (merge costs are positive).
            using Item = std::pair<std::uint64_t, std::uint64_t>;  // (cost, key)
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            for (const auto& [key, cost] : layer) pq.push({cost, key});
            std::unordered_map<std::uint64_t, std::uint64_t> settled;
            while (!pq.empty()) {
                auto [cost, key] = pq.top();
                pq.pop();
                auto lit = layer.find(key);
                if (lit == layer.end() || lit->second != cost) continue;
                if (!settled.emplace(key, cost).second) continue;
                unpack_state(key, opt.k, a, vac);
                merge_moves(a, edges);
                for (const Edge& e : edges) {
                    auto [it, inserted] = layer.try_emplace(e.key, cost + e.cost);
                    if (!inserted && cost + e.cost < it->second)
                        it->second = cost + e.cost;
                    else if (!inserted)
                        continue;
                    pq.push({cost + e.cost, e.key});
                }
            }
            layer = std::move(settled);
        }
        for (const auto& [key, cost] : layer) {
            t.cost_.emplace(key, cost);
            t.best_by_size_[m] = std::min(t.best_by_size_[m], cost);
            if (m == opt.n_items) continue;
            unpack_state(key, opt.k, a, vac);
            item_moves(a, vac, opt.l, opt.extended, edges);
            for (const Edge& e : edges) relax(tentative[m + 1], e.key, cost + e.cost);
        }
        tentative[m].clear();
    }
    return t;
}

std::vector<std::vector<std::uint64_t>> decompose_cost_table(std::uint64_t n_max,
                                                             unsigned k_max) {
    std::vector<std::vector<std::uint64_t>> table(
        k_max + 1, std::vector<std::uint64_t>(n_max + 1, kInf));
    for (unsigned k = 0; k <= k_max; ++k) table[k][0] = 0;
    for (unsigned k = 1; k <= k_max; ++k)
        for (std::uint64_t n = 1; n <= n_max; ++n) {
            std::uint64_t best = kInf;
            // Last-created subarray holds m items: opening it costs 1 and
            // filling it m-1 more, its left context is a (k)-game on m-1
            // items and the remainder a (k-1)-game.
            for (std::uint64_t m = 1; m <= n; ++m) {
                const std::uint64_t left = table[k][m - 1];
                const std::uint64_t right = table[k - 1][n - m];
                if (left == kInf || right == kInf) continue;
                best = std::min(best, m + left + right);
            }
            table[k][n] = best;
        }
    return table;
}

BinomialCounter::BinomialCounter(unsigned k) : k_(k), a_(k, 0), b_(k, 0) {
    if (k == 0) throw std::invalid_argument("BinomialCounter: k must be positive");
}

BinomialCounter::Move BinomialCounter::increment() {
    // Lowest digit allowed to grow: b_i < b_{i+1} with b_{k+1} = infinity.
    unsigned i = 0;
    while (i + 1 < k_ && b_[i] >= b_[i + 1]) ++i;
    std::uint64_t sum = 0;
    for (unsigned j = 0; j <= i; ++j) sum += a_[j];
    const std::uint64_t cost = sum + 1;
    for (unsigned j = 0; j < i; ++j) {
        a_[j] = 0;
        b_[j] = 0;
    }
    a_[i] = cost;
    b_[i] += 1;
    total_ += cost;
    n_ += 1;
    return {i + 1, cost};
}

Replay optimal_replay(std::uint64_t n_items, unsigned k) {
    if (k == 0) throw std::invalid_argument("optimal_replay: k must be positive");
    Replay rep;
    rep.final_state.assign(k, 0);
    if (n_items == 0) return rep;

    const std::uint64_t r = rank_n(n_items, k);
    if (binomial(r + k, k) - 1 == static_cast<unsigned long>(n_items)) {
        // Boundary count: the binomial counter is the unique optimal play.
        BinomialCounter c(k);
        rep.moves.reserve(n_items);
        for (std::uint64_t t = 0; t < n_items; ++t) {
            auto mv = c.increment();
            rep.moves.push_back({mv.index, mv.cost, c.a()});
        }
        rep.total_cost = c.total_cost();
        rep.final_state = c.a();
        return rep;
    }

    if (k > kMaxOracleK || n_items > 64)
        throw std::invalid_argument(
            "optimal_replay: exhaustive reconstruction limited to k <= 5, N <= 64");

    // Forward shortest-path search with parent links (basic game, no slack).
    struct Entry {
        std::uint64_t cost;
        std::uint64_t parent;
        std::uint64_t move_cost;
        unsigned index;
    };
    std::vector<std::unordered_map<std::uint64_t, Entry>> layer(n_items + 1);
    const std::uint64_t start = pack_state(std::vector<std::uint64_t>(k, 0), 0);
    layer[0].emplace(start, Entry{0, 0, 0, 0});

    std::vector<std::uint64_t> a;
    std::uint64_t vac = 0;
    std::vector<Edge> edges;
    for (std::uint64_t m = 0; m < n_items; ++m)
        for (const auto& [key, entry] : layer[m]) {
            unpack_state(key, k, a, vac);
            item_moves(a, vac, 0, false, edges);
            for (const Edge& e : edges) {
                const std::uint64_t cand = entry.cost + e.cost;
                auto [it, inserted] = layer[m + 1].try_emplace(
                    e.key, Entry{cand, key, e.cost, e.index});
                if (!inserted && cand < it->second.cost)
                    it->second = Entry{cand, key, e.cost, e.index};
            }
        }

    // Cheapest final state, ties broken lexicographically for determinism.
    std::uint64_t best_key = 0;
    std::uint64_t best_cost = kInf;
    std::vector<std::uint64_t> best_a;
    for (const auto& [key, entry] : layer[n_items]) {
        unpack_state(key, k, a, vac);
        if (entry.cost < best_cost || (entry.cost == best_cost && a < best_a)) {
            best_cost = entry.cost;
            best_key = key;
            best_a = a;
        }
    }

    rep.total_cost = best_cost;
    rep.final_state = best_a;
    rep.moves.resize(n_items);
    std::uint64_t key = best_key;
    for (std::uint64_t m = n_items; m > 0; --m) {
        const Entry& e = layer[m].at(key);
        unpack_state(key, k, a, vac);
        rep.moves[m - 1] = {e.index, e.move_cost, a};
        key = e.parent;
    }
    return rep;
}

}  // namespace rsz::game
