#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace rsz::game {

// Exact binomial coefficient (arbitrary precision; this module does no
// floating-point arithmetic).
mpz_class binomial(std::uint64_t n, std::uint64_t k);

// --------------------------------------------------------------- the game
//
// k subarrays of sizes a_1..a_k (zero-prefix normal form: empties first).
// Items arrive one at a time.  If the newest subarray still has a vacancy
// (up to l are granted on creation), the item must fill it (cost 1).  Else
// if some subarray is empty, a new one-item subarray opens at the last
// empty index (cost 1).  Otherwise the player merges subarrays 1..i plus
// the new item into a fresh subarray at index i, paying 1 + a_1 + ... + a_i.
// C_{N,k,l} is the cheapest way to hold N items.

// Least n >= 0 with N <= C(n+k, k) - 1.  At boundary values of N both this
// n and n+1 satisfy the cost formula; the smaller one is returned.
std::uint64_t rank_n(std::uint64_t n_items, unsigned k);

// C_{N,k} = (N+1)n - C(n+k, k+1) with n = rank_n(N, k).
std::uint64_t cost_closed_form(std::uint64_t n_items, unsigned k);

// The unique n with C(n+k-1, k) <= N < C(n+k, k); equals the cost increase
// C_{N,k} - C_{N-1,k}.  Requires N >= 1.
std::uint64_t marginal(std::uint64_t n_items, unsigned k);

// C_{N,k,l} = (l+1) * C_{N/(l+1), k} — defined only when (l+1) divides N.
std::uint64_t cost_with_slack(std::uint64_t n_items, unsigned k, std::uint64_t l);

// All minimum-cost final states for N items: the a in zero-prefix form with
// sum N and C(n+i-2, i) <= a_i <= C(n+i-1, i), where n is the unique value
// with C(n+k-1, k) - 1 <= N < C(n+k, k) - 1.  Sorted lexicographically.
std::vector<std::vector<std::uint64_t>> optimal_states(std::uint64_t n_items, unsigned k);

// The lexicographically least minimum-cost final state — the front of
// optimal_states, built greedily in O(k) big-number steps so it stays cheap
// when the full set is far too large to enumerate.
std::vector<std::uint64_t> optimal_state_witness(std::uint64_t n_items, unsigned k);

// ------------------------------------------------------ brute-force oracle

struct OracleOptions {
    std::uint64_t n_items = 0;
    unsigned k = 1;
    std::uint64_t l = 0;      // vacancies granted to a fresh subarray
    bool extended = false;    // also allow subset merges (with or without a
                              // new item); only defined for l == 0
};

// Result of an exhaustive forward shortest-path search over the state graph.
// Independent of every closed form above: it knows only the move rules.
class OracleTable {
public:
    std::uint64_t min_cost(std::uint64_t size) const;  // C_{size,k,l}

    // Minimum cost over vacancy counts to reach state `a` (zero-prefix
    // form); kNotReached if the state is unreachable.
    std::uint64_t state_cost(const std::vector<std::uint64_t>& a) const;

    // All states of the given size whose cost equals min_cost(size).
    std::vector<std::vector<std::uint64_t>> optimal_final_states(std::uint64_t size) const;

    static constexpr std::uint64_t kNotReached = ~std::uint64_t{0};

private:
    friend OracleTable oracle_min_cost(const OracleOptions&);
    unsigned k_ = 1;
    std::uint64_t n_ = 0;
    std::uint64_t l_ = 0;
    std::vector<std::uint64_t> best_by_size_;
    std::unordered_map<std::uint64_t, std::uint64_t> cost_;  // packed state -> cost
};

OracleTable oracle_min_cost(const OracleOptions& opt);

// Memoized solver for the same quantity built on the decomposition
// C_{N,k} = min_m { m + C_{m-1,k} + C_{N-m,k-1} }; cross-checks the oracle
// and the closed form.  Returns table[k][N] for k in [0, k_max], N in
// [0, n_max].
std::vector<std::vector<std::uint64_t>> decompose_cost_table(std::uint64_t n_max,
                                                             unsigned k_max);

// ---------------------------------------------------------------- counter
//
// The binomial counter: incrementing digit i (the lowest with b_i < b_{i+1},
// sentinel b_{k+1} = infinity) merges subarrays 1..i with the new item, so
// a_i = 1 + sum_{j<=i} a_j old values and the move costs the same amount.
// Its move sequence is the unique optimal play at N = C(n+k,k) - 1.
class BinomialCounter {
public:
    explicit BinomialCounter(unsigned k);

    struct Move {
        unsigned index;      // 1-based digit that was incremented
        std::uint64_t cost;  // 1 + sum of merged subarray sizes
    };
    Move increment();

    const std::vector<std::uint64_t>& a() const { return a_; }
    const std::vector<std::uint64_t>& b() const { return b_; }
    std::uint64_t total_cost() const { return total_; }
    std::uint64_t size() const { return n_; }

private:
    unsigned k_;
    std::vector<std::uint64_t> a_, b_;  // 0-based storage for a_1..a_k
    std::uint64_t total_ = 0;
    std::uint64_t n_ = 0;
};

// ----------------------------------------------------------------- replay

struct ReplayMove {
    unsigned index;                         // subarray receiving the item (1-based)
    std::uint64_t cost;                     // move cost
    std::vector<std::uint64_t> state_after; // zero-prefix a-vector
};

struct Replay {
    std::vector<ReplayMove> moves;
    std::uint64_t total_cost = 0;
    std::vector<std::uint64_t> final_state;
};

// A minimum-cost play for N items: the binomial-counter sequence when
// N = C(n+k,k) - 1, otherwise a sequence reconstructed from the oracle
// (desk scale: N <= 64, k <= 6).
Replay optimal_replay(std::uint64_t n_items, unsigned k);

}  // namespace rsz::game
