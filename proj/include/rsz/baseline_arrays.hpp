#pragma once

#include <cstdint>

#include "rsz/resizable_array.hpp"
#include "rsz/space_model.hpp"

namespace rsz {

// Exact-fit baseline: the block always holds exactly N items, so every grow
// and shrink reallocates and moves everything.  N + O(1) words of storage,
// 2N + O(1) at the peak of a move, N(N+1)/2 total assignments to grow to N.
class NaiveArray final : public ResizableArray {
public:
    explicit NaiveArray(SpaceTracker& tracker) : t_(&tracker) {}
    ~NaiveArray() override;

    std::uint64_t length() const override { return n_; }
    Word get(std::uint64_t i) const override;
    void set(std::uint64_t i, Word v) override;
    void grow(Word v) override;
    void shrink() override;
    std::uint64_t control_words() const override { return kControlWords; }

private:
    static constexpr std::uint64_t kControlWords = 4;  // N, capacity, handle, spare

    SpaceTracker* t_;
    BlockHandle block_;
    BlockHandle ctrl_;
    std::uint64_t n_ = 0;
};

// Geometric expansion/contraction with exact rational factor alpha: expand a
// full array to capacity ceil((1+alpha)N); contract to ceil((1+alpha)N) when
// N falls to capacity/(1+alpha)^2.  Amortized (1+alpha)/alpha assignments
// per grow and 1/alpha per shrink.
class GeometricArray final : public ResizableArray {
public:
    GeometricArray(SpaceTracker& tracker, Rational alpha);
    ~GeometricArray() override;

    std::uint64_t length() const override { return n_; }
    Word get(std::uint64_t i) const override;
    void set(std::uint64_t i, Word v) override;
    void grow(Word v) override;
    void shrink() override;
    std::uint64_t control_words() const override { return kControlWords; }

    std::uint64_t capacity() const { return cap_; }

private:
    static constexpr std::uint64_t kControlWords = 6;  // N, cap, alpha, handle, spare

    void resize_to(std::uint64_t new_cap);

    SpaceTracker* t_;
    BlockHandle block_;
    BlockHandle ctrl_;
    std::uint64_t n_ = 0;
    std::uint64_t cap_ = 0;
    std::uint64_t ap_ = 1, aq_ = 1;  // alpha = ap/aq, both >= 1
};

// Hashed array tree: an index block of B handles to data blocks of B words
// each, with B a power of two kept in [sqrt(N), 4*sqrt(N)).  Item i lives at
// (i div B, i mod B).  N + O(sqrt N) words of storage; grows rebuild with B
// doubled at N = B^2, shrinks rebuild with B halved at N = B^2/16.
class HatArray final : public ResizableArray {
public:
    HatArray(SpaceTracker& tracker, std::uint64_t initial_b = 4);
    ~HatArray() override;

    std::uint64_t length() const override { return n_; }
    Word get(std::uint64_t i) const override;
    void set(std::uint64_t i, Word v) override;
    void grow(Word v) override;
    void shrink() override;
    std::uint64_t control_words() const override { return kControlWords; }
    std::uint64_t structural_events() const override { return rebuilds_; }

    std::uint64_t block_size() const { return b_; }
    std::uint64_t rebuilds() const { return rebuilds_; }

    struct Position {
        std::uint64_t block;
        std::uint64_t offset;
    };
    Position locate(std::uint64_t i) const {
        return {i >> log_b_, i & (b_ - 1)};
    }

private:
    static constexpr std::uint64_t kControlWords = 6;  // N, B, index handle, counts

    void rebuild(std::uint64_t new_b);
    BlockHandle data_block(std::uint64_t k) const;

    SpaceTracker* t_;
    BlockHandle index_;
    BlockHandle ctrl_;
    std::uint64_t n_ = 0;
    std::uint64_t b_ = 4;
    unsigned log_b_ = 2;
    std::uint64_t data_blocks_ = 0;  // allocated data blocks (incl. one spare at most)
    std::uint64_t min_b_ = 4;
    std::uint64_t rebuilds_ = 0;
};

// Block sizes 1, 2, 3, ...: block l holds items l(l-1)/2 .. l(l+1)/2 - 1, so
// item i is found with one integer square root and items are never moved
// (grow-only runs perform exactly N assignments).  N + O(sqrt N) words.
// The index of block handles is itself grown/shrunk geometrically.
class BrodnikArray final : public ResizableArray {
public:
    explicit BrodnikArray(SpaceTracker& tracker);
    ~BrodnikArray() override;

    std::uint64_t length() const override { return n_; }
    Word get(std::uint64_t i) const override;
    void set(std::uint64_t i, Word v) override;
    void grow(Word v) override;
    void shrink() override;
    std::uint64_t control_words() const override { return kControlWords; }

    struct Position {
        std::uint64_t block;   // 1-based block number
        std::uint64_t offset;  // offset within the block
    };
    static Position locate(std::uint64_t i);

private:
    static constexpr std::uint64_t kControlWords = 6;

    // full_blocks_ = number of completely occupied blocks k such that
    // N >= k(k+1)/2; the partially filled block (if any) is block k+1.
    std::uint64_t used_blocks() const;     // blocks holding at least one item
    void reindex(std::uint64_t new_cap);   // move handle table to a new size

    SpaceTracker* t_;
    BlockHandle index_;
    BlockHandle ctrl_;
    std::uint64_t n_ = 0;
    std::uint64_t index_cap_ = 0;
    std::uint64_t alloc_blocks_ = 0;  // data blocks allocated (incl. trailing spare)
};

// Exact integer square root (floor), used by the block-number formula.
std::uint64_t isqrt(std::uint64_t x);

}  // namespace rsz
