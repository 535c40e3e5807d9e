#pragma once

#include <cstdint>

#include "rsz/space_model.hpp"
#include "rsz/tiered_array.hpp"

namespace rsz {

// Double-ended resizable array built from two single-ended tiered arrays.
// `front_` stores the first items in reverse (its last slot is logical item
// 0), `back_` stores the rest in order, so both ends grow and shrink by the
// O(1)-amortized tiered operations.  A pop on an exhausted side first moves
// the nearest ceil(N/2) items over (preserving order), which costs O(N) but
// halves, so it stays O(1) amortized per deque operation.
class TieredDeque {
public:
    TieredDeque(SpaceTracker& tracker, TieredOptions opt = {});
    ~TieredDeque();

    std::uint64_t length() const { return front_.length() + back_.length(); }
    Word get(std::uint64_t i) const;
    void set(std::uint64_t i, Word v);

    void push_front(Word v) { front_.grow(v); sync(); }
    void push_back(Word v) { back_.grow(v); sync(); }
    void pop_front();
    void pop_back();

    std::uint64_t control_words() const {
        return kControlWords + front_.control_words() + back_.control_words();
    }
    std::uint64_t structural_events() const {
        return rebalances_ + front_.structural_events() + back_.structural_events();
    }
    std::uint64_t rebalances() const { return rebalances_; }

    const TieredArray& front_half() const { return front_; }
    const TieredArray& back_half() const { return back_; }

private:
    static constexpr std::uint64_t kControlWords = 4;

    void sync();
    void rebalance(TieredArray& from, TieredArray& to);

    SpaceTracker* t_;
    BlockHandle ctrl_;
    TieredArray front_;
    TieredArray back_;
    std::uint64_t rebalances_ = 0;
};

}  // namespace rsz
