#include "rsz/tiered_deque.hpp"

#include <stdexcept>

namespace rsz {

TieredDeque::TieredDeque(SpaceTracker& tracker, TieredOptions opt)
    : t_(&tracker), front_(tracker, opt), back_(tracker, opt) {
    ctrl_ = t_->allocate(kControlWords);
}

TieredDeque::~TieredDeque() { t_->deallocate(ctrl_); }

void TieredDeque::sync() {
    t_->write_ref(ctrl_, 0, front_.length());
    t_->write_ref(ctrl_, 1, back_.length());
}

Word TieredDeque::get(std::uint64_t i) const {
    if (i >= length())
        throw std::out_of_range("TieredDeque::get: index out of range");
    std::uint64_t f = front_.length();
    return i < f ? front_.get(f - 1 - i) : back_.get(i - f);
}

void TieredDeque::set(std::uint64_t i, Word v) {
    if (i >= length())
        throw std::out_of_range("TieredDeque::set: index out of range");
    std::uint64_t f = front_.length();
    if (i < f)
        front_.set(f - 1 - i, v);
    else
        back_.set(i - f, v);
}

// Moves the ceil(N/2) items nearest the exhausted side from `from` into
// `to`, preserving deque order.  Both halves store those items adjacent to
// their own tail, so the move is `to.grow` of from[m-1] .. from[0] followed
// by sliding the survivors of `from` down m slots.
void TieredDeque::rebalance(TieredArray& from, TieredArray& to) {
    std::uint64_t n = from.length();
    std::uint64_t m = (n + 1) / 2;
    for (std::uint64_t t = 0; t < m; ++t) to.grow(from.get(m - 1 - t));
    for (std::uint64_t j = 0; j + m < n; ++j) from.set(j, from.get(j + m));
    for (std::uint64_t t = 0; t < m; ++t) from.shrink();
    ++rebalances_;
}

void TieredDeque::pop_front() {
    if (length() == 0)
        throw std::logic_error("TieredDeque::pop_front: deque is empty");
    if (front_.length() == 0) rebalance(back_, front_);
    front_.shrink();
    sync();
}

void TieredDeque::pop_back() {
    if (length() == 0)
        throw std::logic_error("TieredDeque::pop_back: deque is empty");
    if (back_.length() == 0) rebalance(front_, back_);
    back_.shrink();
    sync();
}

}  // namespace rsz
