#include "rsz/baseline_arrays.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rsz/bitkit.hpp"

namespace rsz {

namespace {

void require_nonempty(std::uint64_t n, const char* who) {
    if (n == 0)
        throw std::logic_error(std::string(who) + ": array is empty");
}

void require_index(std::uint64_t i, std::uint64_t n, const char* who) {
    if (i >= n)
        throw std::out_of_range(std::string(who) + ": index out of range");
}

}  // namespace

std::uint64_t isqrt(std::uint64_t x) {
    if (x == 0) return 0;
    auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    // std::sqrt can be off by one in either direction at 64-bit scale.
    using u128 = unsigned __int128;
    while (u128(s + 1) * (s + 1) <= x) ++s;
    while (u128(s) * s > x) --s;
    return s;
}

// ---------------------------------------------------------------- NaiveArray

NaiveArray::~NaiveArray() {
    if (!block_.null()) t_->deallocate(block_);
    if (!ctrl_.null()) t_->deallocate(ctrl_);
}

Word NaiveArray::get(std::uint64_t i) const {
    require_index(i, n_, "NaiveArray::get");
    return t_->read(block_, i);
}

void NaiveArray::set(std::uint64_t i, Word v) {
    require_index(i, n_, "NaiveArray::set");
    t_->write(block_, i, v);
}

void NaiveArray::grow(Word v) {
    if (ctrl_.null()) ctrl_ = t_->allocate(kControlWords);
    BlockHandle bigger = t_->allocate(n_ + 1);
    if (n_ > 0) {
        t_->copy(block_, 0, bigger, 0, n_);
        t_->deallocate(block_);
    }
    block_ = bigger;
    t_->write(block_, n_, v);
    ++n_;
    t_->write_ref(ctrl_, 0, n_);
}

void NaiveArray::shrink() {
    require_nonempty(n_, "NaiveArray::shrink");
    if (n_ == 1) {
        t_->deallocate(block_);
        block_ = BlockHandle();
        n_ = 0;
    } else {
        BlockHandle smaller = t_->allocate(n_ - 1);
        t_->copy(block_, 0, smaller, 0, n_ - 1);
        t_->deallocate(block_);
        block_ = smaller;
        --n_;
    }
    t_->write_ref(ctrl_, 0, n_);
}

// ------------------------------------------------------------ GeometricArray

GeometricArray::GeometricArray(SpaceTracker& tracker, Rational alpha)
    : t_(&tracker), ap_(alpha.num), aq_(alpha.den) {
    if (ap_ == 0 || aq_ == 0)
        throw std::invalid_argument("GeometricArray: alpha must be positive");
    ctrl_ = t_->allocate(kControlWords);
}

GeometricArray::~GeometricArray() {
    if (!block_.null()) t_->deallocate(block_);
    t_->deallocate(ctrl_);
}

Word GeometricArray::get(std::uint64_t i) const {
    require_index(i, n_, "GeometricArray::get");
    return t_->read(block_, i);
}

void GeometricArray::set(std::uint64_t i, Word v) {
    require_index(i, n_, "GeometricArray::set");
    t_->write(block_, i, v);
}

void GeometricArray::resize_to(std::uint64_t new_cap) {
    assert(new_cap >= n_);
    if (new_cap == 0) {
        if (!block_.null()) {
            t_->deallocate(block_);
            block_ = BlockHandle();
        }
        cap_ = 0;
        return;
    }
    BlockHandle moved = t_->allocate(new_cap);
    if (n_ > 0) t_->copy(block_, 0, moved, 0, n_);
    if (!block_.null()) t_->deallocate(block_);
    block_ = moved;
    cap_ = new_cap;
    t_->write_ref(ctrl_, 1, cap_);
}

void GeometricArray::grow(Word v) {
    if (n_ == cap_) {
        // capacity after a resize is ceil((1+alpha) * N), N = current items
        using u128 = unsigned __int128;
        u128 want = (u128(n_) * (ap_ + aq_) + aq_ - 1) / aq_;
        std::uint64_t new_cap = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(want));
        resize_to(new_cap);
    }
    t_->write(block_, n_, v);
    ++n_;
    t_->write_ref(ctrl_, 0, n_);
}

void GeometricArray::shrink() {
    require_nonempty(n_, "GeometricArray::shrink");
    --n_;
    t_->write_ref(ctrl_, 0, n_);
    // contract when N <= capacity / (1+alpha)^2, keeping arithmetic exact
    using u128 = unsigned __int128;
    if (u128(n_) * (ap_ + aq_) * (ap_ + aq_) <= u128(cap_) * aq_ * aq_) {
        u128 want = (u128(n_) * (ap_ + aq_) + aq_ - 1) / aq_;
        auto new_cap = static_cast<std::uint64_t>(want);
        if (new_cap < cap_) resize_to(new_cap);
    }
}

// ------------------------------------------------------------------ HatArray

HatArray::HatArray(SpaceTracker& tracker, std::uint64_t initial_b) : t_(&tracker) {
    if (initial_b < 4 || !std::has_single_bit(initial_b))
        throw std::invalid_argument("HatArray: B must be a power of two >= 4");
    b_ = min_b_ = initial_b;
    log_b_ = msb(b_);
    ctrl_ = t_->allocate(kControlWords);
    index_ = t_->allocate(b_);
}

HatArray::~HatArray() {
    for (std::uint64_t k = 0; k < data_blocks_; ++k) t_->deallocate(data_block(k));
    t_->deallocate(index_);
    t_->deallocate(ctrl_);
}

BlockHandle HatArray::data_block(std::uint64_t k) const {
    return BlockHandle::from_word(t_->read(index_, k));
}

Word HatArray::get(std::uint64_t i) const {
    require_index(i, n_, "HatArray::get");
    Position p = locate(i);
    return t_->read(data_block(p.block), p.offset);
}

void HatArray::set(std::uint64_t i, Word v) {
    require_index(i, n_, "HatArray::set");
    Position p = locate(i);
    t_->write(data_block(p.block), p.offset, v);
}

void HatArray::grow(Word v) {
    if (n_ == b_ * b_) rebuild(2 * b_);
    Position p = locate(n_);
    if (p.offset == 0 && data_blocks_ == p.block) {
        // no spare block left over from earlier shrinks; start a fresh one
        t_->write_ref(index_, p.block, t_->allocate(b_).to_word());
        ++data_blocks_;
    }
    t_->write(data_block(p.block), p.offset, v);
    ++n_;
    t_->write_ref(ctrl_, 0, n_);
}

void HatArray::shrink() {
    require_nonempty(n_, "HatArray::shrink");
    if (b_ > min_b_ && n_ == b_ * b_ / 16) rebuild(b_ / 2);
    --n_;
    t_->write_ref(ctrl_, 0, n_);
    // deallocate the trailing data block only once the last two are empty
    std::uint64_t used = (n_ + b_ - 1) >> log_b_;
    if (data_blocks_ >= used + 2) {
        t_->deallocate(data_block(data_blocks_ - 1));
        --data_blocks_;
    }
}

void HatArray::rebuild(std::uint64_t new_b) {
    BlockHandle new_index = t_->allocate(new_b);
    std::uint64_t new_blocks = 0;
    BlockHandle cur;  // new data block being filled
    std::uint64_t p = 0;
    while (p < n_) {
        std::uint64_t old_off = p & (b_ - 1);
        std::uint64_t new_off = p & (new_b - 1);
        if (new_off == 0) {
            cur = t_->allocate(new_b);
            t_->write_ref(new_index, new_blocks, cur.to_word());
            ++new_blocks;
        }
        std::uint64_t run = std::min({b_ - old_off, new_b - new_off, n_ - p});
        t_->copy(data_block(p >> log_b_), old_off, cur, new_off, run);
        p += run;
        if ((p & (b_ - 1)) == 0 || p == n_)  // old block fully drained
            t_->deallocate(data_block((p - 1) >> log_b_));
    }
    // drop any blocks past the items (at most one spare, plus all of them
    // when n_ == 0, which cannot happen on the current triggers)
    for (std::uint64_t k = (n_ + b_ - 1) >> log_b_; k < data_blocks_; ++k)
        t_->deallocate(data_block(k));
    t_->deallocate(index_);
    index_ = new_index;
    b_ = new_b;
    log_b_ = msb(b_);
    data_blocks_ = new_blocks;
    ++rebuilds_;
    t_->write_ref(ctrl_, 1, b_);
}

// -------------------------------------------------------------- BrodnikArray

BrodnikArray::BrodnikArray(SpaceTracker& tracker) : t_(&tracker) {
    ctrl_ = t_->allocate(kControlWords);
}

BrodnikArray::~BrodnikArray() {
    for (std::uint64_t k = 0; k < alloc_blocks_; ++k)
        t_->deallocate(BlockHandle::from_word(t_->read(index_, k)));
    if (!index_.null()) t_->deallocate(index_);
    t_->deallocate(ctrl_);
}

BrodnikArray::Position BrodnikArray::locate(std::uint64_t i) {
    // block number of item i (0-based) among blocks of sizes 1, 2, 3, ...
    std::uint64_t l = (isqrt(8 * i + 1) + 1) / 2;
    return {l, i - l * (l - 1) / 2};
}

std::uint64_t BrodnikArray::used_blocks() const {
    return n_ == 0 ? 0 : locate(n_ - 1).block;
}

Word BrodnikArray::get(std::uint64_t i) const {
    require_index(i, n_, "BrodnikArray::get");
    Position p = locate(i);
    return t_->read(BlockHandle::from_word(t_->read(index_, p.block - 1)), p.offset);
}

void BrodnikArray::set(std::uint64_t i, Word v) {
    require_index(i, n_, "BrodnikArray::set");
    Position p = locate(i);
    t_->write(BlockHandle::from_word(t_->read(index_, p.block - 1)), p.offset, v);
}

void BrodnikArray::reindex(std::uint64_t new_cap) {
    assert(new_cap >= alloc_blocks_);
    BlockHandle moved = t_->allocate(new_cap);
    // handle moves are reference writes, not item assignments
    for (std::uint64_t k = 0; k < alloc_blocks_; ++k)
        t_->write_ref(moved, k, t_->read(index_, k));
    if (!index_.null()) t_->deallocate(index_);
    index_ = moved;
    index_cap_ = new_cap;
}

void BrodnikArray::grow(Word v) {
    Position p = locate(n_);
    if (p.offset == 0 && alloc_blocks_ < p.block) {
        if (p.block > index_cap_) reindex(std::max<std::uint64_t>(4, 2 * index_cap_));
        t_->write_ref(index_, p.block - 1, t_->allocate(p.block).to_word());
        ++alloc_blocks_;
    }
    t_->write(BlockHandle::from_word(t_->read(index_, p.block - 1)), p.offset, v);
    ++n_;
    t_->write_ref(ctrl_, 0, n_);
}

void BrodnikArray::shrink() {
    require_nonempty(n_, "BrodnikArray::shrink");
    --n_;
    t_->write_ref(ctrl_, 0, n_);
    // keep at most one trailing empty block
    std::uint64_t used = used_blocks();
    if (alloc_blocks_ >= used + 2) {
        t_->deallocate(BlockHandle::from_word(t_->read(index_, alloc_blocks_ - 1)));
        --alloc_blocks_;
        if (index_cap_ >= 8 && alloc_blocks_ <= index_cap_ / 4)
            reindex(index_cap_ / 2);
    }
}

}  // namespace rsz
