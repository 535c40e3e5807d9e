#include "rsz/space_model.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace rsz {

BlockHandle SpaceTracker::allocate(std::uint64_t length) {
    if (length == 0)
        throw std::invalid_argument("SpaceTracker::allocate: zero-length block");
    std::uint32_t slot;
    if (!free_slots_.empty()) {
        slot = free_slots_.back();
        free_slots_.pop_back();
    } else {
        slot = static_cast<std::uint32_t>(slots_.size());
        slots_.emplace_back();
    }
    Slot& s = slots_[slot];
    assert(!s.live);
    s.words.assign(length, 0);  // fresh blocks read as zeroes
    s.live = true;
    live_words_ += length;
    peak_words_ = std::max(peak_words_, live_words_);
    ++live_blocks_;
    ++allocations_;
    return BlockHandle(slot, s.gen);
}

void SpaceTracker::deallocate(BlockHandle h) {
    const Slot& s = checked_slot(h);
    std::uint32_t slot = h.slot();
    live_words_ -= s.words.size();
    --live_blocks_;
    ++deallocations_;
    Slot& ms = slots_[slot];
    ms.words.clear();
    ms.words.shrink_to_fit();
    ms.live = false;
    ++ms.gen;  // invalidates all outstanding handles to this slot
    free_slots_.push_back(slot);
}

const SpaceTracker::Slot& SpaceTracker::checked_slot(BlockHandle h) const {
    if (h.null())
        throw std::invalid_argument("SpaceTracker: null block handle");
    std::uint32_t slot = h.slot();
    if (slot >= slots_.size() || !slots_[slot].live || slots_[slot].gen != h.gen())
        throw std::invalid_argument("SpaceTracker: stale or foreign block handle");
    return slots_[slot];
}

Word SpaceTracker::read(BlockHandle h, std::uint64_t i) const {
    const Slot& s = checked_slot(h);
    if (i >= s.words.size())
        throw std::out_of_range("SpaceTracker::read: slot index out of range");
    return s.words[i];
}

void SpaceTracker::write(BlockHandle h, std::uint64_t i, Word v) {
    const Slot& s = checked_slot(h);
    if (i >= s.words.size())
        throw std::out_of_range("SpaceTracker::write: slot index out of range");
    slots_[h.slot()].words[i] = v;
    ++assignments_;
}

void SpaceTracker::write_ref(BlockHandle h, std::uint64_t i, Word v) {
    const Slot& s = checked_slot(h);
    if (i >= s.words.size())
        throw std::out_of_range("SpaceTracker::write_ref: slot index out of range");
    slots_[h.slot()].words[i] = v;
    ++ref_writes_;
}

void SpaceTracker::copy(BlockHandle src, std::uint64_t src_at,
                        BlockHandle dst, std::uint64_t dst_at, std::uint64_t len) {
    if (len == 0)
        throw std::invalid_argument("SpaceTracker::copy: zero-length copy");
    const Slot& ss = checked_slot(src);
    const Slot& ds = checked_slot(dst);
    if (src_at + len > ss.words.size())
        throw std::out_of_range("SpaceTracker::copy: source range out of range");
    if (dst_at + len > ds.words.size())
        throw std::out_of_range("SpaceTracker::copy: destination range out of range");
    if (src == dst && src_at + len > dst_at && dst_at + len > src_at)
        throw std::invalid_argument("SpaceTracker::copy: overlapping ranges");
    const Word* from = ss.words.data() + src_at;
    Word* to = slots_[dst.slot()].words.data() + dst_at;
    std::copy(from, from + len, to);
    assignments_ += len;
}

std::uint64_t SpaceTracker::length_of(BlockHandle h) const {
    return checked_slot(h).words.size();
}

bool SpaceTracker::valid(BlockHandle h) const {
    if (h.null()) return false;
    std::uint32_t slot = h.slot();
    return slot < slots_.size() && slots_[slot].live && slots_[slot].gen == h.gen();
}

}  // namespace rsz
