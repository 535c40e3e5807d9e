#pragma once

#include <cstdint>
#include <vector>

namespace rsz {

// Unit of accounting: one word holds one item, one block reference, or one
// counter value.  All space figures below are in words.
using Word = std::uint64_t;

// Opaque reference to a tracked block.  A handle packs a slot index and a
// generation tag into a single word so that data structures may store block
// references inside other tracked blocks at a cost of one word per reference.
// A default-constructed handle is null.
class BlockHandle {
public:
    BlockHandle() = default;

    bool null() const { return bits_ == 0; }
    Word to_word() const { return bits_; }
    static BlockHandle from_word(Word w) {
        BlockHandle h;
        h.bits_ = w;
        return h;
    }

    friend bool operator==(BlockHandle a, BlockHandle b) { return a.bits_ == b.bits_; }
    friend bool operator!=(BlockHandle a, BlockHandle b) { return a.bits_ != b.bits_; }

private:
    friend class SpaceTracker;
    BlockHandle(std::uint32_t slot, std::uint32_t gen)
        : bits_((static_cast<Word>(gen) << 32) | (slot + 1u)) {}
    std::uint32_t slot() const { return static_cast<std::uint32_t>(bits_ & 0xffffffffu) - 1u; }
    std::uint32_t gen() const { return static_cast<std::uint32_t>(bits_ >> 32); }

    Word bits_ = 0;  // 0 = null; else (gen << 32) | (slot + 1)
};

// Counter snapshot, cheap to copy around in tests and benchmark rows.
struct SpaceReport {
    std::uint64_t live_words = 0;     // words in currently allocated blocks
    std::uint64_t peak_words = 0;     // max of live_words since last reset_peak()
    std::uint64_t allocations = 0;    // blocks allocated so far
    std::uint64_t deallocations = 0;  // blocks deallocated so far
};

// Allocation arena that every array implementation must obtain memory from.
// It meters space (live and peak words) and work (item assignments separately
// from reference/counter writes, since the amortized bounds of the array
// implementations only count item moves).
//
// Rules enforced here:
//   - blocks have length >= 1;
//   - allocation costs zero assignments and the new block reads as zeroes;
//   - copy(...) counts exactly `len` item assignments;
//   - any use of a deallocated or foreign handle is an error (generation
//     tags make stale handles detectable, not merely UB).
class SpaceTracker {
public:
    SpaceTracker() = default;
    SpaceTracker(const SpaceTracker&) = delete;
    SpaceTracker& operator=(const SpaceTracker&) = delete;

    BlockHandle allocate(std::uint64_t length);
    void deallocate(BlockHandle h);

    // Item access.  write() counts one assignment; read() is free.
    Word read(BlockHandle h, std::uint64_t i) const;
    void write(BlockHandle h, std::uint64_t i, Word v);

    // Reference/counter write: same bounds checking, separate counter.
    void write_ref(BlockHandle h, std::uint64_t i, Word v);

    // Copies len words from src[src_at..] to dst[dst_at..]; exactly len
    // assignments.  src == dst is allowed only for non-overlapping ranges.
    void copy(BlockHandle src, std::uint64_t src_at,
              BlockHandle dst, std::uint64_t dst_at, std::uint64_t len);

    std::uint64_t length_of(BlockHandle h) const;
    bool valid(BlockHandle h) const;

    SpaceReport report() const {
        return {live_words_, peak_words_, allocations_, deallocations_};
    }
    std::uint64_t live_words() const { return live_words_; }
    std::uint64_t peak_words() const { return peak_words_; }
    std::uint64_t assignments() const { return assignments_; }
    std::uint64_t ref_writes() const { return ref_writes_; }
    std::uint64_t live_blocks() const { return live_blocks_; }

    // Starts a new peak-measurement window: peak_words := live_words.
    void reset_peak() { peak_words_ = live_words_; }

private:
    struct Slot {
        std::vector<Word> words;
        std::uint32_t gen = 1;
        bool live = false;
    };

    const Slot& checked_slot(BlockHandle h) const;

    std::vector<Slot> slots_;
    std::vector<std::uint32_t> free_slots_;
    std::uint64_t live_words_ = 0;
    std::uint64_t peak_words_ = 0;
    std::uint64_t live_blocks_ = 0;
    std::uint64_t allocations_ = 0;
    std::uint64_t deallocations_ = 0;
    std::uint64_t assignments_ = 0;
    std::uint64_t ref_writes_ = 0;
};

}  // namespace rsz
