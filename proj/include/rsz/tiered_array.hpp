#pragma once

#include <cstdint>
#include <vector>

#include "rsz/bitkit.hpp"
#include "rsz/resizable_array.hpp"
#include "rsz/space_model.hpp"

namespace rsz {

// Options for TieredArray.  `levels` (r) is fixed for the lifetime of the
// instance; the block size B is a power of two that the structure doubles
// and halves as N crosses B^r and (B/4)^r.
struct TieredOptions {
    unsigned levels = 3;                  // r >= 2
    std::uint64_t min_block = 4;          // smallest B; power of two >= 4
    std::uint64_t chunk = 0;              // 0 = off, kChunkAuto, or a fixed power-of-two T
    bool force_explicit_prefix = false;   // use the prefix block even when packed fits

    static constexpr std::uint64_t kChunkAuto = 1;
};

// Resizable array with r levels of blocks of sizes B, B^2, ..., B^(r-1).
// Level i holds n_i complete blocks with n_i in [0, 2B]; appends go into a
// single partial block of size B counted by n_0 < B.  Writing the level
// counts as a redundant base-B number N = sum n_i B^i lets grow and shrink
// touch one digit at a time, and packing the digits into two words (see
// PackedCounters) gives a constant-time index-to-block mapping.
//
// Storage is N + O(rB) words; a grow or shrink reorganizes at most one new
// block of size B^(r-1) at a time, so no operation ever holds more than
// B^(r-1) + 2B + O(1) words beyond the live structure (with chunking, T
// replaces B^(r-1)).
class TieredArray final : public ResizableArray {
public:
    TieredArray(SpaceTracker& tracker, TieredOptions opt = {});
    ~TieredArray() override;

    std::uint64_t length() const override { return n_; }
    Word get(std::uint64_t i) const override;
    void set(std::uint64_t i, Word v) override;
    void grow(Word v) override;
    void shrink() override;
    std::uint64_t control_words() const override;
    std::uint64_t structural_events() const override {
        return combines_ + splits_ + rebuilds_;
    }

    // Re-packs all N items greedily (largest blocks first) with block size
    // new_b, which must be a power of two >= min_block large enough to hold
    // the current contents.  Exactly N item assignments; old blocks are
    // freed as they drain so the transient overhead stays one block deep.
    void rebuild_to(std::uint64_t new_b);

    std::uint64_t block_size() const { return B_; }
    unsigned levels() const { return r_; }
    std::uint64_t chunk_threshold() const { return T_; }  // 0 = chunking off
    bool packed_counters_active() const { return packed_; }

    struct Stats {
        std::uint64_t combines = 0;
        std::uint64_t splits = 0;
        std::uint64_t rebuilds = 0;
    };
    Stats stats() const { return {combines_, splits_, rebuilds_}; }

    // Item i lives at `offset` within `block` of `level`; level 0 is the
    // partial block (block is then 0).  Constant time.
    struct Location {
        unsigned level;
        std::uint64_t block;
        std::uint64_t offset;
        friend bool operator==(const Location&, const Location&) = default;
    };
    Location locate(std::uint64_t i) const;

    // Full consistency walk: recomputes N from the level counts, checks
    // every block's physical layout (including chunk indexes), and checks
    // that the counter/handle blocks mirror the in-core state.  Throws
    // std::logic_error on the first violation.
    struct AuditReport {
        std::uint64_t B = 0;
        unsigned r = 0;
        std::vector<std::uint64_t> counts;  // counts[0] = n_0, counts[i] = n_i
        bool has_partial = false;
        bool has_spare = false;
        bool packed_path = false;
        std::uint64_t chunk_threshold = 0;
        std::uint64_t data_words = 0;       // words in data blocks + chunk indexes
        std::uint64_t index_words = 0;      // words in the r-1 level index blocks
    };
    AuditReport audit() const;

private:
    // control block slot map
    enum CtrlSlot : std::uint64_t {
        kCtrlN = 0,
        kCtrlB,
        kCtrlT,
        kCtrlPackedLo,
        kCtrlPackedHi,
        kCtrlSpare,
        kCtrlScratch,  // handle of a finished block awaiting its index slot
        kCtrlSlots = 16,
    };

    class Drain;

    std::uint64_t level_size(unsigned i) const { return std::uint64_t{1} << (b_ * i); }
    bool is_chunked(std::uint64_t size) const { return T_ != 0 && size > T_; }
    std::uint64_t effective_chunk(std::uint64_t b) const;

    BlockHandle alloc_plain(std::uint64_t size);            // fully materialized
    void free_logical(BlockHandle rep, std::uint64_t size, std::uint64_t chunk_t);
    Word read_item(BlockHandle rep, std::uint64_t size, std::uint64_t off) const;
    void write_item(BlockHandle rep, std::uint64_t size, std::uint64_t off, Word v);

    BlockHandle index_block(unsigned level) const { return index_[level]; }
    BlockHandle level_block(unsigned level, std::uint64_t j) const;
    void set_level_block(unsigned level, std::uint64_t j, BlockHandle h);

    void set_count(unsigned level, std::uint64_t v);
    void set_n(std::uint64_t v);
    void set_partial(BlockHandle h);
    void set_spare(BlockHandle h);
    void refresh_prefixes();
    std::uint64_t prefix(unsigned k) const;  // N_k = sum_{j<k} n_j B^j
    unsigned first_nonzero_level(unsigned from) const;

    void ensure_partial();
    void promote_partial();
    void combine_blocks();
    void split_blocks();
    void rebuild(std::uint64_t new_b);
    BlockHandle fill_block(Drain& d, std::uint64_t size, std::uint64_t count);

    SpaceTracker* t_;
    unsigned r_;
    std::uint64_t bmin_;
    std::uint64_t B_;
    unsigned b_;                  // B = 2^b
    std::uint64_t chunk_cfg_;
    std::uint64_t T_ = 0;         // current chunk threshold; 0 = off
    unsigned tlog_ = 0;           // T = 2^tlog when T_ != 0
    bool force_explicit_;
    bool packed_ = true;
    PackedCounters pc_;

    std::uint64_t n_ = 0;
    std::vector<std::uint64_t> counts_;    // size r; counts_[0] = n_0
    std::vector<std::uint64_t> prefixes_;  // size r+1; explicit path only
    std::vector<BlockHandle> index_;       // size r; [0] unused
    BlockHandle ctrl_, handle_blk_, count_blk_, prefix_blk_;
    BlockHandle partial_, spare_;

    std::uint64_t combines_ = 0, splits_ = 0, rebuilds_ = 0;
};

}  // namespace rsz
