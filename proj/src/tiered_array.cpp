#include "rsz/tiered_array.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <functional>
#include <stdexcept>
#include <string>

namespace rsz {

namespace {

std::uint64_t pow_sat(std::uint64_t base, unsigned e) {
    unsigned __int128 v = 1;
    for (unsigned i = 0; i < e; ++i) {
        v *= base;
        if (v > ~std::uint64_t{0}) return ~std::uint64_t{0};
    }
    return static_cast<std::uint64_t>(v);
}

std::uint64_t shr_or_zero(std::uint64_t x, unsigned s) {
    return s >= 64 ? 0 : x >> s;
}

std::uint64_t shl_or_zero(std::uint64_t x, unsigned s) {
    return x == 0 || s >= 64 ? 0 : x << s;
}

}  // namespace

// Streams items, oldest first, out of an ordered list of source blocks.
// Every physical block (a whole block, or one chunk of a chunked block) is
// deallocated as soon as its last item has been taken, which is what keeps
// the transient space of combine/split/rebuild down to one block or chunk.
// Handles are read out of the index blocks on demand, so the index block of
// a level stays live until `on_run_drained` reports that level finished.
class TieredArray::Drain {
public:
    struct Run {
        BlockHandle index;             // source of handles; null -> `direct`
        std::uint64_t first_slot = 0;
        std::uint64_t blocks = 0;
        BlockHandle direct;
        std::uint64_t size = 0;        // logical size of each block in the run
        std::uint64_t last_count = 0;  // items in the final block (earlier: size)
    };

    Drain(SpaceTracker& t, std::vector<Run> runs, std::uint64_t chunk_t,
          std::function<void(std::size_t)> on_run_drained)
        : t_(&t),
          runs_(std::move(runs)),
          T_(chunk_t),
          tlog_(chunk_t ? msb(chunk_t) : 0),
          on_run_drained_(std::move(on_run_drained)) {}

    bool exhausted() const { return run_ == runs_.size(); }

    // Copies len items into the plain physical block dst at dst_off.
    void pull(BlockHandle dst, std::uint64_t dst_off, std::uint64_t len) {
        while (len > 0) {
            assert(!exhausted());
            if (!open_) open_block();
            std::uint64_t count = block_count();
            std::uint64_t take = std::min(len, count - off_);
            BlockHandle src = rep_;
            std::uint64_t src_off = off_;
            if (chunked()) {
                take = std::min(take, T_ - (off_ & (T_ - 1)));
                src = BlockHandle::from_word(t_->read(rep_, off_ >> tlog_));
                src_off = off_ & (T_ - 1);
            }
            t_->copy(src, src_off, dst, dst_off, take);
            off_ += take;
            dst_off += take;
            len -= take;
            if (chunked() && ((off_ & (T_ - 1)) == 0 || off_ == count))
                t_->deallocate(BlockHandle::from_word(t_->read(rep_, (off_ - 1) >> tlog_)));
            if (off_ == count) close_block();
        }
    }

private:
    const Run& run() const { return runs_[run_]; }
    bool chunked() const { return T_ != 0 && run().size > T_; }
    std::uint64_t block_count() const {
        return blk_ + 1 == run().blocks ? run().last_count : run().size;
    }

    void open_block() {
        const Run& r = runs_[run_];
        rep_ = r.index.null()
                   ? r.direct
                   : BlockHandle::from_word(t_->read(r.index, r.first_slot + blk_));
        off_ = 0;
        open_ = true;
    }

    void close_block() {
        if (chunked()) {
            // free the vacant tail chunks of a partially filled block
            std::uint64_t count = block_count();
            std::uint64_t from = (count + T_ - 1) >> tlog_;
            for (std::uint64_t j = from; j < (run().size >> tlog_); ++j)
                t_->deallocate(BlockHandle::from_word(t_->read(rep_, j)));
            t_->deallocate(rep_);  // the chunk-index block
        } else {
            t_->deallocate(rep_);
        }
        open_ = false;
        if (++blk_ == run().blocks) {
            blk_ = 0;
            if (on_run_drained_) on_run_drained_(run_);
            ++run_;
        }
    }

    SpaceTracker* t_;
    std::vector<Run> runs_;
    std::uint64_t T_;
    unsigned tlog_;
    std::function<void(std::size_t)> on_run_drained_;
    std::size_t run_ = 0;
    std::uint64_t blk_ = 0;
    std::uint64_t off_ = 0;
    BlockHandle rep_;
    bool open_ = false;
};

TieredArray::TieredArray(SpaceTracker& tracker, TieredOptions opt) : t_(&tracker) {
    r_ = opt.levels;
    if (r_ < 2 || r_ > 30)
        throw std::invalid_argument("TieredArray: levels must be in [2, 30]");
    if (opt.min_block < 4 || !std::has_single_bit(opt.min_block))
        throw std::invalid_argument("TieredArray: min_block must be a power of two >= 4");
    if (opt.chunk > TieredOptions::kChunkAuto && !std::has_single_bit(opt.chunk))
        throw std::invalid_argument("TieredArray: chunk threshold must be a power of two");
    bmin_ = B_ = opt.min_block;
    b_ = msb(B_);
    chunk_cfg_ = opt.chunk;
    T_ = effective_chunk(B_);
    tlog_ = T_ ? msb(T_) : 0;
    force_explicit_ = opt.force_explicit_prefix;
    packed_ = !force_explicit_ && r_ * b_ <= 62;
    if (packed_) pc_ = PackedCounters(r_, b_);

    counts_.assign(r_, 0);
    prefixes_.assign(r_ + 1, 0);
    index_.assign(r_, BlockHandle());

    ctrl_ = t_->allocate(kCtrlSlots);
    handle_blk_ = t_->allocate(r_);
    count_blk_ = t_->allocate(r_);
    if (!packed_) prefix_blk_ = t_->allocate(r_ + 1);
    for (unsigned i = 1; i < r_; ++i) {
        index_[i] = t_->allocate(2 * B_);
        t_->write_ref(handle_blk_, i, index_[i].to_word());
    }
    t_->write_ref(ctrl_, kCtrlB, B_);
    t_->write_ref(ctrl_, kCtrlT, T_);
}

TieredArray::~TieredArray() {
    for (unsigned i = 1; i < r_; ++i) {
        for (std::uint64_t j = 0; j < counts_[i]; ++j)
            free_logical(level_block(i, j), level_size(i), T_);
        t_->deallocate(index_[i]);
    }
    if (!partial_.null()) free_logical(partial_, B_, T_);
    if (!spare_.null()) free_logical(spare_, B_, T_);
    if (!prefix_blk_.null()) t_->deallocate(prefix_blk_);
    t_->deallocate(count_blk_);
    t_->deallocate(handle_blk_);
    t_->deallocate(ctrl_);
}

std::uint64_t TieredArray::effective_chunk(std::uint64_t b) const {
    if (chunk_cfg_ == 0) return 0;
    if (chunk_cfg_ == TieredOptions::kChunkAuto)
        return pow_sat(b, r_ / 2);  // B^(ceil((r-1)/2))
    return chunk_cfg_;
}

std::uint64_t TieredArray::control_words() const {
    return kCtrlSlots + 2 * r_ + (packed_ ? 0 : r_ + 1);
}

// ------------------------------------------------------- physical block ops

BlockHandle TieredArray::alloc_plain(std::uint64_t size) {
    if (!is_chunked(size)) return t_->allocate(size);
    std::uint64_t chunks = size >> tlog_;
    BlockHandle ci = t_->allocate(chunks);
    for (std::uint64_t j = 0; j < chunks; ++j)
        t_->write_ref(ci, j, t_->allocate(T_).to_word());
    return ci;
}

void TieredArray::free_logical(BlockHandle rep, std::uint64_t size, std::uint64_t chunk_t) {
    if (chunk_t == 0 || size <= chunk_t) {
        t_->deallocate(rep);
        return;
    }
    std::uint64_t chunks = size / chunk_t;
    for (std::uint64_t j = 0; j < chunks; ++j)
        t_->deallocate(BlockHandle::from_word(t_->read(rep, j)));
    t_->deallocate(rep);
}

Word TieredArray::read_item(BlockHandle rep, std::uint64_t size, std::uint64_t off) const {
    if (!is_chunked(size)) return t_->read(rep, off);
    BlockHandle chunk = BlockHandle::from_word(t_->read(rep, off >> tlog_));
    return t_->read(chunk, off & (T_ - 1));
}

void TieredArray::write_item(BlockHandle rep, std::uint64_t size, std::uint64_t off, Word v) {
    if (!is_chunked(size)) {
        t_->write(rep, off, v);
        return;
    }
    BlockHandle chunk = BlockHandle::from_word(t_->read(rep, off >> tlog_));
    t_->write(chunk, off & (T_ - 1), v);
}

BlockHandle TieredArray::level_block(unsigned level, std::uint64_t j) const {
    assert(level >= 1 && level < r_ && j < 2 * B_);
    return BlockHandle::from_word(t_->read(index_[level], j));
}

void TieredArray::set_level_block(unsigned level, std::uint64_t j, BlockHandle h) {
    assert(level >= 1 && level < r_ && j < 2 * B_);
    t_->write_ref(index_[level], j, h.to_word());
}

// --------------------------------------------------------- counter mirrors

void TieredArray::set_count(unsigned level, std::uint64_t v) {
    counts_[level] = v;
    t_->write_ref(count_blk_, level, v);
    if (packed_) {
        pc_.set_digit(level, v);
        t_->write_ref(ctrl_, kCtrlPackedLo, pc_.word_n0());
        t_->write_ref(ctrl_, kCtrlPackedHi, pc_.word_n1());
    } else {
        refresh_prefixes();
    }
}

void TieredArray::refresh_prefixes() {
    prefixes_[0] = 0;
    for (unsigned j = 0; j < r_; ++j) {
        prefixes_[j + 1] = prefixes_[j] + shl_or_zero(counts_[j], b_ * j);
        t_->write_ref(prefix_blk_, j + 1, prefixes_[j + 1]);
    }
}

std::uint64_t TieredArray::prefix(unsigned k) const {
    return packed_ ? pc_.prefix(k) : prefixes_[k];
}

unsigned TieredArray::first_nonzero_level(unsigned from) const {
    if (packed_) return pc_.first_nonzero(from);
    for (unsigned i = from; i < r_; ++i)
        if (counts_[i] != 0) return i;
    return r_;
}

void TieredArray::set_n(std::uint64_t v) {
    n_ = v;
    t_->write_ref(ctrl_, kCtrlN, v);
}

void TieredArray::set_partial(BlockHandle h) {
    partial_ = h;
    t_->write_ref(handle_blk_, 0, h.to_word());
}

void TieredArray::set_spare(BlockHandle h) {
    spare_ = h;
    t_->write_ref(ctrl_, kCtrlSpare, h.to_word());
}

// ------------------------------------------------------------------ access

TieredArray::Location TieredArray::locate(std::uint64_t i) const {
    if (i >= n_)
        throw std::out_of_range("TieredArray::locate: index out of range");
    std::uint64_t x = (n_ - 1) - i;
    unsigned k;
    if (x == 0) {
        k = first_nonzero_level(0);
    } else {
        unsigned l = msb(x) / b_;
        if (x < prefix(l))
            k = l - 1;  // digit l-1 is then necessarily nonzero
        else if (x < prefix(l + 1))
            k = l;
        else
            k = first_nonzero_level(l + 1);
    }
    assert(k < r_);
    std::uint64_t pos = i - (n_ - prefix(k + 1));
    if (k == 0) return {0, 0, pos};
    return {k, pos >> (b_ * k), pos & (level_size(k) - 1)};
}

Word TieredArray::get(std::uint64_t i) const {
    Location loc = locate(i);
    if (loc.level == 0) return read_item(partial_, B_, loc.offset);
    return read_item(level_block(loc.level, loc.block), level_size(loc.level), loc.offset);
}

void TieredArray::set(std::uint64_t i, Word v) {
    Location loc = locate(i);
    if (loc.level == 0)
        write_item(partial_, B_, loc.offset, v);
    else
        write_item(level_block(loc.level, loc.block), level_size(loc.level), loc.offset, v);
}

// ----------------------------------------------------------- grow / shrink

void TieredArray::ensure_partial() {
    if (!partial_.null()) return;
    if (!spare_.null()) {
        set_partial(spare_);
        set_spare(BlockHandle());
    } else {
        set_partial(alloc_plain(B_));
    }
}

void TieredArray::promote_partial() {
    assert(counts_[0] == B_ && counts_[1] < 2 * B_);
    set_level_block(1, counts_[1], partial_);
    set_count(1, counts_[1] + 1);
    set_count(0, 0);
    set_partial(BlockHandle());
}

void TieredArray::grow(Word v) {
    if (n_ == pow_sat(B_, r_))
        rebuild(2 * B_);
    else if (counts_[1] == 2 * B_ && counts_[0] == B_ - 1)
        combine_blocks();
    ensure_partial();
    write_item(partial_, B_, counts_[0], v);
    set_count(0, counts_[0] + 1);
    set_n(n_ + 1);
    if (counts_[0] == B_) promote_partial();
}

void TieredArray::shrink() {
    if (n_ == 0)
        throw std::logic_error("TieredArray::shrink: array is empty");
    if (B_ > bmin_ && n_ == pow_sat(B_ / 4, r_)) rebuild(B_ / 2);
    if (counts_[0] == 0) {
        if (counts_[1] == 0) split_blocks();
        // demote the last full level-1 block into the partial slot
        set_partial(level_block(1, counts_[1] - 1));
        set_count(1, counts_[1] - 1);
        set_count(0, B_);
    }
    set_count(0, counts_[0] - 1);
    set_n(n_ - 1);
    if (counts_[0] == 0) {
        // the partial just emptied; hold at most one such block as a spare
        if (spare_.null())
            set_spare(partial_);
        else
            free_logical(partial_, B_, T_);
        set_partial(BlockHandle());
    }
}

// ------------------------------------------------------- reorganizations

// Merges the first B blocks of each level i = k-1 .. 1 into one new block of
// level i+1, where k is the lowest level that still has room.  Levels below
// k hold exactly 2B blocks when this runs, so afterwards level k has gained
// one block, levels 2..k-1 hold B+1 and level 1 holds B.
void TieredArray::combine_blocks() {
    unsigned k = 0;
    for (unsigned i = 1; i < r_; ++i) {
        if (counts_[i] < 2 * B_) {
            k = i;
            break;
        }
    }
    // before N reaches B^r some level is always below 2B, and grow rebuilds
    // at exactly N = B^r
    assert(k >= 1);
    for (unsigned i = k; i-- > 1;) {
        assert(counts_[i] == 2 * B_);
        Drain d(*t_,
                {Drain::Run{index_[i], 0, B_, BlockHandle(), level_size(i), level_size(i)}},
                T_, nullptr);
        BlockHandle merged = fill_block(d, level_size(i + 1), level_size(i + 1));
        assert(d.exhausted());
        set_level_block(i + 1, counts_[i + 1], merged);
        set_count(i + 1, counts_[i + 1] + 1);
        // slide the surviving B handles of level i down to the front
        for (std::uint64_t j = 0; j < B_; ++j)
            t_->write_ref(index_[i], j, t_->read(index_[i], j + B_));
        set_count(i, B_);
    }
    ++combines_;
}

// Partitions the last block of the lowest non-empty level k (>= 2, callers
// run this only when levels 0 and 1 are empty) into B-1 new blocks of each
// size B^(k-1), ..., B^2 and B new blocks of size B, preserving item order.
// Each item is copied exactly once: B^k assignments.
void TieredArray::split_blocks() {
    assert(counts_[0] == 0 && counts_[1] == 0 && partial_.null());
    unsigned k = first_nonzero_level(2);
    assert(k >= 2 && k < r_);
    BlockHandle victim = level_block(k, counts_[k] - 1);
    set_count(k, counts_[k] - 1);
    Drain d(*t_,
            {Drain::Run{BlockHandle(), 0, 1, victim, level_size(k), level_size(k)}},
            T_, nullptr);
    for (unsigned i = k - 1; i >= 2; --i) {
        for (std::uint64_t j = 0; j + 1 < B_; ++j)
            set_level_block(i, j, fill_block(d, level_size(i), level_size(i)));
        set_count(i, B_ - 1);
    }
    for (std::uint64_t j = 0; j < B_; ++j)
        set_level_block(1, j, fill_block(d, B_, B_));
    set_count(1, B_);
    assert(d.exhausted());
    ++splits_;
}

BlockHandle TieredArray::fill_block(Drain& d, std::uint64_t size, std::uint64_t count) {
    if (!is_chunked(size)) {
        BlockHandle rep = t_->allocate(size);
        if (count > 0) d.pull(rep, 0, count);
        return rep;
    }
    // chunked: allocate chunks only as the drain fills them, so at most one
    // chunk of transient space rides on top of the sources
    std::uint64_t chunks = size >> tlog_;
    BlockHandle ci = t_->allocate(chunks);
    std::uint64_t filled = 0;
    for (std::uint64_t j = 0; j < chunks; ++j) {
        BlockHandle chunk = t_->allocate(T_);
        t_->write_ref(ci, j, chunk.to_word());
        std::uint64_t take = std::min(T_, count - filled);
        if (take > 0) {
            d.pull(chunk, 0, take);
            filled += take;
        }
    }
    return ci;
}

void TieredArray::rebuild_to(std::uint64_t new_b) {
    if (new_b < bmin_ || !std::has_single_bit(new_b))
        throw std::invalid_argument("TieredArray::rebuild_to: bad block size");
    rebuild(new_b);
}

// Re-packs everything into blocks of the new size, greedily from the largest
// block size down.  Old physical blocks are freed as they drain, old index
// blocks as their levels finish, and each new index block is allocated only
// once the second block of its level completes (the first block's handle
// waits in the control record), so the transient overhead stays at one
// data block/chunk plus one index block.
void TieredArray::rebuild(std::uint64_t new_b) {
    assert(new_b >= bmin_ && std::has_single_bit(new_b));
    unsigned nb = msb(new_b);

    // greedy repacking plan under the layout cap of 2B' blocks per level
    std::vector<std::uint64_t> plan(r_, 0);
    std::uint64_t m = n_;
    for (unsigned i = r_ - 1; i >= 1; --i) {
        plan[i] = std::min(shr_or_zero(m, nb * i), 2 * new_b);
        m -= shl_or_zero(plan[i], nb * i);
    }
    if (m >= new_b)
        throw std::invalid_argument("TieredArray::rebuild_to: contents do not fit block size");
    plan[0] = m;

    // the spare is dead weight across a rebuild (and of the wrong size)
    if (!spare_.null()) {
        free_logical(spare_, B_, T_);
        set_spare(BlockHandle());
    }

    // drain runs over the old structure, oldest items first; empty levels
    // give up their index blocks immediately
    std::vector<Drain::Run> runs;
    std::vector<unsigned> run_level;
    for (unsigned i = r_ - 1; i >= 1; --i) {
        if (counts_[i] > 0) {
            runs.push_back({index_[i], 0, counts_[i], BlockHandle(), level_size(i), level_size(i)});
            run_level.push_back(i);
        } else {
            t_->deallocate(index_[i]);
            index_[i] = BlockHandle();
        }
    }
    if (counts_[0] > 0) {
        runs.push_back({BlockHandle(), 0, 1, partial_, B_, counts_[0]});
        run_level.push_back(0);
    }
    auto on_drained = [&](std::size_t ri) {
        unsigned lvl = run_level[ri];
        if (lvl >= 1) {
            t_->deallocate(index_[lvl]);
            index_[lvl] = BlockHandle();
        } else {
            partial_ = BlockHandle();  // the drain freed the block itself
        }
    };
    Drain d(*t_, std::move(runs), T_, on_drained);

    // switch to the new geometry; destinations are laid out in it
    B_ = new_b;
    b_ = nb;
    T_ = effective_chunk(B_);
    tlog_ = T_ ? msb(T_) : 0;
    t_->write_ref(ctrl_, kCtrlB, B_);
    t_->write_ref(ctrl_, kCtrlT, T_);

    std::vector<BlockHandle> new_index(r_);
    for (unsigned i = r_ - 1; i >= 1; --i) {
        if (plan[i] == 0) continue;
        BlockHandle first;
        for (std::uint64_t j = 0; j < plan[i]; ++j) {
            BlockHandle rep = fill_block(d, level_size(i), level_size(i));
            if (j == 0) {
                first = rep;
                t_->write_ref(ctrl_, kCtrlScratch, rep.to_word());
                continue;
            }
            if (j == 1) {
                new_index[i] = t_->allocate(2 * B_);
                t_->write_ref(new_index[i], 0, first.to_word());
                t_->write_ref(ctrl_, kCtrlScratch, 0);
            }
            t_->write_ref(new_index[i], j, rep.to_word());
        }
        if (plan[i] == 1) {
            new_index[i] = t_->allocate(2 * B_);
            t_->write_ref(new_index[i], 0, first.to_word());
            t_->write_ref(ctrl_, kCtrlScratch, 0);
        }
    }
    BlockHandle new_partial;
    if (plan[0] > 0) new_partial = fill_block(d, B_, plan[0]);
    assert(d.exhausted());
    assert(partial_.null());

    // levels that are currently empty still keep an (empty) index block
    for (unsigned i = 1; i < r_; ++i) {
        if (new_index[i].null()) new_index[i] = t_->allocate(2 * B_);
        index_[i] = new_index[i];
        t_->write_ref(handle_blk_, i, index_[i].to_word());
    }
    set_partial(new_partial);

    // counter machinery for the new digit width
    bool want_packed = !force_explicit_ && r_ * b_ <= 62;
    if (want_packed != packed_) {
        if (want_packed) {
            t_->deallocate(prefix_blk_);
            prefix_blk_ = BlockHandle();
        } else {
            prefix_blk_ = t_->allocate(r_ + 1);
        }
        packed_ = want_packed;
    }
    if (packed_) pc_ = PackedCounters(r_, b_);
    for (unsigned i = 0; i < r_; ++i) set_count(i, plan[i]);

    ++rebuilds_;
}

// ------------------------------------------------------------------- audit

TieredArray::AuditReport TieredArray::audit() const {
    auto fail = [](const char* what) { throw std::logic_error(std::string("TieredArray::audit: ") + what); };

    AuditReport a;
    a.B = B_;
    a.r = r_;
    a.counts = counts_;
    a.has_partial = !partial_.null();
    a.has_spare = !spare_.null();
    a.packed_path = packed_;
    a.chunk_threshold = T_;

    if (counts_[0] >= B_) fail("partial count n_0 must stay below B");
    std::uint64_t total = counts_[0];
    for (unsigned i = 1; i < r_; ++i) {
        if (counts_[i] > 2 * B_) fail("level count exceeds 2B");
        total += shl_or_zero(counts_[i], b_ * i);
    }
    if (total != n_) fail("level counts do not add up to N");
    if ((counts_[0] > 0) != a.has_partial) fail("partial block presence out of sync with n_0");

    // physical layout of one logical block; returns its total physical words
    auto check_block = [&](BlockHandle rep, std::uint64_t size) -> std::uint64_t {
        if (!t_->valid(rep)) fail("dangling block handle");
        if (!is_chunked(size)) {
            if (t_->length_of(rep) != size) fail("block has wrong physical size");
            return size;
        }
        std::uint64_t chunks = size >> tlog_;
        if (t_->length_of(rep) != chunks) fail("chunk index has wrong size");
        for (std::uint64_t j = 0; j < chunks; ++j) {
            BlockHandle chunk = BlockHandle::from_word(t_->read(rep, j));
            if (!t_->valid(chunk) || t_->length_of(chunk) != T_) fail("bad chunk");
        }
        return size + chunks;
    };

    if (a.has_partial) a.data_words += check_block(partial_, B_);
    if (a.has_spare) a.data_words += check_block(spare_, B_);
    for (unsigned i = 1; i < r_; ++i) {
        if (!t_->valid(index_[i]) || t_->length_of(index_[i]) != 2 * B_)
            fail("bad level index block");
        a.index_words += 2 * B_;
        for (std::uint64_t j = 0; j < counts_[i]; ++j)
            a.data_words += check_block(level_block(i, j), level_size(i));
    }

    // mirrored state: what the tracked control blocks say must match core
    if (t_->read(ctrl_, kCtrlN) != n_) fail("control N out of sync");
    if (t_->read(ctrl_, kCtrlB) != B_) fail("control B out of sync");
    if (t_->read(ctrl_, kCtrlT) != T_) fail("control T out of sync");
    if (t_->read(ctrl_, kCtrlSpare) != spare_.to_word()) fail("control spare out of sync");
    if (t_->read(ctrl_, kCtrlScratch) != 0) fail("scratch slot leaked");
    if (t_->read(handle_blk_, 0) != partial_.to_word()) fail("partial handle out of sync");
    for (unsigned i = 1; i < r_; ++i)
        if (t_->read(handle_blk_, i) != index_[i].to_word()) fail("index handle out of sync");
    for (unsigned i = 0; i < r_; ++i)
        if (t_->read(count_blk_, i) != counts_[i]) fail("counter block out of sync");
    if (packed_) {
        for (unsigned i = 0; i < r_; ++i)
            if (pc_.digit(i) != counts_[i]) fail("packed digit out of sync");
        if (t_->read(ctrl_, kCtrlPackedLo) != pc_.word_n0() ||
            t_->read(ctrl_, kCtrlPackedHi) != pc_.word_n1())
            fail("packed counter words out of sync");
    } else {
        std::uint64_t acc = 0;
        for (unsigned j = 0; j < r_; ++j) {
            acc += shl_or_zero(counts_[j], b_ * j);
            if (prefixes_[j + 1] != acc) fail("prefix cache out of sync");
            if (t_->read(prefix_blk_, j + 1) != acc) fail("prefix block out of sync");
        }
    }
    return a;
}

}  // namespace rsz
