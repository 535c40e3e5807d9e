#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <stdexcept>

namespace rsz {

// Index of the most significant set bit; msb(1) = 0.  msb(0) is an error.
inline unsigned msb(std::uint64_t x) {
    if (x == 0)
        throw std::invalid_argument("msb: argument must be nonzero");
    return 63u - static_cast<unsigned>(std::countl_zero(x));
}

// Index of the least significant set bit, obtained by reducing to msb of the
// isolated low bit (x AND -x).  lsb(0) is an error.
inline unsigned lsb(std::uint64_t x) {
    if (x == 0)
        throw std::invalid_argument("lsb: argument must be nonzero");
    return msb(x & (~x + 1));
}

// Redundant base-B counter packed into two words, for B = 2^b.  Digit j holds
// a value n_j in [0, 2B]: a low part n0_j < B in field j of word n0, plus a
// carry part n1_j <= 2 in field j of word n1, with n_j = n0_j + B * n1_j.
// The numeric value of the counter is sum_j n_j * B^j, which equals the sum
// of the two words read as integers (each digit field j has weight 2^(j*b)).
//
// prefix(k) = sum_{j<k} n_j * B^j is a pair of masked adds, so the index
// mapping of the tiered array runs in constant time.  Requires r*b <= 62 so
// that no field ever carries past the top of a word; callers that need wider
// counters keep an explicit prefix block instead.
class PackedCounters {
public:
    PackedCounters() = default;

    PackedCounters(unsigned digits, unsigned bits_per_digit)
        : r_(digits), b_(bits_per_digit) {
        if (r_ == 0 || b_ == 0 || r_ * b_ > 62)
            throw std::invalid_argument("PackedCounters: need digits*bits in [1,62]");
    }

    unsigned digits() const { return r_; }
    std::uint64_t base() const { return std::uint64_t{1} << b_; }
    std::uint64_t word_n0() const { return n0_; }
    std::uint64_t word_n1() const { return n1_; }

    std::uint64_t digit(unsigned j) const {
        check_digit(j);
        std::uint64_t lo = (n0_ >> (j * b_)) & field_mask();
        std::uint64_t hi = (n1_ >> (j * b_)) & field_mask();
        return lo + (hi << b_);
    }

    // Stores v in [0, 2B] as the canonical split (v mod B, v div B).
    void set_digit(unsigned j, std::uint64_t v) {
        check_digit(j);
        if (v > 2 * base())
            throw std::invalid_argument("PackedCounters::set_digit: digit exceeds 2B");
        std::uint64_t shift = j * b_;
        n0_ = (n0_ & ~(field_mask() << shift)) | ((v & (base() - 1)) << shift);
        n1_ = (n1_ & ~(field_mask() << shift)) | ((v >> b_) << shift);
    }

    // N_k = sum_{j<k} n_j * B^j; prefix(0) = 0, prefix(r) = full value.
    std::uint64_t prefix(unsigned k) const {
        if (k > r_)
            throw std::out_of_range("PackedCounters::prefix: k exceeds digit count");
        std::uint64_t m = low_mask(k);
        return (n0_ & m) + ((n1_ & m) << b_);
    }

    std::uint64_t value() const { return prefix(r_); }

    // Smallest digit index >= from with a nonzero digit, or `digits()` if all
    // digits from `from` upward are zero.  Constant time via lsb.
    unsigned first_nonzero(unsigned from) const {
        if (from >= r_) return r_;
        std::uint64_t occupied = (n0_ | n1_) & ~low_mask(from);
        if (occupied == 0) return r_;
        return lsb(occupied) / b_;
    }

private:
    void check_digit(unsigned j) const {
        if (j >= r_)
            throw std::out_of_range("PackedCounters: digit index out of range");
    }
    std::uint64_t field_mask() const { return base() - 1; }
    // Mask covering digit fields 0..k-1.
    std::uint64_t low_mask(unsigned k) const {
        return (std::uint64_t{1} << (k * b_)) - 1;
    }

    unsigned r_ = 0;
    unsigned b_ = 0;
    std::uint64_t n0_ = 0;
    std::uint64_t n1_ = 0;
};

}  // namespace rsz
