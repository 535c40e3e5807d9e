#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rsz/space_model.hpp"

namespace rsz {

// The resizable-array ADT: a sequence of N words supporting random access,
// append (grow) and removal of the last item (shrink).  Implementations
// differ only in how they lay blocks out, which the shared SpaceTracker
// meters.
class ResizableArray {
public:
    virtual ~ResizableArray() = default;

    virtual std::uint64_t length() const = 0;
    virtual Word get(std::uint64_t i) const = 0;
    virtual void set(std::uint64_t i, Word v) = 0;
    virtual void grow(Word v) = 0;
    virtual void shrink() = 0;

    // Words of constant-size bookkeeping this instance keeps allocated
    // (control record plus any fixed per-instance blocks).  Space bounds in
    // the test suite are stated as "... + control_words()".
    virtual std::uint64_t control_words() const = 0;

    // Monotone count of structural reorganizations (block merges/splits and
    // rebuilds).  Benchmarks emit an extra sample row whenever it advances.
    virtual std::uint64_t structural_events() const { return 0; }
};

// Exact rational growth factor for the geometric baseline (alpha = num/den).
struct Rational {
    std::uint64_t num = 1;
    std::uint64_t den = 1;
};

// Construction-time knobs shared by the factory; each implementation reads
// the fields it understands.
struct ArrayConfig {
    unsigned levels = 3;              // tiered: number of levels r >= 2
    Rational alpha{1, 1};             // geometric growth factor
    std::uint64_t min_block = 4;      // tiered/hat: smallest B (power of two >= 4)
    std::uint64_t chunk = 0;          // tiered: 0 = off, kChunkAuto = derived, else fixed T
    bool force_explicit_prefix = false;  // tiered: disable the packed-counter path

    static constexpr std::uint64_t kChunkAuto = 1;
};

// Factory for the implementations registered under the benchmark names:
// "naive", "geometric", "hat", "brodnik", "tiered", "deque".  Throws
// std::invalid_argument for unknown names or invalid configuration.
std::unique_ptr<ResizableArray> make_array(const std::string& name,
                                           SpaceTracker& tracker,
                                           const ArrayConfig& config);

std::vector<std::string> array_names();

}  // namespace rsz
