#include <stdexcept>

#include "rsz/baseline_arrays.hpp"
#include "rsz/resizable_array.hpp"
#include "rsz/tiered_array.hpp"
#include "rsz/tiered_deque.hpp"

namespace rsz {

namespace {

// Lets the benchmark driver run a deque under the single-ended interface;
// grow/shrink map to the back end.
class DequeAdapter final : public ResizableArray {
public:
    DequeAdapter(SpaceTracker& t, TieredOptions opt) : dq_(t, opt) {}

    std::uint64_t length() const override { return dq_.length(); }
    Word get(std::uint64_t i) const override { return dq_.get(i); }
    void set(std::uint64_t i, Word v) override { dq_.set(i, v); }
    void grow(Word v) override { dq_.push_back(v); }
    void shrink() override { dq_.pop_back(); }
    std::uint64_t control_words() const override { return dq_.control_words(); }
    std::uint64_t structural_events() const override { return dq_.structural_events(); }

private:
    TieredDeque dq_;
};

TieredOptions tiered_options(const ArrayConfig& c) {
    TieredOptions opt;
    opt.levels = c.levels;
    opt.min_block = c.min_block;
    opt.chunk = c.chunk;
    opt.force_explicit_prefix = c.force_explicit_prefix;
    return opt;
}

}  // namespace

std::unique_ptr<ResizableArray> make_array(const std::string& name,
                                           SpaceTracker& tracker,
                                           const ArrayConfig& config) {
    if (name == "naive") return std::make_unique<NaiveArray>(tracker);
    if (name == "geometric") return std::make_unique<GeometricArray>(tracker, config.alpha);
    if (name == "hat") return std::make_unique<HatArray>(tracker, config.min_block);
    if (name == "brodnik") return std::make_unique<BrodnikArray>(tracker);
    if (name == "tiered") return std::make_unique<TieredArray>(tracker, tiered_options(config));
    if (name == "deque") return std::make_unique<DequeAdapter>(tracker, tiered_options(config));
    throw std::invalid_argument("unknown array implementation: " + name);
}

std::vector<std::string> array_names() {
    return {"naive", "geometric", "hat", "brodnik", "tiered", "deque"};
}

}  // namespace rsz
