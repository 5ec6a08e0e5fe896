#pragma once

#include <cstdint>
#include <random>

namespace papp {

/// Deterministic RNG wrapper. mt19937_64 is fully specified by the standard;
/// bounded draws use explicit rejection instead of std::uniform_int_distribution,
/// whose output is implementation-defined. Fixed seeds therefore reproduce
/// byte-identical streams on every platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next() { return engine_(); }

    /// Uniform in [0, bound), unbiased via rejection.
    uint64_t below(uint64_t bound) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t draw;
        do {
            draw = engine_();
        } while (draw >= limit);
        return draw % bound;
    }

    int range(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    double unit() { return (engine_() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& items) {
        for (size_t i = items.size(); i > 1; --i)
            std::swap(items[i - 1], items[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace papp
