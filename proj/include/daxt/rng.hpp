#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace daxt {

// mt19937_64 with hand-rolled conversions. The engine's output sequence is
// fixed by the standard, and avoiding std distributions keeps generated
// streams identical across library implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double next_double() { return (engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [0, n).
    uint64_t next_index(uint64_t n) { return static_cast<uint64_t>(next_double() * static_cast<double>(n)); }

    bool chance(double p) { return next_double() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(next_index(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace daxt
