#pragma once

#include <cstdint>
#include <random>

namespace dis2vec {

// mt19937_64 with a fixed bits-to-double mapping. The engine's output
// sequence is pinned by the standard, and we avoid std::uniform_*
// distributions (whose draw sequences vary between standard libraries),
// so runs are reproducible across platforms given the same seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * kInv53;
    }

    // Uniform integer in [0, n), n >= 1.
    std::size_t index(std::size_t n) {
        std::size_t i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    std::uint64_t bits() { return engine_(); }

private:
    static constexpr double kInv53 = 1.0 / 9007199254740992.0; // 2^-53
    std::mt19937_64 engine_;
};

} // namespace dis2vec
