#ifndef CSSBL_RNG_HPP
#define CSSBL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace cssbl {

// 64-bit mixing step shared by Rng and seed derivation (splitmix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Counter-based generator (splitmix64): the state advances along a Weyl
// sequence and each output is a hash of the counter. All stochastic code in
// the library takes an Rng explicitly; there is no global generator.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller. No cached second value, so replaying a
    // draw sequence depends only on the call count.
    double gaussian() {
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // Independent stream derived from this generator's seed and a stream id.
    Rng fork(std::uint64_t stream) const {
        return Rng(mix64(state_ ^ mix64(stream + 0x632BE59BD9B4E019ULL)));
    }

private:
    std::uint64_t state_;
};

// Deterministic seed derivation for experiment cells: folds each word into
// the base seed through the mixer.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = mix64(base + 0x9E3779B97F4A7C15ULL);
    for (std::uint64_t w : words) {
        h = mix64(h ^ mix64(w + 0x9E3779B97F4A7C15ULL));
    }
    return h;
}

} // namespace cssbl

#endif
