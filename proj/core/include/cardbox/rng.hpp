#ifndef CARDBOX_RNG_HPP_
#define CARDBOX_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace cardbox {

/// splitmix64 step (Steele, Lea, Flood 2014). Used both as the stream
/// generator and as the mixing function for seed derivation.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from a root seed and an id path,
/// e.g. (stage, cycle, slot). The same path always yields the same seed,
/// so stochastic results are independent of evaluation schedule.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = root ^ 0x6a09e667f3bcc909ULL;
    for (std::uint64_t id : path) {
        s ^= id + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
        std::uint64_t st = s;
        s = splitmix64_next(st);
    }
    return s;
}

/// Small self-contained pseudorandom stream. Not cryptographic; chosen for
/// bit-identical behaviour across compilers and standard libraries.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller. Consumes exactly two uniforms per call.
    double gaussian() {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

}  // namespace cardbox

#endif  // CARDBOX_RNG_HPP_
