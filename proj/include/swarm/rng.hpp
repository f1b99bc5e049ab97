#pragma once

#include <cstdint>
#include <random>

namespace swarm {

using Rng = std::mt19937_64;

/// Independent random streams. Each (seed, agent, kind) triple gets its own generator so
/// results do not depend on the order agents are processed in.
enum class StreamKind : std::uint64_t {
    Placement = 1,
    Profile = 2,
    Motion = 3,
    Snag = 4,
    Selection = 5,
    Entangle = 6,
};

inline constexpr std::uint64_t kWorldStream = 0xFFFFFFFFull;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t agent, StreamKind kind) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ agent);
    h = splitmix64(h ^ static_cast<std::uint64_t>(kind));
    return Rng(h);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline double standard_normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

/// True with probability p (p clamped to [0, 1]). p <= 0 never fires and draws nothing.
inline bool bernoulli(Rng& rng, double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01(rng) < p;
}

}  // namespace swarm
