#pragma once

#include <cstdint>
#include <random>

namespace mobles {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to derive independent stream seeds from a base
// seed and a counter, so that stream k never depends on how many other
// streams were created.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter) noexcept {
    return mix64(mix64(base) ^ mix64(counter + 0x632be59bd9b4e019ULL));
}

// Stream ids used by every run: the environment and the agent draw from
// separate generators so agents with different internal randomness still
// see comparable environment noise.
enum class Stream : std::uint64_t { Environment = 0, Agent = 1 };

inline Rng make_stream(std::uint64_t run_seed, Stream which) {
    return Rng(derive_seed(run_seed, static_cast<std::uint64_t>(which)));
}

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution so traces are
// portable across standard libraries.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace mobles
