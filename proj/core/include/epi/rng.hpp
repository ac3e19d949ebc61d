#ifndef EPI_RNG_HPP
#define EPI_RNG_HPP

#include <cstdint>

namespace epi {

/// Derive a decorrelated seed for stream `stream` of a run seeded with
/// `seed` (splitmix64-style finalizer). Adjacent seeds or stream indices
/// map to unrelated generator states.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace epi

#endif
