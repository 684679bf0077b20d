#ifndef FIC_RANDOM_HPP
#define FIC_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace fic {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to derive independent child seeds from a parent
// seed so that restarts, splits and algorithm fits never share a stream.
constexpr std::uint64_t mix_seed(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) noexcept {
    return mix_seed(mix_seed(parent) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

// Named streams (FNV-1a of the label) keep call sites readable.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::string_view label) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return derive_seed(parent, h);
}

}  // namespace fic

#endif  // FIC_RANDOM_HPP
