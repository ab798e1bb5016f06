#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace fragvqa {

/// 64-bit FNV-1a; stable across platforms, used for config and file hashes.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t value);
std::uint64_t hash_file(const std::filesystem::path& path);

/// std::mt19937_64's output sequence is fixed by the standard; the helpers
/// below map it to values without relying on library-specific distributions.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }
/// Uniform integer in [0, n).
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);
/// Standard normal via Box-Muller.
double normal(Rng& rng);

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

/// Shortest round-trippable decimal form of a double.
std::string format_double(double value);

}  // namespace fragvqa
