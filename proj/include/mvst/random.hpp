#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace mvst {

  using Rng = std::mt19937_64;

  /// SplitMix64 finalizer; used to derive independent seeds from coordinates.
  constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t value) {
    return mix64(seed ^ mix64(value + 0x632be59bd9b4e019ULL));
  }

  template<typename... Rest>
  constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t value, Rest... rest) {
    return mix_seed(mix_seed(seed, value), static_cast<std::uint64_t>(rest)...);
  }

  /// FNV-1a; stable across platforms, unlike std::hash.
  constexpr std::uint64_t stable_hash(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  /// Uniform integer in [0, bound) by rejection sampling.
  /// std::uniform_int_distribution is implementation-defined, this is not.
  inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound <= 1) { return 0; }
    const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
    std::uint64_t x = rng();
    while (x > limit) { x = rng(); }
    return x % bound;
  }

  /// Uniform real in [0, 1) with 53 bits of randomness.
  inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (portable, unlike std::normal_distribution).
  inline double standard_normal(Rng& rng) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    double u1 = uniform_unit(rng);
    while (u1 <= 0.0) { u1 = uniform_unit(rng); }
    const double u2 = uniform_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  template<typename T>
  void shuffle(std::span<T> items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_below(rng, i));
      std::swap(items[i - 1], items[j]);
    }
  }

} // namespace mvst
