#ifndef PBPSAMP_RNG_HPP
#define PBPSAMP_RNG_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace pbpsamp {

/// Deterministic 64-bit generator (splitmix64).
///
/// Every random draw in the project flows through this type so that a run is
/// reproducible bit-for-bit from a single seed, independent of platform and
/// standard-library version (std::uniform_int_distribution is not portable).
/// Named substreams let components (graph, hitter, inner sampler, corpus)
/// vary independently under one top-level seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, bound), bound >= 1. Rejection sampling, unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  bool coin() { return (next() & 1) != 0; }

  /// Derives an independent generator keyed by (current seed, name).
  Rng substream(std::string_view name) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : name) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    Rng r(state_ ^ h);
    r.next();
    return r;
  }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// Uniform random permutation of {0,...,m-1}.
  std::vector<std::uint32_t> permutation(std::uint32_t m) {
    std::vector<std::uint32_t> p(m);
    for (std::uint32_t i = 0; i < m; ++i) p[i] = i;
    shuffle(p);
    return p;
  }

 private:
  std::uint64_t state_;
};

}  // namespace pbpsamp

#endif  // PBPSAMP_RNG_HPP
