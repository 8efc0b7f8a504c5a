#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace graphon {

// splitmix64 finalizer. Used both as a bit mixer for seed derivation and as
// the canonical way to fan one user seed out into independent substreams.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Combines a base seed with a list of stream indices: each part is folded in
// with one splitmix64 round. derive_seed(s, {c, j}) is the per-item seed
// contract used by augmentation (class c, synthetic index j).
inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t p : parts) h = mix64(h ^ p);
  return h;
}

// Deterministic generator wrapper. mt19937_64 output is specified bit-exactly
// by the standard; the distributions below are hand-rolled so that results do
// not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace graphon
