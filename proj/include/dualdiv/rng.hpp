#pragma once

#include <cstdint>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace dualdiv {

// One splitmix64 step: mixes and advances `state`. Used as a seed expander so
// nearby stream keys produce unrelated generator seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic random source. All draws are constructed explicitly from raw
// mt19937_64 output (whose seeding and stepping are fully specified by the
// standard), never through std::*_distribution or std::shuffle, whose output
// is implementation-defined. This is what makes simulation output
// byte-identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Independent substream for one replication: the (base_seed, key) pair is
  // expanded through two splitmix64 steps into the generator seed.
  static Rng substream(std::uint64_t base_seed, std::uint64_t key) {
    std::uint64_t s = base_seed ^ (0x9e3779b97f4a7c15ULL * (key + 1));
    std::uint64_t seed = splitmix64(s);
    seed ^= splitmix64(s);
    return Rng(seed);
  }

  // Uniform on [0,1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Exponential with the given rate, by inverse CDF. uniform() < 1 ensures a
  // finite result; log1p keeps precision for small draws.
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  // Uniform integer in [0, n) by rejection (no modulo bias).
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  // k distinct indices from [0, n), via partial Fisher-Yates. Order of the
  // returned indices is part of the pinned draw sequence.
  std::vector<std::size_t> choose(std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + static_cast<std::size_t>(bounded(n - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace dualdiv
