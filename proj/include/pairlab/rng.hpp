#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pairlab {

// Statistical RNG for generators and the simulator. Raw mt19937_64 plus
// hand-rolled samplers: std::*_distribution is not bit-stable across standard
// library implementations, and reproducibility of generated datasets and
// transcripts under a fixed seed is a contract here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased uniform in [0, n).
  std::uint64_t below(std::uint64_t n);

  // Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi);

  double normal();
  double normal(double mu, double sigma) { return mu + sigma * normal(); }
  double normal_trunc(double mu, double sigma, double lo, double hi);

 private:
  std::mt19937_64 eng_;
};

// Stable stream derivation so independent generator components never share a
// raw engine state.
std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose);
std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose, std::uint64_t index);

}  // namespace pairlab
