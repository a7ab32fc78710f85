#include "pairlab/rng.hpp"

#include <cmath>

#include "pairlab/errors.hpp"

namespace pairlab {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) fail(Err::BadParams, "below(0)");
  std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= lim);
  return x % n;
}

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) fail(Err::BadParams, "uniform_int with hi < lo");
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::normal() {
  // Box-Muller, cosine branch only; keeps the stream position predictable.
  double u1 = 1.0 - unit();
  double u2 = unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

double Rng::normal_trunc(double mu, double sigma, double lo, double hi) {
  if (lo > hi) fail(Err::BadParams, "normal_trunc with lo > hi");
  for (int i = 0; i < 100000; ++i) {
    double x = normal(mu, sigma);
    if (x >= lo && x <= hi) return x;
  }
  fail(Err::BadParams, "truncation bounds reject effectively all mass");
}

static std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the purpose tag
  for (char c : purpose) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return splitmix64(master ^ h);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose, std::uint64_t index) {
  return splitmix64(derive_seed(master, purpose) + 0x632be59bd9b4e019ULL * (index + 1));
}

}  // namespace pairlab
