#ifndef WALKSGD_RNG_HPP
#define WALKSGD_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace walksgd {

// Seeded randomness helpers. std::mt19937_64 output is pinned by the
// standard, but the std distributions are not, so every draw we make goes
// through these functions to keep emission streams identical across
// platforms and compilers.

using Rng = std::mt19937_64;

/// Derive an independent stream seed from (seed, stream) via splitmix64.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection, bias-free.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = n * (UINT64_MAX / n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// Standard normal via Box-Muller (both values used, cached).
class NormalSampler {
 public:
  double operator()(Rng& rng) {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = uniform_double(rng);
    while (u1 <= 0.0) u1 = uniform_double(rng);
    const double u2 = uniform_double(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

 private:
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Sample an index from a cumulative row (inclusive partial sums, last == 1).
inline int sample_cumulative(const double* cum, int n, double u) {
  int lo = 0;
  int hi = n - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (u < cum[mid]) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

inline int sample_cumulative(const Eigen::VectorXd& cum, double u) {
  return sample_cumulative(cum.data(), static_cast<int>(cum.size()), u);
}

/// In-place Fisher-Yates shuffle.
inline void shuffle_indices(std::vector<int>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = uniform_below(rng, i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace walksgd

#endif  // WALKSGD_RNG_HPP
