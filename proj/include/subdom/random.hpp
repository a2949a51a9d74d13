#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "subdom/numeric.hpp"

namespace subdom {

/// splitmix64 finaliser; maps (seed, stream) to a well-mixed sub-seed so that
/// per-trial generators are independent of worker assignment.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seeded sampler of zero-mean circular-symmetric complex Gaussian vectors.
/// Real and imaginary parts are i.i.d. N(0, quadrature_variance), so
/// E|z_j|^2 = 2 * quadrature_variance.
///
/// Owns its generator state; not shareable while sampling.
class GaussianEnsemble {
 public:
  GaussianEnsemble(std::size_t dimension, double quadrature_variance, std::uint64_t seed)
      : dimension_(dimension), variance_(quadrature_variance), seed_(seed), rng_(seed) {
    if (!(quadrature_variance >= 0.0)) throw std::invalid_argument("variance must be >= 0");
  }

  std::size_t dimension() const { return dimension_; }
  double quadrature_variance() const { return variance_; }
  std::uint64_t seed() const { return seed_; }

  CVector sample() {
    CVector out(static_cast<Eigen::Index>(dimension_));
    const double sd = std::sqrt(variance_);
    for (Eigen::Index j = 0; j < out.size(); ++j) {
      const double re = normal_(rng_);
      const double im = normal_(rng_);
      out(j) = cplx(sd * re, sd * im);
    }
    return out;
  }

 private:
  std::size_t dimension_;
  double variance_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace subdom
