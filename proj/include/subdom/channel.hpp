#pragma once

// Gaussian sub-channel model: subcarrier encoding, flat and path-decomposed
// transmittance, the multicarrier transmission law and the subcarrier-domain
// transform R_phi.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "subdom/fourier.hpp"
#include "subdom/numeric.hpp"
#include "subdom/random.hpp"

namespace subdom {

namespace detail {

inline void require_same_length(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string("dimension mismatch in ") + what + ": " + std::to_string(a) +
                                " vs " + std::to_string(b));
  }
}

}  // namespace detail

/// n single-carrier inputs z with quadratures i.i.d. N(0, sigma_omega0_sq).
inline CVector sample_input(std::size_t n, double sigma_omega0_sq, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  if (!(sigma_omega0_sq > 0.0)) throw std::invalid_argument("modulation variance must be > 0");
  return GaussianEnsemble(n, sigma_omega0_sq, seed).sample();
}

/// d = F^{-1}(z): single carriers to Gaussian subcarriers.
inline CVector subcarrier_encode(const CVector& z) {
  if (z.size() == 0) throw std::invalid_argument("empty input");
  return build_cvqft(static_cast<std::size_t>(z.size()), Direction::inverse).apply(z);
}

/// z = F(d), the receiver-side CVQFT.
inline CVector subcarrier_decode(const CVector& d) {
  if (d.size() == 0) throw std::invalid_argument("empty input");
  return build_cvqft(static_cast<std::size_t>(d.size()), Direction::forward).apply(d);
}

/// Per-sub-channel complex transmittance T_i.
///
/// In strict mode each gain must satisfy 0 <= Re T_i = Im T_i <= 1/sqrt(2);
/// path-built channels are not held to this.
class FlatTransmittance {
 public:
  static constexpr double strict_tolerance = 1e-12;

  explicit FlatTransmittance(std::vector<cplx> gains, bool strict_validation = false)
      : gains_(std::move(gains)), strict_(strict_validation) {
    if (gains_.empty()) throw std::invalid_argument("transmittance needs at least one sub-channel");
    if (strict_) {
      for (std::size_t i = 0; i < gains_.size(); ++i) {
        const double re = gains_[i].real();
        const double im = gains_[i].imag();
        const double hi = 1.0 / std::sqrt(2.0) + strict_tolerance;
        if (re < -strict_tolerance || re > hi || im < -strict_tolerance || im > hi ||
            std::abs(re - im) > strict_tolerance) {
          throw std::invalid_argument("T_" + std::to_string(i) + " violates 0 <= Re T = Im T <= 1/sqrt(2)");
        }
      }
    }
  }

  std::size_t size() const { return gains_.size(); }
  bool strict() const { return strict_; }
  const std::vector<cplx>& gains() const { return gains_; }
  cplx operator[](std::size_t i) const { return gains_[i]; }
  double squared_magnitude(std::size_t i) const {
    return gains_[i].real() * gains_[i].real() + gains_[i].imag() * gains_[i].imag();
  }

  CVector as_vector() const {
    CVector v(static_cast<Eigen::Index>(gains_.size()));
    for (std::size_t i = 0; i < gains_.size(); ++i) v(static_cast<Eigen::Index>(i)) = gains_[i];
    return v;
  }

 private:
  std::vector<cplx> gains_;
  bool strict_;
};

/// One propagation path: virtual gain x >= 0 between the transmitted and
/// received directions.
struct PathComponent {
  double gain;
  AnglePair angles;
};

/// F(T)_i = sum_k T_k exp(-i2*pi*i*k/l), the unnormalised DFT of the gains.
inline CVector fourier_transmittance(const FlatTransmittance& t) {
  const auto l = static_cast<Eigen::Index>(t.size());
  CVector out = CVector::Zero(l);
  for (Eigen::Index i = 0; i < l; ++i) {
    for (Eigen::Index k = 0; k < l; ++k) out(i) += t[static_cast<std::size_t>(k)] * root_of_unity(i * k, l);
  }
  return out;
}

/// R_phi(T) with entry(k, i) = b(k/l)^dagger T b(i/l).
struct SubcarrierDomainMatrix {
  CMatrix entries;
  double source_norm = 0.0;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
  cplx operator()(Eigen::Index k, Eigen::Index i) const { return entries(k, i); }
};

inline SubcarrierDomainMatrix subcarrier_domain(const CMatrix& t, std::size_t l) {
  if (t.rows() != t.cols()) throw std::invalid_argument("subcarrier_domain needs a square matrix");
  detail::require_same_length(t.rows(), static_cast<Eigen::Index>(l), "subcarrier_domain");
  // Columns of the forward operator are b(0), b(1/l), ..., b((l-1)/l).
  const CMatrix b = build_cvqft(l, Direction::forward).matrix();
  return {b.adjoint() * t * b, t.norm()};
}

/// T = sum_p x_p b(cos theta_p) b(cos theta*_p)^dagger.
inline CMatrix path_matrix(const std::vector<PathComponent>& paths, std::size_t l) {
  detail::require_positive(l, "l");
  const auto n = static_cast<Eigen::Index>(l);
  CMatrix t = CMatrix::Zero(n, n);
  for (const auto& p : paths) {
    if (!(p.gain >= 0.0)) throw std::invalid_argument("path gain must be >= 0");
    const BasisVector received(p.angles.cos_theta(), l, l);
    const BasisVector sent(p.angles.cos_theta_star(), l, l);
    t += p.gain * received.entries() * sent.entries().adjoint();
  }
  return t;
}

/// y^{R_phi} = R_phi d + noise.
inline CVector domain_transmit(const CVector& d, const SubcarrierDomainMatrix& r, const CVector& noise) {
  detail::require_same_length(r.cols(), d.size(), "domain_transmit (input)");
  detail::require_same_length(r.rows(), noise.size(), "domain_transmit (noise)");
  return r.entries * d + noise;
}

/// Everything one multicarrier transmission produced.
struct TransmissionRecord {
  CVector input;                  // z
  CVector subcarriers;            // d
  CVector transmittance;          // T
  CVector fourier_transmittance;  // F(T)
  CVector noise;                  // F(Delta)
  CVector output;                 // y
  CVector domain_output;          // y^{R_phi}
};

/// Diagonal sub-channel law y_i = F(T)_i z_i + F(Delta)_i with z = F(d).
///
/// Noise is drawn in the pre-Fourier domain (quadratures N(0, sigma_N_sq))
/// and passed through the CVQFT. The domain output uses
/// R_phi(diag F(T)) = U^dagger diag(F(T)) U, so U (y^{R_phi} - F(Delta)) equals
/// y - F(Delta).
inline TransmissionRecord transmit(const CVector& d, const FlatTransmittance& t, std::uint64_t noise_seed,
                                   double sigma_n_sq) {
  detail::require_same_length(d.size(), static_cast<Eigen::Index>(t.size()), "transmit");
  if (!(sigma_n_sq >= 0.0)) throw std::invalid_argument("noise variance must be >= 0");
  const std::size_t l = t.size();
  const FourierOperator u = build_cvqft(l, Direction::forward);

  TransmissionRecord rec;
  rec.subcarriers = d;
  rec.input = u.apply(d);
  rec.transmittance = t.as_vector();
  rec.fourier_transmittance = fourier_transmittance(t);
  rec.noise = u.apply(GaussianEnsemble(l, sigma_n_sq, noise_seed).sample());
  rec.output = rec.fourier_transmittance.cwiseProduct(rec.input) + rec.noise;

  const CMatrix diag = rec.fourier_transmittance.asDiagonal();
  rec.domain_output = domain_transmit(d, subcarrier_domain(diag, l), rec.noise);
  return rec;
}

/// Draws of the statistical channel model S(.) ~ CN(0, variance) entrywise,
/// i.e. E|entry|^2 = variance.
inline CMatrix sample_statistical_model(std::size_t rows, std::size_t cols, double variance,
                                        std::uint64_t seed) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be >= 1");
  if (!(variance > 0.0)) throw std::invalid_argument("variance must be > 0");
  const CVector flat = GaussianEnsemble(rows * cols, 0.5 * variance, seed).sample();
  return flat.reshaped(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

}  // namespace subdom
