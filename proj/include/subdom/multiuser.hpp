#pragma once

// K_in transmitters / K_out receivers generalisation of the subcarrier domain.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "subdom/channel.hpp"
#include "subdom/fourier.hpp"
#include "subdom/random.hpp"

namespace subdom {

struct MultiuserConfig {
  std::size_t k_in = 1;
  std::size_t k_out = 1;
  std::size_t l = 1;
  double sigma_sq = 1.0;
  double sigma_n_sq = 0.0;
  std::uint64_t seed = 42;

  void validate() const {
    if (k_in == 0) throw std::invalid_argument("k_in must be >= 1");
    if (k_out == 0) throw std::invalid_argument("k_out must be >= 1");
    if (l == 0) throw std::invalid_argument("l must be >= 1");
    if (!(sigma_sq > 0.0)) throw std::invalid_argument("sigma_sq must be > 0");
    if (!(sigma_n_sq >= 0.0)) throw std::invalid_argument("sigma_n_sq must be >= 0");
  }
};

struct MultiuserOperators {
  FourierOperator input;   // U_{K_in}: inverse CVQFT, exponent +i2*pi*i*k/K_in
  FourierOperator output;  // U_{K_out}: forward CVQFT, exponent -i2*pi*i*k/K_out
};

inline MultiuserOperators build_multiuser_operators(const MultiuserConfig& cfg) {
  cfg.validate();
  return {FourierOperator(cfg.k_in, Direction::inverse), FourierOperator(cfg.k_out, Direction::forward)};
}

/// (S_{b_{K_in}}, S_{b_{K_out}}): b_K(j/l), j = 0..K-1, on each side.
inline std::pair<BasisSet, BasisSet> multiuser_basis_sets(const MultiuserConfig& cfg) {
  cfg.validate();
  return {BasisSet(cfg.k_in, cfg.l), BasisSet(cfg.k_out, cfg.l)};
}

/// K_out x K_in channel sum_p x_p b_{K_out}(cos theta_p) b_{K_in}(cos theta*_p)^dagger.
inline CMatrix multiuser_path_matrix(const std::vector<PathComponent>& paths, const MultiuserConfig& cfg) {
  cfg.validate();
  CMatrix t = CMatrix::Zero(static_cast<Eigen::Index>(cfg.k_out), static_cast<Eigen::Index>(cfg.k_in));
  for (const auto& p : paths) {
    if (!(p.gain >= 0.0)) throw std::invalid_argument("path gain must be >= 0");
    const BasisVector received(p.angles.cos_theta(), cfg.k_out, cfg.l);
    const BasisVector sent(p.angles.cos_theta_star(), cfg.k_in, cfg.l);
    t += p.gain * received.entries() * sent.entries().adjoint();
  }
  return t;
}

/// entry(k, i) = b_{K_out}(k/l)^dagger T b_{K_in}(i/l).
inline SubcarrierDomainMatrix multiuser_subcarrier_domain(const CMatrix& t, const MultiuserConfig& cfg) {
  cfg.validate();
  if (t.rows() != static_cast<Eigen::Index>(cfg.k_out) || t.cols() != static_cast<Eigen::Index>(cfg.k_in)) {
    throw std::invalid_argument("channel must be k_out x k_in");
  }
  const auto [in, out] = multiuser_basis_sets(cfg);
  return {out.as_matrix().adjoint() * t * in.as_matrix(), t.norm()};
}

struct MultiuserTransmission {
  CVector subcarriers;  // D = U_{K_in} Z
  CVector noise;        // U_{K_out} Delta
  CVector output;       // Y
};

/// D = U_{K_in} Z, Y = R_phi^{K_in,K_out}(T) D + U_{K_out} Delta, with Delta
/// quadratures N(0, sigma_n_sq) drawn from cfg.seed.
inline MultiuserTransmission multiuser_transmit(const CVector& z, const CMatrix& t, const MultiuserConfig& cfg) {
  cfg.validate();
  if (z.size() != static_cast<Eigen::Index>(cfg.k_in)) throw std::invalid_argument("input must have k_in entries");
  const auto ops = build_multiuser_operators(cfg);
  MultiuserTransmission out;
  out.subcarriers = ops.input.apply(z);
  out.noise = ops.output.apply(GaussianEnsemble(cfg.k_out, cfg.sigma_n_sq, cfg.seed).sample());
  out.output = multiuser_subcarrier_domain(t, cfg).entries * out.subcarriers + out.noise;
  return out;
}

/// (1/K) exp(i*pi*l*(K-1)*tau/K) sin(pi*l*tau) / sin(pi*l*tau/K), K = k_out.
/// Removable singularities at l*tau/K in Z take their limit, magnitude 1.
inline cplx f_kout(double tau, std::size_t l, std::size_t k_out) {
  detail::require_positive(l, "l");
  detail::require_positive(k_out, "k_out");
  const double n = static_cast<double>(l);
  const double kk = static_cast<double>(k_out);
  const double u = n * tau / kk;
  const cplx phase = exp_i_pi((kk - 1.0) * u);
  const double den = sin_pi(u);
  if (std::abs(den) < kernel_singular_guard) {
    // sin(pi*K*u)/sin(pi*u) -> K (-1)^{(K-1) m} near u = m.
    const double m = std::round(u);
    const bool odd = std::fmod((kk - 1.0) * m, 2.0) != 0.0;
    return odd ? -phase : phase;
  }
  return phase * (sin_pi(n * tau) / (kk * den));
}

/// Principal maxima of |f^{K_out}(cos theta - center)| on `grid` equal
/// intervals of cos theta in [-1, 1]. Side lobes of the kernel stay below
/// `lobe_floor`, so only main-lobe peaks are reported.
inline std::vector<double> f_kout_maxima(std::size_t l, std::size_t k_out, std::size_t grid, double center = 0.0,
                                         double lobe_floor = 0.5) {
  if (grid < 10 * k_out) throw std::invalid_argument("grid resolution must be >= 10 * k_out");
  const auto xs = linspace(-1.0, 1.0, grid);
  std::vector<double> v(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) v[j] = std::abs(f_kout(xs[j] - center, l, k_out));
  std::vector<double> out;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const bool left = j == 0 || v[j] > v[j - 1];
    const bool right = j + 1 == xs.size() || v[j] >= v[j + 1];
    if (left && right && v[j] > lobe_floor) out.push_back(xs[j]);
  }
  return out;
}

/// Congruence points center + m*K_out/l that fall inside [-1, 1].
inline std::vector<double> predicted_kout_maxima(std::size_t l, std::size_t k_out, double center = 0.0) {
  detail::require_positive(l, "l");
  detail::require_positive(k_out, "k_out");
  const double period = static_cast<double>(k_out) / static_cast<double>(l);
  constexpr double slack = 1e-12;
  std::vector<double> out;
  const auto lo = static_cast<std::int64_t>(std::ceil((-1.0 - center - slack) / period));
  const auto hi = static_cast<std::int64_t>(std::floor((1.0 - center + slack) / period));
  for (std::int64_t m = lo; m <= hi; ++m) out.push_back(center + static_cast<double>(m) * period);
  return out;
}

}  // namespace subdom
