#pragma once

// Unitary CVQFT matrices, Fourier basis vectors and the periodic-sinc
// (Dirichlet) kernel f(tau) that measures the alignment of two basis
// directions.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "subdom/numeric.hpp"

namespace subdom {

enum class Direction { forward, inverse };

inline const char* to_string(Direction d) { return d == Direction::forward ? "forward" : "inverse"; }

namespace detail {

inline void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

}  // namespace detail

/// Dense K x K unitary DFT. Forward entries are exp(-i2*pi*m*k/K)/sqrt(K);
/// the inverse is the entrywise conjugate.
class FourierOperator {
 public:
  FourierOperator(std::size_t size, Direction direction) : direction_(direction) {
    detail::require_positive(size, "operator size");
    const auto n = static_cast<Eigen::Index>(size);
    const double scale = 1.0 / std::sqrt(static_cast<double>(size));
    matrix_.resize(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
      for (Eigen::Index k = m; k < n; ++k) {
        cplx w = scale * root_of_unity(static_cast<std::int64_t>(m) * k, n);
        if (direction == Direction::inverse) w = std::conj(w);
        matrix_(m, k) = w;
        matrix_(k, m) = w;
      }
    }
  }

  std::size_t size() const { return static_cast<std::size_t>(matrix_.rows()); }
  Direction direction() const { return direction_; }
  const CMatrix& matrix() const& { return matrix_; }
  CMatrix matrix() && { return std::move(matrix_); }  // no dangling reference off a temporary
  cplx entry(std::size_t m, std::size_t k) const {
    return matrix_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k));
  }

  FourierOperator inverse() const {
    FourierOperator out = *this;
    out.direction_ = direction_ == Direction::forward ? Direction::inverse : Direction::forward;
    out.matrix_ = matrix_.conjugate();
    return out;
  }

  CVector apply(const CVector& v) const {
    if (v.size() != matrix_.cols()) {
      throw std::invalid_argument("dimension mismatch: operator size " + std::to_string(size()) +
                                  ", vector length " + std::to_string(v.size()));
    }
    return matrix_ * v;
  }

 private:
  Direction direction_;
  CMatrix matrix_;
};

inline FourierOperator build_cvqft(std::size_t l, Direction direction = Direction::forward) {
  return FourierOperator(l, direction);
}

/// Unit-norm steering vector b(x) of length K on a grid of scale l:
/// entry(m) = exp(-i2*pi*m*l*x/K)/sqrt(K).
///
/// When l*x is an exact integer the entries are produced by the same
/// integer-phase path as FourierOperator, so b(k/l) with K = l is bit-identical
/// to column k of the forward operator.
class BasisVector {
 public:
  BasisVector(double x, std::size_t length, std::size_t scale) : parameter_(x), scale_(scale) {
    detail::require_positive(length, "basis length");
    detail::require_positive(scale, "grid scale");
    const double s = static_cast<double>(scale) * x;
    if (s == std::round(s) && std::abs(s) < 0x1p52) {
      fill_on_grid(static_cast<std::int64_t>(s), length);
    } else {
      const auto n = static_cast<Eigen::Index>(length);
      const double norm = 1.0 / std::sqrt(static_cast<double>(length));
      entries_.resize(n);
      for (Eigen::Index m = 0; m < n; ++m) {
        entries_(m) = norm * exp_i_pi(-2.0 * static_cast<double>(m) * s / static_cast<double>(length));
      }
    }
  }

  /// b(index/scale), built from the integer index.
  static BasisVector on_grid(std::int64_t index, std::size_t length, std::size_t scale) {
    BasisVector b;
    detail::require_positive(length, "basis length");
    detail::require_positive(scale, "grid scale");
    b.parameter_ = static_cast<double>(index) / static_cast<double>(scale);
    b.scale_ = scale;
    b.fill_on_grid(index, length);
    return b;
  }

  double parameter() const { return parameter_; }
  std::size_t length() const { return static_cast<std::size_t>(entries_.size()); }
  std::size_t scale() const { return scale_; }
  const CVector& entries() const { return entries_; }
  cplx operator[](std::size_t m) const { return entries_(static_cast<Eigen::Index>(m)); }

  /// this^dagger * other
  cplx inner(const BasisVector& other) const {
    if (other.length() != length()) throw std::invalid_argument("basis vectors differ in length");
    return entries_.dot(other.entries_);
  }

 private:
  BasisVector() = default;

  void fill_on_grid(std::int64_t index, std::size_t length) {
    const auto n = static_cast<Eigen::Index>(length);
    const double norm = 1.0 / std::sqrt(static_cast<double>(length));
    entries_.resize(n);
    for (Eigen::Index m = 0; m < n; ++m) entries_(m) = norm * root_of_unity(m * index, n);
  }

  double parameter_ = 0.0;
  std::size_t scale_ = 1;
  CVector entries_;
};

inline BasisVector basis_vector(double x, std::size_t length, std::size_t scale) {
  return BasisVector(x, length, scale);
}

/// Transmitted (theta_star) and received (theta) phase-space angles, radians.
class AnglePair {
 public:
  AnglePair(double theta_star, double theta) : theta_star_(theta_star), theta_(theta) {
    check(theta_star, "theta_star");
    check(theta, "theta");
  }

  /// Reduces both angles into [0, 2*pi) first; cosines are unchanged.
  static AnglePair wrapped(double theta_star, double theta) { return {wrap(theta_star), wrap(theta)}; }

  double theta_star() const { return theta_star_; }
  double theta() const { return theta_; }
  double cos_theta_star() const { return std::cos(theta_star_); }
  double cos_theta() const { return std::cos(theta_); }
  double tau() const { return cos_theta() - cos_theta_star(); }
  double omega() const { return theta_ - theta_star_; }

 private:
  static double wrap(double a) {
    double r = std::fmod(a, two_pi);
    if (r < 0.0) r += two_pi;
    return r >= two_pi ? 0.0 : r;
  }
  static void check(double a, const char* name) {
    if (!(a >= 0.0 && a <= two_pi)) {
      throw std::invalid_argument(std::string(name) + " must lie in [0, 2pi], got " + std::to_string(a));
    }
  }

  double theta_star_;
  double theta_;
};

/// Ordered Fourier basis {b(0), b(1/l), ..., b((K-1)/l)} of C^K.
class BasisSet {
 public:
  BasisSet(std::size_t size, std::size_t scale) : scale_(scale) {
    detail::require_positive(size, "basis set size");
    members_.reserve(size);
    for (std::size_t j = 0; j < size; ++j) {
      members_.push_back(BasisVector::on_grid(static_cast<std::int64_t>(j), size, scale));
    }
  }

  std::size_t size() const { return members_.size(); }
  std::size_t scale() const { return scale_; }
  const std::vector<BasisVector>& members() const { return members_; }
  const BasisVector& operator[](std::size_t j) const { return members_[j]; }

  /// Members as the columns of a K x K matrix.
  CMatrix as_matrix() const {
    const auto n = static_cast<Eigen::Index>(size());
    CMatrix out(n, n);
    for (Eigen::Index j = 0; j < n; ++j) out.col(j) = members_[static_cast<std::size_t>(j)].entries();
    return out;
  }

  CMatrix gram() const {
    const CMatrix b = as_matrix();
    return b.adjoint() * b;
  }

 private:
  std::size_t scale_;
  std::vector<BasisVector> members_;
};

/// Below this |sin(pi*tau)| the kernel is replaced by its limit.
inline constexpr double kernel_singular_guard = 1e-9;

/// Periodic-sinc kernel (1/l) exp(i*pi*(l-1)*tau) sin(pi*l*tau)/sin(pi*tau).
/// Period 1 in tau; the removable singularities at integer tau evaluate to 1.
inline cplx f_tau(double tau, std::size_t l) {
  detail::require_positive(l, "l");
  const double r = tau - std::round(tau);
  const double n = static_cast<double>(l);
  const cplx phase = exp_i_pi((n - 1.0) * r);
  const double den = sin_pi(r);
  if (std::abs(den) < kernel_singular_guard) return phase;
  return phase * (sin_pi(n * r) / (n * den));
}

/// Normalised sinc, sin(pi*x)/(pi*x) with sinc(0) = 1.
inline double sinc(double x) { return x == 0.0 ? 1.0 : sin_pi(x) / (pi * x); }

/// Large-l limit of f_tau: exp(i*pi*l*tau) sinc(l*tau).
inline cplx f_tau_sinc_limit(double tau, std::size_t l) {
  detail::require_positive(l, "l");
  const double u = static_cast<double>(l) * tau;
  return exp_i_pi(u) * sinc(u);
}

/// |cos Omega| from the closed form |f(tau)|.
inline double cos_omega(const AnglePair& pair, std::size_t l) { return std::abs(f_tau(pair.tau(), l)); }

/// |cos Omega| as the overlap |b(cos theta*)^dagger b(cos theta)| of the two
/// steering vectors.
inline double basis_alignment(const AnglePair& pair, std::size_t l) {
  const BasisVector sent(pair.cos_theta_star(), l, l);
  const BasisVector received(pair.cos_theta(), l, l);
  return std::abs(sent.inner(received));
}

struct KernelSample {
  double cos_theta;
  double magnitude;
};

/// |f(cos theta - cos theta*)| sampled on `resolution` equal intervals of
/// cos theta in [-1, 1]. The main lobe sits at cos theta = cos theta*.
inline std::vector<KernelSample> kernel_plot(double theta_star, std::size_t l, std::size_t resolution) {
  if (resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
  const double c_star = std::cos(theta_star);
  std::vector<KernelSample> out;
  for (double c : linspace(-1.0, 1.0, resolution)) out.push_back({c, std::abs(f_tau(c - c_star, l))});
  return out;
}

/// |f(cos theta - k/l)|: the profile of grid basis vector b(k/l), peaking at
/// cos theta = k/l.
inline std::vector<KernelSample> basis_plot(std::int64_t k, std::size_t l, std::size_t resolution) {
  if (resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
  detail::require_positive(l, "l");
  const double center = static_cast<double>(k) / static_cast<double>(l);
  std::vector<KernelSample> out;
  for (double c : linspace(-1.0, 1.0, resolution)) out.push_back({c, std::abs(f_tau(c - center, l))});
  return out;
}

/// Domain bin membership |cos theta - k/l| < 1/l.
inline bool in_domain_bin(double theta, std::int64_t k, std::size_t l) {
  detail::require_positive(l, "l");
  if (k < 0 || k >= static_cast<std::int64_t>(l)) {
    throw std::invalid_argument("bin index must lie in [0, l-1]");
  }
  const double n = static_cast<double>(l);
  return std::abs(std::cos(theta) - static_cast<double>(k) / n) < 1.0 / n;
}

}  // namespace subdom
