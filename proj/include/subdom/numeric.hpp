#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace subdom {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// sin(pi*x) with the integer part of x removed exactly before calling sin,
/// so sin_pi(k) is exactly zero for every integer k.
inline double sin_pi(double x) {
  const double n = std::round(x);
  const double s = std::sin(pi * (x - n));
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

/// exp(i*pi*x), reduced modulo 2 first.
inline cplx exp_i_pi(double x) {
  const double r = x - 2.0 * std::round(0.5 * x);
  return {std::cos(pi * r), std::sin(pi * r)};
}

/// exp(-i*2*pi*num/den) evaluated on the reduced numerator. Used by every
/// on-grid Fourier entry so that operator columns and grid basis vectors are
/// bit-identical.
inline cplx root_of_unity(std::int64_t num, std::int64_t den) {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  return exp_i_pi(-2.0 * static_cast<double>(r) / static_cast<double>(den));
}

/// `intervals + 1` evenly spaced samples of [lo, hi]; endpoints are exact.
inline std::vector<double> linspace(double lo, double hi, std::size_t intervals) {
  std::vector<double> out(intervals + 1);
  const auto n = static_cast<double>(intervals);
  for (std::size_t j = 0; j <= intervals; ++j) {
    const auto t = static_cast<double>(j);
    out[j] = (lo * (n - t) + hi * t) / n;
  }
  return out;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace subdom
