#pragma once

// Monte-Carlo and sweep machinery over the subcarrier-domain matrix:
// magnitude profiles, near-zero sets, rank and diversity.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "subdom/channel.hpp"
#include "subdom/fourier.hpp"
#include "subdom/parallel.hpp"
#include "subdom/random.hpp"

namespace subdom {

/// How a matrix is reduced to one magnitude per sub-channel (column i).
enum class ProfileMode {
  diagonal,    // |R(i, i)|, flat channels
  column_max,  // max_k |R(k, i)|
  column_sum,  // |sum_k R(k, i)|
};

struct MagnitudeProfile {
  std::vector<double> values;
  double epsilon = 0.0;
  std::vector<std::size_t> near_zero_indices;  // { j : values[j] < epsilon }
  double average_a = 0.0;

  std::size_t near_zero_count() const { return near_zero_indices.size(); }
  std::size_t argmax() const {
    return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  }
};

inline MagnitudeProfile magnitude_profile(std::vector<double> values, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  MagnitudeProfile p;
  p.epsilon = epsilon;
  double sum = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] < epsilon) p.near_zero_indices.push_back(j);
    sum += values[j];
  }
  p.average_a = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  p.values = std::move(values);
  return p;
}

inline MagnitudeProfile magnitude_profile(const CMatrix& r, double epsilon,
                                          ProfileMode mode = ProfileMode::column_max) {
  std::vector<double> values(static_cast<std::size_t>(r.cols()));
  for (Eigen::Index i = 0; i < r.cols(); ++i) {
    double v = 0.0;
    switch (mode) {
      case ProfileMode::diagonal:
        if (r.rows() != r.cols()) throw std::invalid_argument("diagonal profile needs a square matrix");
        v = std::abs(r(i, i));
        break;
      case ProfileMode::column_max:
        v = r.col(i).cwiseAbs().maxCoeff();
        break;
      case ProfileMode::column_sum:
        v = std::abs(r.col(i).sum());
        break;
    }
    values[static_cast<std::size_t>(i)] = v;
  }
  return magnitude_profile(std::move(values), epsilon);
}

/// Stochastic multipath around one transmitted direction. Each trial draws
/// one path per gain with received angle
///   theta_star + omega + angular_spread * |sin(omega / 2)| * n,  n ~ N(0, 1),
/// so the paths coincide at omega = 0 and scatter most at |omega| = pi.
struct ScatterModel {
  std::vector<double> gains{1.0};
  double angular_spread = 0.25;
};

inline std::vector<PathComponent> scatter_paths(double theta_star, double omega, const ScatterModel& model,
                                                std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double spread = model.angular_spread * std::abs(std::sin(0.5 * omega));
  std::vector<PathComponent> paths;
  paths.reserve(model.gains.size());
  for (double g : model.gains) {
    const double jitter = spread * normal(rng);
    paths.push_back({g, AnglePair::wrapped(theta_star, theta_star + omega + jitter)});
  }
  return paths;
}

/// |R_phi(k, column)| for k = 0..k_last of the path channel. Rows past l-1
/// wrap, since b(k/l) has period l in k.
inline std::vector<double> column_magnitudes(const std::vector<PathComponent>& paths, std::size_t l,
                                             std::size_t column, std::size_t k_last) {
  const CMatrix t = path_matrix(paths, l);
  const CVector rhs = t * BasisVector::on_grid(static_cast<std::int64_t>(column), l, l).entries();
  std::vector<double> out(k_last + 1);
  for (std::size_t k = 0; k <= k_last; ++k) {
    out[k] = std::abs(BasisVector::on_grid(static_cast<std::int64_t>(k), l, l).entries().dot(rhs));
  }
  return out;
}

struct SweepSpec {
  std::size_t l = 16;
  std::size_t column = 8;   // fixed sub-channel index C
  double theta_star = 0.0;  // on-grid when cos(theta_star) = C / l
  std::vector<double> omegas{0.0, pi};
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  double epsilon = 1e-6;
  ScatterModel scatter;

  void validate() const {
    if (l == 0) throw std::invalid_argument("l must be >= 1");
    if (column == 0 || column > l) throw std::invalid_argument("C must satisfy 0 < C <= l");
    if (omegas.empty()) throw std::invalid_argument("omega schedule is empty");
    if (trials == 0) throw std::invalid_argument("trials must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  }

  std::size_t k_last() const { return 2 * column; }
};

/// SweepSpec with the transmitted direction on sub-channel C's grid point.
inline SweepSpec on_grid_sweep(std::size_t l, std::size_t column) {
  SweepSpec s;
  s.l = l;
  s.column = column;
  s.theta_star = std::acos(static_cast<double>(column) / static_cast<double>(l));
  return s;
}

/// Magnitudes over k in [0, 2C] for one trial at schedule entry omega_index.
/// Trials reuse their random draws across the schedule.
inline std::vector<double> sweep_trial(const SweepSpec& spec, std::size_t omega_index, std::size_t trial) {
  std::mt19937_64 rng(derive_seed(spec.seed, trial));
  const auto paths = scatter_paths(spec.theta_star, spec.omegas.at(omega_index), spec.scatter, rng);
  return column_magnitudes(paths, spec.l, spec.column, spec.k_last());
}

struct SweepRow {
  double omega;
  std::size_t k;
  double mean_magnitude;
};

inline std::vector<SweepRow> omega_sweep(const SweepSpec& spec, std::size_t workers = 1) {
  spec.validate();
  const std::size_t n_omega = spec.omegas.size();
  const std::size_t n_k = spec.k_last() + 1;
  const auto per_trial = map_trials(spec.trials, workers, [&](std::size_t t) {
    std::vector<double> block;
    block.reserve(n_omega * n_k);
    for (std::size_t w = 0; w < n_omega; ++w) {
      const auto row = sweep_trial(spec, w, t);
      block.insert(block.end(), row.begin(), row.end());
    }
    return block;
  });

  std::vector<double> sum(n_omega * n_k, 0.0);
  for (const auto& block : per_trial) {
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += block[j];
  }
  std::vector<SweepRow> rows;
  rows.reserve(sum.size());
  for (std::size_t w = 0; w < n_omega; ++w) {
    for (std::size_t k = 0; k < n_k; ++k) {
      rows.push_back({spec.omegas[w], k, sum[w * n_k + k] / static_cast<double>(spec.trials)});
    }
  }
  return rows;
}

/// Mean of the sweep's magnitudes at one omega: the level a the spread
/// profile fluctuates around.
inline double sweep_average(const std::vector<SweepRow>& rows, double omega) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : rows) {
    if (r.omega == omega) {
      sum += r.mean_magnitude;
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

struct NearZeroResult {
  double mean_aligned = 0.0;  // mean |G| at omega = 0
  double mean_opposed = 0.0;  // mean |G| at omega = pi
  std::vector<std::size_t> aligned;
  std::vector<std::size_t> opposed;
};

/// Near-zero set sizes of the k-profile |R_phi(k, C)|, k = 0..l-1, with
/// C = l/2 pinned on-grid, at omega = 0 and omega = pi.
inline NearZeroResult near_zero_monotonicity(std::size_t l, const std::vector<double>& gains, std::uint64_t seed,
                                             std::size_t trials = 100, double epsilon = 1e-6,
                                             std::size_t workers = 1, double angular_spread = 0.25) {
  if (l < 4) throw std::invalid_argument("near_zero_monotonicity needs l >= 4");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  SweepSpec spec = on_grid_sweep(l, l / 2);
  spec.omegas = {0.0, pi};
  spec.seed = seed;
  spec.trials = trials;
  spec.epsilon = epsilon;
  spec.scatter = {gains, angular_spread};

  const auto counts = map_trials(trials, workers, [&](std::size_t t) {
    std::mt19937_64 rng(derive_seed(seed, t));
    std::pair<std::size_t, std::size_t> c;
    for (std::size_t w = 0; w < 2; ++w) {
      std::mt19937_64 trial_rng = rng;
      const auto paths = scatter_paths(spec.theta_star, spec.omegas[w], spec.scatter, trial_rng);
      const auto mags = column_magnitudes(paths, l, spec.column, l - 1);
      const std::size_t g = magnitude_profile(mags, epsilon).near_zero_count();
      (w == 0 ? c.first : c.second) = g;
    }
    return c;
  });

  NearZeroResult r;
  for (const auto& [a, o] : counts) {
    r.aligned.push_back(a);
    r.opposed.push_back(o);
    r.mean_aligned += static_cast<double>(a);
    r.mean_opposed += static_cast<double>(o);
  }
  r.mean_aligned /= static_cast<double>(trials);
  r.mean_opposed /= static_cast<double>(trials);
  return r;
}

struct RankReport {
  std::size_t nonzero_rows = 0;
  std::size_t nonzero_cols = 0;
  std::size_t rank = 0;
  std::size_t diversity = 0;
  double epsilon = 0.0;
};

/// Entries with |entry| > epsilon count as non-zero; rank is
/// min(#non-zero rows, #non-zero columns) and diversity the non-zero count.
inline RankReport rank_report(const CMatrix& m, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  const Eigen::ArrayXXd mag = m.cwiseAbs().array();
  const auto live = (mag > epsilon).eval();
  RankReport r;
  r.epsilon = epsilon;
  r.diversity = static_cast<std::size_t>(live.count());
  for (Eigen::Index i = 0; i < m.rows(); ++i) r.nonzero_rows += live.row(i).any() ? 1 : 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) r.nonzero_cols += live.col(j).any() ? 1 : 0;
  r.rank = std::min(r.nonzero_rows, r.nonzero_cols);
  return r;
}

/// epsilon scaled by the largest entry magnitude; falls back to epsilon for
/// the zero matrix.
inline double relative_epsilon(const CMatrix& m, double epsilon) {
  const double peak = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  return peak > 0.0 ? epsilon * peak : epsilon;
}

/// Cosine-sum approximation min(sum cos theta, sum cos theta*). Diagnostic
/// only: cosines can be negative.
inline double approximate_rank(const std::vector<PathComponent>& paths) {
  double received = 0.0;
  double sent = 0.0;
  for (const auto& p : paths) {
    received += p.angles.cos_theta();
    sent += p.angles.cos_theta_star();
  }
  return std::min(received, sent);
}

struct RankRow {
  std::size_t trial;
  RankReport report;
};

/// Rank and diversity of independent draws of the statistical model
/// S(R_phi) ~ CN(0, variance).
inline std::vector<RankRow> rank_study(std::size_t rows, std::size_t cols, double variance, std::size_t trials,
                                       std::uint64_t seed, double epsilon, bool relative = false,
                                       std::size_t workers = 1) {
  return map_trials(trials, workers, [&](std::size_t t) {
    const CMatrix m = sample_statistical_model(rows, cols, variance, derive_seed(seed, t));
    const double eps = relative ? relative_epsilon(m, epsilon) : epsilon;
    return RankRow{t, rank_report(m, eps)};
  });
}

using PathGenerator = std::function<std::vector<PathComponent>(std::size_t l, std::mt19937_64& rng)>;

/// `count` paths with uniform angles in [0, 2pi) and gains uniform in (0, 1].
/// Generic draws are off the b(k/l) grid.
inline PathGenerator random_paths(std::size_t count) {
  return [count](std::size_t, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, two_pi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<PathComponent> paths;
    for (std::size_t p = 0; p < count; ++p) {
      const double gain = 1.0 - unit(rng);
      const double ts = angle(rng);
      const double t = angle(rng);
      paths.push_back({gain, AnglePair(ts, t)});
    }
    return paths;
  };
}

struct DiversityRow {
  std::size_t l;
  double mean_diversity;
};

inline std::vector<DiversityRow> diversity_vs_l(const std::vector<std::size_t>& l_list, const PathGenerator& gen,
                                                std::size_t trials, std::uint64_t seed, double epsilon,
                                                bool relative = false, std::size_t workers = 1) {
  if (l_list.empty()) throw std::invalid_argument("l list is empty");
  for (std::size_t j = 0; j < l_list.size(); ++j) {
    if (l_list[j] == 0) throw std::invalid_argument("l must be >= 1");
    if (j > 0 && l_list[j] <= l_list[j - 1]) throw std::invalid_argument("l list must be strictly increasing");
  }
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  std::vector<DiversityRow> out;
  for (std::size_t l : l_list) {
    const auto div = map_trials(trials, workers, [&](std::size_t t) {
      std::mt19937_64 rng(derive_seed(derive_seed(seed, l), t));
      const CMatrix r = subcarrier_domain(path_matrix(gen(l, rng), l), l).entries;
      const double eps = relative ? relative_epsilon(r, epsilon) : epsilon;
      return rank_report(r, eps).diversity;
    });
    double sum = 0.0;
    for (std::size_t d : div) sum += static_cast<double>(d);
    out.push_back({l, sum / static_cast<double>(trials)});
  }
  return out;
}

}  // namespace subdom
