#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "subdom/channel.hpp"
#include "subdom/cli/config.hpp"
#include "subdom/fourier.hpp"
#include "subdom/io.hpp"
#include "subdom/multiuser.hpp"
#include "subdom/statistics.hpp"

namespace subdom::cli {

using Cell = std::variant<double, std::int64_t>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Output of one command: a table, or a transmission record for simulate
/// in JSON form.
struct Rendered {
  std::string bytes;
  std::size_t rows = 0;
};

namespace detail {

inline std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::to_string(std::get<std::int64_t>(c));
}

inline auto size(std::int64_t v) { return static_cast<std::size_t>(v); }

inline Table fig1(const RunConfig& c) {
  Table t{{"tau", "abs_f", "abs_sinc"}, {}};
  const auto l = size(c.l);
  for (double tau : linspace(-2.0, 2.0, size(c.grid))) {
    t.rows.push_back({tau, std::abs(f_tau(tau, l)), std::abs(f_tau_sinc_limit(tau, l))});
  }
  return t;
}

inline Table fig2(const RunConfig& c) {
  Table t{{"cos_theta", "abs_f"}, {}};
  for (const auto& s : kernel_plot(c.theta_star, size(c.l), size(c.grid))) t.rows.push_back({s.cos_theta, s.magnitude});
  return t;
}

inline Table fig3(const RunConfig& c) {
  const auto l = size(c.l);
  Table t{{"cos_theta", "abs_f"}, {}};
  std::vector<std::vector<KernelSample>> bases;
  for (std::size_t k = 0; k < l; ++k) {
    t.columns.push_back("abs_b" + std::to_string(k));
    t.columns.push_back("in_bin" + std::to_string(k));
    bases.push_back(basis_plot(static_cast<std::int64_t>(k), l, size(c.grid)));
  }
  const auto curve = kernel_plot(c.theta_star, l, size(c.grid));
  for (std::size_t j = 0; j < curve.size(); ++j) {
    std::vector<Cell> row{curve[j].cos_theta, curve[j].magnitude};
    const double theta = std::acos(curve[j].cos_theta);
    for (std::size_t k = 0; k < l; ++k) {
      row.emplace_back(bases[k][j].magnitude);
      row.emplace_back(std::int64_t{in_domain_bin(theta, static_cast<std::int64_t>(k), l) ? 1 : 0});
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline SweepSpec sweep_spec(const RunConfig& c, std::vector<double> omegas) {
  const auto l = size(c.l);
  SweepSpec spec = on_grid_sweep(l, l / 2);
  spec.omegas = std::move(omegas);
  spec.trials = size(c.trials);
  spec.seed = c.seed;
  spec.epsilon = c.epsilon;
  spec.scatter.angular_spread = c.angular_spread;
  return spec;
}

inline Table fig4(const RunConfig& c) {
  const auto spec = sweep_spec(c, {0.0, pi});
  const auto rows = omega_sweep(spec, size(c.workers));
  Table t{{"omega", "k", "mean_magnitude", "average_a"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.omega, static_cast<std::int64_t>(r.k), r.mean_magnitude, sweep_average(rows, r.omega)});
  }
  return t;
}

inline Table sweep(const RunConfig& c) {
  const auto spec = sweep_spec(c, linspace(0.0, pi, size(c.omega_steps) - 1));
  Table t{{"omega", "k", "mean_magnitude"}, {}};
  for (const auto& r : omega_sweep(spec, size(c.workers))) {
    t.rows.push_back({r.omega, static_cast<std::int64_t>(r.k), r.mean_magnitude});
  }
  return t;
}

inline Table fig5(const RunConfig& c) {
  Table t{{"cos_theta", "abs_f_kout"}, {}};
  const double c_star = std::cos(c.theta_star);
  for (double x : linspace(-1.0, 1.0, size(c.grid))) {
    t.rows.push_back({x, std::abs(f_kout(x - c_star, size(c.l), size(c.k_out)))});
  }
  return t;
}

inline Table rank(const RunConfig& c) {
  const auto l = size(c.l);
  if (c.rank_model == RankModel::gaussian) {
    Table t{{"trial", "rank", "diversity"}, {}};
    for (const auto& r : rank_study(l, l, c.sigma_sq, size(c.trials), c.seed, c.epsilon, !c.epsilon_absolute,
                                    size(c.workers))) {
      t.rows.push_back({static_cast<std::int64_t>(r.trial), static_cast<std::int64_t>(r.report.rank),
                        static_cast<std::int64_t>(r.report.diversity)});
    }
    return t;
  }
  const auto gen = random_paths(size(c.paths));
  const auto rows = map_trials(size(c.trials), size(c.workers), [&](std::size_t trial) {
    std::mt19937_64 rng(derive_seed(c.seed, trial));
    const auto paths = gen(l, rng);
    const CMatrix r = subcarrier_domain(path_matrix(paths, l), l).entries;
    const double eps = c.epsilon_absolute ? c.epsilon : relative_epsilon(r, c.epsilon);
    const auto rep = rank_report(r, eps);
    return std::vector<Cell>{static_cast<std::int64_t>(trial), static_cast<std::int64_t>(rep.rank),
                             static_cast<std::int64_t>(rep.diversity), approximate_rank(paths)};
  });
  return {{"trial", "rank", "diversity", "approx_rank_cos"}, rows};
}

inline Table diversity(const RunConfig& c) {
  std::vector<std::size_t> ls;
  for (auto v : c.l_list) ls.push_back(size(v));
  Table t{{"l", "mean_diversity"}, {}};
  for (const auto& r : diversity_vs_l(ls, random_paths(size(c.paths)), size(c.trials), c.seed, c.epsilon,
                                      !c.epsilon_absolute, size(c.workers))) {
    t.rows.push_back({static_cast<std::int64_t>(r.l), r.mean_diversity});
  }
  return t;
}

inline TransmissionRecord simulate_record(const RunConfig& c) {
  const auto l = size(c.l);
  const CVector z = sample_input(l, c.sigma_sq, derive_seed(c.seed, 0));
  std::mt19937_64 rng(derive_seed(c.seed, 1));
  std::uniform_real_distribution<double> quad(0.0, 1.0 / std::sqrt(2.0));
  std::vector<cplx> gains(l);
  for (auto& g : gains) {
    const double q = quad(rng);
    g = cplx(q, q);
  }
  return transmit(subcarrier_encode(z), FlatTransmittance(gains, true), derive_seed(c.seed, 2), c.sigma_n_sq);
}

inline Table simulate(const TransmissionRecord& r) {
  Table t{{"i", "z_re", "z_im", "d_re", "d_im", "t_re", "t_im", "ft_re", "ft_im", "noise_re", "noise_im", "y_re",
           "y_im", "y_domain_re", "y_domain_im"},
          {}};
  for (Eigen::Index i = 0; i < r.input.size(); ++i) {
    std::vector<Cell> row{static_cast<std::int64_t>(i)};
    for (const CVector* v : {&r.input, &r.subcarriers, &r.transmittance, &r.fourier_transmittance, &r.noise,
                             &r.output, &r.domain_output}) {
      row.emplace_back((*v)(i).real());
      row.emplace_back((*v)(i).imag());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table build_table(const RunConfig& c) {
  switch (c.command) {
    case Command::fig1: return fig1(c);
    case Command::fig2: return fig2(c);
    case Command::fig3: return fig3(c);
    case Command::fig4: return fig4(c);
    case Command::fig5: return fig5(c);
    case Command::simulate: return simulate(simulate_record(c));
    case Command::rank: return rank(c);
    case Command::diversity: return diversity(c);
    case Command::sweep: return sweep(c);
  }
  return {};
}

inline std::string to_csv(const RunConfig& c, const Table& t) {
  std::string out = "# subdom " + describe(c) + "\n";
  for (std::size_t j = 0; j < t.columns.size(); ++j) out += (j ? "," : "") + t.columns[j];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += cell_text(row[j]);
    }
    out += '\n';
  }
  return out;
}

inline std::string to_json_text(const RunConfig& c, const Table& t) {
  nlohmann::ordered_json j;
  j["config"] = config_json(c);
  j["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& cell : row) std::visit([&](auto v) { r.push_back(v); }, cell);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(1) + "\n";
}

}  // namespace detail

/// Output bytes for a validated config.
inline Rendered render(const RunConfig& c) {
  if (c.command == Command::simulate && c.format == Format::json) {
    const auto rec = detail::simulate_record(c);
    nlohmann::ordered_json j;
    j["config"] = config_json(c);
    j["record"] = to_json(rec);
    return {j.dump(1) + "\n", static_cast<std::size_t>(rec.input.size())};
  }
  const Table t = detail::build_table(c);
  return {c.format == Format::csv ? detail::to_csv(c, t) : detail::to_json_text(c, t), t.rows.size()};
}

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int io_failure = 1;
inline constexpr int invalid_config = 2;
}  // namespace exit_code

/// Validates, renders and writes. Diagnostics go to `err`; the summary line
/// goes to `log` (stderr when the table itself is written to stdout).
inline int run(const RunConfig& c, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
  const auto violations = validate(c);
  if (!violations.empty()) {
    for (const auto& v : violations) err << "error: " << v.field << ": " << v.message() << '\n';
    return exit_code::invalid_config;
  }
  const auto start = std::chrono::steady_clock::now();
  Rendered out;
  try {
    out = render(c);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::invalid_config;
  }

  std::ostream* summary = &log;
  if (c.output_path.empty() || c.output_path == "-") {
    std::cout << out.bytes << std::flush;
    if (!std::cout) {
      err << "error: failed writing to stdout\n";
      return exit_code::io_failure;
    }
    summary = &err;
  } else {
    std::ofstream f(c.output_path, std::ios::binary | std::ios::trunc);
    f << out.bytes;
    f.close();
    if (!f) {
      err << "error: cannot write " << c.output_path << '\n';
      return exit_code::io_failure;
    }
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  *summary << to_string(c.command) << ": " << out.rows << " rows written"
           << (c.output_path.empty() ? std::string() : " to " + c.output_path) << ", seed " << c.seed << ", "
           << ms.count() << " ms\n";
  return exit_code::ok;
}

}  // namespace subdom::cli
