#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "subdom/io.hpp"
#include "subdom/numeric.hpp"

namespace subdom::cli {

enum class Command { fig1, fig2, fig3, fig4, fig5, simulate, rank, diversity, sweep };
enum class Format { csv, json };
enum class RankModel { gaussian, paths };

inline constexpr std::array<std::string_view, 9> command_names{
    "fig1", "fig2", "fig3", "fig4", "fig5", "simulate", "rank", "diversity", "sweep"};

inline std::string_view to_string(Command c) { return command_names[static_cast<std::size_t>(c)]; }
inline std::string_view to_string(Format f) { return f == Format::csv ? "csv" : "json"; }
inline std::string_view to_string(RankModel m) { return m == RankModel::gaussian ? "gaussian" : "paths"; }

inline std::optional<Command> parse_command(std::string_view s) {
  for (std::size_t j = 0; j < command_names.size(); ++j) {
    if (command_names[j] == s) return static_cast<Command>(j);
  }
  return std::nullopt;
}

/// Fully resolved settings for one invocation. Integer fields are signed so
/// that validation, not parsing, reports negative sizes.
struct RunConfig {
  Command command = Command::fig1;
  std::int64_t l = 2;
  std::int64_t k_in = 2;
  std::int64_t k_out = 4;
  double theta_star = pi / 2.0;
  double sigma_sq = 1.0;
  double sigma_n_sq = 0.1;
  double epsilon = 1e-6;
  bool epsilon_absolute = false;
  std::int64_t trials = 1000;
  std::uint64_t seed = 42;
  std::int64_t grid = 1000;
  std::string output_path;  // empty: stdout
  Format format = Format::csv;

  // Experiment knobs.
  std::vector<std::int64_t> l_list{4, 8, 16, 32};
  std::int64_t paths = 3;
  std::int64_t omega_steps = 9;
  double angular_spread = 0.25;
  RankModel rank_model = RankModel::gaussian;

  // Execution only; never affects output bytes.
  std::int64_t workers = 1;
};

struct Violation {
  std::string field;
  std::string value;
  std::string constraint;

  std::string message() const { return constraint + " (got " + value + ")"; }
};

namespace detail {

inline std::string join(const std::vector<std::int64_t>& v, char sep = ',') {
  std::string out;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j > 0) out += sep;
    out += std::to_string(v[j]);
  }
  return out;
}

}  // namespace detail

/// Every constraint the config breaks; empty iff run() will not reject it.
inline std::vector<Violation> validate(const RunConfig& c) {
  std::vector<Violation> out;
  auto at_least = [&](const char* name, std::int64_t v, std::int64_t lo) {
    if (v < lo) out.push_back({name, std::to_string(v), std::string(name) + " must be ≥ " + std::to_string(lo)});
  };
  auto positive = [&](const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) out.push_back({name, format_double(v), std::string(name) + " must be > 0"});
  };

  at_least("l", c.l, 1);
  at_least("k_in", c.k_in, 1);
  at_least("k_out", c.k_out, 1);
  at_least("trials", c.trials, 1);
  at_least("grid", c.grid, 2);
  at_least("workers", c.workers, 1);
  at_least("paths", c.paths, 1);
  at_least("omega_steps", c.omega_steps, 2);
  positive("sigma_sq", c.sigma_sq);
  positive("epsilon", c.epsilon);
  if (!(c.sigma_n_sq >= 0.0) || !std::isfinite(c.sigma_n_sq)) {
    out.push_back({"sigma_n_sq", format_double(c.sigma_n_sq), "sigma_n_sq must be ≥ 0"});
  }
  if (!(c.angular_spread >= 0.0) || !std::isfinite(c.angular_spread)) {
    out.push_back({"angular_spread", format_double(c.angular_spread), "angular_spread must be ≥ 0"});
  }
  if (!(c.theta_star >= 0.0 && c.theta_star <= two_pi)) {
    out.push_back({"theta_star", format_double(c.theta_star), "theta_star must lie in [0, 2pi]"});
  }

  switch (c.command) {
    case Command::fig4:
    case Command::sweep:
      if (c.l >= 1) at_least("l", c.l, 2);
      break;
    case Command::fig5:
      if (c.k_out <= c.l) {
        out.push_back({"k_out", std::to_string(c.k_out), "fig5 requires k_out > l"});
      }
      if (c.grid < 10 * c.k_out) {
        out.push_back({"grid", std::to_string(c.grid), "fig5 requires grid ≥ 10 * k_out"});
      }
      break;
    case Command::diversity: {
      bool ok = !c.l_list.empty();
      for (std::size_t j = 0; j < c.l_list.size(); ++j) {
        if (c.l_list[j] < 1 || (j > 0 && c.l_list[j] <= c.l_list[j - 1])) ok = false;
      }
      if (!ok) {
        out.push_back({"l_list", detail::join(c.l_list), "l_list must be strictly increasing values ≥ 1"});
      }
      break;
    }
    default:
      break;
  }
  return out;
}

/// One-line record of every setting that influences the output.
inline std::string describe(const RunConfig& c) {
  std::ostringstream s;
  s << "command=" << to_string(c.command) << " l=" << c.l << " k_in=" << c.k_in << " k_out=" << c.k_out
    << " theta_star=" << format_double(c.theta_star) << " sigma_sq=" << format_double(c.sigma_sq)
    << " sigma_n_sq=" << format_double(c.sigma_n_sq) << " epsilon=" << format_double(c.epsilon)
    << " epsilon_mode=" << (c.epsilon_absolute ? "absolute" : "relative") << " trials=" << c.trials
    << " seed=" << c.seed << " grid=" << c.grid << " format=" << to_string(c.format)
    << " l_list=" << detail::join(c.l_list) << " paths=" << c.paths << " omega_steps=" << c.omega_steps
    << " angular_spread=" << format_double(c.angular_spread) << " rank_model=" << to_string(c.rank_model);
  return s.str();
}

inline nlohmann::ordered_json config_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = to_string(c.command);
  j["l"] = c.l;
  j["k_in"] = c.k_in;
  j["k_out"] = c.k_out;
  j["theta_star"] = c.theta_star;
  j["sigma_sq"] = c.sigma_sq;
  j["sigma_n_sq"] = c.sigma_n_sq;
  j["epsilon"] = c.epsilon;
  j["epsilon_mode"] = c.epsilon_absolute ? "absolute" : "relative";
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["grid"] = c.grid;
  j["format"] = to_string(c.format);
  j["l_list"] = c.l_list;
  j["paths"] = c.paths;
  j["omega_steps"] = c.omega_steps;
  j["angular_spread"] = c.angular_spread;
  j["rank_model"] = to_string(c.rank_model);
  return j;
}

}  // namespace subdom::cli
