#pragma once

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subdom/cli/config.hpp"
#include "subdom/cli/run.hpp"

namespace subdom::cli {

inline constexpr const char* seed_env_var = "SUBDOM_SEED";

/// Flags parsed as text and converted after parsing.
struct RawArgs {
  std::string command;
  std::string format = "csv";
  std::string rank_model = "gaussian";
  double theta_deg = 0.0;
};

/// Binds every RunConfig field to a kebab-case flag. `--config file.toml`
/// supplies values under the same names (flags win over the file).
inline void bind(CLI::App& app, RunConfig& c, RawArgs& raw) {
  std::vector<std::string> names(command_names.begin(), command_names.end());

  app.set_config("--config", "", "TOML file with default values for any flag");
  app.allow_config_extras(false);
  app.add_option("command", raw.command, "fig1|fig2|fig3|fig4|fig5|simulate|rank|diversity|sweep")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("--l", c.l, "number of Gaussian sub-channels")->capture_default_str();
  app.add_option("--k-in", c.k_in, "transmitter users")->capture_default_str();
  app.add_option("--k-out", c.k_out, "receiver users")->capture_default_str();
  auto* rad = app.add_option("--theta-star", c.theta_star, "transmitted angle, radians")->capture_default_str();
  app.add_option("--theta-star-deg", raw.theta_deg, "transmitted angle, degrees")->excludes(rad);
  app.add_option("--sigma-sq", c.sigma_sq, "modulation / model variance")->capture_default_str();
  app.add_option("--sigma-n-sq", c.sigma_n_sq, "noise quadrature variance")->capture_default_str();
  app.add_option("--epsilon", c.epsilon, "non-zero threshold")->capture_default_str();
  app.add_flag("--epsilon-absolute", c.epsilon_absolute, "use epsilon as an absolute threshold");
  app.add_option("--trials", c.trials, "Monte-Carlo trials")->capture_default_str();
  app.add_option("--seed", c.seed, "base seed (also from " + std::string(seed_env_var) + ")")
      ->capture_default_str();
  app.add_option("--grid", c.grid, "grid intervals")->capture_default_str();
  app.add_option("-o,--output", c.output_path, "output file (default stdout)");
  app.add_option("--format", raw.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--l-list", c.l_list, "sub-channel counts for diversity")->delimiter(',');
  app.add_option("--paths", c.paths, "random paths per channel (rank/diversity)")->capture_default_str();
  app.add_option("--omega-steps", c.omega_steps, "omega values from 0 to pi (sweep)")->capture_default_str();
  app.add_option("--angular-spread", c.angular_spread, "scatter spread at omega = pi, radians")
      ->capture_default_str();
  app.add_option("--rank-model", raw.rank_model, "gaussian|paths")->check(CLI::IsMember({"gaussian", "paths"}));
  app.add_option("--workers", c.workers, "worker threads for Monte-Carlo trials")->capture_default_str();
}

/// Parses argv into `c`. Returns an exit code when the process should stop
/// (help, parse or config errors), or -1 to continue.
inline int parse_args(int argc, const char* const* argv, RunConfig& c, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
  CLI::App app{"Subcarrier-domain channel model: figure data, simulation and statistics", "subdom"};
  RawArgs raw;
  bind(app, c, raw);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::invalid_config;
  }
  c.command = *parse_command(raw.command);
  c.format = raw.format == "json" ? Format::json : Format::csv;
  c.rank_model = raw.rank_model == "paths" ? RankModel::paths : RankModel::gaussian;
  if (app.count("--theta-star-deg") > 0) c.theta_star = raw.theta_deg * pi / 180.0;

  if (app.count("--seed") == 0) {
    if (const char* env = std::getenv(seed_env_var); env != nullptr && *env != '\0') {
      try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
        c.seed = v;
      } catch (const std::exception&) {
        err << "error: seed: " << seed_env_var << " must be an unsigned integer (got " << env << ")\n";
        return exit_code::invalid_config;
      }
    }
  }
  return -1;
}

inline int main(int argc, const char* const* argv) {
  RunConfig c;
  if (const int code = parse_args(argc, argv, c); code >= 0) return code;
  return run(c);
}

}  // namespace subdom::cli
