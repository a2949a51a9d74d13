#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "subdom/cli/parse.hpp"

using namespace subdom;
using namespace subdom::cli;

namespace {

struct Parsed {
  int code;
  RunConfig config;
  std::string out;
  std::string err;
};

Parsed parse(std::vector<std::string> args) {
  args.insert(args.begin(), "subdom");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  Parsed p{};
  std::ostringstream out, err;
  p.code = parse_args(static_cast<int>(argv.size()), argv.data(), p.config, out, err);
  p.out = out.str();
  p.err = err.str();
  return p;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

bool has_violation(const RunConfig& c, const std::string& msg) {
  for (const auto& v : validate(c)) {
    if (v.message().rfind(msg, 0) == 0) return true;
  }
  return false;
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + "subdom_" + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Validate, Defaults) {
  RunConfig c;
  for (auto cmd : {Command::fig1, Command::fig2, Command::fig3, Command::fig4, Command::fig5, Command::simulate,
                   Command::rank, Command::diversity, Command::sweep}) {
    c.command = cmd;
    EXPECT_TRUE(validate(c).empty()) << to_string(cmd);
  }
}

TEST(Validate, Messages) {
  RunConfig c;
  c.l = 0;
  ASSERT_TRUE(has_violation(c, "l must be ≥ 1"));
  EXPECT_EQ(validate(c).front().field, "l");
  EXPECT_EQ(validate(c).front().value, "0");

  c = RunConfig{};
  c.command = Command::fig5;
  c.k_out = 2;
  EXPECT_TRUE(has_violation(c, "fig5 requires k_out > l"));
  c.k_out = 8;
  c.grid = 50;
  EXPECT_TRUE(has_violation(c, "fig5 requires grid ≥ 10 * k_out"));

  c = RunConfig{};
  c.command = Command::diversity;
  c.l_list = {8, 4};
  EXPECT_FALSE(validate(c).empty());

  c = RunConfig{};
  c.command = Command::fig4;
  c.l = 1;
  EXPECT_TRUE(has_violation(c, "l must be ≥ 2"));

  c = RunConfig{};
  c.sigma_sq = -1.0;
  c.epsilon = 0.0;
  c.theta_star = 7.0;
  c.sigma_n_sq = -0.1;
  EXPECT_EQ(validate(c).size(), 4u);
}

TEST(Parse, FlagsAndDegrees) {
  const auto p = parse({"fig2", "--l", "4", "--theta-star-deg", "90", "--grid", "10", "--format", "json"});
  ASSERT_EQ(p.code, -1);
  EXPECT_EQ(p.config.command, Command::fig2);
  EXPECT_EQ(p.config.l, 4);
  EXPECT_DOUBLE_EQ(p.config.theta_star, pi / 2);
  EXPECT_EQ(p.config.format, Format::json);
}

TEST(Parse, Errors) {
  EXPECT_EQ(parse({"nope"}).code, exit_code::invalid_config);
  EXPECT_EQ(parse({}).code, exit_code::invalid_config);
  EXPECT_EQ(parse({"fig1", "--l", "x"}).code, exit_code::invalid_config);
  EXPECT_EQ(parse({"fig1", "--theta-star", "1", "--theta-star-deg", "9"}).code, exit_code::invalid_config);
  EXPECT_EQ(parse({"--help"}).code, exit_code::ok);
}

TEST(Parse, ConfigFileAndPrecedence) {
  const auto path = temp_path("cfg.toml");
  std::ofstream(path) << "command = \"fig2\"\nl = 6\nseed = 9\ngrid = 20\n";
  auto p = parse({"--config", path});
  ASSERT_EQ(p.code, -1);
  EXPECT_EQ(p.config.command, Command::fig2);
  EXPECT_EQ(p.config.l, 6);
  EXPECT_EQ(p.config.seed, 9u);
  p = parse({"--config", path, "--l", "3"});
  EXPECT_EQ(p.config.l, 3);

  std::ofstream(path) << "l = 6\nbogus = 1\n";
  EXPECT_EQ(parse({"fig1", "--config", path}).code, exit_code::invalid_config);
}

TEST(Parse, SeedFromEnvironment) {
  ::setenv("SUBDOM_SEED", "77", 1);
  EXPECT_EQ(parse({"rank"}).config.seed, 77u);
  EXPECT_EQ(parse({"rank", "--seed", "5"}).config.seed, 5u);
  const auto path = temp_path("seed.toml");
  std::ofstream(path) << "seed = 3\n";
  EXPECT_EQ(parse({"rank", "--config", path}).config.seed, 3u);
  ::setenv("SUBDOM_SEED", "abc", 1);
  EXPECT_EQ(parse({"rank"}).code, exit_code::invalid_config);
  ::unsetenv("SUBDOM_SEED");
  EXPECT_EQ(parse({"rank"}).config.seed, 42u);
}

TEST(Render, Fig1Shape) {
  RunConfig c;
  c.l = 8;
  c.grid = 2000;
  const auto text = render(c).bytes;
  const auto ls = lines(text);
  ASSERT_EQ(ls.size(), 2003u);
  EXPECT_EQ(ls[0].rfind("# subdom command=fig1 l=8", 0), 0u);
  EXPECT_EQ(ls[1], "tau,abs_f,abs_sinc");
  for (std::size_t j = 2; j < ls.size(); ++j) {
    const auto f = fields(ls[j]);
    const double tau = std::stod(f[0]);
    if (tau == std::round(tau)) {
      EXPECT_EQ(std::stod(f[1]), 1.0);
    }
  }
}

TEST(Render, Fig2Peak) {
  RunConfig c;
  c.command = Command::fig2;
  c.theta_star = 1.5707963;
  const auto ls = lines(render(c).bytes);
  double best = -1.0, centre = -1.0;
  for (std::size_t j = 2; j < ls.size(); ++j) {
    const auto f = fields(ls[j]);
    best = std::max(best, std::stod(f[1]));
    if (std::stod(f[0]) == 0.0) centre = std::stod(f[1]);
  }
  EXPECT_NEAR(best, 1.0, 1e-12);
  EXPECT_NEAR(centre, best, 1e-12);
}

TEST(Render, Columns) {
  RunConfig c;
  c.trials = 3;
  c.grid = 40;
  auto header = [&](Command cmd) {
    c.command = cmd;
    return lines(render(c).bytes)[1];
  };
  EXPECT_EQ(header(Command::fig3), "cos_theta,abs_f,abs_b0,in_bin0,abs_b1,in_bin1");
  EXPECT_EQ(header(Command::fig4), "omega,k,mean_magnitude,average_a");
  EXPECT_EQ(header(Command::fig5), "cos_theta,abs_f_kout");
  EXPECT_EQ(header(Command::sweep), "omega,k,mean_magnitude");
  EXPECT_EQ(header(Command::rank), "trial,rank,diversity");
  EXPECT_EQ(header(Command::diversity), "l,mean_diversity");
  EXPECT_EQ(header(Command::simulate),
            "i,z_re,z_im,d_re,d_im,t_re,t_im,ft_re,ft_im,noise_re,noise_im,y_re,y_im,y_domain_re,y_domain_im");
  c.rank_model = RankModel::paths;
  EXPECT_EQ(header(Command::rank), "trial,rank,diversity,approx_rank_cos");
}

TEST(Render, JsonShape) {
  RunConfig c;
  c.command = Command::rank;
  c.trials = 4;
  c.format = Format::json;
  const auto j = nlohmann::json::parse(render(c).bytes);
  EXPECT_EQ(j["config"]["command"], "rank");
  EXPECT_EQ(j["columns"].size(), 3u);
  EXPECT_EQ(j["rows"].size(), 4u);

  c.command = Command::simulate;
  c.l = 4;
  const auto s = nlohmann::json::parse(render(c).bytes);
  EXPECT_EQ(s["record"]["output"].size(), 4u);
}

TEST(Render, WorkersDoNotChangeBytes) {
  for (auto cmd : {Command::fig4, Command::sweep, Command::rank, Command::diversity}) {
    RunConfig c;
    c.command = cmd;
    c.l = 8;
    c.trials = 30;
    const auto one = render(c).bytes;
    c.workers = 4;
    EXPECT_EQ(render(c).bytes, one) << to_string(cmd);
  }
}

TEST(Run, WritesFileAndExitCodes) {
  RunConfig c;
  c.command = Command::simulate;
  c.l = 4;
  c.seed = 7;
  c.output_path = temp_path("sim_a.csv");
  std::ostringstream log, err;
  ASSERT_EQ(run(c, log, err), exit_code::ok);
  EXPECT_NE(log.str().find("simulate: 4 rows written to"), std::string::npos);
  EXPECT_NE(log.str().find("seed 7"), std::string::npos);
  const auto first = slurp(c.output_path);
  c.output_path = temp_path("sim_b.csv");
  ASSERT_EQ(run(c, log, err), exit_code::ok);
  EXPECT_EQ(slurp(c.output_path), first);

  c.output_path = "/nonexistent-dir/x.csv";
  EXPECT_EQ(run(c, log, err), exit_code::io_failure);

  c.l = 0;
  std::ostringstream e2;
  EXPECT_EQ(run(c, log, e2), exit_code::invalid_config);
  EXPECT_NE(e2.str().find("error: l: l must be ≥ 1"), std::string::npos);
}
