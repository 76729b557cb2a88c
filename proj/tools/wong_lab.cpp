// wong-lab: sweeps and self-checks for the Bessel-potential interpolation
// inequality ||J_{-s} phi||_q <= eps ||J_{-t} phi||_q + C ||phi||_q.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "wong/acceptance.hpp"
#include "wong/cli_report.hpp"
#include "wong/wong_verifier.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

std::vector<double> parse_scales(const std::string& text) {
  // reuse the config grammar for the list
  return wong::parse_config("R = " + text).scales;
}

int run_command(const std::string& config_path, const std::optional<std::uint64_t>& seed,
                const std::optional<std::string>& out_dir,
                const std::optional<std::string>& suites) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read config '" << config_path << "'\n";
    return kExitConfig;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  wong::RunConfig cfg;
  try {
    cfg = wong::parse_config(buffer.str());
    if (suites) cfg.suites = wong::parse_config("suites = " + *suites).suites;
  } catch (const wong::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (seed) cfg.seed = *seed;
  if (out_dir) cfg.output = *out_dir;

  const wong::Report report = wong::run_suites(cfg);
  wong::emit_csv(report, cfg.output);
  wong::write_summary(report, std::cout);
  return report.passed() ? kExitPass : kExitFailure;
}

int constants_command(double s, double t, const std::string& kind, const std::string& r_list,
                      int n, std::size_t resolution, double period, bool identity) {
  std::vector<double> scales;
  wong::MollifierKind mollifier_kind{};
  try {
    scales = parse_scales(r_list);
    mollifier_kind = wong::parse_mollifier_kind(kind);
    if (mollifier_kind == wong::MollifierKind::identity)
      throw std::invalid_argument("--kind must be bump or gaussian");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    const auto grid = wong::Grid::make(n, resolution, period);
    const auto rows = wong::constant_tradeoff_sweep(s, t, scales, mollifier_kind, grid, identity);
    std::cout << "R,epsilon,C\n";
    for (const auto& r : rows)
      std::cout << wong::format_double(r.scale) << ',' << wong::format_double(r.epsilon) << ','
                << wong::format_double(r.c) << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitPass;
}

int selftest_command(const std::optional<std::string>& scratch) {
  wong::AcceptanceOptions options;
  if (scratch) options.scratch = *scratch;
  const auto results = wong::run_acceptance(std::cout, options);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? kExitPass : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wong-lab: Bessel potential sweeps and inequality verification"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run the configured verification suites");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> suites;
  run->add_option("--config", config_path, "config file (key = value lines)")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--out", out_dir, "output directory for CSV files");
  run->add_option("--suites", suites, "comma-separated suite list");

  auto* constants = app.add_subcommand("constants", "print the (R, eps, C) table");
  double s = 0.0, t = 0.0;
  std::string kind = "bump";
  std::string r_list;
  int n = 1;
  std::size_t resolution = 4096;
  double period = 40.0;
  bool identity = false;
  constants->add_option("--s", s, "lower order s")->required();
  constants->add_option("--t", t, "upper order t")->required();
  constants->add_option("--kind", kind, "bump or gaussian");
  constants->add_option("--r-list", r_list, "ascending scales, comma separated")->required();
  constants->add_option("--n", n, "dimension");
  constants->add_option("--N", resolution, "samples per axis");
  constants->add_option("--T", period, "period");
  constants->add_flag("--identity", identity, "append the identity (R = inf) row");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  std::optional<std::string> scratch;
  selftest->add_option("--scratch", scratch, "directory for emitted CSV files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*run) return run_command(config_path, seed, out_dir, suites);
    if (*constants)
      return constants_command(s, t, kind, r_list, n, resolution, period, identity);
    if (*selftest) return selftest_command(scratch);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitConfig;
}
