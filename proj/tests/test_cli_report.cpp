#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wong/catalog.hpp"
#include "wong/cli_report.hpp"

using namespace wong;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("wong_lab_unit_" + name);
  fs::remove_all(dir);
  return dir;
}

int line_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

RunConfig small_config() {
  RunConfig cfg = parse_config(
      "N = 1024\n"
      "T = 40\n"
      "orders = (1,2), (0.5,1)\n"
      "q = 2, inf\n"
      "R = 2, 4\n"
      "catalog = gaussian, sech_pulse\n"
      "random_count = 2\n"
      "seed = 5\n"
      "suites = wong-sweep\n");
  return cfg;
}

}  // namespace

TEST_CASE("parse_config defaults") {
  const RunConfig cfg = parse_config("# only a comment\n\n");
  CHECK(cfg.n == 1);
  CHECK(cfg.resolution == 4096);
  CHECK(cfg.period == 40.0);
  CHECK(cfg.orders.size() == 3);
  CHECK(cfg.exponents.size() == 4);
  CHECK(cfg.catalog == catalog_names());
  CHECK(cfg.suites.size() == all_suites().size());
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("parse_config values") {
  const RunConfig cfg = parse_config(
      "n = 2   # two dimensions\n"
      "N = 128\n"
      "T = 20\n"
      "orders = (0.25, 0.75), (1,3)\n"
      "q = 1, 2, 4, inf\n"
      "mollifier = bump\n"
      "R = 1, 2\n"
      "catalog = gaussian\n"
      "random_count = 0\n"
      "decay = 1.5\n"
      "seed = 42\n"
      "suites = group-law, quasinorm-check\n");
  CHECK(cfg.n == 2);
  CHECK(cfg.resolution == 128);
  CHECK(cfg.period == 20.0);
  REQUIRE(cfg.orders.size() == 2);
  CHECK(cfg.orders[0] == std::pair{0.25, 0.75});
  REQUIRE(cfg.exponents.size() == 4);
  CHECK(std::isinf(cfg.exponents[3]));
  CHECK(cfg.mollifier == MollifierKind::bump);
  CHECK(cfg.scales == std::vector<double>{1.0, 2.0});
  CHECK(cfg.catalog == std::vector<std::string>{"gaussian"});
  CHECK(cfg.random_count == 0);
  CHECK(cfg.decay == 1.5);
  CHECK(cfg.seed == 42);
  CHECK(cfg.suites == std::set<Suite>{Suite::group_law, Suite::quasinorm_check});
}

TEST_CASE("parse_config errors") {
  SUBCASE("orders must satisfy 0 < s < t") {
    try {
      parse_config("orders = (2,1)\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("requires 0 < s < t") != std::string::npos);
      CHECK(e.key() == "orders");
      CHECK(e.line() == 1);
    }
  }
  CHECK(line_of("N = 64\nbogus = 3\n") == 2);
  CHECK(line_of("N = 64\n\n# c\nno equals sign\n") == 4);
  CHECK(line_of("N = 64\nN = 128\n") == 2);
  CHECK(line_of("q = 0.5\n") == 1);
  CHECK(line_of("N = 100\n") == 1);
  CHECK(line_of("T = -1\n") == 1);
  CHECK(line_of("mollifier = box\n") == 1);
  CHECK(line_of("catalog = nope\n") == 1);
  CHECK(line_of("suites = everything\n") == 1);
  CHECK(line_of("R = 0\n") == 1);
  CHECK(line_of("orders = (1,2\n") == 1);
}

TEST_CASE("run_suites with an empty selection") {
  RunConfig cfg = parse_config("suites =\n");
  CHECK(cfg.suites.empty());
  const Report report = run_suites(cfg);
  CHECK(report.wong_rows.empty());
  CHECK(report.quasinorm_rows.empty());
  CHECK(report.constants_rows.empty());
  CHECK(report.checks.empty());
  CHECK(report.passed());

  const fs::path dir = scratch_dir("empty");
  emit_csv(report, dir);
  CHECK(slurp(dir / "wong_sweep.csv") == std::string(kWongCsvHeader) + "\n");
  CHECK(slurp(dir / "quasinorm.csv") == std::string(kQuasinormCsvHeader) + "\n");
  CHECK(slurp(dir / "constants.csv") == std::string(kConstantsCsvHeader) + "\n");
  CHECK(slurp(dir / "checks.csv") == std::string(kChecksCsvHeader) + "\n");
  fs::remove_all(dir);
}

TEST_CASE("wong sweep row count and ordering") {
  const RunConfig cfg = small_config();
  const Report report = run_suites(cfg);
  const std::size_t fns = cfg.catalog.size() + static_cast<std::size_t>(cfg.random_count);
  CHECK(report.wong_rows.size() == fns * cfg.orders.size() * cfg.exponents.size() * cfg.scales.size());
  CHECK(report.passed());
  for (std::size_t i = 1; i < report.wong_rows.size(); ++i) {
    const auto& a = report.wong_rows[i - 1].params;
    const auto& b = report.wong_rows[i].params;
    CHECK(std::tie(a.s, a.t, a.q, a.scale) <= std::tie(b.s, b.t, b.q, b.scale));
  }
  for (const auto& row : report.wong_rows) CHECK(row.inequality_holds());

  std::ostringstream csv;
  write_wong_csv(report.wong_rows, csv);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == kWongCsvHeader);
  std::string first;
  std::getline(lines, first);
  CHECK(first.rfind("wong-sweep,0.5,1,", 0) == 0);
}

TEST_CASE("emit_csv is byte-identical across runs") {
  const RunConfig cfg = small_config();
  const fs::path a = scratch_dir("det_a");
  const fs::path b = scratch_dir("det_b");
  emit_csv(run_suites(cfg), a);
  emit_csv(run_suites(cfg), b);
  for (const char* file : {"wong_sweep.csv", "quasinorm.csv", "constants.csv", "checks.csv"})
    CHECK(slurp(a / file) == slurp(b / file));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("all suites pass on a reduced configuration") {
  RunConfig cfg = parse_config(
      "N = 2048\n"
      "R = 2, 8\n"
      "random_count = 2\n"
      "suites = all\n");
  const Report report = run_suites(cfg);
  CHECK(report.passed());
  CHECK_FALSE(report.checks.empty());
  CHECK_FALSE(report.constants_rows.empty());
  CHECK_FALSE(report.quasinorm_rows.empty());
  std::ostringstream summary;
  write_summary(report, summary);
  for (Suite s : all_suites()) CHECK(summary.str().find(std::string(to_string(s))) != std::string::npos);
}

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(kInf) == "inf");
  CHECK(format_double(-kInf) == "-inf");
  const double awkward = 0.1 + 0.2;
  CHECK(std::stod(format_double(awkward)) == awkward);
}

TEST_CASE("emit_csv reports the failing path") {
  const fs::path blocker = scratch_dir("blocker");
  std::ofstream(blocker) << "not a directory";
  try {
    emit_csv(Report{}, blocker / "sub");
    FAIL("expected an I/O error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find(blocker.string()) != std::string::npos);
  }
  fs::remove_all(blocker);
}
