#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wong/mollifiers.hpp"
#include "wong/wong_verifier.hpp"

namespace wong {

enum class Suite { group_law, kernel_mass, wong_sweep, constants_sweep, quasinorm_check };

std::string_view to_string(Suite suite);
Suite parse_suite(std::string_view text);
const std::vector<Suite>& all_suites();

/// Raised by parse_config. line() is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line, std::string key)
      : std::runtime_error(message), line_(line), key_(std::move(key)) {}
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

struct RunConfig {
  int n = 1;
  std::size_t resolution = 4096;
  double period = 40.0;
  std::vector<std::pair<double, double>> orders{{0.5, 1.0}, {1.0, 2.0}, {1.0, 3.0}};
  std::vector<double> exponents{1.0, 2.0, 4.0, kInf};
  MollifierKind mollifier = MollifierKind::gaussian;
  std::vector<double> scales{2.0, 8.0, 32.0};
  std::vector<std::string> catalog;  // filled with every catalog name by default
  int random_count = 40;
  double decay = 1.0;
  std::uint64_t seed = 1;
  std::set<Suite> suites;  // every suite by default
  std::filesystem::path output = ".";

  RunConfig();
  /// Throws ConfigError (line 0) on a violated invariant.
  void validate() const;
};

/// Flat `key = value` lines, `#` comments, comma-separated lists.
/// Keys: n, N, T, orders, q, mollifier, R, catalog, random_count, decay,
/// seed, suites. Throws ConfigError.
RunConfig parse_config(std::string_view text);

struct CheckRow {
  Suite suite;
  std::string label;
  double value;
  double tolerance;
  bool pass;
};

struct ConstantsRow {
  double s;
  double t;
  int n;
  std::size_t resolution;
  double period;
  MollifierKind kind;
  double scale;
  double epsilon;
  double c;
};

struct QuasinormRow {
  int k;
  int l;
  int m;
  double p;
  double scale;
  std::uint64_t seed;
  double epsilon;
  double c;
  double bound1;
  double bound2;
  double additivity_error;
  bool pass;
};

struct SuiteSummary {
  Suite suite;
  int passed = 0;
  int failed = 0;
  /// Wong sweep: smallest margin / rhs. Other suites: largest value / tolerance.
  double worst = 0.0;
  std::vector<std::string> failures;
};

struct Report {
  std::vector<SweepRow> wong_rows;
  std::vector<QuasinormRow> quasinorm_rows;
  std::vector<ConstantsRow> constants_rows;
  std::vector<CheckRow> checks;
  std::vector<SuiteSummary> summary;

  bool passed() const;
};

/// Runs the selected suites. Deterministic in the config.
Report run_suites(const RunConfig& cfg);

inline constexpr std::string_view kWongCsvHeader =
    "suite,s,t,p,q,n,N,T,mollifier,R,epsilon,C,test_fn,lhs,mid,base,margin";
inline constexpr std::string_view kQuasinormCsvHeader =
    "suite,k,l,m,p,R,seed,epsilon,C,bound1,bound2,additivity_err";
inline constexpr std::string_view kConstantsCsvHeader = "suite,s,t,n,N,T,mollifier,R,epsilon,C";
inline constexpr std::string_view kChecksCsvHeader = "suite,case,value,tolerance,status";

/// Shortest round-trip decimal; infinities as `inf` / `-inf`.
std::string format_double(double v);

void write_wong_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_quasinorm_csv(const std::vector<QuasinormRow>& rows, std::ostream& out);
void write_constants_csv(const std::vector<ConstantsRow>& rows, std::ostream& out);
void write_checks_csv(const std::vector<CheckRow>& rows, std::ostream& out);

/// Writes wong_sweep.csv, quasinorm.csv, constants.csv and checks.csv into
/// `directory` (created if missing). Throws std::runtime_error with the path
/// on I/O failure.
void emit_csv(const Report& report, const std::filesystem::path& directory);

void write_summary(const Report& report, std::ostream& out);

}  // namespace wong
