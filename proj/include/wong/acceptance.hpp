#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace wong {

struct CriterionResult {
  int id;
  std::string title;
  bool pass;
  std::string detail;
};

struct AcceptanceOptions {
  /// Scratch directory for emitted CSV files (constants table, determinism runs).
  std::filesystem::path scratch = std::filesystem::temp_directory_path() / "wong-lab-acceptance";
};

/// Runs the ten acceptance criteria, printing one PASS/FAIL line per
/// criterion to `log` as it completes.
std::vector<CriterionResult> run_acceptance(std::ostream& log, const AcceptanceOptions& options = {});

/// Reference (R, epsilon, C) values for (s, t) = (1, 2), bump mollifier,
/// n = 1, from an independent real-space quadrature of the continuum kernels.
struct ConstantsBaseline {
  double scale;
  double epsilon;
  double c;
};
const std::vector<ConstantsBaseline>& constants_baseline();

}  // namespace wong
