#include "wong/cli_report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "wong/bessel_ops.hpp"
#include "wong/catalog.hpp"
#include "wong/quasinorm_check.hpp"

namespace wong {

namespace {

constexpr std::array<std::pair<Suite, std::string_view>, 5> kSuiteNames{{
    {Suite::group_law, "group-law"},
    {Suite::kernel_mass, "kernel-mass"},
    {Suite::wong_sweep, "wong-sweep"},
    {Suite::constants_sweep, "constants-sweep"},
    {Suite::quasinorm_check, "quasinorm-check"},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct LineContext {
  int line;
  std::string key;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("line " + std::to_string(line) + ": " + key + ": " + what, line, key);
  }
};

double parse_real(std::string_view token, const LineContext& ctx) {
  double v = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (token.empty() || ec != std::errc() || ptr != end)
    ctx.fail("expected a number, got '" + std::string(token) + "'");
  return v;
}

template <typename Int>
Int parse_integer(std::string_view token, const LineContext& ctx) {
  Int v{};
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (token.empty() || ec != std::errc() || ptr != end)
    ctx.fail("expected an integer, got '" + std::string(token) + "'");
  return v;
}

std::vector<double> parse_real_list(std::string_view value, const LineContext& ctx) {
  std::vector<double> out;
  for (auto token : split(value, ',')) out.push_back(parse_real(token, ctx));
  return out;
}

std::vector<std::pair<double, double>> parse_orders(std::string_view value,
                                                    const LineContext& ctx) {
  std::string compact;
  for (char c : value)
    if (c != ' ' && c != '\t') compact.push_back(c);
  std::vector<std::pair<double, double>> out;
  std::string_view rest = compact;
  while (!rest.empty()) {
    if (rest.front() != '(') ctx.fail("expected '(' in order pair list");
    const auto close = rest.find(')');
    if (close == std::string_view::npos) ctx.fail("unterminated order pair");
    const auto inner = split(rest.substr(1, close - 1), ',');
    if (inner.size() != 2) ctx.fail("order pairs take exactly two values (s,t)");
    out.emplace_back(parse_real(inner[0], ctx), parse_real(inner[1], ctx));
    rest.remove_prefix(close + 1);
    if (!rest.empty()) {
      if (rest.front() != ',') ctx.fail("expected ',' between order pairs");
      rest.remove_prefix(1);
    }
  }
  if (out.empty()) ctx.fail("at least one (s,t) pair is required");
  for (const auto& [s, t] : out)
    if (!(s > 0.0 && s < t))
      ctx.fail("(" + format_double(s) + "," + format_double(t) + ") requires 0 < s < t");
  return out;
}

std::string failure_label(const SweepRow& r) {
  return "s=" + format_double(r.params.s) + " t=" + format_double(r.params.t) +
         " q=" + format_double(r.params.q) + " R=" + format_double(r.params.scale) +
         " test_fn=" + r.test_fn;
}

SuiteSummary& summary_for(Report& report, Suite suite) {
  for (auto& s : report.summary)
    if (s.suite == suite) return s;
  report.summary.push_back(SuiteSummary{suite, 0, 0, 0.0, {}});
  return report.summary.back();
}

void record(SuiteSummary& summary, bool pass, double worst_candidate, bool take_min,
            const std::string& label) {
  if (pass) {
    ++summary.passed;
  } else {
    ++summary.failed;
    summary.failures.push_back(label);
  }
  const bool first = summary.passed + summary.failed == 1;
  if (first)
    summary.worst = worst_candidate;
  else
    summary.worst = take_min ? std::min(summary.worst, worst_candidate)
                             : std::max(summary.worst, worst_candidate);
}

void add_check(Report& report, Suite suite, std::string label, double value, double tolerance) {
  const bool pass = value <= tolerance;
  record(summary_for(report, suite), pass, value / tolerance, false, label);
  report.checks.push_back({suite, std::move(label), value, tolerance, pass});
}

Grid config_grid(const RunConfig& cfg) { return Grid::make(cfg.n, cfg.resolution, cfg.period); }

void run_group_law(const RunConfig& cfg, Report& report) {
  const Grid grid = config_grid(cfg);
  constexpr std::array<std::pair<double, double>, 3> kPairs{{{1.0, 1.0}, {0.7, 1.3}, {-1.0, 2.0}}};
  for (int i = 0; i < cfg.random_count; ++i) {
    const auto seed = cfg.seed + static_cast<std::uint64_t>(i);
    const Field f = random_band_limited(grid, seed, cfg.decay);
    for (const auto& [z, w] : kPairs) {
      const double err = verify_group_law(f, BesselOrder(z), BesselOrder(w));
      add_check(report, Suite::group_law,
                "seed=" + std::to_string(seed) + " z=" + format_double(z) +
                    " w=" + format_double(w),
                err, 1e-12);
    }
  }
}

void run_kernel_mass(const RunConfig& cfg, Report& report) {
  const Grid grid = config_grid(cfg);
  for (double s : {0.5, 1.0, 2.0, 4.0}) {
    const double tolerance = s < 1.0 ? 1e-2 : 1e-4;
    add_check(report, Suite::kernel_mass, "s=" + format_double(s),
              std::abs(kernel_mass(s, grid) - 1.0), tolerance);
  }
}

void run_wong_sweep(const RunConfig& cfg, Report& report) {
  const Grid grid = config_grid(cfg);
  const auto catalog = build_catalog(grid, cfg.catalog, cfg.random_count, cfg.seed, cfg.decay);

  struct Keyed {
    std::tuple<double, double, double, double, std::size_t> key;
    SweepRow row;
  };
  std::vector<Keyed> rows;
  for (double r : cfg.scales) {
    const Mollifier mollifier = make_mollifier(cfg.mollifier, r, grid);
    for (const auto& [s, t] : cfg.orders) {
      const WongConstants constants = wong_constants(s, t, mollifier);
      for (std::size_t f = 0; f < catalog.size(); ++f)
        for (double q : cfg.exponents) {
          const WongParams params{s, t, q, r, cfg.mollifier};
          rows.push_back({{s, t, q, r, f},
                          verify_wong(catalog[f].field, params, mollifier, constants,
                                      catalog[f].name)});
        }
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Keyed& a, const Keyed& b) { return a.key < b.key; });

  auto& summary = summary_for(report, Suite::wong_sweep);
  for (auto& k : rows) {
    const SweepRow& row = k.row;
    const bool pass = row.inequality_holds() && row.part_bounds_hold();
    const double rhs = row.rhs();
    record(summary, pass, rhs > 0.0 ? row.margin / rhs : 0.0, true, failure_label(row));
    report.wong_rows.push_back(row);
  }
}

void run_constants_sweep(const RunConfig& cfg, Report& report) {
  const Grid grid = config_grid(cfg);
  auto& summary = summary_for(report, Suite::constants_sweep);
  for (const auto& [s, t] : cfg.orders) {
    const auto sweep = constant_tradeoff_sweep(s, t, cfg.scales, cfg.mollifier, grid);
    double previous = std::numeric_limits<double>::infinity();
    for (const auto& row : sweep) {
      const bool eps_range = row.epsilon > 0.0 && row.epsilon <= 2.0;
      const bool c_floor = row.c >= 1.0 - 1e-10;
      const bool monotone = row.epsilon <= previous + 1e-10;
      previous = row.epsilon;
      record(summary, eps_range && c_floor && monotone, row.epsilon, false,
             "s=" + format_double(s) + " t=" + format_double(t) +
                 " R=" + format_double(row.scale));
      report.constants_rows.push_back(
          {s, t, grid.dimension(), grid.resolution(), grid.period(), cfg.mollifier, row.scale,
           row.epsilon, row.c});
    }
  }
}

void run_quasinorm(const RunConfig& cfg, Report& report) {
  const Grid grid = config_grid(cfg);
  constexpr std::array<ScaleIndices, 3> kIndices{{{0, 1, 2}, {0, 1, 3}, {1, 2, 4}}};
  auto& summary = summary_for(report, Suite::quasinorm_check);

  std::vector<double> exponents = cfg.exponents;
  std::sort(exponents.begin(), exponents.end());
  for (const auto& idx : kIndices)
    for (double p : exponents)
      for (double r : cfg.scales) {
        const Mollifier mollifier = make_mollifier(cfg.mollifier, r, grid);
        for (int i = 0; i < cfg.random_count; ++i) {
          const auto sample =
              unit_ball_sample(cfg.seed + static_cast<std::uint64_t>(i), p, grid, cfg.decay);
          const auto w = inclusion_witness(sample, idx, mollifier);
          const bool pass = w.holds();
          const double ratio = std::max(w.bound1 / w.epsilon, w.bound2 / w.c);
          record(summary, pass, ratio, false,
                 "k=" + std::to_string(idx.k) + " l=" + std::to_string(idx.l) +
                     " m=" + std::to_string(idx.m) + " p=" + format_double(p) +
                     " R=" + format_double(r) + " seed=" + std::to_string(sample.seed));
          report.quasinorm_rows.push_back({idx.k, idx.l, idx.m, p, r, sample.seed, w.epsilon,
                                           w.c, w.bound1, w.bound2, w.additivity_error, pass});
        }
      }
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

std::string_view to_string(Suite suite) {
  for (const auto& [s, name] : kSuiteNames)
    if (s == suite) return name;
  return "?";
}

Suite parse_suite(std::string_view text) {
  for (const auto& [s, name] : kSuiteNames)
    if (name == text) return s;
  throw std::invalid_argument("unknown suite '" + std::string(text) + "'");
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = [] {
    std::vector<Suite> out;
    for (const auto& [s, name] : kSuiteNames) out.push_back(s);
    return out;
  }();
  return suites;
}

RunConfig::RunConfig()
    : catalog(catalog_names()), suites(all_suites().begin(), all_suites().end()) {}

void RunConfig::validate() const {
  const auto fail = [](const std::string& key, const std::string& what) {
    throw ConfigError(key + ": " + what, 0, key);
  };
  try {
    (void)Grid::make(n, resolution, period);
  } catch (const std::invalid_argument& e) {
    fail("grid", e.what());
  }
  if (orders.empty()) fail("orders", "at least one (s,t) pair is required");
  for (const auto& [s, t] : orders)
    if (!(s > 0.0 && s < t))
      fail("orders", "(" + format_double(s) + "," + format_double(t) + ") requires 0 < s < t");
  if (exponents.empty()) fail("q", "at least one exponent is required");
  for (double q : exponents)
    if (!(q >= 1.0)) fail("q", "exponent " + format_double(q) + " is outside [1, inf]");
  if (mollifier == MollifierKind::identity) fail("mollifier", "expected bump or gaussian");
  if (scales.empty()) fail("R", "at least one scale is required");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0) || !std::isfinite(scales[i]))
      fail("R", "scales must be positive and finite");
    if (i > 0 && !(scales[i] > scales[i - 1])) fail("R", "scales must be strictly ascending");
  }
  for (const auto& name : catalog) {
    const auto& names = catalog_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      fail("catalog", "unknown catalog function '" + name + "'");
  }
  if (random_count < 0) fail("random_count", "must be >= 0");
  if (!(decay > 0.0)) fail("decay", "must be > 0");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no, "");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const LineContext ctx{line_no, key};
    if (key.empty()) ctx.fail("missing key");
    if (!seen.emplace(key, line_no).second) ctx.fail("duplicate key");

    if (key == "n") {
      cfg.n = parse_integer<int>(value, ctx);
    } else if (key == "N") {
      cfg.resolution = parse_integer<std::size_t>(value, ctx);
    } else if (key == "T") {
      cfg.period = parse_real(value, ctx);
    } else if (key == "orders") {
      cfg.orders = parse_orders(value, ctx);
    } else if (key == "q") {
      cfg.exponents = parse_real_list(value, ctx);
      for (double q : cfg.exponents)
        if (!(q >= 1.0)) ctx.fail("exponent " + format_double(q) + " is outside [1, inf]");
    } else if (key == "mollifier") {
      try {
        cfg.mollifier = parse_mollifier_kind(value);
      } catch (const std::invalid_argument& e) {
        ctx.fail(e.what());
      }
      if (cfg.mollifier == MollifierKind::identity) ctx.fail("expected bump or gaussian");
    } else if (key == "R") {
      cfg.scales = parse_real_list(value, ctx);
    } else if (key == "catalog") {
      cfg.catalog.clear();
      if (value == "all") {
        cfg.catalog = catalog_names();
      } else if (!value.empty()) {
        for (auto token : split(value, ',')) cfg.catalog.emplace_back(token);
      }
    } else if (key == "random_count") {
      cfg.random_count = parse_integer<int>(value, ctx);
    } else if (key == "decay") {
      cfg.decay = parse_real(value, ctx);
    } else if (key == "seed") {
      cfg.seed = parse_integer<std::uint64_t>(value, ctx);
    } else if (key == "suites") {
      cfg.suites.clear();
      if (value == "all") {
        cfg.suites.insert(all_suites().begin(), all_suites().end());
      } else if (!value.empty()) {
        for (auto token : split(value, ',')) {
          try {
            cfg.suites.insert(parse_suite(token));
          } catch (const std::invalid_argument& e) {
            ctx.fail(e.what());
          }
        }
      }
    } else {
      ctx.fail("unknown key");
    }
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    // point at the line that set the offending key; grid errors blame n, N or T
    int line = 0;
    for (const auto& [key, at] : seen)
      if (key == e.key() || (e.key() == "grid" && (key == "n" || key == "N" || key == "T")))
        line = std::max(line, at);
    if (line == 0) throw;
    throw ConfigError("line " + std::to_string(line) + ": " + e.what(), line, e.key());
  }
  return cfg;
}

bool Report::passed() const {
  return std::all_of(summary.begin(), summary.end(),
                     [](const SuiteSummary& s) { return s.failed == 0; });
}

Report run_suites(const RunConfig& cfg) {
  cfg.validate();
  Report report;
  for (Suite suite : all_suites()) {
    if (!cfg.suites.contains(suite)) continue;
    switch (suite) {
      case Suite::group_law: run_group_law(cfg, report); break;
      case Suite::kernel_mass: run_kernel_mass(cfg, report); break;
      case Suite::wong_sweep: run_wong_sweep(cfg, report); break;
      case Suite::constants_sweep: run_constants_sweep(cfg, report); break;
      case Suite::quasinorm_check: run_quasinorm(cfg, report); break;
    }
  }
  return report;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void write_wong_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << kWongCsvHeader << '\n';
  for (const auto& r : rows) {
    out << "wong-sweep," << format_double(r.params.s) << ',' << format_double(r.params.t) << ','
        << format_double(r.p) << ',' << format_double(r.params.q) << ',' << r.n << ','
        << r.resolution << ',' << format_double(r.period) << ',' << to_string(r.params.kind)
        << ',' << format_double(r.params.scale) << ',' << format_double(r.constants.epsilon)
        << ',' << format_double(r.constants.c) << ',' << r.test_fn << ','
        << format_double(r.lhs) << ',' << format_double(r.mid) << ',' << format_double(r.base)
        << ',' << format_double(r.margin) << '\n';
  }
}

void write_quasinorm_csv(const std::vector<QuasinormRow>& rows, std::ostream& out) {
  out << kQuasinormCsvHeader << '\n';
  for (const auto& r : rows) {
    out << "quasinorm-check," << r.k << ',' << r.l << ',' << r.m << ',' << format_double(r.p)
        << ',' << format_double(r.scale) << ',' << r.seed << ',' << format_double(r.epsilon)
        << ',' << format_double(r.c) << ',' << format_double(r.bound1) << ','
        << format_double(r.bound2) << ',' << format_double(r.additivity_error) << '\n';
  }
}

void write_constants_csv(const std::vector<ConstantsRow>& rows, std::ostream& out) {
  out << kConstantsCsvHeader << '\n';
  for (const auto& r : rows) {
    out << "constants-sweep," << format_double(r.s) << ',' << format_double(r.t) << ',' << r.n
        << ',' << r.resolution << ',' << format_double(r.period) << ',' << to_string(r.kind)
        << ',' << format_double(r.scale) << ',' << format_double(r.epsilon) << ','
        << format_double(r.c) << '\n';
  }
}

void write_checks_csv(const std::vector<CheckRow>& rows, std::ostream& out) {
  out << kChecksCsvHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.suite) << ',' << r.label << ',' << format_double(r.value) << ','
        << format_double(r.tolerance) << ',' << (r.pass ? "pass" : "fail") << '\n';
  }
}

void emit_csv(const Report& report, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory '" + directory.string() +
                             "': " + ec.message());

  const auto write = [&](const char* name, auto&& writer) {
    const auto path = directory / name;
    auto out = open_for_write(path);
    writer(out);
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
  };
  write("wong_sweep.csv", [&](std::ostream& o) { write_wong_csv(report.wong_rows, o); });
  write("quasinorm.csv", [&](std::ostream& o) { write_quasinorm_csv(report.quasinorm_rows, o); });
  write("constants.csv", [&](std::ostream& o) { write_constants_csv(report.constants_rows, o); });
  write("checks.csv", [&](std::ostream& o) { write_checks_csv(report.checks, o); });
}

void write_summary(const Report& report, std::ostream& out) {
  if (report.summary.empty()) {
    out << "no suites selected\n";
    return;
  }
  for (const auto& s : report.summary) {
    out << to_string(s.suite) << ": " << s.passed << " passed, " << s.failed << " failed, worst "
        << format_double(s.worst) << '\n';
    for (const auto& f : s.failures) out << "  FAILED " << f << '\n';
  }
  out << (report.passed() ? "PASS" : "FAIL") << '\n';
}

}  // namespace wong
