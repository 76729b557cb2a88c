#include "wong/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wong {

namespace {

struct Profile {
  std::string name;
  Complex (*eval)(double);
  bool real;
};

const std::vector<Profile>& profiles() {
  static const std::vector<Profile> table = {
      {"gaussian", [](double u) -> Complex { return std::exp(-u * u); }, true},
      {"wide_gaussian", [](double u) -> Complex { return std::exp(-u * u / 3.0); }, true},
      {"narrow_gaussian", [](double u) -> Complex { return std::exp(-4.0 * u * u); }, true},
      {"shifted_gaussian",
       [](double u) -> Complex { return std::exp(-(u - 2.0) * (u - 2.0)); }, true},
      {"modulated_gaussian",
       [](double u) -> Complex { return std::cos(5.0 * u) * std::exp(-u * u); }, true},
      {"complex_wavepacket",
       [](double u) -> Complex { return std::polar(std::exp(-u * u), 3.0 * u); }, false},
      {"hermite2",
       [](double u) -> Complex { return (4.0 * u * u - 2.0) * std::exp(-u * u); }, true},
      {"cubic_gaussian",
       [](double u) -> Complex { return u * u * u * std::exp(-0.5 * u * u); }, true},
      {"compact_bump",
       [](double u) -> Complex {
         const double r2 = 0.25 * u * u;
         return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
       },
       true},
      {"sech_pulse", [](double u) -> Complex { return 1.0 / std::cosh(4.0 * u); }, true},
      {"double_gaussian",
       [](double u) -> Complex {
         return std::exp(-(u - 3.0) * (u - 3.0)) - 0.5 * std::exp(-2.0 * (u + 3.0) * (u + 3.0));
       },
       true},
      {"chirp",
       [](double u) -> Complex { return std::cos(u * u) * std::exp(-0.5 * u * u); }, true},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& p : profiles()) out.push_back(p.name);
    return out;
  }();
  return names;
}

Field catalog_function(std::string_view name, const Grid& grid) {
  const auto& table = profiles();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const Profile& p) { return p.name == name; });
  if (it == table.end())
    throw std::invalid_argument("unknown catalog function '" + std::string(name) + "'");
  const auto eval = it->eval;
  return Field::sample(
      grid,
      [eval](std::span<const double> x) {
        Complex v = 1.0;
        for (double c : x) v *= eval(c);
        return v;
      },
      it->real);
}

std::vector<TestFunction> build_catalog(const Grid& grid, const std::vector<std::string>& names,
                                        int random_count, std::uint64_t first_seed,
                                        double decay) {
  std::vector<TestFunction> out;
  out.reserve(names.size() + static_cast<std::size_t>(std::max(random_count, 0)));
  for (const auto& name : names) out.push_back({name, catalog_function(name, grid)});
  for (int i = 0; i < random_count; ++i) {
    const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(i);
    out.push_back({"random_" + std::to_string(seed), random_band_limited(grid, seed, decay)});
  }
  return out;
}

double tail_ratio(const Field& f) {
  const Grid& grid = f.grid();
  const double quarter = 0.25 * grid.period();
  double tail = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = grid.point(i);
    bool outside = false;
    for (int a = 0; a < grid.dimension(); ++a) outside = outside || std::abs(x[a]) > quarter;
    if (outside) tail = std::max(tail, std::abs(f[i]));
  }
  const double scale = f.max_abs();
  return scale == 0.0 ? 0.0 : tail / scale;
}

}  // namespace wong
