#include "wong/mollifiers.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wong {

namespace {

// integral of exp(-1/(1-|x|^2)) over the unit ball in 1 and 2 dimensions
constexpr double kBumpIntegral1d = 0.443993816168079437823;
constexpr double kBumpIntegral2d = 0.466512393178330068880;

double base_profile(MollifierKind kind, double r2, int n) {
  switch (kind) {
    case MollifierKind::bump:
      if (r2 >= 1.0) return 0.0;
      return std::exp(-1.0 / (1.0 - r2)) / (n == 1 ? kBumpIntegral1d : kBumpIntegral2d);
    case MollifierKind::gaussian:
      return std::exp(-r2) / std::pow(std::numbers::pi, 0.5 * n);
    case MollifierKind::identity:
      break;
  }
  throw std::logic_error("identity mollifier has no profile");
}

}  // namespace

std::string_view to_string(MollifierKind kind) {
  switch (kind) {
    case MollifierKind::bump: return "bump";
    case MollifierKind::gaussian: return "gaussian";
    case MollifierKind::identity: return "identity";
  }
  return "?";
}

MollifierKind parse_mollifier_kind(std::string_view text) {
  if (text == "bump") return MollifierKind::bump;
  if (text == "gaussian") return MollifierKind::gaussian;
  if (text == "identity") return MollifierKind::identity;
  throw std::invalid_argument("unknown mollifier kind '" + std::string(text) +
                              "' (expected bump, gaussian or identity)");
}

Mollifier make_mollifier(MollifierKind kind, double scale, const Grid& grid) {
  const double h_n = grid.cell_volume();

  if (kind == MollifierKind::identity) {
    // The sample at x = 0 sits at storage index N/2 on every axis.
    std::vector<Complex> delta(grid.size());
    const std::array<std::size_t, 2> centre{grid.resolution() / 2, grid.resolution() / 2};
    delta[grid.flatten(centre)] = 1.0 / h_n;
    Field field(grid, std::move(delta), Representation::physical, true);
    Field ones(grid, std::vector<Complex>(grid.size(), Complex(1.0)), Representation::spectral,
               true);
    return Mollifier(kind, kInf, std::move(field), std::move(ones), 1.0);
  }

  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("mollifier scale R must be positive and finite");
  if (kind == MollifierKind::bump && 1.0 / scale < 4.0 * grid.spacing())
    throw std::invalid_argument("bump mollifier under-resolved: support radius 1/R = " +
                                std::to_string(1.0 / scale) + " is below 4h = " +
                                std::to_string(4.0 * grid.spacing()));

  const int n = grid.dimension();
  const double amplitude = std::pow(scale, n);
  std::vector<Complex> samples(grid.size());
  double mass = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto x = grid.point(i);
    const double r2 = scale * scale * (x[0] * x[0] + x[1] * x[1]);
    const double v = amplitude * base_profile(kind, r2, n);
    samples[i] = v;
    mass += v;
  }
  mass *= h_n;
  for (auto& v : samples) v /= mass;

  Field field(grid, std::move(samples), Representation::physical, true);
  Field transform = forward_transform(field);
  return Mollifier(kind, scale, std::move(field), std::move(transform), mass);
}

Field mollify(const Field& f, const Mollifier& mollifier) {
  if (!(f.grid() == mollifier.grid()))
    throw std::invalid_argument("mollifier and field live on different grids");
  return apply_multiplier(f, mollifier.transform());
}

}  // namespace wong
