#include "wong/bessel_ops.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wong {

BesselOrder::BesselOrder(double z) : z_(z) {
  if (!std::isfinite(z)) throw std::invalid_argument("Bessel order must be finite");
}

double bessel_multiplier(BesselOrder z, std::span<const double> xi) {
  double r2 = 0.0;
  for (double c : xi) r2 += c * c;
  if (z.value() == 0.0) return 1.0;
  return std::pow(1.0 + r2, -0.5 * z.value());
}

Field bessel_weights(const Grid& grid, BesselOrder z) {
  std::vector<Complex> w(grid.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto xi = grid.frequency_vector(i);
    w[i] = bessel_multiplier(z, std::span<const double>(xi.data(), grid.dimension()));
  }
  return Field(grid, std::move(w), Representation::spectral, true);
}

Field bessel_potential(const Field& f, BesselOrder z) {
  if (!f.is_physical()) throw std::invalid_argument("bessel_potential expects a physical field");
  if (z.value() == 0.0) return f;
  return apply_multiplier(f, bessel_weights(f.grid(), z));
}

double verify_group_law(const Field& f, BesselOrder z, BesselOrder w) {
  const double base = lp_norm(f, 2.0);
  if (base == 0.0) throw std::invalid_argument("group law check needs a nonzero field");
  const Field composed = bessel_potential(bessel_potential(f, w), z);
  const Field direct = bessel_potential(f, BesselOrder(z.value() + w.value()));
  return lp_norm(composed - direct, 2.0) / base;
}

double kernel_mass(double s, const Grid& grid) {
  if (!(s > 0.0))
    throw std::invalid_argument("kernel_mass requires s > 0 (L_s is not integrable otherwise)");
  return lp_norm(inverse_transform(bessel_weights(grid, BesselOrder(s))), 1.0);
}

double seminorm(const Field& phi, double s, double p) {
  if (!(s >= 0.0)) throw std::invalid_argument("seminorm order must be >= 0");
  return lp_norm(bessel_potential(phi, BesselOrder(-s)), p);
}

FactorizationCheck derivative_factorization_check(const Field& f,
                                                  std::span<const int> alpha, double s) {
  const Grid& grid = f.grid();
  if (alpha.size() != static_cast<std::size_t>(grid.dimension()))
    throw std::invalid_argument("multi-index length must equal the grid dimension");
  for (int a : alpha)
    if (a < 0) throw std::invalid_argument("multi-index entries must be nonnegative");
  const int order = std::accumulate(alpha.begin(), alpha.end(), 0);
  if (!(s > order))
    throw std::invalid_argument("factorization requires s > |alpha| = " + std::to_string(order));

  // (i xi)^alpha
  std::vector<Complex> derivative(grid.size());
  for (std::size_t i = 0; i < derivative.size(); ++i) {
    const auto xi = grid.frequency_vector(i);
    Complex w = 1.0;
    for (std::size_t a = 0; a < alpha.size(); ++a)
      for (int r = 0; r < alpha[a]; ++r) w *= Complex(0.0, xi[a]);
    derivative[i] = w;
  }
  const Field derivative_weights(grid, std::move(derivative), Representation::spectral);
  const Field factor_weights = derivative_weights.pointwise(bessel_weights(grid, BesselOrder(s)));

  const Field direct = apply_multiplier(f, derivative_weights);
  const Field factored =
      bessel_potential(apply_multiplier(f, factor_weights), BesselOrder(-s));

  return {relative_sup_error(factored, direct),
          lp_norm(inverse_transform(factor_weights), 1.0)};
}

}  // namespace wong
