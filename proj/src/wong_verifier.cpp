#include "wong/wong_verifier.hpp"

#include <cmath>
#include <stdexcept>

#include "wong/bessel_ops.hpp"

namespace wong {

namespace {

void require_orders(double s, double t) {
  if (!(s > 0.0 && s < t))
    throw std::invalid_argument("orders (s, t) require 0 < s < t, got (" + std::to_string(s) +
                                ", " + std::to_string(t) + ")");
}

}  // namespace

void WongParams::validate() const {
  require_orders(s, t);
  if (!(q >= 1.0)) throw std::invalid_argument("exponent q must lie in [1, inf]");
  if (!(scale > 0.0)) throw std::invalid_argument("mollifier scale R must be positive");
}

double conjugate_exponent(double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("exponent must lie in [1, inf]");
  if (q == 1.0) return kInf;
  if (std::isinf(q)) return 1.0;
  return q / (q - 1.0);
}

Field epsilon_weights(double s, double t, const Mollifier& mollifier) {
  require_orders(s, t);
  const Field& phi_hat = mollifier.transform();
  const Field smoothing = bessel_weights(mollifier.grid(), BesselOrder(t - s));
  std::vector<Complex> w(phi_hat.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1.0 - phi_hat[i]) * smoothing[i];
  return Field(mollifier.grid(), std::move(w), Representation::spectral);
}

Field c_weights(double s, const Mollifier& mollifier) {
  if (!(s > 0.0)) throw std::invalid_argument("c_constant requires s > 0");
  return bessel_weights(mollifier.grid(), BesselOrder(-s)).pointwise(mollifier.transform());
}

double epsilon_constant(double s, double t, const Mollifier& mollifier) {
  return lp_norm(inverse_transform(epsilon_weights(s, t, mollifier)), 1.0);
}

double c_constant(double s, const Mollifier& mollifier) {
  return lp_norm(inverse_transform(c_weights(s, mollifier)), 1.0);
}

WongConstants wong_constants(double s, double t, const Mollifier& mollifier) {
  return {epsilon_constant(s, t, mollifier), c_constant(s, mollifier)};
}

Decomposition decompose(const Field& phi, double s, double t, const Mollifier& mollifier) {
  require_orders(s, t);
  if (!phi.is_physical()) throw std::invalid_argument("decompose expects a physical field");
  if (!(phi.grid() == mollifier.grid()))
    throw std::invalid_argument("mollifier and field live on different grids");
  Field part1 =
      apply_multiplier(bessel_potential(phi, BesselOrder(-t)), epsilon_weights(s, t, mollifier));
  Field part2 = apply_multiplier(phi, c_weights(s, mollifier));
  return {std::move(part1), std::move(part2)};
}

bool SweepRow::inequality_holds() const { return margin >= -1e-8 * rhs(); }

bool SweepRow::part_bounds_hold() const {
  constexpr double kSlack = 1.0 + 1e-6;
  return part1_norm <= constants.epsilon * mid * kSlack &&
         part2_norm <= constants.c * base * kSlack;
}

SweepRow verify_wong(const Field& phi, const WongParams& params, const Mollifier& mollifier,
                     const WongConstants& constants, const std::string& test_fn) {
  params.validate();
  const Grid& grid = phi.grid();
  const Decomposition parts = decompose(phi, params.s, params.t, mollifier);

  SweepRow row{};
  row.params = params;
  row.p = conjugate_exponent(params.q);
  row.n = grid.dimension();
  row.resolution = grid.resolution();
  row.period = grid.period();
  row.test_fn = test_fn;
  row.constants = constants;
  row.lhs = seminorm(phi, params.s, params.q);
  row.mid = seminorm(phi, params.t, params.q);
  row.base = lp_norm(phi, params.q);
  row.margin = constants.epsilon * row.mid + constants.c * row.base - row.lhs;
  row.part1_norm = lp_norm(parts.part1, params.q);
  row.part2_norm = lp_norm(parts.part2, params.q);
  return row;
}

SweepRow verify_wong(const Field& phi, const WongParams& params, const std::string& test_fn) {
  params.validate();
  const Mollifier mollifier = make_mollifier(params.kind, params.scale, phi.grid());
  return verify_wong(phi, params, mollifier, wong_constants(params.s, params.t, mollifier),
                     test_fn);
}

std::vector<TradeoffRow> constant_tradeoff_sweep(double s, double t,
                                                 const std::vector<double>& scales,
                                                 MollifierKind kind, const Grid& grid,
                                                 bool append_identity) {
  require_orders(s, t);
  if (scales.empty()) throw std::invalid_argument("scale list must not be empty");
  for (std::size_t i = 1; i < scales.size(); ++i)
    if (!(scales[i] > scales[i - 1]))
      throw std::invalid_argument("scale list must be strictly ascending");

  std::vector<TradeoffRow> rows;
  rows.reserve(scales.size() + 1);
  for (double r : scales) {
    const auto constants = wong_constants(s, t, make_mollifier(kind, r, grid));
    rows.push_back({r, constants.epsilon, constants.c});
  }
  if (append_identity) {
    const auto constants = wong_constants(s, t, make_mollifier(MollifierKind::identity, kInf, grid));
    rows.push_back({kInf, constants.epsilon, constants.c});
  }
  return rows;
}

std::optional<TradeoffRow> smallest_scale_for(const std::vector<TradeoffRow>& rows,
                                              double target_epsilon) {
  for (const auto& row : rows)
    if (row.epsilon <= target_epsilon) return row;
  return std::nullopt;
}

}  // namespace wong
