#include "wong/quasinorm_check.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wong/bessel_ops.hpp"
#include "wong/wong_verifier.hpp"

namespace wong {

void ScaleIndices::validate() const {
  if (!(0 <= k && k < l && l < m))
    throw std::invalid_argument("scale indices require 0 <= k < l < m, got (" +
                                std::to_string(k) + ", " + std::to_string(l) + ", " +
                                std::to_string(m) + ")");
}

UnitBallSample unit_ball_sample(std::uint64_t seed, double p, const Grid& grid, double decay) {
  if (!(p >= 1.0)) throw std::invalid_argument("unit ball exponent must lie in [1, inf]");
  for (std::uint64_t s = seed;; ++s) {
    const Field g = random_band_limited(grid, s, decay);
    const double norm = lp_norm(g, p);
    if (norm == 0.0) continue;
    Field unit = g * (1.0 / norm);
    const double certificate = lp_norm(unit, p);
    return {std::move(unit), p, s, certificate};
  }
}

bool InclusionWitness::holds() const {
  constexpr double kSlack = 1.0 + 1e-6;
  return bound1 <= epsilon * kSlack && bound2 <= c * kSlack && additivity_error <= 1e-10;
}

InclusionWitness inclusion_witness(const UnitBallSample& sample, const ScaleIndices& idx,
                                   const Mollifier& mollifier) {
  idx.validate();
  if (std::abs(sample.norm_certificate - 1.0) > 1e-12 ||
      std::abs(lp_norm(sample.g, sample.p) - 1.0) > 1e-12)
    throw std::invalid_argument("unit ball sample does not have unit norm");
  const Grid& grid = sample.g.grid();
  if (!(grid == mollifier.grid()))
    throw std::invalid_argument("mollifier and sample live on different grids");

  const auto k = static_cast<double>(idx.k);
  const auto l = static_cast<double>(idx.l);
  const auto m = static_cast<double>(idx.m);

  // (delta - phi_R) * L_{l-k} is the epsilon kernel with orders (s, t) = (m-l, m-k);
  // L_{l-m} * phi_R is the C kernel with s = m-l.
  const Field eps_w = epsilon_weights(m - l, m - k, mollifier);
  const Field c_w = c_weights(m - l, mollifier);

  const Field& g = sample.g;
  const Field f = bessel_potential(g, BesselOrder(l));
  Field f1 = apply_multiplier(bessel_potential(g, BesselOrder(k)), eps_w);
  Field f2 = apply_multiplier(bessel_potential(g, BesselOrder(m)), c_w);

  InclusionWitness w{f1, f2, 0, 0, 0, 0, 0};
  w.epsilon = lp_norm(inverse_transform(eps_w), 1.0);
  w.c = lp_norm(inverse_transform(c_w), 1.0);
  w.bound1 = lp_norm(bessel_potential(f1, BesselOrder(-k)), sample.p);
  w.bound2 = lp_norm(bessel_potential(f2, BesselOrder(-m)), sample.p);
  w.additivity_error = relative_sup_error(f1 + f2, f);
  w.f1 = std::move(f1);
  w.f2 = std::move(f2);
  return w;
}

Complex pairing(const Field& g, const Field& f) {
  if (!(g.grid() == f.grid())) throw std::invalid_argument("pairing across different grids");
  if (!g.is_physical() || !f.is_physical())
    throw std::invalid_argument("pairing expects physical fields");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += g[i] * f[i];
  return f.grid().cell_volume() * sum;
}

Field holder_extremizer(const Field& f, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("exponent must lie in [1, inf]");
  const Grid& grid = f.grid();
  std::vector<Complex> g(f.size());

  if (std::isinf(q)) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < f.size(); ++i)
      if (std::abs(f[i]) > std::abs(f[best])) best = i;
    if (f[best] != 0.0)
      g[best] = std::conj(f[best]) / std::abs(f[best]) / grid.cell_volume();
    return Field(grid, std::move(g), Representation::physical);
  }

  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::abs(f[i]);
    if (a == 0.0) continue;
    const Complex phase = std::conj(f[i]) / a;
    g[i] = q == 1.0 ? phase : std::pow(a, q - 1.0) * phase;
  }
  Field out(grid, std::move(g), Representation::physical);
  if (q == 1.0) return out;
  const double norm = lp_norm(out, conjugate_exponent(q));
  return norm == 0.0 ? out : out * (1.0 / norm);
}

double duality_gap(const Field& f, double q, const DualityGapOptions& options) {
  const double target = lp_norm(f, q);
  if (target == 0.0) throw std::invalid_argument("duality gap is undefined for f = 0");
  const double p = conjugate_exponent(q);

  double best = 0.0;
  if (options.include_extremizer) best = std::abs(pairing(holder_extremizer(f, q), f));
  for (int i = 0; i < options.seeds; ++i) {
    const auto sample = unit_ball_sample(options.first_seed + static_cast<std::uint64_t>(i), p,
                                         f.grid(), options.decay);
    best = std::max(best, std::abs(pairing(sample.g, f)));
  }

  const double gap = 1.0 - best / target;
  if (gap < -1e-10)
    throw std::logic_error("sampled pairing exceeds the q-norm (Hölder violated)");
  return std::clamp(gap, 0.0, 1.0);
}

}  // namespace wong
