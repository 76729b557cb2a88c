#pragma once

#include <string>
#include <string_view>

#include "wong/spectral_grid.hpp"

namespace wong {

enum class MollifierKind {
  bump,      // c exp(-1/(1-|x|^2)) on |x| < 1
  gaussian,  // pi^(-n/2) exp(-|x|^2)
  identity,  // discrete delta; spectral weights exactly 1, scale R = inf
};

std::string_view to_string(MollifierKind kind);
/// Accepts "bump", "gaussian" and "identity"; throws std::invalid_argument.
MollifierKind parse_mollifier_kind(std::string_view text);

/// Unit-mass approximate identity phi_R(x) = R^n phi(R x) sampled on a grid.
class Mollifier {
 public:
  MollifierKind kind() const { return kind_; }
  double scale() const { return scale_; }
  const Grid& grid() const { return field_.grid(); }
  /// Physical samples, renormalized to discrete mass 1.
  const Field& field() const { return field_; }
  /// Discrete transform of field(); equals 1 at xi = 0.
  const Field& transform() const { return transform_; }
  /// Discrete mass of the raw samples before renormalization.
  double profile_mass() const { return profile_mass_; }

 private:
  friend Mollifier make_mollifier(MollifierKind, double, const Grid&);
  Mollifier(MollifierKind kind, double scale, Field field, Field transform, double profile_mass)
      : kind_(kind),
        scale_(scale),
        field_(std::move(field)),
        transform_(std::move(transform)),
        profile_mass_(profile_mass) {}

  MollifierKind kind_;
  double scale_;
  Field field_;
  Field transform_;
  double profile_mass_;
};

/// Throws std::invalid_argument for R <= 0 and for a bump whose support
/// radius 1/R is below 4 grid spacings. The identity kind ignores R.
Mollifier make_mollifier(MollifierKind kind, double scale, const Grid& grid);

/// phi_R * f via the discrete transform of phi_R.
Field mollify(const Field& f, const Mollifier& mollifier);

}  // namespace wong
