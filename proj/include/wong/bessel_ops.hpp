#pragma once

#include <span>
#include <vector>

#include "wong/spectral_grid.hpp"

namespace wong {

/// Real order z of a Bessel kernel L_z, F L_z(xi) = (1+|xi|^2)^(-z/2).
/// Positive orders smooth, negative orders differentiate.
class BesselOrder {
 public:
  explicit BesselOrder(double z);
  double value() const { return z_; }

 private:
  double z_;
};

/// (1+|xi|^2)^(-z/2).
double bessel_multiplier(BesselOrder z, std::span<const double> xi);

/// Spectral weights of L_z sampled on the grid.
Field bessel_weights(const Grid& grid, BesselOrder z);

/// J_z f = L_z * f.
Field bessel_potential(const Field& f, BesselOrder z);

/// ||J_z J_w f - J_{z+w} f||_2 / ||f||_2. Throws on f == 0.
double verify_group_law(const Field& f, BesselOrder z, BesselOrder w);

/// Discrete L1 norm of the sampled kernel L_s (s > 0).
double kernel_mass(double s, const Grid& grid);

/// ||L_{-s} * phi||_p for s >= 0.
double seminorm(const Field& phi, double s, double p);

struct FactorizationCheck {
  double reconstruction_error;  // relative sup discrepancy of the two routes
  double factor_mass;           // discrete ||L_s * d^alpha delta||_1
};

/// Compares d^alpha f computed directly against the factored route
/// (d^alpha L_s) * L_{-s}. Requires s > |alpha| and alpha.size() == n.
FactorizationCheck derivative_factorization_check(const Field& f,
                                                  std::span<const int> alpha, double s);

}  // namespace wong
