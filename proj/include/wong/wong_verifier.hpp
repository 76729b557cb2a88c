#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wong/mollifiers.hpp"
#include "wong/spectral_grid.hpp"

namespace wong {

/// Orders 0 < s < t, exponent q in [1, inf], mollifier scale R > 0.
struct WongParams {
  double s;
  double t;
  double q;
  double scale;
  MollifierKind kind = MollifierKind::bump;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

/// 1/p + 1/q = 1.
double conjugate_exponent(double q);

/// Constructive constants of the two-term split.
struct WongConstants {
  double epsilon;  // ||(delta - phi_R) * L_{t-s}||_1
  double c;        // ||L_{-s} * phi_R||_1
};

/// Spectral data (1 - phi_R^)(1+|xi|^2)^(-(t-s)/2).
Field epsilon_weights(double s, double t, const Mollifier& mollifier);
/// Spectral data (1+|xi|^2)^(s/2) phi_R^.
Field c_weights(double s, const Mollifier& mollifier);

double epsilon_constant(double s, double t, const Mollifier& mollifier);
double c_constant(double s, const Mollifier& mollifier);
WongConstants wong_constants(double s, double t, const Mollifier& mollifier);

struct Decomposition {
  Field part1;  // (delta - phi_R) * L_{t-s} * J_{-t} phi
  Field part2;  // L_{-s} * phi_R * phi
};

/// Splits J_{-s} phi into the two parts above; part1 + part2 = J_{-s} phi.
Decomposition decompose(const Field& phi, double s, double t, const Mollifier& mollifier);

struct SweepRow {
  WongParams params;
  double p;  // conjugate of q, carried for cross-reference only
  int n;
  std::size_t resolution;
  double period;
  std::string test_fn;
  WongConstants constants;
  double lhs;   // ||J_{-s} phi||_q
  double mid;   // ||J_{-t} phi||_q
  double base;  // ||phi||_q
  double margin;
  double part1_norm;
  double part2_norm;

  double rhs() const { return constants.epsilon * mid + constants.c * base; }
  /// margin >= -1e-8 * rhs
  bool inequality_holds() const;
  /// ||part1||_q <= eps*mid*(1+1e-6) and ||part2||_q <= C*base*(1+1e-6)
  bool part_bounds_hold() const;
};

/// Builds the mollifier from params on phi's grid and evaluates the
/// inequality with the constructive constants.
SweepRow verify_wong(const Field& phi, const WongParams& params, const std::string& test_fn = "");

/// Same, reusing a prebuilt mollifier and its constants (sweep inner loop).
SweepRow verify_wong(const Field& phi, const WongParams& params, const Mollifier& mollifier,
                     const WongConstants& constants, const std::string& test_fn);

struct TradeoffRow {
  double scale;  // inf for the identity mollifier
  double epsilon;
  double c;
};

/// (R, eps(R), C(R)) for each listed scale, optionally followed by the
/// identity row. Scales must be nonempty and strictly ascending.
std::vector<TradeoffRow> constant_tradeoff_sweep(double s, double t,
                                                 const std::vector<double>& scales,
                                                 MollifierKind kind, const Grid& grid,
                                                 bool append_identity = false);

/// Smallest listed scale whose epsilon is <= target, with its C.
std::optional<TradeoffRow> smallest_scale_for(const std::vector<TradeoffRow>& rows,
                                              double target_epsilon);

}  // namespace wong
