#pragma once

#include <cstdint>

#include "wong/mollifiers.hpp"
#include "wong/spectral_grid.hpp"

namespace wong {

/// Scale indices 0 <= k < l < m of the neighborhoods L_k * B_{1,p}.
struct ScaleIndices {
  int k;
  int l;
  int m;

  void validate() const;
};

/// g with ||g||_p = 1, drawn from random_band_limited.
struct UnitBallSample {
  Field g;
  double p;
  std::uint64_t seed;  // seed actually used (after skipping zero draws)
  double norm_certificate;
};

/// Normalizes random_band_limited(grid, seed, decay) to unit p-norm. A zero
/// draw is skipped by incrementing the seed.
UnitBallSample unit_ball_sample(std::uint64_t seed, double p, const Grid& grid, double decay);

struct InclusionWitness {
  Field f1;
  Field f2;
  double epsilon;  // ||(delta - phi_R) * L_{l-k}||_1
  double c;        // ||L_{l-m} * phi_R||_1
  double bound1;   // ||J_{-k} f1||_p
  double bound2;   // ||J_{-m} f2||_p
  double additivity_error;

  /// bound1 <= eps (1+1e-6), bound2 <= C (1+1e-6), additivity <= 1e-10
  bool holds() const;
};

/// Splits f = J_l g into f1 in eps * L_k B_{1,p} and f2 in C * L_m B_{1,p}.
InclusionWitness inclusion_witness(const UnitBallSample& sample, const ScaleIndices& idx,
                                   const Mollifier& mollifier);

/// Pairing h^n sum g_j f_j (bilinear).
Complex pairing(const Field& g, const Field& f);

/// Unit-p-norm maximizer of |<g, f>| for 1/p + 1/q = 1: |f|^(q-1) conj-sign(f)
/// normalized, sign(conj f) for q = 1, a point mass at argmax |f| for q = inf.
Field holder_extremizer(const Field& f, double q);

struct DualityGapOptions {
  int seeds = 16;
  std::uint64_t first_seed = 1;
  double decay = 1.0;
  bool include_extremizer = true;
};

/// 1 - sup_g |<g, f>| / ||f||_q over sampled unit-ball elements g.
double duality_gap(const Field& f, double q, const DualityGapOptions& options = {});

}  // namespace wong
