#pragma once

#include <cstdint>

#include "sipkit/norms.hpp"

namespace sipkit {

/// The semi-inner-product [x, y] induced by a smooth norm.
///
/// Uses the closed form registered for the family:
///   lp           ||y||^(2-p) sum x_i sign(y_i) |y_i|^(p-1)
///   weighted_lp  ||y||^(2-p) sum w_i x_i sign(w_i y_i) |w_i y_i|^(p-1)
///   ellipsoid    x^T Q y
///   direct_sum   sum of the parts' values
/// Custom norms fall back to sip_eval_via_gradient. [x, 0] is 0.
double sip_eval(const NormSpec& spec, const Vector& x, const Vector& y);

/// ||y|| * (grad ||.||(y) . x), the defining route.
double sip_eval_via_gradient(const NormSpec& spec, const Vector& x,
                             const Vector& y);

/// Largest observed violation of each axiom over seeded samples. All
/// entries are relative to the magnitudes involved.
struct SipAxiomReport {
  int samples = 0;
  double linearity = 0.0;           // additivity and homogeneity in x
  double positivity = 0.0;          // [x,x] > 0 for x != 0
  double schwartz = 0.0;            // [x,y]^2 <= [x,x][y,y]
  double second_homogeneity = 0.0;  // [x, a y] = a [x, y]
  double norm_identity = 0.0;       // [x,x] = ||x||^2

  double max_residual() const;
};

SipAxiomReport sip_axiom_report(const NormSpec& spec, int sample_count,
                                std::uint64_t seed);

}  // namespace sipkit
