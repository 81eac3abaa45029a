#pragma once

#include <cstdint>

#include "sipkit/norms.hpp"

namespace sipkit {

/// A basis of unit vectors (columns of `vectors`) in which every two
/// distinct vectors are mutually transversal and normal.
struct AuerbachBasis {
  Matrix vectors;
  double pair_residual = 0.0;  // max |[e_i, e_j]| over i != j
  double det_value = 0.0;      // |det| of the basis
  double best_det_seen = 0.0;  // over every restart and sweep
  bool converged = false;      // pair_residual <= 1e-4
  int restart = 0;             // restart that produced the result
  int sweeps = 0;
};

/// Determinant maximization over products of unit spheres.
///
/// Each restart begins from a seeded random orthonormal frame and runs
/// alternating sweeps: with all other columns fixed, det is a linear
/// functional c . e_j of column j, and e_j is moved to the maximizer of
/// c . e over ||e|| = 1. The maximizer is taken from the closed-form dual
/// when the family has one and refined by projected gradient ascent with
/// backtracking. Any critical point of det is an Auerbach basis.
///
/// The best restart by determinant (ties to the earliest) is returned; a
/// result with pair_residual above 1e-4 is returned with converged = false.
AuerbachBasis auerbach_search(const NormSpec& spec, std::uint64_t seed,
                              int restarts);

/// max |[e_i, e_j]| over distinct columns.
double auerbach_pair_residual(const NormSpec& spec, const Matrix& basis);

}  // namespace sipkit
