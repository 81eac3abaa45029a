#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sipkit/norms.hpp"
#include "sipkit/spectral.hpp"

namespace sipkit {

enum class SampleStrategy { sphere_random, basis_pairs, mixed };

std::string_view strategy_name(SampleStrategy s);
SampleStrategy parse_strategy(std::string_view name);

/// Realizes "for every x, y" quantifiers by a deterministic finite sample.
///
/// basis_pairs draws pairs from a basis adapted to the problem (eigenvectors,
/// subspace bases) and their pairwise sums and differences; sphere_random
/// draws seeded random unit vectors; mixed spends up to half of `count` on
/// basis pairs and the rest on random ones.
struct Sampler {
  std::uint64_t seed = 7;
  int count = 512;
  SampleStrategy strategy = SampleStrategy::mixed;
};

/// Raw |[Ax, y] - [x, Ay]|.
double adjoint_abelian_gap(const NormSpec& spec, const Matrix& a,
                           const Vector& x, const Vector& y);

/// Raw |[sum x_j, sum y_j] - sum [x_j, y_j]|.
double direct_sum_defect(const NormSpec& spec, std::span<const Vector> xs,
                         std::span<const Vector> ys);

/// max |[Ax,y] - [x,Ay]| / (||A|| ||x|| ||y||) over sampled unit pairs.
/// ||A|| is the largest ||Ax|| seen over the sampled unit vectors.
double adjoint_abelian_residual(const NormSpec& spec, const Matrix& a,
                                const Sampler& s);

/// max(|[u,v]|, |[v,u]|) over sampled unit u in span U, v in span V. An
/// empty basis on either side gives 0.
double check_transversal_normal(const NormSpec& spec, const Matrix& u_basis,
                                const Matrix& v_basis, const Sampler& s);

/// max of direct_sum_defect / (||sum x_j|| ||sum y_j||) with x_j, y_j drawn
/// from the j-th subspace. The subspaces must form a direct-sum
/// decomposition of the whole space.
double check_direct_sum(const NormSpec& spec, std::span<const Matrix> subspaces,
                        const Sampler& s);

/// max | ||Ax|| - 1 | over sampled unit x.
double check_isometry(const NormSpec& spec, const Matrix& a, const Sampler& s);

/// check_isometry restricted to unit x in the column span of `span`.
double check_isometry_on(const NormSpec& spec, const Matrix& a,
                         const Matrix& span, const Sampler& s);

/// |[z, x] - [z, x_i]| where z lies in the i-th combined eigenspace (z is
/// projected onto it when within 1e-8; otherwise InvalidInput).
double lemma_decomposition_residual(const NormSpec& spec, const Matrix& a,
                                    const Vector& z, const Vector& x);
double lemma_decomposition_residual(const NormSpec& spec,
                                    const SpectralData& sd, const Vector& z,
                                    const Vector& x);

/// |[z, x] - [z, sum_i (lambda_i^2 / lambda_1^2)^n x_i]| for z in the top
/// group. Returns 0 for the zero operator.
double power_identity_residual(const NormSpec& spec, const Matrix& a,
                               const Vector& z, const Vector& x, int n);
double power_identity_residual(const NormSpec& spec, const SpectralData& sd,
                               const Vector& z, const Vector& x, int n);

struct TheoremVerdicts {
  bool adjoint_abelian = false;
  bool direct_sum = false;      // condition (1)
  bool transversal = false;     // condition (2)
  bool scaled_isometry = false; // condition (3)
};

/// Residuals and verdicts for the characterization of diagonalizable
/// adjoint abelian operators: A is adjoint abelian iff
///   (1) the SIP splits as a direct sum over the combined eigenspaces,
///   (2) E_i and E_-i are mutually transversal and normal,
///   (3) A restricted to each combined eigenspace is lambda_i times an
///       isometry (the zero map when lambda_i = 0).
struct TheoremReport {
  double aa_residual = 0.0;
  double cond1_residual = 0.0;
  double cond2_residual = 0.0;
  double cond3_residual = 0.0;
  double tol = 1e-7;
  TheoremVerdicts verdicts;
  bool consistent = false;
  std::vector<double> lambdas;
  std::vector<int> group_dims;
  /// Set when some lp component has p < 2, where the Lipschitz hypothesis
  /// of the characterization fails.
  bool lipschitz_caveat = false;
};

TheoremReport verify_theorem(const NormSpec& spec, const Matrix& a,
                             const Sampler& s, double tol = 1e-7,
                             double group_tol = 1e-8);

}  // namespace sipkit
