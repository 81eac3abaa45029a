#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sipkit/norms.hpp"

namespace sipkit {

using Rng = std::mt19937_64;

/// Seeds a generator from a base seed and a stream index so that
/// independent sub-checks draw from distinct, reproducible streams.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Gaussian direction in R^dim (not normalized).
Vector gaussian_vector(Rng& rng, int dim);

/// Uniformly oriented random vector of unit norm in the column span of
/// `span`.
Vector random_unit_in_span(const NormSpec& spec, const Matrix& span, Rng& rng);

/// Normalizes x to unit norm; x must be nonzero.
Vector normalized(const NormSpec& spec, const Vector& x);

/// Unit vectors adapted to a basis: the normalized columns, followed by the
/// normalized sums and differences of every pair of columns.
std::vector<Vector> adapted_unit_vectors(const NormSpec& spec,
                                         const Matrix& basis);

/// Numerical rank through column-pivoting QR, relative threshold 1e-10.
int numerical_rank(const Matrix& m);

}  // namespace sipkit
