#pragma once

#include <span>
#include <string>
#include <vector>

#include "sipkit/types.hpp"

namespace sipkit {

/// Eigenvalues of one absolute value lambda. `positive` spans the
/// eigenspace of +lambda and `negative` that of -lambda; either may have
/// zero columns. For lambda = 0 everything sits in `positive`.
struct EigenGroup {
  double lambda = 0.0;
  Matrix positive;
  Matrix negative;

  /// Basis of span(positive U negative).
  Matrix combined() const;
  int dim() const { return static_cast<int>(positive.cols() + negative.cols()); }
};

/// Real eigen-analysis of a square operator with eigenvalues grouped by
/// absolute value, lambda_1 > lambda_2 > ... > lambda_k >= 0.
///
/// Group indices are zero-based here.
class SpectralData {
 public:
  bool diagonalizable() const { return diagonalizable_; }
  /// "complex spectrum" or "defective" when not diagonalizable.
  const std::string& reason() const { return reason_; }
  int dim() const { return dim_; }
  int group_count() const { return static_cast<int>(groups_.size()); }
  std::span<const EigenGroup> groups() const { return groups_; }
  const EigenGroup& group(int i) const;
  double lambda(int i) const { return group(i).lambda; }

  /// All group bases side by side, in group order.
  const Matrix& eigenbasis() const { return basis_; }

  /// The i-th term of the unique decomposition x = sum_i x_i with x_i in
  /// the combined eigenspace of group i.
  Vector component_of(const Vector& x, int i) const;

  /// Index of the group whose combined eigenspace contains z, within a
  /// relative tolerance; -1 if there is none.
  int group_containing(const Vector& z, double rel_tol = 1e-8) const;

 private:
  friend SpectralData spectral_decompose(const Matrix& a, double tol);

  bool diagonalizable_ = false;
  std::string reason_;
  int dim_ = 0;
  std::vector<EigenGroup> groups_;
  Matrix basis_;
  Matrix coordinates_;  // inverse of basis_
  std::vector<int> offsets_;
};

/// Two eigenvalues share a group when their absolute values differ by at
/// most tol * max(1, lambda_1).
SpectralData spectral_decompose(const Matrix& a, double tol = 1e-8);

inline Vector component_of(const SpectralData& sd, const Vector& x, int i) {
  return sd.component_of(x, i);
}

}  // namespace sipkit
