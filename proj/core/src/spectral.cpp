#include "sipkit/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace sipkit {
namespace {

constexpr double kComplexTol = 1e-6;
constexpr double kResidualTol = 1e-8;
constexpr double kMaxCondition = 1e8;

struct Cluster {
  int multiplicity = 0;
};

// Orthonormal basis of the approximate kernel of A - mu I. Fails when the
// kernel is smaller than the algebraic multiplicity.
bool eigenspace(const Matrix& a, double mu, int multiplicity, double a_inf,
                Matrix& out) {
  const Eigen::Index n = a.rows();
  const Matrix shifted = a - mu * Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const Eigen::Index first = n - multiplicity;
  if (sv[first] > kResidualTol * std::max(a_inf, 1e-300)) return false;
  out = svd.matrixV().rightCols(multiplicity);
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    const Vector r = a * out.col(c) - mu * out.col(c);
    if (r.cwiseAbs().maxCoeff() > kResidualTol * a_inf) return false;
  }
  return true;
}

}  // namespace

Matrix EigenGroup::combined() const {
  Matrix m(positive.rows(), positive.cols() + negative.cols());
  m << positive, negative;
  return m;
}

const EigenGroup& SpectralData::group(int i) const {
  if (i < 0 || i >= group_count()) {
    throw InvalidInput("group index " + std::to_string(i) + " out of range [0, " +
                       std::to_string(group_count()) + ")");
  }
  return groups_[static_cast<std::size_t>(i)];
}

Vector SpectralData::component_of(const Vector& x, int i) const {
  if (!diagonalizable_) {
    throw InvalidInput("component_of requires a diagonalizable operator (" +
                       reason_ + ")");
  }
  const EigenGroup& g = group(i);
  if (x.size() != dim_) {
    throw InvalidInput("dimension mismatch: expected " + std::to_string(dim_) +
                       ", got " + std::to_string(x.size()));
  }
  const Vector coords = coordinates_ * x;
  const auto off = offsets_[static_cast<std::size_t>(i)];
  return basis_.middleCols(off, g.dim()) * coords.segment(off, g.dim());
}

int SpectralData::group_containing(const Vector& z, double rel_tol) const {
  const double scale = z.cwiseAbs().maxCoeff();
  if (scale == 0.0) return group_count() ? 0 : -1;
  for (int i = 0; i < group_count(); ++i) {
    const Vector zi = component_of(z, i);
    if ((z - zi).cwiseAbs().maxCoeff() <= rel_tol * scale) return i;
  }
  return -1;
}

SpectralData spectral_decompose(const Matrix& a, double tol) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw InvalidInput("operator must be a nonempty square matrix");
  }
  if (!a.allFinite()) throw InvalidInput("operator has non-finite entries");
  if (!(tol > 0.0)) throw InvalidInput("group tolerance must be positive");

  SpectralData sd;
  const int n = static_cast<int>(a.rows());
  sd.dim_ = n;

  Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigensolver did not converge");
  }
  const Eigen::VectorXcd eig = solver.eigenvalues();
  const double top = eig.cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, top);
  const double a_inf = a.cwiseAbs().rowwise().sum().maxCoeff();

  std::vector<double> values;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (std::abs(eig[i].imag()) > kComplexTol * scale) {
      sd.reason_ = "complex spectrum";
      return sd;
    }
    values.push_back(eig[i].real());
  }
  std::sort(values.begin(), values.end(), [](double l, double r) {
    return std::abs(l) > std::abs(r) || (std::abs(l) == std::abs(r) && l > r);
  });

  const double group_gap = tol * scale;
  std::size_t start = 0;
  while (start < values.size()) {
    std::size_t end = start + 1;
    while (end < values.size() &&
           std::abs(values[start]) - std::abs(values[end]) <= group_gap) {
      ++end;
    }
    double lambda = 0.0;
    Cluster pos, neg;
    for (std::size_t i = start; i < end; ++i) lambda += std::abs(values[i]);
    lambda /= static_cast<double>(end - start);
    const bool zero = lambda <= group_gap;
    for (std::size_t i = start; i < end; ++i) {
      if (zero || values[i] > 0) {
        ++pos.multiplicity;
      } else {
        ++neg.multiplicity;
      }
    }
    EigenGroup g;
    g.lambda = zero ? 0.0 : lambda;
    g.positive = Matrix(n, 0);
    g.negative = Matrix(n, 0);
    if (pos.multiplicity &&
        !eigenspace(a, g.lambda, pos.multiplicity, a_inf, g.positive)) {
      sd.reason_ = "defective";
      return sd;
    }
    if (neg.multiplicity &&
        !eigenspace(a, -g.lambda, neg.multiplicity, a_inf, g.negative)) {
      sd.reason_ = "defective";
      return sd;
    }
    sd.groups_.push_back(std::move(g));
    start = end;
  }

  sd.basis_.resize(n, n);
  int off = 0;
  for (const auto& g : sd.groups_) {
    sd.offsets_.push_back(off);
    sd.basis_.middleCols(off, g.dim()) = g.combined();
    off += g.dim();
  }
  Eigen::JacobiSVD<Matrix> svd(sd.basis_);
  const Vector& sv = svd.singularValues();
  if (!(sv[n - 1] > 0.0) || sv[0] / sv[n - 1] > kMaxCondition) {
    sd.reason_ = "defective";
    return sd;
  }
  sd.coordinates_ = sd.basis_.fullPivLu().inverse();
  sd.diagonalizable_ = true;
  return sd;
}

}  // namespace sipkit
