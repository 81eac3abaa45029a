#pragma once

#include <string>
#include <vector>

#include <Eigen/LU>

#include "sipkit/norms.hpp"

namespace sipkit::testing {

struct Case {
  std::string name;
  NormSpec spec;
  Matrix op;
  bool expect_aa;  // known analytically, not computed
};

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

// Signed permutation involutions of R^3: every one is an isometry of any lp
// norm and squares to the identity, hence adjoint abelian.
inline std::vector<std::pair<std::string, Matrix>> signed_involutions3() {
  return {
      {"I", Matrix::Identity(3, 3)},
      {"-I", -Matrix::Identity(3, 3)},
      {"diag(1,-1,1)", mat({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}})},
      {"diag(-1,-1,1)", mat({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}})},
      {"swap12", mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}})},
      {"-swap12", mat({{0, -1, 0}, {-1, 0, 0}, {0, 0, 1}})},
      {"swap13", mat({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})},
      {"swap23,-1", mat({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}})},
  };
}

// Diagonalizable operators on R^3 that are not adjoint abelian for lp,
// p != 2.
inline std::vector<std::pair<std::string, Matrix>> lp_non_examples3() {
  return {
      {"diag(2,1,1)", mat({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}})},
      {"diag(3,2,1)", mat({{3, 0, 0}, {0, 2, 0}, {0, 0, 1}})},
      {"diag(1,0,0)", mat({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}})},
      {"diag(2,-1,1)", mat({{2, 0, 0}, {0, -1, 0}, {0, 0, 1}})},
      {"sym[[2,1,0],[1,2,0],[0,0,1]]", mat({{2, 1, 0}, {1, 2, 0}, {0, 0, 1}})},
      {"upper[[1,1,0],[0,2,0],[0,0,3]]", mat({{1, 1, 0}, {0, 2, 0}, {0, 0, 3}})},
      {"2*swap12+diag(0,0,1)", mat({{0, 2, 0}, {2, 0, 0}, {0, 0, 1}})},
  };
}

inline std::vector<Case> lp_cases(double p) {
  const auto spec = NormSpec::lp(p, 3);
  const std::string tag = "lp(" + std::to_string(static_cast<int>(p)) + ",3) ";
  std::vector<Case> out;
  for (const auto& [name, m] : signed_involutions3()) {
    out.push_back({tag + name, spec, m, true});
    out.push_back({tag + "2.5*" + name, spec, 2.5 * m, true});
  }
  out.push_back({tag + "zero", spec, Matrix::Zero(3, 3), true});
  for (const auto& [name, m] : lp_non_examples3()) {
    out.push_back({tag + name, spec, m, p == 2.0 && m.isApprox(m.transpose())});
  }
  return out;
}

inline std::vector<Case> euclidean_cases() {
  const auto spec = NormSpec::lp(2.0, 3);
  std::vector<Case> out = lp_cases(2.0);
  out.push_back({"lp(2,3) sym distinct",
                 spec, mat({{4, 1, 0.5}, {1, 3, -1}, {0.5, -1, 1}}), true});
  out.push_back({"lp(2,3) sym with kernel",
                 spec, mat({{1, 1, 0}, {1, 1, 0}, {0, 0, -3}}), true});
  out.push_back({"lp(2,3) reflection", spec,
                 Matrix::Identity(3, 3) - 2.0 * vec({1, 2, 2}) *
                                              vec({1, 2, 2}).transpose() / 9.0,
                 true});
  return out;
}

// lp4(2) + lp4(2) with the SIP-splitting combination.
inline NormSpec lp4_pair() {
  return build_direct_sum({NormSpec::lp(4, 2), NormSpec::lp(4, 2)});
}

inline std::vector<Case> direct_sum_cases() {
  const auto spec = lp4_pair();
  const Matrix i2 = Matrix::Identity(2, 2);
  const Matrix sw = mat({{0, 1}, {1, 0}});
  const Matrix flip = mat({{1, 0}, {0, -1}});
  const Matrix nsw = mat({{0, -1}, {-1, 0}});
  const std::string tag = "lp4+lp4 ";
  std::vector<Case> out = {
      {tag + "2I+1I", spec, block_diag(2 * i2, i2), true},
      {tag + "2swap+1I", spec, block_diag(2 * sw, i2), true},
      {tag + "2swap+2I", spec, block_diag(2 * sw, 2 * i2), true},
      {tag + "3flip+0.5nswap", spec, block_diag(3 * flip, 0.5 * nsw), true},
      {tag + "1I+0", spec, block_diag(i2, Matrix::Zero(2, 2)), true},
      {tag + "-1I+2swap", spec, block_diag(-i2, 2 * sw), true},
      {tag + "swap blocks", spec,
       mat({{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}}), true},
      {tag + "diag(2,1,1,1)", spec, block_diag(mat({{2, 0}, {0, 1}}), i2), false},
      {tag + "diag(2,2,1,3)", spec, block_diag(2 * i2, mat({{1, 0}, {0, 3}})), false},
      {tag + "2I+1diag(1,2)", spec, block_diag(2 * i2, mat({{1, 0}, {0, 2}})), false},
  };
  return out;
}

inline std::vector<Case> weighted_cases() {
  const auto spec = NormSpec::weighted_lp(4.0, vec({1.0, 2.0, 3.0}));
  const std::string tag = "wlp4(1,2,3) ";
  return {
      {tag + "diag(1,-1,1)", spec, mat({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}), true},
      {tag + "-2I", spec, -2.0 * Matrix::Identity(3, 3), true},
      {tag + "swap12", spec, mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}), false},
      // W^-1 P W is an isometry and an involution.
      {tag + "rescaled swap12", spec, mat({{0, 2, 0}, {0.5, 0, 0}, {0, 0, 1}}), true},
      {tag + "diag(2,1,1)", spec, mat({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}), false},
  };
}

// For x^T Q y the adjoint abelian operators are the Q-self-adjoint ones,
// Q^-1 S with S symmetric.
inline std::vector<Case> ellipsoid_cases() {
  const Matrix q = mat({{2, 0.5, 0}, {0.5, 1, 0.2}, {0, 0.2, 3}});
  const auto spec = NormSpec::ellipsoid(q);
  const Matrix qinv = q.inverse();
  const Matrix s1 = mat({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  const Matrix s2 = mat({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  const std::string tag = "ellipsoid ";
  return {
      {tag + "Q^-1 diag(1,2,3)", spec, qinv * s1, true},
      {tag + "Q^-1 S2", spec, qinv * s2, true},
      {tag + "I", spec, Matrix::Identity(3, 3), true},
      {tag + "diag(1,2,3)", spec, s1, false},
      {tag + "S2", spec, s2, false},
  };
}

/// The full operator x norm corpus; every norm has p >= 2.
inline std::vector<Case> theorem_corpus() {
  std::vector<Case> all;
  for (double p : {3.0, 4.0}) {
    auto c = lp_cases(p);
    all.insert(all.end(), c.begin(), c.end());
  }
  for (auto* part : {&euclidean_cases, &direct_sum_cases, &weighted_cases,
                     &ellipsoid_cases}) {
    auto c = (*part)();
    all.insert(all.end(), c.begin(), c.end());
  }
  return all;
}

}  // namespace sipkit::testing
