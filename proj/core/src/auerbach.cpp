#include "sipkit/auerbach.hpp"

#include <cmath>

#include <Eigen/LU>
#include <Eigen/QR>

#include "sipkit/sampling.hpp"
#include "sipkit/sip.hpp"

namespace sipkit {
namespace {

constexpr int kMaxSweeps = 64;
constexpr double kSweepTol = 1e-12;
constexpr double kConvergedPairTol = 1e-4;

// Projected gradient ascent of c . e / ||e|| on the unit sphere.
Vector ascend(const NormSpec& spec, const Vector& c, Vector e) {
  const double cn = c.norm();
  double step = 1.0 / cn;
  double value = c.dot(e);
  for (int it = 0; it < 200; ++it) {
    const Vector d = c - value * norm_gradient(spec, e);
    if (d.norm() <= 1e-15 * cn) break;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      const Vector trial = normalized(spec, e + step * d);
      const double tv = c.dot(trial);
      if (tv > value + 1e-4 * step * d.squaredNorm()) {
        e = trial;
        value = tv;
        step *= 2.0;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return e;
}

Vector maximize_column(const NormSpec& spec, const Vector& c, const Vector& current) {
  Vector start = current;
  if (auto closed = dual_maximizer(spec, c)) {
    start = *closed;
  } else if (c.dot(start) < 0.0) {
    start = -start;
  }
  return ascend(spec, c, start);
}

struct RestartResult {
  Matrix basis;
  double det = 0.0;
  double best_det = 0.0;
  int sweeps = 0;
};

RestartResult run_restart(const NormSpec& spec, Rng& rng) {
  const int n = spec.dim();
  Matrix g(n, n);
  for (int c = 0; c < n; ++c) g.col(c) = gaussian_vector(rng, n);
  Matrix e = Eigen::HouseholderQR<Matrix>(g).householderQ();
  for (int c = 0; c < n; ++c) e.col(c) = normalized(spec, e.col(c));
  if (e.determinant() < 0.0) e.col(0) = -e.col(0).eval();

  RestartResult r;
  double det = e.determinant();
  r.best_det = std::abs(det);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double before = det;
    for (int j = 0; j < n; ++j) {
      // Cofactors of column j: det(E) * row j of E^-1.
      const Vector c = det * e.fullPivLu().inverse().row(j).transpose();
      e.col(j) = maximize_column(spec, c, e.col(j));
      det = e.determinant();
      r.best_det = std::max(r.best_det, std::abs(det));
    }
    r.sweeps = sweep + 1;
    if (std::abs(det - before) < kSweepTol * std::abs(det)) break;
  }
  r.basis = std::move(e);
  r.det = std::abs(det);
  return r;
}

}  // namespace

double auerbach_pair_residual(const NormSpec& spec, const Matrix& basis) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < basis.cols(); ++i) {
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
      if (i == j) continue;
      worst = std::max(worst, std::abs(sip_eval(spec, basis.col(i), basis.col(j))));
    }
  }
  return worst;
}

AuerbachBasis auerbach_search(const NormSpec& spec, std::uint64_t seed,
                              int restarts) {
  if (restarts < 1) throw InvalidInput("restarts must be >= 1");
  AuerbachBasis best;
  double best_seen = 0.0;
  for (int k = 0; k < restarts; ++k) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(k));
    RestartResult r = run_restart(spec, rng);
    best_seen = std::max(best_seen, r.best_det);
    if (k == 0 || r.det > best.det_value) {
      best.vectors = std::move(r.basis);
      best.det_value = r.det;
      best.restart = k;
      best.sweeps = r.sweeps;
    }
  }
  best.best_det_seen = best_seen;
  best.pair_residual = auerbach_pair_residual(spec, best.vectors);
  best.converged = best.pair_residual <= kConvergedPairTol;
  return best;
}

}  // namespace sipkit
