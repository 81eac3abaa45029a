#include "sipkit/geometry.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>
#include <Eigen/QR>

#include "sipkit/sampling.hpp"
#include "sipkit/sip.hpp"

namespace sipkit {
namespace {

constexpr double kPremiseTol = 1e-6;
constexpr double kDerivativeStep = 1e-5;
constexpr double kLevelShrink = 100.0;

}  // namespace

PlaneFrame PlaneFrame::make(const NormSpec& spec, const Vector& u,
                            const Vector& v) {
  require_dim(spec, u);
  require_dim(spec, v);
  Matrix m(spec.dim(), 2);
  m << u, v;
  if (numerical_rank(m) != 2) {
    throw InvalidInput("plane frame vectors must be linearly independent");
  }
  return PlaneFrame(normalized(spec, u), normalized(spec, v));
}

Vector section_point(const NormSpec& spec, const PlaneFrame& frame,
                     double theta) {
  const Vector d = std::cos(theta) * frame.u() + std::sin(theta) * frame.v();
  const double nd = norm_eval(spec, d);
  double r = 1.0 / nd;
  // One Newton step on ||r d|| - 1; the map is linear in r.
  r -= (norm_eval(spec, r * d) - 1.0) / nd;
  return r * d;
}

EllipseFit fit_section_ellipse(const NormSpec& spec, const PlaneFrame& frame,
                               int grid) {
  if (grid < 8) throw InvalidInput("grid must be >= 8");
  Matrix design(grid, 3);
  Vector ones = Vector::Ones(grid);
  Matrix plane(spec.dim(), 2);
  plane << frame.u(), frame.v();
  const Eigen::ColPivHouseholderQR<Matrix> coords(plane);
  std::vector<Eigen::Vector2d> pts;
  for (int k = 0; k < grid; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / grid;
    const Eigen::Vector2d s = coords.solve(section_point(spec, frame, theta));
    pts.push_back(s);
    design.row(k) << s.x() * s.x(), 2.0 * s.x() * s.y(), s.y() * s.y();
  }
  const Eigen::Vector3d m = design.colPivHouseholderQr().solve(ones);
  EllipseFit fit;
  fit.form << m[0], m[1], m[1], m[2];
  fit.positive_definite = m[0] > 0.0 && fit.form.determinant() > 0.0;
  if (!fit.positive_definite) {
    fit.residual = 1.0;
    return fit;
  }
  double worst = 0.0;
  for (const auto& s : pts) {
    worst = std::max(worst, std::abs(s.dot(fit.form * s) - 1.0));
  }
  fit.residual = worst;
  return fit;
}

double ellipse_fit_residual(const NormSpec& spec, const PlaneFrame& frame,
                            int grid) {
  return fit_section_ellipse(spec, frame, grid).residual;
}

double section_height(const NormSpec& spec, const PlaneFrame& frame, double x) {
  if (!(std::abs(x) < 1.0)) throw InvalidInput("section abscissa must satisfy |x| < 1");
  auto h = [&](double y) { return norm_eval(spec, x * frame.u() + y * frame.v()) - 1.0; };
  double lo = 0.0;
  double hi = 1.0;
  while (h(hi) <= 0.0) hi *= 2.0;
  double y = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double hy = h(y);
    if (hy == 0.0) return y;
    (hy < 0.0 ? lo : hi) = y;
    const Vector point = x * frame.u() + y * frame.v();
    const double slope = norm_gradient(spec, point).dot(frame.v());
    double next = slope > 0.0 ? y - hy / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - y) <= 1e-16 * std::max(1.0, y) || hi - lo <= 1e-16) {
      return next;
    }
    y = next;
  }
  return y;
}

OdeResidual ode_residual(const NormSpec& spec, const PlaneFrame& frame,
                         double x0) {
  if (!(std::abs(x0) < 1.0 - 1e-6)) {
    throw InvalidInput("|x0| must be below 1 - 1e-6 (singular denominator)");
  }
  OdeResidual r;
  r.premise_gap = std::max(std::abs(sip_eval(spec, frame.u(), frame.v())),
                           std::abs(sip_eval(spec, frame.v(), frame.u())));
  r.premise_holds = r.premise_gap <= kPremiseTol;
  const double h = std::min(kDerivativeStep, 0.5 * (1.0 - std::abs(x0)));
  r.f = section_height(spec, frame, x0);
  r.f_prime = (section_height(spec, frame, x0 + h) -
               section_height(spec, frame, x0 - h)) / (2.0 * h);
  r.rhs = -x0 * r.f / (1.0 - x0 * x0);
  r.residual = std::abs(r.f_prime - r.rhs);
  return r;
}

double LipschitzEstimate::stability_ratio() const {
  const auto n = level_kappas.size();
  if (n < 2 || level_kappas[n - 2] == 0.0) return 1.0;
  return level_kappas[n - 1] / level_kappas[n - 2];
}

LipschitzEstimate lipschitz_scan(const NormSpec& spec, const Vector& x, int mesh,
                                 int refine) {
  require_dim(spec, x);
  if (mesh < 8) throw InvalidInput("mesh must be >= 8");
  if (refine < 1) throw InvalidInput("refine must be >= 1");
  if (std::abs(norm_eval(spec, x) - 1.0) > 1e-10) {
    throw InvalidInput("base point must have unit norm");
  }
  const int n = spec.dim();
  LipschitzEstimate est;
  est.base_x = x;
  est.mesh_size = mesh;
  est.witness_y = x;
  est.witness_z = x;

  auto on_sphere = [&](int a, int b, double t) {
    Vector d = Vector::Zero(n);
    d[a] = std::cos(t);
    d[b] = std::sin(t);
    return normalized(spec, d);
  };

  double gap = 2.0 * std::numbers::pi / mesh;
  for (int level = 0; level < refine; ++level, gap /= kLevelShrink) {
    double best = 0.0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        for (int m = 0; m < mesh; ++m) {
          const double theta = 2.0 * std::numbers::pi * m / mesh;
          const Vector y = on_sphere(a, b, theta - 0.5 * gap);
          const Vector z = on_sphere(a, b, theta + 0.5 * gap);
          const double dist = norm_eval(spec, y - z);
          if (!(dist > 0.0)) continue;
          const double q = std::abs(sip_eval(spec, x, y) - sip_eval(spec, x, z)) / dist;
          best = std::max(best, q);
          if (q > est.kappa_hat) {
            est.kappa_hat = q;
            est.witness_y = y;
            est.witness_z = z;
          }
        }
      }
    }
    est.level_gaps.push_back(gap);
    est.level_kappas.push_back(best);
  }
  return est;
}

ContinuityProbe uniform_continuity_probe(
    const NormSpec& spec, const Vector& x,
    const std::vector<std::pair<Vector, Vector>>& pairs, double gap_tol) {
  require_dim(spec, x);
  if (pairs.empty()) throw InvalidInput("continuity probe needs at least one pair");
  ContinuityProbe probe;
  for (const auto& [y, z] : pairs) {
    require_dim(spec, y);
    require_dim(spec, z);
    probe.entries.push_back(
        {norm_eval(spec, y - z), std::abs(sip_eval(spec, x, y) - sip_eval(spec, x, z))});
  }
  probe.final_gap = probe.entries.back().gap;
  probe.final_distance = probe.entries.back().distance;
  probe.gap_vanishes = probe.final_gap <= gap_tol;
  int from = static_cast<int>(probe.entries.size()) - 1;
  while (from > 0 && probe.entries[from - 1].gap >= probe.entries[from].gap) --from;
  probe.monotone_from = from;
  return probe;
}

}  // namespace sipkit
