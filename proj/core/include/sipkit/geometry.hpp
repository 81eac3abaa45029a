#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "sipkit/norms.hpp"

namespace sipkit {

/// Two independent vectors spanning a plane, each of unit ambient norm.
class PlaneFrame {
 public:
  /// Normalizes u and v; throws InvalidInput if they are dependent.
  static PlaneFrame make(const NormSpec& spec, const Vector& u, const Vector& v);

  const Vector& u() const { return u_; }
  const Vector& v() const { return v_; }

 private:
  PlaneFrame(Vector u, Vector v) : u_(std::move(u)), v_(std::move(v)) {}
  Vector u_;
  Vector v_;
};

/// The point r (cos t u + sin t v) of the unit sphere in the frame's plane.
Vector section_point(const NormSpec& spec, const PlaneFrame& frame, double theta);

struct EllipseFit {
  double residual = 1.0;  // max |s^T M s - 1| over the section points
  Eigen::Matrix2d form = Eigen::Matrix2d::Zero();
  bool positive_definite = false;
};

/// Least-squares fit of a centered conic s^T M s = 1 to `grid` equally
/// spaced section points, in the frame's plane coordinates. A fitted M that
/// is not positive definite yields residual 1.
EllipseFit fit_section_ellipse(const NormSpec& spec, const PlaneFrame& frame,
                               int grid);
double ellipse_fit_residual(const NormSpec& spec, const PlaneFrame& frame,
                            int grid);

/// Height of the upper half of the section over the u-axis: the y >= 0 with
/// ||x u + y v|| = 1, for |x| < 1.
double section_height(const NormSpec& spec, const PlaneFrame& frame, double x);

struct OdeResidual {
  double residual = 0.0;  // |f'(x0) + x0 f(x0) / (1 - x0^2)|
  double f = 0.0;
  double f_prime = 0.0;
  double rhs = 0.0;       // -x0 f(x0) / (1 - x0^2)
  double premise_gap = 0.0;  // max(|[u,v]|, |[v,u]|)
  bool premise_holds = false;  // premise_gap <= 1e-6
};

/// Residual of f'(x) = -x f(x) / (1 - x^2) for the section graph f, the
/// equation satisfied by a section whose frame is an Auerbach pair in which
/// [u, a u + b v] = a. Its solution with f(0) = 1 is the circle
/// sqrt(1 - x^2). The residual is computed even when the premise fails.
OdeResidual ode_residual(const NormSpec& spec, const PlaneFrame& frame, double x0);

struct LipschitzEstimate {
  Vector base_x;
  double kappa_hat = 0.0;  // lower bound on any valid Lipschitz constant
  Vector witness_y;
  Vector witness_z;
  int mesh_size = 0;
  std::vector<double> level_gaps;    // angular gap per refinement level
  std::vector<double> level_kappas;  // best quotient per level

  /// Ratio of the last two level estimates (1 when fewer than two levels).
  double stability_ratio() const;
};

/// Lower bound for the Lipschitz constant of y -> [x, y] on the unit
/// sphere. In every coordinate plane, pairs of sphere points centred at
/// `mesh` equally spaced angles are compared at angular gaps that shrink by
/// a factor 100 per refinement level, starting from the mesh spacing.
LipschitzEstimate lipschitz_scan(const NormSpec& spec, const Vector& x, int mesh,
                                 int refine);

struct ContinuityProbe {
  struct Entry {
    double distance = 0.0;  // ||y - z||
    double gap = 0.0;       // |[x,y] - [x,z]|
  };
  std::vector<Entry> entries;
  double final_gap = 0.0;
  double final_distance = 0.0;
  bool gap_vanishes = false;  // final_gap <= gap_tol
  int monotone_from = 0;      // gaps are nonincreasing from this index on
};

ContinuityProbe uniform_continuity_probe(
    const NormSpec& spec, const Vector& x,
    const std::vector<std::pair<Vector, Vector>>& pairs, double gap_tol = 1e-6);

}  // namespace sipkit
