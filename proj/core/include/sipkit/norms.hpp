#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sipkit/types.hpp"

namespace sipkit {

enum class NormFamily { lp, weighted_lp, ellipsoid, direct_sum, custom };

std::string_view family_name(NormFamily family);

/// Immutable description of a smooth norm on R^dim.
///
/// Builtin families:
///   lp           ||x|| = (sum |x_i|^p)^(1/p), p > 1
///   weighted_lp  ||x|| = (sum |w_i x_i|^p)^(1/p), p > 1, w_i > 0
///   ellipsoid    ||x|| = sqrt(x^T Q x), Q symmetric positive definite
///   direct_sum   ||(x_1, ..., x_m)|| = sqrt(sum ||x_j||_j^2)
///
/// A custom family wraps a user-provided norm functional. It has no
/// registered gradient, so derivatives are taken by central differences
/// with a one-sided smoothness probe.
///
/// Copies share the underlying data; the spec is safe to use from several
/// threads at once.
class NormSpec {
 public:
  using Functional = std::function<double(const Vector&)>;

  static NormSpec lp(double p, int dim);
  static NormSpec weighted_lp(double p, Vector weights);
  static NormSpec ellipsoid(Matrix q);
  static NormSpec direct_sum(std::vector<NormSpec> parts);
  static NormSpec custom(int dim, Functional norm, std::string name);

  NormFamily family() const;
  int dim() const;

  // Exponent of the lp and weighted_lp families.
  double p() const;
  const Vector& weights() const;
  const Matrix& q() const;
  // Cholesky factor L with Q = L L^T (ellipsoid only).
  const Matrix& q_cholesky() const;
  std::span<const NormSpec> parts() const;
  // Starting coordinate of each part inside a direct_sum vector.
  std::span<const int> part_offsets() const;
  const Functional& functional() const;
  const std::string& name() const;

  /// True when every gradient is available in closed form (no custom
  /// components anywhere in the tree).
  bool analytic() const;

  /// Smallest lp-type exponent in the tree, or nullopt when the spec has
  /// no lp/weighted_lp component.
  std::optional<double> min_exponent() const;

 private:
  struct Data;
  explicit NormSpec(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;
};

double norm_eval(const NormSpec& spec, const Vector& x);

/// Gradient of the norm at x != 0; the unique unit supporting functional
/// at x / ||x||. Satisfies g . x = ||x|| and dual_norm_eval(g) = 1.
Vector norm_gradient(const NormSpec& spec, const Vector& x);

/// Central-difference gradient with step eps^(1/3) * max(1, ||x||_inf).
Vector numeric_gradient(const NormSpec& spec, const Vector& x);

/// Dual norm sup{ g . e : ||e|| <= 1 }. Builtin families only.
double dual_norm_eval(const NormSpec& spec, const Vector& g);

/// The unit vector e maximizing g . e (gradient of the dual norm at g).
/// Returns nullopt when the spec has no closed-form dual.
std::optional<Vector> dual_maximizer(const NormSpec& spec, const Vector& g);

/// Euclidean combination of the parts' norms. Its semi-inner-product is
/// the sum of the parts' semi-inner-products.
NormSpec build_direct_sum(std::vector<NormSpec> parts);

/// Strict JSON parsing of the norm spec file format:
///   {"type":"lp","p":4.0,"dim":2}
///   {"type":"weighted_lp","p":3.0,"weights":[1.0,2.0]}
///   {"type":"ellipsoid","Q":[[1.0,0.0],[0.0,4.0]]}
///   {"type":"direct_sum","parts":[<spec>,<spec>]}
/// Unknown fields are rejected.
NormSpec parse_norm_spec(std::string_view json_text);
std::string norm_spec_to_json(const NormSpec& spec);

/// Operator file format: {"matrix":[[...],[...]]}, row-major.
Matrix parse_operator(std::string_view json_text);

/// Subspace file format: {"basis":[[...],[...]]}; each inner array is one
/// basis vector. Returned matrix holds the vectors as columns.
Matrix parse_subspace(std::string_view json_text, int dim);

/// {"subspaces":[[[...],...],[[...],...]]}
std::vector<Matrix> parse_subspace_list(std::string_view json_text, int dim);

void require_dim(const NormSpec& spec, const Vector& x);

}  // namespace sipkit
