#include "sipkit/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace sipkit {

struct NormSpec::Data {
  NormFamily family = NormFamily::lp;
  int dim = 0;
  double p = 2.0;
  Vector weights;
  Matrix q;
  Matrix q_chol;
  std::vector<NormSpec> parts;
  std::vector<int> offsets;
  Functional functional;
  std::string name;
  bool analytic = true;
};

namespace {

void require_exponent(double p) {
  if (!std::isfinite(p) || !(p > 1.0)) {
    throw InvalidInput("exponent p must be finite and > 1 (got " +
                       std::to_string(p) + ")");
  }
}

void require_finite(const Vector& x, const char* what) {
  if (!x.allFinite()) {
    throw InvalidInput(std::string("non-finite entries in ") + what);
  }
}

// (sum |y_i|^p)^(1/p) without overflow for large entries.
double lp_value(const Vector& y, double p) {
  const double scale = y.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    s += std::pow(std::abs(y[i]) / scale, p);
  }
  return scale * std::pow(s, 1.0 / p);
}

// Gradient of the lp norm at y != 0: sign(y_i) (|y_i| / ||y||_p)^(p-1).
Vector lp_gradient(const Vector& y, double p) {
  const double n = lp_value(y, p);
  Vector g(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double a = std::abs(y[i]) / n;
    g[i] = (y[i] > 0 ? 1.0 : (y[i] < 0 ? -1.0 : 0.0)) * std::pow(a, p - 1.0);
  }
  return g;
}

double conjugate(double p) { return p / (p - 1.0); }

Vector slice(const NormSpec& spec, const Vector& x, std::size_t part) {
  const auto offsets = spec.part_offsets();
  return x.segment(offsets[part], spec.parts()[part].dim());
}

double step_for(const Vector& x) {
  const double inf = x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  return std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, inf);
}

Vector custom_gradient(const NormSpec& spec, const Vector& x) {
  const auto& f = spec.functional();
  const double h = step_for(x);
  const double fx = f(x);
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = f(probe);
    probe[i] = x[i] - h;
    const double fm = f(probe);
    probe[i] = x[i];
    const double central = (fp - fm) / (2.0 * h);
    const double forward = (fp - fx) / h;
    const double backward = (fx - fm) / h;
    if (std::abs(forward - backward) > 1e-3 * (1.0 + std::abs(central))) {
      throw NumericalFailure("smoothness probe failed for norm '" +
                             spec.name() + "' at coordinate " +
                             std::to_string(i) +
                             ": one-sided differences disagree");
    }
    g[i] = central;
  }
  return g;
}

}  // namespace

std::string_view family_name(NormFamily family) {
  switch (family) {
    case NormFamily::lp: return "lp";
    case NormFamily::weighted_lp: return "weighted_lp";
    case NormFamily::ellipsoid: return "ellipsoid";
    case NormFamily::direct_sum: return "direct_sum";
    case NormFamily::custom: return "custom";
  }
  return "unknown";
}

NormSpec::NormSpec(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

NormSpec NormSpec::lp(double p, int dim) {
  require_exponent(p);
  if (dim <= 0) throw InvalidInput("dim must be a positive integer");
  auto d = std::make_shared<Data>();
  d->family = NormFamily::lp;
  d->dim = dim;
  d->p = p;
  return NormSpec(std::move(d));
}

NormSpec NormSpec::weighted_lp(double p, Vector weights) {
  require_exponent(p);
  if (weights.size() == 0) throw InvalidInput("weights must be nonempty");
  require_finite(weights, "weights");
  if ((weights.array() <= 0.0).any()) {
    throw InvalidInput("weights must be strictly positive");
  }
  auto d = std::make_shared<Data>();
  d->family = NormFamily::weighted_lp;
  d->dim = static_cast<int>(weights.size());
  d->p = p;
  d->weights = std::move(weights);
  return NormSpec(std::move(d));
}

NormSpec NormSpec::ellipsoid(Matrix q) {
  if (q.rows() == 0 || q.rows() != q.cols()) {
    throw InvalidInput("ellipsoid Q must be a nonempty square matrix");
  }
  if (!q.allFinite()) throw InvalidInput("non-finite entries in Q");
  const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidInput("ellipsoid Q must be symmetric");
  }
  q = 0.5 * (q + q.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(q, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > 0.0)) {
    throw InvalidInput("ellipsoid Q must be positive definite");
  }
  Eigen::LLT<Matrix> llt(q);
  if (llt.info() != Eigen::Success) {
    throw InvalidInput("ellipsoid Q must be positive definite");
  }
  auto d = std::make_shared<Data>();
  d->family = NormFamily::ellipsoid;
  d->dim = static_cast<int>(q.rows());
  d->q_chol = llt.matrixL();
  d->q = std::move(q);
  return NormSpec(std::move(d));
}

NormSpec NormSpec::direct_sum(std::vector<NormSpec> parts) {
  if (parts.empty()) throw InvalidInput("direct_sum requires at least one part");
  auto d = std::make_shared<Data>();
  d->family = NormFamily::direct_sum;
  int offset = 0;
  for (const auto& part : parts) {
    d->offsets.push_back(offset);
    offset += part.dim();
    d->analytic = d->analytic && part.analytic();
  }
  d->dim = offset;
  d->parts = std::move(parts);
  return NormSpec(std::move(d));
}

NormSpec NormSpec::custom(int dim, Functional norm, std::string name) {
  if (dim <= 0) throw InvalidInput("dim must be a positive integer");
  if (!norm) throw InvalidInput("custom norm requires a functional");
  auto d = std::make_shared<Data>();
  d->family = NormFamily::custom;
  d->dim = dim;
  d->functional = std::move(norm);
  d->name = std::move(name);
  d->analytic = false;
  return NormSpec(std::move(d));
}

NormFamily NormSpec::family() const { return data_->family; }
int NormSpec::dim() const { return data_->dim; }
double NormSpec::p() const { return data_->p; }
const Vector& NormSpec::weights() const { return data_->weights; }
const Matrix& NormSpec::q() const { return data_->q; }
const Matrix& NormSpec::q_cholesky() const { return data_->q_chol; }
std::span<const NormSpec> NormSpec::parts() const { return data_->parts; }
std::span<const int> NormSpec::part_offsets() const { return data_->offsets; }
const NormSpec::Functional& NormSpec::functional() const {
  return data_->functional;
}
const std::string& NormSpec::name() const { return data_->name; }
bool NormSpec::analytic() const { return data_->analytic; }

std::optional<double> NormSpec::min_exponent() const {
  switch (family()) {
    case NormFamily::lp:
    case NormFamily::weighted_lp:
      return p();
    case NormFamily::direct_sum: {
      std::optional<double> best;
      for (const auto& part : parts()) {
        if (auto e = part.min_exponent(); e && (!best || *e < *best)) best = e;
      }
      return best;
    }
    default:
      return std::nullopt;
  }
}

void require_dim(const NormSpec& spec, const Vector& x) {
  if (x.size() != spec.dim()) {
    throw InvalidInput("dimension mismatch: expected " +
                       std::to_string(spec.dim()) + ", got " +
                       std::to_string(x.size()));
  }
}

double norm_eval(const NormSpec& spec, const Vector& x) {
  require_dim(spec, x);
  require_finite(x, "vector");
  switch (spec.family()) {
    case NormFamily::lp:
      return lp_value(x, spec.p());
    case NormFamily::weighted_lp:
      return lp_value(spec.weights().cwiseProduct(x), spec.p());
    case NormFamily::ellipsoid:
      return (spec.q_cholesky().transpose() * x).norm();
    case NormFamily::direct_sum: {
      Vector norms(static_cast<Eigen::Index>(spec.parts().size()));
      for (std::size_t j = 0; j < spec.parts().size(); ++j) {
        norms[static_cast<Eigen::Index>(j)] =
            norm_eval(spec.parts()[j], slice(spec, x, j));
      }
      return norms.norm();
    }
    case NormFamily::custom:
      return spec.functional()(x);
  }
  return 0.0;
}

Vector norm_gradient(const NormSpec& spec, const Vector& x) {
  require_dim(spec, x);
  require_finite(x, "vector");
  if (x.isZero(0.0)) {
    throw InvalidInput("norm gradient is undefined at the origin");
  }
  switch (spec.family()) {
    case NormFamily::lp:
      return lp_gradient(x, spec.p());
    case NormFamily::weighted_lp: {
      const Vector& w = spec.weights();
      return w.cwiseProduct(lp_gradient(w.cwiseProduct(x), spec.p()));
    }
    case NormFamily::ellipsoid:
      return spec.q() * x / norm_eval(spec, x);
    case NormFamily::direct_sum: {
      const double total = norm_eval(spec, x);
      Vector g = Vector::Zero(x.size());
      for (std::size_t j = 0; j < spec.parts().size(); ++j) {
        const Vector xj = slice(spec, x, j);
        if (xj.isZero(0.0)) continue;
        const auto& part = spec.parts()[j];
        g.segment(spec.part_offsets()[j], part.dim()) =
            (norm_eval(part, xj) / total) * norm_gradient(part, xj);
      }
      return g;
    }
    case NormFamily::custom:
      return custom_gradient(spec, x);
  }
  return {};
}

Vector numeric_gradient(const NormSpec& spec, const Vector& x) {
  require_dim(spec, x);
  const double h = step_for(x);
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = norm_eval(spec, probe);
    probe[i] = x[i] - h;
    const double fm = norm_eval(spec, probe);
    probe[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

double dual_norm_eval(const NormSpec& spec, const Vector& g) {
  require_dim(spec, g);
  switch (spec.family()) {
    case NormFamily::lp:
      return lp_value(g, conjugate(spec.p()));
    case NormFamily::weighted_lp:
      return lp_value(g.cwiseQuotient(spec.weights()), conjugate(spec.p()));
    case NormFamily::ellipsoid:
      return spec.q_cholesky().triangularView<Eigen::Lower>().solve(g).norm();
    case NormFamily::direct_sum: {
      double s = 0.0;
      for (std::size_t j = 0; j < spec.parts().size(); ++j) {
        const double d = dual_norm_eval(spec.parts()[j], slice(spec, g, j));
        s += d * d;
      }
      return std::sqrt(s);
    }
    case NormFamily::custom:
      break;
  }
  throw InvalidInput("dual norm is not available for custom norm '" +
                     spec.name() + "'");
}

std::optional<Vector> dual_maximizer(const NormSpec& spec, const Vector& g) {
  require_dim(spec, g);
  if (g.isZero(0.0)) return std::nullopt;
  switch (spec.family()) {
    case NormFamily::lp:
      return lp_gradient(g, conjugate(spec.p()));
    case NormFamily::weighted_lp: {
      const Vector h = g.cwiseQuotient(spec.weights());
      return Vector(lp_gradient(h, conjugate(spec.p()))
                        .cwiseQuotient(spec.weights()));
    }
    case NormFamily::ellipsoid: {
      const Vector qinv_g = spec.q_cholesky().transpose()
          .triangularView<Eigen::Upper>()
          .solve(spec.q_cholesky().triangularView<Eigen::Lower>().solve(g));
      return Vector(qinv_g / dual_norm_eval(spec, g));
    }
    case NormFamily::direct_sum: {
      if (!spec.analytic()) return std::nullopt;
      const double total = dual_norm_eval(spec, g);
      Vector e = Vector::Zero(g.size());
      for (std::size_t j = 0; j < spec.parts().size(); ++j) {
        const Vector gj = slice(spec, g, j);
        const auto& part = spec.parts()[j];
        auto ej = dual_maximizer(part, gj);
        if (!ej) continue;
        e.segment(spec.part_offsets()[j], part.dim()) =
            (dual_norm_eval(part, gj) / total) * *ej;
      }
      return e;
    }
    case NormFamily::custom:
      break;
  }
  return std::nullopt;
}

NormSpec build_direct_sum(std::vector<NormSpec> parts) {
  return NormSpec::direct_sum(std::move(parts));
}

}  // namespace sipkit
