#include "sipkit/sip.hpp"

#include <algorithm>
#include <cmath>

#include "sipkit/sampling.hpp"

namespace sipkit {
namespace {

double sign(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

double lp_sip(const Vector& x, const Vector& y, double p, double ynorm) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    s += x[i] * sign(y[i]) * std::pow(std::abs(y[i]), p - 1.0);
  }
  return std::pow(ynorm, 2.0 - p) * s;
}

}  // namespace

double sip_eval_via_gradient(const NormSpec& spec, const Vector& x,
                             const Vector& y) {
  require_dim(spec, x);
  require_dim(spec, y);
  if (y.isZero(0.0)) return 0.0;
  return norm_eval(spec, y) * norm_gradient(spec, y).dot(x);
}

double sip_eval(const NormSpec& spec, const Vector& x, const Vector& y) {
  require_dim(spec, x);
  require_dim(spec, y);
  if (!x.allFinite() || !y.allFinite()) {
    throw InvalidInput("non-finite entries in vector");
  }
  if (y.isZero(0.0)) return 0.0;
  switch (spec.family()) {
    case NormFamily::lp:
      return lp_sip(x, y, spec.p(), norm_eval(spec, y));
    case NormFamily::weighted_lp: {
      const Vector& w = spec.weights();
      return lp_sip(w.cwiseProduct(x), w.cwiseProduct(y), spec.p(),
                    norm_eval(spec, y));
    }
    case NormFamily::ellipsoid:
      return x.dot(spec.q() * y);
    case NormFamily::direct_sum: {
      double s = 0.0;
      const auto offsets = spec.part_offsets();
      for (std::size_t j = 0; j < spec.parts().size(); ++j) {
        const auto& part = spec.parts()[j];
        s += sip_eval(part, x.segment(offsets[j], part.dim()),
                      y.segment(offsets[j], part.dim()));
      }
      return s;
    }
    case NormFamily::custom:
      return sip_eval_via_gradient(spec, x, y);
  }
  return 0.0;
}

double SipAxiomReport::max_residual() const {
  return std::max({linearity, positivity, schwartz, second_homogeneity,
                   norm_identity});
}

SipAxiomReport sip_axiom_report(const NormSpec& spec, int sample_count,
                                std::uint64_t seed) {
  if (sample_count < 1) throw InvalidInput("sample_count must be >= 1");
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_real_distribution<double> log_mag(-2.0, 2.0);
  const Matrix full = Matrix::Identity(spec.dim(), spec.dim());

  auto draw = [&] {
    return Vector(random_unit_in_span(spec, full, rng) *
                  std::pow(10.0, log_mag(rng)));
  };

  SipAxiomReport r;
  r.samples = sample_count;
  for (int s = 0; s < sample_count; ++s) {
    const Vector x1 = draw();
    const Vector x2 = draw();
    const Vector y = draw();
    const double a = coef(rng);
    const double b = coef(rng);
    const double nx1 = norm_eval(spec, x1);
    const double nx2 = norm_eval(spec, x2);
    const double ny = norm_eval(spec, y);

    const double lin = sip_eval(spec, a * x1 + b * x2, y) -
                       a * sip_eval(spec, x1, y) - b * sip_eval(spec, x2, y);
    r.linearity = std::max(
        r.linearity, std::abs(lin) / ((std::abs(a) * nx1 + std::abs(b) * nx2) * ny));

    const double xx = sip_eval(spec, x1, x1);
    r.positivity = std::max(r.positivity, std::max(0.0, -xx) / (nx1 * nx1));
    r.norm_identity =
        std::max(r.norm_identity, std::abs(xx - nx1 * nx1) / (nx1 * nx1));

    const double xy = sip_eval(spec, x1, y);
    const double yy = sip_eval(spec, y, y);
    r.schwartz = std::max(r.schwartz,
                          std::max(0.0, xy * xy - xx * yy) / (nx1 * nx1 * ny * ny));

    const double hom = sip_eval(spec, x1, a * y) - a * xy;
    r.second_homogeneity = std::max(
        r.second_homogeneity, std::abs(hom) / ((1.0 + std::abs(a)) * nx1 * ny));
  }
  return r;
}

}  // namespace sipkit
