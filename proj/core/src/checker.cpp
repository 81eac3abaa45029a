#include "sipkit/checker.hpp"

#include <algorithm>
#include <cmath>

#include "sipkit/sampling.hpp"
#include "sipkit/sip.hpp"

namespace sipkit {
namespace {

void require_operator(const NormSpec& spec, const Matrix& a) {
  if (a.rows() != spec.dim() || a.cols() != spec.dim()) {
    throw InvalidInput("dimension mismatch: operator is " +
                       std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                       ", norm has dim " + std::to_string(spec.dim()));
  }
  if (!a.allFinite()) throw InvalidInput("operator has non-finite entries");
}

void require_basis(const NormSpec& spec, const Matrix& basis, const char* what) {
  if (basis.cols() == 0) return;
  if (basis.rows() != spec.dim()) {
    throw InvalidInput(std::string("dimension mismatch in ") + what);
  }
  if (numerical_rank(basis) != basis.cols()) {
    throw InvalidInput(std::string("degenerate (rank-deficient) basis: ") + what);
  }
}

struct Budget {
  std::size_t basis = 0;
  std::size_t random = 0;
};

Budget split(const Sampler& s, std::size_t available) {
  if (s.count < 1) throw InvalidInput("sample count must be >= 1");
  const auto count = static_cast<std::size_t>(s.count);
  switch (s.strategy) {
    case SampleStrategy::sphere_random:
      return {0, count};
    case SampleStrategy::basis_pairs:
      return {std::min(count, available), 0};
    case SampleStrategy::mixed: {
      const std::size_t b = std::min(count / 2, available);
      return {b, count - b};
    }
  }
  return {};
}

// Sub-checks of one run draw from distinct streams of the same seed.
enum Stream : std::uint64_t {
  kAdjoint = 1,
  kTransversal = 2,
  kDirectSum = 3,
  kIsometry = 4,
};

Rng stream_rng(const Sampler& s, std::uint64_t stream, std::uint64_t salt = 0) {
  return make_rng(s.seed, stream * 1000003ULL + salt);
}

double aa_residual_with_basis(const NormSpec& spec, const Matrix& a,
                              const Matrix& adapted, const Sampler& s) {
  const Matrix full = Matrix::Identity(spec.dim(), spec.dim());
  const auto cand = adapted_unit_vectors(spec, adapted);
  const Budget b = split(s, cand.size() * cand.size());
  Rng rng = stream_rng(s, kAdjoint);

  double worst_gap = 0.0;
  double op_norm = 0.0;
  auto visit = [&](const Vector& x, const Vector& y) {
    op_norm = std::max({op_norm, norm_eval(spec, a * x), norm_eval(spec, a * y)});
    worst_gap = std::max(worst_gap, adjoint_abelian_gap(spec, a, x, y));
  };
  for (std::size_t t = 0; t < b.basis; ++t) {
    visit(cand[t / cand.size()], cand[t % cand.size()]);
  }
  for (std::size_t t = 0; t < b.random; ++t) {
    const Vector x = random_unit_in_span(spec, full, rng);
    const Vector y = random_unit_in_span(spec, full, rng);
    visit(x, y);
  }
  return op_norm > 0.0 ? worst_gap / op_norm : 0.0;
}

double transversal_impl(const NormSpec& spec, const Matrix& u_basis,
                        const Matrix& v_basis, const Sampler& s,
                        std::uint64_t salt) {
  if (u_basis.cols() == 0 || v_basis.cols() == 0) return 0.0;
  const auto cu = adapted_unit_vectors(spec, u_basis);
  const auto cv = adapted_unit_vectors(spec, v_basis);
  const Budget b = split(s, cu.size() * cv.size());
  Rng rng = stream_rng(s, kTransversal, salt);

  double worst = 0.0;
  auto visit = [&](const Vector& u, const Vector& v) {
    worst = std::max({worst, std::abs(sip_eval(spec, u, v)),
                      std::abs(sip_eval(spec, v, u))});
  };
  for (std::size_t t = 0; t < b.basis; ++t) {
    visit(cu[t / cv.size()], cv[t % cv.size()]);
  }
  for (std::size_t t = 0; t < b.random; ++t) {
    const Vector u = random_unit_in_span(spec, u_basis, rng);
    const Vector v = random_unit_in_span(spec, v_basis, rng);
    visit(u, v);
  }
  return worst;
}

double isometry_impl(const NormSpec& spec, const Matrix& a, const Matrix& span,
                     const Sampler& s, std::uint64_t salt) {
  if (span.cols() == 0) return 0.0;
  const auto cand = adapted_unit_vectors(spec, span);
  const Budget b = split(s, cand.size());
  Rng rng = stream_rng(s, kIsometry, salt);
  double worst = 0.0;
  for (std::size_t t = 0; t < b.basis; ++t) {
    worst = std::max(worst, std::abs(norm_eval(spec, a * cand[t]) - 1.0));
  }
  for (std::size_t t = 0; t < b.random; ++t) {
    const Vector x = random_unit_in_span(spec, span, rng);
    worst = std::max(worst, std::abs(norm_eval(spec, a * x) - 1.0));
  }
  return worst;
}

// Largest ||Ax|| over sampled unit x in the span.
double restricted_norm(const NormSpec& spec, const Matrix& a, const Matrix& span,
                       const Sampler& s, std::uint64_t salt) {
  if (span.cols() == 0) return 0.0;
  const auto cand = adapted_unit_vectors(spec, span);
  const Budget b = split(s, cand.size());
  Rng rng = stream_rng(s, kIsometry, salt);
  double worst = 0.0;
  for (std::size_t t = 0; t < b.basis; ++t) {
    worst = std::max(worst, norm_eval(spec, a * cand[t]));
  }
  for (std::size_t t = 0; t < b.random; ++t) {
    worst = std::max(worst,
                     norm_eval(spec, a * random_unit_in_span(spec, span, rng)));
  }
  return worst;
}

Sampler derived(const Sampler& s, std::uint64_t k) {
  Sampler d = s;
  d.seed = s.seed + 0x9E3779B97F4A7C15ULL * k;
  return d;
}

}  // namespace

std::string_view strategy_name(SampleStrategy s) {
  switch (s) {
    case SampleStrategy::sphere_random: return "sphere_random";
    case SampleStrategy::basis_pairs: return "basis_pairs";
    case SampleStrategy::mixed: return "mixed";
  }
  return "mixed";
}

SampleStrategy parse_strategy(std::string_view name) {
  if (name == "sphere_random") return SampleStrategy::sphere_random;
  if (name == "basis_pairs") return SampleStrategy::basis_pairs;
  if (name == "mixed") return SampleStrategy::mixed;
  throw InvalidInput("unknown sampling strategy \"" + std::string(name) + "\"");
}

double adjoint_abelian_gap(const NormSpec& spec, const Matrix& a,
                           const Vector& x, const Vector& y) {
  require_operator(spec, a);
  return std::abs(sip_eval(spec, a * x, y) - sip_eval(spec, x, a * y));
}

double direct_sum_defect(const NormSpec& spec, std::span<const Vector> xs,
                         std::span<const Vector> ys) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw InvalidInput("direct_sum_defect needs matching nonempty lists");
  }
  Vector x = Vector::Zero(spec.dim());
  Vector y = Vector::Zero(spec.dim());
  double parts = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    require_dim(spec, xs[j]);
    require_dim(spec, ys[j]);
    x += xs[j];
    y += ys[j];
    parts += sip_eval(spec, xs[j], ys[j]);
  }
  return std::abs(sip_eval(spec, x, y) - parts);
}

double adjoint_abelian_residual(const NormSpec& spec, const Matrix& a,
                                const Sampler& s) {
  require_operator(spec, a);
  const SpectralData sd = spectral_decompose(a);
  const Matrix adapted = sd.diagonalizable()
                             ? sd.eigenbasis()
                             : Matrix(Matrix::Identity(spec.dim(), spec.dim()));
  return aa_residual_with_basis(spec, a, adapted, s);
}

double check_transversal_normal(const NormSpec& spec, const Matrix& u_basis,
                                const Matrix& v_basis, const Sampler& s) {
  require_basis(spec, u_basis, "U");
  require_basis(spec, v_basis, "V");
  return transversal_impl(spec, u_basis, v_basis, s, 0);
}

double check_direct_sum(const NormSpec& spec, std::span<const Matrix> subspaces,
                        const Sampler& s) {
  if (subspaces.empty()) throw InvalidInput("no subspaces given");
  Eigen::Index total = 0;
  for (const auto& sub : subspaces) {
    if (sub.cols() == 0) throw InvalidInput("empty subspace basis");
    require_basis(spec, sub, "subspace");
    total += sub.cols();
  }
  Matrix joined(spec.dim(), total);
  Eigen::Index off = 0;
  for (const auto& sub : subspaces) {
    joined.middleCols(off, sub.cols()) = sub;
    off += sub.cols();
  }
  if (total != spec.dim() || numerical_rank(joined) != spec.dim()) {
    throw InvalidInput(
        "subspaces do not form a direct-sum decomposition of the space");
  }

  std::vector<std::vector<Vector>> cand;
  std::size_t longest = 0;
  for (const auto& sub : subspaces) {
    cand.push_back(adapted_unit_vectors(spec, sub));
    longest = std::max(longest, cand.back().size());
  }
  const Budget b = split(s, longest * longest);
  Rng rng = stream_rng(s, kDirectSum);
  std::normal_distribution<double> coef(0.0, 1.0);

  const std::size_t m = subspaces.size();
  std::vector<Vector> xs(m), ys(m);
  double worst = 0.0;
  auto visit = [&] {
    Vector x = Vector::Zero(spec.dim());
    Vector y = Vector::Zero(spec.dim());
    for (std::size_t j = 0; j < m; ++j) {
      x += xs[j];
      y += ys[j];
    }
    const double scale = norm_eval(spec, x) * norm_eval(spec, y);
    if (scale > 0.0) worst = std::max(worst, direct_sum_defect(spec, xs, ys) / scale);
  };
  for (std::size_t t = 0; t < b.basis; ++t) {
    const std::size_t ia = t / longest;
    const std::size_t ib = t % longest;
    for (std::size_t j = 0; j < m; ++j) {
      xs[j] = cand[j][ia % cand[j].size()];
      ys[j] = cand[j][ib % cand[j].size()];
    }
    visit();
  }
  for (std::size_t t = 0; t < b.random; ++t) {
    for (std::size_t j = 0; j < m; ++j) {
      xs[j] = coef(rng) * random_unit_in_span(spec, subspaces[j], rng);
      ys[j] = coef(rng) * random_unit_in_span(spec, subspaces[j], rng);
    }
    visit();
  }
  return worst;
}

double check_isometry(const NormSpec& spec, const Matrix& a, const Sampler& s) {
  require_operator(spec, a);
  return isometry_impl(spec, a, Matrix::Identity(spec.dim(), spec.dim()), s, 0);
}

double check_isometry_on(const NormSpec& spec, const Matrix& a,
                         const Matrix& span, const Sampler& s) {
  require_operator(spec, a);
  require_basis(spec, span, "isometry domain");
  return isometry_impl(spec, a, span, s, 0);
}

double lemma_decomposition_residual(const NormSpec& spec, const SpectralData& sd,
                                    const Vector& z, const Vector& x) {
  require_dim(spec, z);
  require_dim(spec, x);
  if (!sd.diagonalizable()) {
    throw InvalidInput("operator is not real-diagonalizable (" + sd.reason() + ")");
  }
  const int i = sd.group_containing(z);
  if (i < 0) {
    throw InvalidInput("z is not within tolerance of any combined eigenspace");
  }
  const Vector zi = sd.component_of(z, i);
  return std::abs(sip_eval(spec, zi, x) - sip_eval(spec, zi, sd.component_of(x, i)));
}

double lemma_decomposition_residual(const NormSpec& spec, const Matrix& a,
                                    const Vector& z, const Vector& x) {
  require_operator(spec, a);
  return lemma_decomposition_residual(spec, spectral_decompose(a), z, x);
}

double power_identity_residual(const NormSpec& spec, const SpectralData& sd,
                               const Vector& z, const Vector& x, int n) {
  require_dim(spec, z);
  require_dim(spec, x);
  if (n < 1) throw InvalidInput("power n must be a positive integer");
  if (!sd.diagonalizable()) {
    throw InvalidInput("operator is not real-diagonalizable (" + sd.reason() + ")");
  }
  const double top = sd.lambda(0);
  if (top == 0.0) return 0.0;
  if (sd.group_containing(z) != 0) {
    throw InvalidInput("z must lie in the top combined eigenspace");
  }
  const Vector z1 = sd.component_of(z, 0);
  Vector w = Vector::Zero(x.size());
  for (int i = 0; i < sd.group_count(); ++i) {
    const double ratio = (sd.lambda(i) * sd.lambda(i)) / (top * top);
    w += std::pow(ratio, n) * sd.component_of(x, i);
  }
  return std::abs(sip_eval(spec, z1, x) - sip_eval(spec, z1, w));
}

double power_identity_residual(const NormSpec& spec, const Matrix& a,
                               const Vector& z, const Vector& x, int n) {
  require_operator(spec, a);
  return power_identity_residual(spec, spectral_decompose(a), z, x, n);
}

TheoremReport verify_theorem(const NormSpec& spec, const Matrix& a,
                             const Sampler& s, double tol, double group_tol) {
  require_operator(spec, a);
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  const SpectralData sd = spectral_decompose(a, group_tol);
  if (!sd.diagonalizable()) {
    throw InvalidInput("operator is not real-diagonalizable (" + sd.reason() + ")");
  }

  TheoremReport r;
  r.tol = tol;
  r.aa_residual = aa_residual_with_basis(spec, a, sd.eigenbasis(), derived(s, 1));

  std::vector<Matrix> blocks;
  for (const auto& g : sd.groups()) {
    blocks.push_back(g.combined());
    r.lambdas.push_back(g.lambda);
    r.group_dims.push_back(g.dim());
  }
  r.cond1_residual = check_direct_sum(spec, blocks, derived(s, 2));

  const Sampler s3 = derived(s, 3);
  const Sampler s4 = derived(s, 4);
  for (int i = 0; i < sd.group_count(); ++i) {
    const EigenGroup& g = sd.group(i);
    const auto salt = static_cast<std::uint64_t>(i + 1);
    r.cond2_residual = std::max(
        r.cond2_residual, transversal_impl(spec, g.positive, g.negative, s3, salt));
    const Matrix span = g.combined();
    const double c3 = g.lambda > 0.0
                          ? isometry_impl(spec, a / g.lambda, span, s4, salt)
                          : restricted_norm(spec, a, span, s4, salt);
    r.cond3_residual = std::max(r.cond3_residual, c3);
  }

  r.verdicts.adjoint_abelian = r.aa_residual <= tol;
  r.verdicts.direct_sum = r.cond1_residual <= tol;
  r.verdicts.transversal = r.cond2_residual <= tol;
  r.verdicts.scaled_isometry = r.cond3_residual <= tol;
  r.consistent = r.verdicts.adjoint_abelian ==
                 (r.verdicts.direct_sum && r.verdicts.transversal &&
                  r.verdicts.scaled_isometry);
  const auto p = spec.min_exponent();
  r.lipschitz_caveat = p && *p < 2.0;
  return r;
}

}  // namespace sipkit
