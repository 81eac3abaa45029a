#include <cmath>
#include <gtest/gtest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "sipkit/checker.hpp"
#include "sipkit/sampling.hpp"
#include "sipkit/sip.hpp"

namespace sipkit {
namespace {

using testing::block_diag;
using testing::mat;
using testing::vec;

const Sampler kDefault{};

TEST(Checker, AdjointAbelianExamples) {
  const Matrix sym = mat({{2, 1, 0}, {1, -1, 3}, {0, 3, 0.5}});
  EXPECT_LE(adjoint_abelian_residual(NormSpec::lp(2, 3), sym, kDefault), 1e-10);

  const auto lp4 = NormSpec::lp(4, 2);
  const Matrix d21 = mat({{2, 0}, {0, 1}});
  EXPECT_GE(adjoint_abelian_residual(lp4, d21, kDefault), 0.02);
  const double hand = std::abs(3 / std::sqrt(2.0) - 9 / std::sqrt(17.0));
  const Vector ones = vec({1, 1});
  EXPECT_NEAR(adjoint_abelian_gap(lp4, d21, ones, ones), hand, 1e-9);
  // [Ax, y] and [x, Ay] separately through the definition oracle.
  EXPECT_NEAR(oracle::lp_sip(d21 * ones, ones, 4), 3 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(oracle::lp_sip(ones, d21 * ones, 4), 9 / std::sqrt(17.0), 1e-12);

  EXPECT_LE(adjoint_abelian_residual(lp4, mat({{0, 2}, {2, 0}}), kDefault), 1e-9);
}

TEST(Checker, TransversalExamples) {
  const Matrix e1 = vec({1, 0}), e2 = vec({0, 1});
  EXPECT_EQ(check_transversal_normal(NormSpec::lp(2, 2), e1, e2, kDefault), 0.0);
  const auto lp4 = NormSpec::lp(4, 2);
  EXPECT_LE(check_transversal_normal(lp4, vec({1, 1}), vec({1, -1}), kDefault), 1e-10);
  EXPECT_GE(check_transversal_normal(lp4, e1, vec({1, 1}), kDefault), 0.7);
  EXPECT_EQ(check_transversal_normal(lp4, e1, Matrix(2, 0), kDefault), 0.0);
  EXPECT_THROW(check_transversal_normal(lp4, mat({{1, 2}, {1, 2}}), e2, kDefault),
               InvalidInput);
}

TEST(Checker, DirectSumExamples) {
  const Matrix i4 = Matrix::Identity(4, 4);
  const std::vector<Matrix> blocks = {i4.leftCols(2), i4.rightCols(2)};
  EXPECT_LE(check_direct_sum(NormSpec::lp(2, 4), blocks, kDefault), 1e-12);
  EXPECT_LE(check_direct_sum(testing::lp4_pair(), blocks, kDefault), 1e-9);

  const auto lp4 = NormSpec::lp(4, 2);
  const std::vector<Matrix> coords = {vec({1, 0}), vec({0, 1})};
  EXPECT_GE(check_direct_sum(lp4, coords, kDefault), 0.1);
  const Vector xs[] = {vec({1, 0}), vec({0, 1})};
  EXPECT_NEAR(direct_sum_defect(lp4, xs, xs), 2 - std::sqrt(2.0), 1e-12);

  Matrix q = Matrix::Zero(2, 2);
  q.diagonal() << 1, 4;
  const auto mixed = build_direct_sum({NormSpec::ellipsoid(q), lp4});
  EXPECT_LT(check_direct_sum(mixed, blocks, Sampler{7, 512, SampleStrategy::mixed}), 1e-9);

  // Not a decomposition of the whole space.
  const std::vector<Matrix> short_list = {i4.leftCols(2)};
  EXPECT_THROW(check_direct_sum(NormSpec::lp(2, 4), short_list, kDefault), InvalidInput);
}

TEST(Checker, IsometryExamples) {
  const auto lp4 = NormSpec::lp(4, 2);
  EXPECT_LE(check_isometry(lp4, mat({{0, 1}, {1, 0}}), kDefault), 1e-12);
  EXPECT_LE(check_isometry(lp4, mat({{1, 0}, {0, -1}}), kDefault), 1e-12);
  EXPECT_GE(check_isometry(lp4, mat({{2, 0}, {0, 1}}), kDefault), 0.9);
}

TEST(Checker, LemmaAndPowerIdentityExamples) {
  EXPECT_LE(lemma_decomposition_residual(NormSpec::lp(2, 3), mat({{2, 0, 0}, {0, 2, 0}, {0, 0, 1}}),
                                         vec({1, 0, 0}), vec({1, 1, 1})),
            1e-15);
  const auto pair = testing::lp4_pair();
  const Matrix d = block_diag(2 * Matrix::Identity(2, 2), Matrix::Identity(2, 2));
  const Vector z = vec({1, 0, 0, 0}), x = vec({1, 1, 1, 1});
  EXPECT_LE(lemma_decomposition_residual(pair, d, z, x), 1e-9);
  // Both sides equal [z, (1,1,0,0)] = ||(1,1)||_4^(-2) by the definition oracle.
  EXPECT_NEAR(sip_eval(pair, z, x), oracle::lp_sip(vec({1, 0}), vec({1, 1}), 4), 1e-12);
  EXPECT_LE(lemma_decomposition_residual(NormSpec::lp(4, 2), mat({{0, 2}, {2, 0}}),
                                         vec({1, 1}), vec({1, 0})),
            1e-9);

  EXPECT_LE(power_identity_residual(NormSpec::lp(2, 2), mat({{2, 0}, {0, 1}}), vec({1, 0}),
                                    vec({1, 1}), 3),
            1e-15);
  for (int n : {1, 2, 5}) {
    EXPECT_LE(power_identity_residual(pair, d, z, x, n), 1e-9) << n;
  }
  // Large n: the top component alone remains, so both residuals agree. The
  // operator here is not adjoint abelian, so both are nonzero.
  const auto lp4 = NormSpec::lp(4, 2);
  const Matrix d21 = mat({{2, 0}, {0, 1}});
  const double lemma = lemma_decomposition_residual(lp4, d21, vec({1, 0}), vec({1, 1}));
  EXPECT_GT(lemma, 0.1);
  EXPECT_NEAR(power_identity_residual(lp4, d21, vec({1, 0}), vec({1, 1}), 30), lemma, 1e-8);
  EXPECT_EQ(power_identity_residual(lp4, Matrix::Zero(2, 2), vec({1, 0}), vec({1, 1}), 2), 0.0);
  EXPECT_THROW(lemma_decomposition_residual(lp4, d21, vec({1, 1}), vec({1, 0})), InvalidInput);
}

TEST(Checker, TheoremExamples) {
  const auto lp4 = NormSpec::lp(4, 2);
  const auto yes = verify_theorem(lp4, mat({{0, 2}, {2, 0}}), kDefault);
  EXPECT_TRUE(yes.verdicts.adjoint_abelian);
  EXPECT_TRUE(yes.verdicts.direct_sum);
  EXPECT_TRUE(yes.verdicts.transversal);
  EXPECT_TRUE(yes.verdicts.scaled_isometry);
  EXPECT_TRUE(yes.consistent);
  ASSERT_EQ(yes.lambdas.size(), 1u);
  EXPECT_NEAR(yes.lambdas[0], 2.0, 1e-14);

  const auto no = verify_theorem(lp4, mat({{2, 0}, {0, 1}}), kDefault);
  EXPECT_FALSE(no.verdicts.adjoint_abelian);
  EXPECT_FALSE(no.verdicts.direct_sum);
  EXPECT_GE(no.cond1_residual, 0.1);
  EXPECT_TRUE(no.consistent);

  // Symmetric with distinct eigenvalues, Euclidean.
  const Matrix sym = mat({{3, 1, 0, 0}, {1, 2, 0.5, 0}, {0, 0.5, -1, 0.3}, {0, 0, 0.3, 0.7}});
  const auto e = verify_theorem(NormSpec::lp(2, 4), sym, kDefault);
  EXPECT_TRUE(e.verdicts.adjoint_abelian && e.verdicts.direct_sum &&
              e.verdicts.transversal && e.verdicts.scaled_isometry);
  EXPECT_TRUE(e.consistent);
  EXPECT_FALSE(e.lipschitz_caveat);
}

TEST(Checker, SingleGroupFailuresOfTransversalityAndIsometry) {
  // Eigenvalues +1, -1 with eigenvectors e1 and (1,1): condition (1) is
  // trivial, (2) and (3) fail.
  const auto r = verify_theorem(NormSpec::lp(4, 2), mat({{1, -2}, {0, -1}}), kDefault);
  EXPECT_TRUE(r.verdicts.direct_sum);
  EXPECT_FALSE(r.verdicts.transversal);
  EXPECT_GE(r.cond2_residual, 0.7);
  EXPECT_FALSE(r.verdicts.scaled_isometry);
  EXPECT_FALSE(r.verdicts.adjoint_abelian);
  EXPECT_TRUE(r.consistent);
}

TEST(Checker, RejectsNonDiagonalizableAndFlagsSubQuadraticExponents) {
  EXPECT_THROW(verify_theorem(NormSpec::lp(4, 2), mat({{0, -1}, {1, 0}}), kDefault),
               InvalidInput);
  EXPECT_TRUE(verify_theorem(NormSpec::lp(1.5, 2), mat({{0, 1}, {1, 0}}), kDefault)
                  .lipschitz_caveat);
}

TEST(Checker, CorpusBiconditional) {
  const auto corpus = testing::theorem_corpus();
  ASSERT_GE(corpus.size(), 40u);
  for (const auto& c : corpus) {
    const auto r = verify_theorem(c.spec, c.op, kDefault);
    EXPECT_TRUE(r.consistent) << c.name;
    EXPECT_EQ(r.verdicts.adjoint_abelian, c.expect_aa) << c.name;
  }
}

TEST(Checker, EigenvectorsOfDistinctEigenvaluesAreTransversal) {
  int checked = 0;
  for (const auto& c : testing::theorem_corpus()) {
    if (adjoint_abelian_residual(c.spec, c.op, kDefault) > 1e-7) continue;
    const auto sd = spectral_decompose(c.op);
    std::vector<Matrix> spaces;
    for (const auto& g : sd.groups()) {
      if (g.positive.cols() > 0) spaces.push_back(g.positive);
      if (g.negative.cols() > 0) spaces.push_back(g.negative);
    }
    auto rng = make_rng(41);
    for (std::size_t a = 0; a < spaces.size(); ++a) {
      for (std::size_t b = 0; b < spaces.size(); ++b) {
        if (a == b) continue;
        for (int t = 0; t < 8; ++t) {
          const Vector x = random_unit_in_span(c.spec, spaces[a], rng);
          const Vector y = random_unit_in_span(c.spec, spaces[b], rng);
          EXPECT_LE(std::abs(sip_eval(c.spec, x, y)), 1e-6) << c.name;
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 100);
}

// Random involutive signed permutation of size 2: the isometries of a
// 2-dim lp block with eigenvalues in {1, -1}.
Matrix signed_involution(Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  const double s = coin(rng) ? 1.0 : -1.0;
  if (coin(rng)) return s * mat({{0, 1}, {1, 0}});
  return mat({{s, 0}, {0, coin(rng) ? 1.0 : -1.0}});
}

TEST(Checker, ScaledIsometriesOnSplittingBlocksAreAdjointAbelian) {
  auto rng = make_rng(42);
  std::uniform_real_distribution<double> lam(0.0, 4.0), angle(0.0, 6.28);
  const auto pair = testing::lp4_pair();
  Matrix q = Matrix::Zero(2, 2);
  q.diagonal() << 1, 4;
  const auto mixed = build_direct_sum({NormSpec::ellipsoid(q), NormSpec::lp(4, 2)});
  const Matrix qh = vec({1, 2}).asDiagonal(), qhi = vec({1, 0.5}).asDiagonal();
  for (int t = 0; t < 20; ++t) {
    const Matrix a = block_diag(lam(rng) * signed_involution(rng),
                                lam(rng) * signed_involution(rng));
    EXPECT_LE(adjoint_abelian_residual(pair, a, Sampler{static_cast<std::uint64_t>(t)}), 1e-8);
    // Isometries of x^T Q x are Q^-1/2 R Q^1/2 with R orthogonal; a
    // reflection R keeps the block an involution, hence adjoint abelian.
    const double th = angle(rng);
    const Matrix r = mat({{std::cos(th), std::sin(th)}, {std::sin(th), -std::cos(th)}});
    const Matrix b = block_diag(lam(rng) * (qhi * r * qh), lam(rng) * signed_involution(rng));
    EXPECT_LE(adjoint_abelian_residual(mixed, b, Sampler{static_cast<std::uint64_t>(t)}), 1e-8)
        << t;
  }
}

TEST(Checker, ResidualIsScaleInvariant) {
  for (const auto& c : testing::theorem_corpus()) {
    const double base = adjoint_abelian_residual(c.spec, c.op, kDefault);
    for (double s : {0.1, 10.0}) {
      const double scaled = adjoint_abelian_residual(c.spec, s * c.op, kDefault);
      EXPECT_EQ(scaled <= 1e-7, base <= 1e-7) << c.name;
      if (base > 1e-7) {
        EXPECT_LE(scaled, 2 * base) << c.name;
        EXPECT_GE(scaled, base / 2) << c.name;
      }
    }
  }
}

TEST(Checker, DecompositionIdentityOnAdjointAbelianCorpus) {
  for (const auto& c : testing::theorem_corpus()) {
    if (!c.expect_aa) continue;
    const auto sd = spectral_decompose(c.op);
    auto rng = make_rng(43);
    for (int i = 0; i < sd.group_count(); ++i) {
      const Matrix basis = sd.group(i).combined();
      for (int t = 0; t < 256; ++t) {
        const Vector z = random_unit_in_span(c.spec, basis, rng);
        const Vector x = gaussian_vector(rng, c.spec.dim());
        EXPECT_LE(lemma_decomposition_residual(c.spec, sd, z, x), 1e-7) << c.name;
      }
    }
  }
}

TEST(Checker, SamplerIsDeterministic) {
  const auto lp4 = NormSpec::lp(4, 2);
  const Matrix d21 = mat({{2, 0}, {0, 1}});
  for (auto strategy : {SampleStrategy::sphere_random, SampleStrategy::basis_pairs,
                        SampleStrategy::mixed}) {
    const Sampler s{99, 128, strategy};
    EXPECT_EQ(adjoint_abelian_residual(lp4, d21, s), adjoint_abelian_residual(lp4, d21, s));
    EXPECT_EQ(parse_strategy(strategy_name(strategy)), strategy);
  }
  EXPECT_THROW(parse_strategy("everything"), InvalidInput);
}

}  // namespace
}  // namespace sipkit
