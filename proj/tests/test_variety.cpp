#include <gtest/gtest.h>

#include <cmath>

#include "lowrank/errors.hpp"
#include "lowrank/sampling.hpp"
#include "lowrank/variety.hpp"
#include "test_helpers.hpp"

namespace lowrank {
namespace {

using testing::eventually_decreasing;
using testing::MatrixNear;

const VarietyBudget k3x3r2(3, 3, 2);

TEST(VarietyBudget, RequiresRankBelowMinDimension) {
  EXPECT_NO_THROW(VarietyBudget(2, 2, 1));
  EXPECT_THROW(VarietyBudget(2, 2, 2), PreconditionError);
  EXPECT_THROW(VarietyBudget(3, 5, 0), PreconditionError);
  EXPECT_THROW(VarietyBudget(4, 3, 3), PreconditionError);
}

TEST(MakePoint, Examples) {
  const VarietyPoint p = make_point(Matrix::diag({1, 0}), VarietyBudget(2, 2, 1));
  EXPECT_EQ(p.rank(), 1u);
  EXPECT_EQ(p.sigma(), (std::vector<double>{1.0}));

  const VarietyPoint z = make_point(Matrix::zeros(3, 4), VarietyBudget(3, 4, 2));
  EXPECT_EQ(z.rank(), 0u);
  EXPECT_EQ(z.U().cols(), 0u);
  EXPECT_EQ(z.V().cols(), 0u);

  EXPECT_THROW(make_point(Matrix::diag({3, 2, 1}), k3x3r2), MembershipError);
  EXPECT_THROW(make_point(Matrix::zeros(2, 3), k3x3r2), DimensionError);
}

TEST(MakePoint, FactorsReproduceTheMatrix) {
  sampling::Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const VarietyBudget budget(5, 4, 3);
    const std::size_t rank = trial % 4;
    const Matrix a = sampling::random_rank_matrix(5, 4, rank, rng);
    const VarietyPoint p = make_point(a, budget);
    EXPECT_EQ(p.rank(), rank);
    EXPECT_EQ(p.matrix(), a);
    const Matrix rebuilt = p.U() * Matrix::diag(p.sigma()) * p.V().transpose();
    EXPECT_TRUE(MatrixNear(rebuilt, a, 1e-10 * std::max(1.0, frobenius_norm(a))));
    for (double s : p.sigma()) EXPECT_GT(s, 0.0);
  }
}

TEST(ProjectToVariety, TruncatesOrderedDiagonal) {
  const Matrix a = Matrix::diag({3, 2, 1});
  const VarietyPoint p = project_to_variety(a, k3x3r2);
  EXPECT_TRUE(MatrixNear(p.matrix(), Matrix::diag({3, 2, 0}), 1e-15));
  EXPECT_EQ(p.rank(), 2u);
  EXPECT_NEAR(frobenius_norm(a - p.matrix()), 1.0, 1e-15);
}

TEST(ProjectToVariety, IdentityOnTheSet) {
  sampling::Rng rng(2);
  const VarietyBudget budget(4, 6, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = sampling::random_rank_matrix(4, 6, 1 + trial % 2, rng);
    EXPECT_TRUE(MatrixNear(project_to_variety(a, budget).matrix(), a, 1e-14 * frobenius_norm(a)));
  }
}

TEST(ProjectToVariety, DistanceEqualsTailSingularValues) {
  sampling::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 3 + trial % 4, n = 3 + (trial / 4) % 4;
    const VarietyBudget budget(m, n, 1 + trial % (std::min(m, n) - 1));
    const Matrix a = sampling::uniform_matrix(m, n, rng);
    const VarietyPoint p = project_to_variety(a, budget);
    EXPECT_LE(p.rank(), budget.r());
    EXPECT_NEAR(frobenius_norm(a - p.matrix()), distance_to_variety(a, budget), 1e-10);
  }
}

TEST(ProjectToVariety, EckartYoungAgainstRandomCandidates) {
  sampling::Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + trial % 5, n = 2 + (trial / 5) % 5;
    const VarietyBudget budget(m, n, 1 + trial % (std::min(m, n) - 1));
    const Matrix a = sampling::uniform_matrix(m, n, rng);
    const double best = frobenius_norm(a - project_to_variety(a, budget).matrix());
    for (int c = 0; c < 50; ++c) {
      const Matrix b = sampling::random_rank_matrix(m, n, 1 + c % budget.r(), rng);
      EXPECT_LE(best, frobenius_norm(a - b) + 1e-10);
    }
  }
}

TEST(DistanceToVariety, Examples) {
  EXPECT_EQ(distance_to_variety(Matrix::diag({2, 1, 0}), k3x3r2), 0.0);
  EXPECT_DOUBLE_EQ(distance_to_variety(Matrix::diag({3, 2, 1}), k3x3r2), 1.0);
  EXPECT_DOUBLE_EQ(distance_to_variety(Matrix::diag({2, 1, 0}) + 0.5 * Matrix::diag({0, 0, 1}), k3x3r2), 0.5);
}

TEST(TangentConeChart, AtZeroTheCornerIsEverything) {
  const TangentConeChart ch = tangent_cone_chart(make_point(Matrix::zeros(3, 4), VarietyBudget(3, 4, 2)));
  EXPECT_EQ(ch.U.cols(), 0u);
  EXPECT_EQ(ch.V.cols(), 0u);
  EXPECT_EQ(ch.U_perp, Matrix::identity(3));
  EXPECT_EQ(ch.V_perp, Matrix::identity(4));
  EXPECT_EQ(ch.corner_budget, 2u);
}

TEST(TangentConeChart, CanonicalDiagonalPoint) {
  const TangentConeChart ch = tangent_cone_chart(make_point(Matrix::diag({2, 1, 0}), k3x3r2));
  const Matrix first_two = Matrix::identity(3).cols_range(0, 2);
  EXPECT_TRUE(MatrixNear(ch.U, first_two, 1e-15));
  EXPECT_TRUE(MatrixNear(ch.V, first_two, 1e-15));
  EXPECT_TRUE(MatrixNear(ch.U_perp, Matrix::identity(3).cols_range(2, 1), 1e-15));
  EXPECT_EQ(ch.corner_budget, 0u);
}

TEST(TangentConeChart, FramesAreOrthogonal) {
  sampling::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const VarietyBudget budget(5, 4, 3);
    const TangentConeChart ch = tangent_cone_chart(sampling::random_point(budget, trial % 4, rng));
    EXPECT_LE(orthonormality_defect(hcat(ch.U, ch.U_perp)), 1e-10);
    EXPECT_LE(orthonormality_defect(hcat(ch.V, ch.V_perp)), 1e-10);
    EXPECT_EQ(ch.corner_budget, budget.r() - ch.base_rank());
  }
}

TEST(TangentVector, EmbedExamples) {
  const TangentConeChart ch = tangent_cone_chart(make_point(Matrix::diag({2, 1, 0}), k3x3r2));
  const TangentVector zero(ch, Matrix(2, 2), Matrix(2, 1), Matrix(1, 2), Matrix(1, 1));
  EXPECT_TRUE(tangent_embed(zero).is_zero());
  const TangentVector a_only(ch, Matrix::identity(2), Matrix(2, 1), Matrix(1, 2), Matrix(1, 1));
  EXPECT_TRUE(MatrixNear(tangent_embed(a_only), Matrix::diag({1, 1, 0}), 1e-15));
}

TEST(TangentVector, RejectsCornerAboveBudgetAndBadShapes) {
  const TangentConeChart ch = tangent_cone_chart(make_point(Matrix::diag({2, 1, 0}), k3x3r2));
  EXPECT_THROW(TangentVector(ch, Matrix(2, 2), Matrix(2, 1), Matrix(1, 2), Matrix::identity(1)), MembershipError);
  EXPECT_THROW(TangentVector(ch, Matrix(2, 2), Matrix(2, 2), Matrix(1, 2), Matrix(1, 1)), DimensionError);

  const TangentConeChart at_zero = tangent_cone_chart(make_point(Matrix::zeros(3, 3), k3x3r2));
  EXPECT_NO_THROW(TangentVector(at_zero, Matrix(0, 0), Matrix(0, 3), Matrix(3, 0), Matrix::diag({1, 1, 0})));
  EXPECT_THROW(TangentVector(at_zero, Matrix(0, 0), Matrix(0, 3), Matrix(3, 0), Matrix::identity(3)),
               MembershipError);
}

TEST(TangentVector, ConeClosedUnderNonnegativeScaling) {
  sampling::Rng rng(6);
  const VarietyBudget budget(5, 5, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const TangentConeChart ch = tangent_cone_chart(sampling::random_point(budget, trial % 3, rng));
    const TangentVector v = sampling::random_tangent_vector(ch, rng);
    for (double alpha : {0.0, 0.5, 2.0, 10.0}) {
      const TangentVector w = v.scaled(alpha);
      EXPECT_TRUE(MatrixNear(tangent_embed(w), alpha * tangent_embed(v), 1e-12 * (1 + alpha)));
    }
  }
}

TEST(TangentVector, SmoothPointConeIsLinear) {
  sampling::Rng rng(7);
  const VarietyBudget budget(4, 5, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const TangentConeChart ch = tangent_cone_chart(sampling::random_point(budget, 2, rng));
    const Matrix v = tangent_embed(sampling::random_tangent_vector(ch, rng));
    EXPECT_LE(tangent_cone_residual(ch, -v), 1e-12);
    EXPECT_LE(tangent_cone_residual(ch, v + (-0.3) * v), 1e-12);
  }
}

TEST(ProjectToTangentCone, IdempotentOnConeVectors) {
  sampling::Rng rng(8);
  const VarietyBudget budget(5, 4, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const TangentConeChart ch = tangent_cone_chart(sampling::random_point(budget, trial % 4, rng));
    const TangentVector w = sampling::random_tangent_vector(ch, rng);
    const TangentVector p = project_to_tangent_cone(ch, tangent_embed(w));
    EXPECT_TRUE(MatrixNear(p.A(), w.A(), 1e-12));
    EXPECT_TRUE(MatrixNear(p.B(), w.B(), 1e-12));
    EXPECT_TRUE(MatrixNear(p.C(), w.C(), 1e-12));
    EXPECT_TRUE(MatrixNear(p.D(), w.D(), 1e-12));
  }
}

TEST(ProjectToTangentCone, SmoothPointDropsTheCorner) {
  sampling::Rng rng(9);
  const TangentConeChart ch = tangent_cone_chart(make_point(Matrix::diag({2, 1, 0}), k3x3r2));
  const TangentVector p = project_to_tangent_cone(ch, sampling::uniform_matrix(3, 3, rng));
  EXPECT_TRUE(p.D().is_zero());
}

TEST(ProjectToTangentCone, AtZeroMatchesVarietyProjection) {
  sampling::Rng rng(10);
  const VarietyBudget budget(4, 5, 2);
  const TangentConeChart ch = tangent_cone_chart(make_point(Matrix::zeros(4, 5), budget));
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix g = sampling::uniform_matrix(4, 5, rng);
    EXPECT_TRUE(MatrixNear(tangent_embed(project_to_tangent_cone(ch, g)), project_to_variety(g, budget).matrix(),
                           1e-12));
  }
}

TEST(ProjectToTangentCone, NonexpansiveIdempotentAndOptimal) {
  sampling::Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t m = 3 + trial % 4, n = 3 + (trial / 4) % 4;
    const VarietyBudget budget(m, n, 1 + trial % (std::min(m, n) - 1));
    const TangentConeChart ch = tangent_cone_chart(sampling::random_point(budget, trial % (budget.r() + 1), rng));
    const Matrix g = sampling::uniform_matrix(m, n, rng);
    const Matrix pg = tangent_embed(project_to_tangent_cone(ch, g));
    EXPECT_LE(frobenius_norm(pg), frobenius_norm(g) + 1e-10);
    EXPECT_TRUE(MatrixNear(tangent_embed(project_to_tangent_cone(ch, pg)), pg, 1e-10));
    // Brute-force check: no random cone element is closer to g.
    const double best = frobenius_norm(g - pg);
    for (int c = 0; c < 5; ++c) {
      const Matrix w = tangent_embed(sampling::random_tangent_vector(ch, rng));
      EXPECT_LE(best, frobenius_norm(g - w) + 1e-10);
    }
  }
}

TEST(DerivabilityRate, ZeroDirection) {
  const VarietyPoint x = make_point(Matrix::diag({2, 1, 0}), k3x3r2);
  for (double r : derivability_rate(x, Matrix(3, 3), dyadic_grid(20))) EXPECT_EQ(r, 0.0);
}

TEST(DerivabilityRate, ConeVectorsAtSmoothDiagonalPoint) {
  sampling::Rng rng(12);
  const VarietyPoint x = make_point(Matrix::diag({2, 1, 0}), k3x3r2);
  const TangentConeChart ch = tangent_cone_chart(x);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rates = derivability_rate(x, tangent_embed(sampling::random_tangent_vector(ch, rng)), dyadic_grid(20));
    EXPECT_LT(rates.back(), 1e-3);
    EXPECT_TRUE(eventually_decreasing(rates));
  }
}

TEST(DerivabilityRate, NonTangentWitnessIsIdenticallyOne) {
  const VarietyPoint x = make_point(Matrix::diag({1, 0}), VarietyBudget(2, 2, 1));
  const auto grid = dyadic_grid(20);
  for (double r : derivability_rate(x, Matrix::diag({0, 1}), grid)) EXPECT_EQ(r, 1.0);
}

TEST(DerivabilityRate, ProjectedConeVectorsAtAllRanks) {
  sampling::Rng rng(13);
  const VarietyBudget budget(5, 5, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const VarietyPoint x = sampling::random_point(budget, trial % 4, rng);
    const Matrix v = tangent_embed(project_to_tangent_cone(tangent_cone_chart(x), sampling::uniform_matrix(5, 5, rng)));
    const auto rates = derivability_rate(x, v, dyadic_grid(20));
    EXPECT_LT(rates.back(), 1e-3);
    EXPECT_TRUE(eventually_decreasing(rates));
  }
}

TEST(DerivabilityRate, RejectsNonPositiveGrid) {
  const VarietyPoint x = make_point(Matrix::diag({1, 0}), VarietyBudget(2, 2, 1));
  const std::vector<double> grid{0.5, 0.0};
  EXPECT_THROW(derivability_rate(x, Matrix(2, 2), grid), PreconditionError);
}

}  // namespace
}  // namespace lowrank
