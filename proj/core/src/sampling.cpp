#include "lowrank/sampling.hpp"

#include <algorithm>
#include <functional>
#include <vector>

#include "lowrank/errors.hpp"
#include "lowrank/svd.hpp"

namespace lowrank::sampling {

Matrix uniform_matrix(std::size_t rows, std::size_t cols, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = dist(rng);
  return a;
}

Matrix random_orthonormal(std::size_t m, std::size_t p, Rng& rng) {
  if (p > m) throw PreconditionError("random_orthonormal: p > m");
  if (p == 0) return Matrix(m, 0);
  return svd(uniform_matrix(m, p, rng)).U;
}

Matrix random_rank_matrix(std::size_t m, std::size_t n, std::size_t rank, Rng& rng) {
  if (rank == 0) return Matrix(m, n);
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  std::vector<double> sigma(rank);
  for (double& s : sigma) s = dist(rng);
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  const Matrix u = random_orthonormal(m, rank, rng);
  const Matrix v = random_orthonormal(n, rank, rng);
  return u * Matrix::diag(sigma) * v.transpose();
}

VarietyPoint random_point(const VarietyBudget& budget, std::size_t rank, Rng& rng) {
  if (rank > budget.r()) throw PreconditionError("random_point: rank exceeds the budget");
  return make_point(random_rank_matrix(budget.m(), budget.n(), rank, rng), budget);
}

TangentVector random_tangent_vector(const TangentConeChart& chart, Rng& rng, double corner_weight) {
  const std::size_t k = chart.base_rank();
  const std::size_t mc = chart.U_perp.cols();
  const std::size_t nc = chart.V_perp.cols();
  Matrix a = uniform_matrix(k, k, rng);
  Matrix b = uniform_matrix(k, nc, rng);
  Matrix c = uniform_matrix(mc, k, rng);
  const std::size_t s = std::min({chart.corner_budget, mc, nc});
  Matrix d(mc, nc);
  if (s > 0) {
    const Matrix left = uniform_matrix(mc, s, rng);
    const Matrix right = uniform_matrix(s, nc, rng);
    d = corner_weight * (left * right);
  }
  return TangentVector(chart, std::move(a), std::move(b), std::move(c), std::move(d));
}

}  // namespace lowrank::sampling
