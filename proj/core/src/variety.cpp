#include "lowrank/variety.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lowrank/errors.hpp"

namespace lowrank {

namespace {

void require_shape(const Matrix& a, const VarietyBudget& budget, const char* op) {
  if (a.rows() != budget.m() || a.cols() != budget.n()) {
    throw DimensionError(std::string(op) + ": expected " + std::to_string(budget.m()) + "x" +
                         std::to_string(budget.n()) + " matrix, got " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()));
  }
}

std::vector<double> leading(const std::vector<double>& s, std::size_t count) {
  return {s.begin(), s.begin() + static_cast<std::ptrdiff_t>(count)};
}

}  // namespace

VarietyBudget::VarietyBudget(std::size_t m, std::size_t n, std::size_t r) : m_(m), n_(n), r_(r) {
  if (r == 0 || r >= std::min(m, n)) {
    throw PreconditionError("VarietyBudget: need 1 <= r < min(m, n), got m=" + std::to_string(m) +
                            " n=" + std::to_string(n) + " r=" + std::to_string(r));
  }
}

VarietyPoint::VarietyPoint(VarietyBudget budget, Matrix x, Matrix u, std::vector<double> sigma, Matrix v)
    : budget_(budget), x_(std::move(x)), u_(std::move(u)), sigma_(std::move(sigma)), v_(std::move(v)) {}

VarietyPoint make_point(const Matrix& a, const VarietyBudget& budget, double rank_tol) {
  require_shape(a, budget, "make_point");
  const SvdFactorization f = svd(a);
  const std::size_t rank = numerical_rank(f.singular_values, rank_tol);
  if (rank > budget.r()) {
    throw MembershipError("make_point: matrix has rank " + std::to_string(rank) + " > " +
                          std::to_string(budget.r()));
  }
  return VarietyPoint(budget, a, f.U.cols_range(0, rank), leading(f.singular_values, rank),
                      f.V.cols_range(0, rank));
}

VarietyPoint project_to_variety(const Matrix& a, const VarietyBudget& budget, double rank_tol) {
  require_shape(a, budget, "project_to_variety");
  const SvdFactorization f = svd(a);
  const std::size_t rank = numerical_rank(f.singular_values, rank_tol);
  // Always the exact rank-r truncation, so tail singular values below the rank
  // threshold are still removed from the matrix itself.
  Matrix x = f.reconstruct(budget.r());
  const std::size_t kept = std::min(rank, budget.r());
  return VarietyPoint(budget, std::move(x), f.U.cols_range(0, kept), leading(f.singular_values, kept),
                      f.V.cols_range(0, kept));
}

double distance_to_variety(const Matrix& a, const VarietyBudget& budget) {
  require_shape(a, budget, "distance_to_variety");
  const SvdFactorization f = svd(a);
  double tail = 0.0;
  for (std::size_t i = budget.r(); i < f.k(); ++i) tail += f.singular_values[i] * f.singular_values[i];
  return std::sqrt(tail);
}

TangentConeChart tangent_cone_chart(const VarietyPoint& x) {
  return TangentConeChart{x, x.U(), orthonormal_complement(x.U()), x.V(), orthonormal_complement(x.V()),
                          x.budget().r() - x.rank()};
}

TangentVector::TangentVector(TangentConeChart chart, Matrix a, Matrix b, Matrix c, Matrix d)
    : chart_(std::move(chart)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  const std::size_t k = chart_.base_rank();
  const std::size_t mc = chart_.U_perp.cols();
  const std::size_t nc = chart_.V_perp.cols();
  const auto is = [](const Matrix& x, std::size_t r, std::size_t c) { return x.rows() == r && x.cols() == c; };
  if (!is(a_, k, k) || !is(b_, k, nc) || !is(c_, mc, k) || !is(d_, mc, nc)) {
    throw DimensionError("TangentVector: block shapes do not match the chart");
  }
  if (chart_.corner_budget < std::min(mc, nc)) {
    const std::size_t corner_rank = d_.is_zero() ? 0 : numerical_rank(d_);
    if (corner_rank > chart_.corner_budget) {
      throw MembershipError("TangentVector: corner block has rank " + std::to_string(corner_rank) +
                            " > " + std::to_string(chart_.corner_budget));
    }
  }
}

TangentVector TangentVector::scaled(double alpha) const {
  return TangentVector(chart_, a_ * alpha, b_ * alpha, c_ * alpha, d_ * alpha);
}

double TangentVector::norm() const {
  const double a = frobenius_norm(a_), b = frobenius_norm(b_);
  const double c = frobenius_norm(c_), d = frobenius_norm(d_);
  return std::sqrt(a * a + b * b + c * c + d * d);
}

Matrix tangent_embed(const TangentVector& v) {
  const TangentConeChart& ch = v.chart();
  const std::size_t k = ch.base_rank();
  Matrix blocks(ch.base.budget().m(), ch.base.budget().n());
  blocks.set_block(0, 0, v.A());
  blocks.set_block(0, k, v.B());
  blocks.set_block(k, 0, v.C());
  blocks.set_block(k, k, v.D());
  return hcat(ch.U, ch.U_perp) * blocks * hcat(ch.V, ch.V_perp).transpose();
}

TangentVector project_to_tangent_cone(const TangentConeChart& chart, const Matrix& g) {
  require_shape(g, chart.base.budget(), "project_to_tangent_cone");
  const Matrix ut = chart.U.transpose();
  const Matrix upt = chart.U_perp.transpose();
  Matrix corner = upt * g * chart.V_perp;
  const std::size_t s = chart.corner_budget;
  if (s == 0) {
    corner = Matrix(corner.rows(), corner.cols());
  } else if (s < std::min(corner.rows(), corner.cols())) {
    corner = svd(corner).reconstruct(s);
  }
  return TangentVector(chart, ut * g * chart.V, ut * g * chart.V_perp, upt * g * chart.V, std::move(corner));
}

double tangent_cone_residual(const TangentConeChart& chart, const Matrix& g) {
  return frobenius_norm(g - tangent_embed(project_to_tangent_cone(chart, g)));
}

std::vector<double> derivability_rate(const VarietyPoint& x, const Matrix& v, std::span<const double> t_grid) {
  require_shape(v, x.budget(), "derivability_rate");
  std::vector<double> rates;
  rates.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t > 0.0)) throw PreconditionError("derivability_rate: grid values must be positive");
    rates.push_back(distance_to_variety(x.matrix() + t * v, x.budget()) / t);
  }
  return rates;
}

std::vector<double> dyadic_grid(int count) {
  std::vector<double> grid;
  for (int k = 1; k <= count; ++k) grid.push_back(std::ldexp(1.0, -k));
  return grid;
}

}  // namespace lowrank
