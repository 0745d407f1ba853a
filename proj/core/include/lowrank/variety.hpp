#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lowrank/matrix.hpp"
#include "lowrank/svd.hpp"

namespace lowrank {

/// Shape and rank bound of the set {X in R^{m x n} : rank X <= r}, with
/// 1 <= r < min(m, n).
class VarietyBudget {
 public:
  VarietyBudget(std::size_t m, std::size_t n, std::size_t r);

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t r() const noexcept { return r_; }

  friend bool operator==(const VarietyBudget&, const VarietyBudget&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  std::size_t r_;
};

/// A member of the bounded-rank set together with its thin SVD factors.
///
/// Only make_point and project_to_variety construct these, so the rank bound
/// and the factorization invariant always hold.
class VarietyPoint {
 public:
  const VarietyBudget& budget() const noexcept { return budget_; }
  const Matrix& matrix() const noexcept { return x_; }
  std::size_t rank() const noexcept { return sigma_.size(); }
  const Matrix& U() const noexcept { return u_; }
  const std::vector<double>& sigma() const noexcept { return sigma_; }
  const Matrix& V() const noexcept { return v_; }

 private:
  friend VarietyPoint make_point(const Matrix&, const VarietyBudget&, double);
  friend VarietyPoint project_to_variety(const Matrix&, const VarietyBudget&, double);
  VarietyPoint(VarietyBudget budget, Matrix x, Matrix u, std::vector<double> sigma, Matrix v);

  VarietyBudget budget_;
  Matrix x_;
  Matrix u_;
  std::vector<double> sigma_;
  Matrix v_;
};

/// Wraps a matrix already of rank <= r. Throws MembershipError otherwise.
VarietyPoint make_point(const Matrix& a, const VarietyBudget& budget,
                        double rank_tol = kDefaultRankTolerance);

/// One element of the metric projection onto the set: the rank-r truncated SVD.
///
/// When sigma_r == sigma_{r+1} the projection is set-valued; the returned
/// element is the selection induced by svd()'s deterministic ordering.
VarietyPoint project_to_variety(const Matrix& a, const VarietyBudget& budget,
                                double rank_tol = kDefaultRankTolerance);

/// sqrt(sum_{i > r} sigma_i(a)^2).
double distance_to_variety(const Matrix& a, const VarietyBudget& budget);

/// Orthonormal frame of the tangent cone at a point:
///   T(X) = [U U_perp] [[R^{k x k}, R^{k x (n-k)}], [R^{(m-k) x k}, rank <= r-k]] [V V_perp]^T
/// with k = rank X.
struct TangentConeChart {
  VarietyPoint base;
  Matrix U;
  Matrix U_perp;
  Matrix V;
  Matrix V_perp;
  std::size_t corner_budget;  // r - rank X

  std::size_t base_rank() const noexcept { return U.cols(); }
};

TangentConeChart tangent_cone_chart(const VarietyPoint& x);

/// Block coordinates (A, B, C, D) of a tangent-cone element in a chart.
class TangentVector {
 public:
  /// Throws DimensionError on block shape mismatch, MembershipError when
  /// rank(D) exceeds the chart's corner budget.
  TangentVector(TangentConeChart chart, Matrix a, Matrix b, Matrix c, Matrix d);

  const TangentConeChart& chart() const noexcept { return chart_; }
  const Matrix& A() const noexcept { return a_; }
  const Matrix& B() const noexcept { return b_; }
  const Matrix& C() const noexcept { return c_; }
  const Matrix& D() const noexcept { return d_; }

  TangentVector scaled(double alpha) const;
  /// Frobenius norm; the blocks are mutually orthogonal so this equals the
  /// norm of the embedded matrix.
  double norm() const;

 private:
  TangentConeChart chart_;
  Matrix a_;
  Matrix b_;
  Matrix c_;
  Matrix d_;
};

/// [U U_perp] [[A, B], [C, D]] [V V_perp]^T
Matrix tangent_embed(const TangentVector& v);

/// Nearest tangent-cone element to g: the three linear blocks are copied,
/// the corner block is truncated to rank corner_budget.
TangentVector project_to_tangent_cone(const TangentConeChart& chart, const Matrix& g);

/// ||g - tangent_embed(project_to_tangent_cone(chart, g))||_F
double tangent_cone_residual(const TangentConeChart& chart, const Matrix& g);

/// d(X + t v, C) / t for every t in the grid. All t must be positive.
std::vector<double> derivability_rate(const VarietyPoint& x, const Matrix& v,
                                      std::span<const double> t_grid);

/// {2^-1, 2^-2, ..., 2^-count}
std::vector<double> dyadic_grid(int count);

}  // namespace lowrank
