#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "lowrank/matrix.hpp"
#include "lowrank/retraction.hpp"
#include "lowrank/variety.hpp"

namespace lowrank {

/// A continuously differentiable f on R^{m x n} with its Euclidean gradient.
struct Objective {
  std::function<double(const Matrix&)> value;
  std::function<Matrix(const Matrix&)> gradient;
};

/// f(X) = 1/2 ||X - M||_F^2
Objective approximation_objective(Matrix target);

/// f(X) = 1/2 ||mask o (X - M)||_F^2, o the entrywise product.
Objective masked_objective(Matrix target, Matrix mask);

struct LineSearchConfig {
  double beta = 0.5;
  double c = 1e-4;
  double alpha0 = 1.0;
  int max_backtracks = 60;

  /// Throws PreconditionError unless beta, c in (0, 1), alpha0 > 0, max_backtracks > 0.
  void validate() const;
};

struct LineSearchResult {
  double accepted_step;
  int backtrack_count;
  VarietyPoint new_point;
  double f_old;
  double f_new;
  double directional_derivative;  // <grad f(X), v>, negative
};

/// Stationarity is declared when the measure is at most this times max(1, ||grad f(X)||_F).
inline constexpr double kStationarityTolerance = 1e-12;

/// ||P_T(-grad f(X))||_F; zero exactly at B-stationary points.
double stationarity_measure(const VarietyPoint& x, const Objective& obj);

/// Tangent-cone projection of -grad f(X). Throws StationaryPointError when its
/// norm is at most kStationarityTolerance * max(1, ||grad f(X)||_F).
TangentVector descent_direction(const VarietyPoint& x, const Objective& obj);

/// Backtracking from alpha0 by factors of beta until
///   f(R(x, alpha v)) <= f(x) + c alpha <grad f(X), v>.
/// Throws PreconditionError if v is not a descent direction and BudgetError
/// after max_backtracks reductions.
LineSearchResult armijo_backtrack(const VarietyPoint& x, const TangentVector& v, const Objective& obj,
                                  const LineSearchConfig& cfg, const RetractionMap& retraction);

/// max{0, ceil(ln(alpha_star / alpha0) / ln(beta))}: the worst-case number of
/// reductions when every step in (0, alpha_star] is Armijo-acceptable.
int backtrack_bound(double alpha_star, double alpha0, double beta);

enum class Termination { stationary, max_iterations };

std::string_view to_string(Termination t);

struct IterationRecord {
  int iter;
  double f;
  double stationarity;
  double step;  // 0 for the initial record
  int backtracks;
  std::size_t rank;
};

struct SolveTrace {
  std::vector<IterationRecord> records;
  Termination reason;
  VarietyPoint final_point;
};

/// 1e-8 * max(1, ||grad f(X0)||_F)
double default_tolerance(const VarietyPoint& x0, const Objective& obj);

/// Projected line-search descent: v_k = P_T(-grad f(X_k)), X_{k+1} = R(X_k, alpha_k v_k)
/// with the projective retraction, until the stationarity measure drops to
/// `tol` or `max_iters` steps were taken. Propagates BudgetError.
SolveTrace p2gd_solve(const VarietyPoint& x0, const Objective& obj, const LineSearchConfig& cfg,
                      std::optional<double> tol, int max_iters);

/// iter,f,stationarity,step,backtracks,rank
void write_trace_csv(std::ostream& out, const SolveTrace& trace);

}  // namespace lowrank
