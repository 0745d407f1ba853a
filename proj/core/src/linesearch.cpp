#include "lowrank/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <string>

#include "lowrank/errors.hpp"
#include "lowrank/matrix_io.hpp"

namespace lowrank {

Objective approximation_objective(Matrix target) {
  auto m = std::make_shared<const Matrix>(std::move(target));
  return Objective{
      [m](const Matrix& x) {
        const double d = frobenius_norm(x - *m);
        return 0.5 * d * d;
      },
      [m](const Matrix& x) { return x - *m; },
  };
}

Objective masked_objective(Matrix target, Matrix mask) {
  if (target.rows() != mask.rows() || target.cols() != mask.cols()) {
    throw DimensionError("masked_objective: mask and target shapes differ");
  }
  auto m = std::make_shared<const Matrix>(std::move(target));
  auto w = std::make_shared<const Matrix>(std::move(mask));
  auto masked_residual = [m, w](const Matrix& x) {
    Matrix r = x - *m;
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) *= (*w)(i, j);
    return r;
  };
  return Objective{
      [masked_residual](const Matrix& x) {
        const double d = frobenius_norm(masked_residual(x));
        return 0.5 * d * d;
      },
      // grad = mask o mask o (X - M)
      [masked_residual, w](const Matrix& x) {
        Matrix g = masked_residual(x);
        for (std::size_t i = 0; i < g.rows(); ++i)
          for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= (*w)(i, j);
        return g;
      },
  };
}

void LineSearchConfig::validate() const {
  if (!(beta > 0.0 && beta < 1.0)) throw PreconditionError("LineSearchConfig: beta must lie in (0, 1)");
  if (!(c > 0.0 && c < 1.0)) throw PreconditionError("LineSearchConfig: c must lie in (0, 1)");
  if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) throw PreconditionError("LineSearchConfig: alpha0 must be positive");
  if (max_backtracks <= 0) throw PreconditionError("LineSearchConfig: max_backtracks must be positive");
}

double stationarity_measure(const VarietyPoint& x, const Objective& obj) {
  return project_to_tangent_cone(tangent_cone_chart(x), -obj.gradient(x.matrix())).norm();
}

TangentVector descent_direction(const VarietyPoint& x, const Objective& obj) {
  const Matrix g = obj.gradient(x.matrix());
  TangentVector v = project_to_tangent_cone(tangent_cone_chart(x), -g);
  if (v.norm() <= kStationarityTolerance * std::max(1.0, frobenius_norm(g))) {
    throw StationaryPointError("descent_direction: point is B-stationary");
  }
  return v;
}

LineSearchResult armijo_backtrack(const VarietyPoint& x, const TangentVector& v, const Objective& obj,
                                  const LineSearchConfig& cfg, const RetractionMap& retraction) {
  cfg.validate();
  const Matrix direction = tangent_embed(v);
  const double f_old = obj.value(x.matrix());
  const double slope = inner(obj.gradient(x.matrix()), direction);
  if (!(slope < 0.0)) throw PreconditionError("armijo_backtrack: v is not a descent direction");

  double alpha = cfg.alpha0;
  int count = 0;
  VarietyPoint trial = retraction(x, alpha * direction);
  double f_new = obj.value(trial.matrix());
  while (f_new > f_old + cfg.c * alpha * slope) {
    if (count == cfg.max_backtracks) {
      throw BudgetError("armijo_backtrack: no Armijo step after " + std::to_string(count) + " reductions");
    }
    alpha *= cfg.beta;
    ++count;
    trial = retraction(x, alpha * direction);
    f_new = obj.value(trial.matrix());
  }
  return LineSearchResult{alpha, count, std::move(trial), f_old, f_new, slope};
}

int backtrack_bound(double alpha_star, double alpha0, double beta) {
  const double n = std::ceil(std::log(alpha_star / alpha0) / std::log(beta));
  return static_cast<int>(std::max(0.0, n));
}

std::string_view to_string(Termination t) {
  return t == Termination::stationary ? "stationary" : "max_iterations";
}

double default_tolerance(const VarietyPoint& x0, const Objective& obj) {
  return 1e-8 * std::max(1.0, frobenius_norm(obj.gradient(x0.matrix())));
}

SolveTrace p2gd_solve(const VarietyPoint& x0, const Objective& obj, const LineSearchConfig& cfg,
                      std::optional<double> tol, int max_iters) {
  cfg.validate();
  if (max_iters < 0) throw PreconditionError("p2gd_solve: max_iters must be non-negative");
  const double tolerance = tol.value_or(default_tolerance(x0, obj));
  if (!(tolerance >= 0.0)) throw PreconditionError("p2gd_solve: tolerance must be non-negative");
  const RetractionMap retraction = make_projective_retraction();

  VarietyPoint x = x0;
  std::vector<IterationRecord> records;
  double step = 0.0;
  int backtracks = 0;
  for (int iter = 0;; ++iter) {
    const double measure = stationarity_measure(x, obj);
    records.push_back({iter, obj.value(x.matrix()), measure, step, backtracks, x.rank()});
    if (measure <= tolerance) return {std::move(records), Termination::stationary, std::move(x)};
    if (iter == max_iters) return {std::move(records), Termination::max_iterations, std::move(x)};

    std::optional<TangentVector> v;
    try {
      v = descent_direction(x, obj);
    } catch (const StationaryPointError&) {
      // tol was set below the direction's own zero threshold.
      return {std::move(records), Termination::stationary, std::move(x)};
    }
    LineSearchResult ls = armijo_backtrack(x, *v, obj, cfg, retraction);
    step = ls.accepted_step;
    backtracks = ls.backtrack_count;
    x = std::move(ls.new_point);
  }
}

void write_trace_csv(std::ostream& out, const SolveTrace& trace) {
  out << "iter,f,stationarity,step,backtracks,rank\n";
  for (const auto& rec : trace.records) {
    out << rec.iter << ',' << format_real(rec.f) << ',' << format_real(rec.stationarity) << ','
        << format_real(rec.step) << ',' << rec.backtracks << ',' << rec.rank << '\n';
  }
}

}  // namespace lowrank
