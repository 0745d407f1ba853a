#include "lowrank/retraction.hpp"

#include <algorithm>

#include "lowrank/errors.hpp"

namespace lowrank {

bool is_tangent(const TangentConeChart& chart, const Matrix& v) {
  return tangent_cone_residual(chart, v) <= kTangencyTolerance * std::max(1.0, frobenius_norm(v));
}

VarietyPoint projective_retraction(const VarietyPoint& x, const Matrix& v) {
  if (v.rows() != x.budget().m() || v.cols() != x.budget().n()) {
    throw DimensionError("projective_retraction: tangent vector shape does not match the point");
  }
  if (v.is_zero()) return x;
  if (!is_tangent(tangent_cone_chart(x), v)) {
    throw NotTangentError("projective_retraction: v is not in the tangent cone at x");
  }
  return project_to_variety(x.matrix() + v, x.budget());
}

RetractionMap make_projective_retraction() { return RetractionMap(&projective_retraction); }

std::vector<double> verify_retraction_axiom(const RetractionMap& retraction, const VarietyPoint& x,
                                            const Matrix& v, std::span<const double> t_grid) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0)) throw PreconditionError("verify_retraction_axiom: grid values must be positive");
    if (i > 0 && !(t_grid[i] < t_grid[i - 1])) {
      throw PreconditionError("verify_retraction_axiom: grid must be strictly decreasing");
    }
  }
  if (!v.is_zero() && !is_tangent(tangent_cone_chart(x), v)) {
    throw NotTangentError("verify_retraction_axiom: v is not in the tangent cone at x");
  }
  std::vector<double> residuals;
  residuals.reserve(t_grid.size());
  for (double t : t_grid) {
    const Matrix step = t * v;
    const VarietyPoint moved = retraction(x, step);
    residuals.push_back(frobenius_norm(moved.matrix() - (x.matrix() + step)) / t);
  }
  return residuals;
}

}  // namespace lowrank
