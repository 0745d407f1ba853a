#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lowrank/matrix.hpp"
#include "lowrank/variety.hpp"

namespace lowrank {

/// Relative tolerance on the tangent-cone residual accepted as "v is tangent".
inline constexpr double kTangencyTolerance = 1e-8;

/// A map R(x, v) from tangent-cone pairs into the set with
/// R(x, t v) = x + t v + o(t) as t -> 0+.
///
/// No continuity of t -> R(x, t v) is assumed. R(x, 0) = x is enforced by the
/// wrapper itself; the wrapped callable only sees nonzero v and must be pure.
class RetractionMap {
 public:
  using Fn = std::function<VarietyPoint(const VarietyPoint&, const Matrix&)>;

  explicit RetractionMap(Fn fn) : fn_(std::move(fn)) {}

  VarietyPoint operator()(const VarietyPoint& x, const Matrix& v) const {
    if (v.is_zero()) return x;
    return fn_(x, v);
  }

 private:
  Fn fn_;
};

/// True when ||v - P_T(v)||_F <= kTangencyTolerance * max(1, ||v||_F).
bool is_tangent(const TangentConeChart& chart, const Matrix& v);

/// project_to_variety(X + v). Throws NotTangentError when v is not tangent at x.
VarietyPoint projective_retraction(const VarietyPoint& x, const Matrix& v);

RetractionMap make_projective_retraction();

/// ||R(x, t v) - (X + t v)||_F / t for each t. The grid must be positive and
/// strictly decreasing; v must be tangent at x.
std::vector<double> verify_retraction_axiom(const RetractionMap& retraction, const VarietyPoint& x,
                                            const Matrix& v, std::span<const double> t_grid);

}  // namespace lowrank
