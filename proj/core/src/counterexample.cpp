#include "lowrank/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "lowrank/errors.hpp"
#include "lowrank/matrix_io.hpp"
#include "lowrank/svd.hpp"

namespace lowrank::counterexample {

namespace {

constexpr double kBasisTol = 1e-10;

Matrix outer(const Matrix& u2, const Matrix& v2, const std::array<double, 2>& w, double scale) {
  const Matrix wm(2, 1, {w[0], w[1]});
  return scale * ((u2 * wm) * (v2 * wm).transpose());
}

}  // namespace

CounterexampleSpec::CounterexampleSpec(VarietyBudget budget, std::vector<double> sigma, Matrix U, Matrix V,
                                       double t_star)
    : budget_(budget), sigma_(std::move(sigma)), u_(std::move(U)), v_(std::move(V)), t_star_(t_star) {
  const std::size_t r = budget_.r();
  if (sigma_.empty() || sigma_.size() > r) {
    throw PreconditionError("CounterexampleSpec: need 1 <= len(sigma) <= r");
  }
  for (std::size_t i = 0; i < sigma_.size(); ++i) {
    if (!(sigma_[i] > 0.0) || !std::isfinite(sigma_[i])) {
      throw PreconditionError("CounterexampleSpec: sigma entries must be positive and finite");
    }
    if (i > 0 && sigma_[i] > sigma_[i - 1]) throw PreconditionError("CounterexampleSpec: sigma must be descending");
  }
  if (u_.rows() != budget_.m() || u_.cols() != r + 1 || v_.rows() != budget_.n() || v_.cols() != r + 1) {
    throw PreconditionError("CounterexampleSpec: U must be m x (r+1) and V n x (r+1)");
  }
  if (orthonormality_defect(u_) > kBasisTol || orthonormality_defect(v_) > kBasisTol) {
    throw PreconditionError("CounterexampleSpec: U and V need orthonormal columns");
  }
  if (!(t_star_ > 0.0) || !std::isfinite(t_star_)) throw PreconditionError("CounterexampleSpec: t_star must be positive");
}

CounterexampleSpec default_spec() {
  const Matrix id = Matrix::identity(3);
  return CounterexampleSpec(VarietyBudget(3, 3, 2), {2.0, 1.0}, id, id, 1.0);
}

CounterexampleSpec deficient_spec() {
  const Matrix id = Matrix::identity(3);
  return CounterexampleSpec(VarietyBudget(3, 3, 2), {1.0}, id, id, 1.0);
}

Counterexample build_counterexample(const CounterexampleSpec& spec) {
  const std::size_t r = spec.budget().r();
  const std::size_t k = spec.base_rank();

  Matrix core = Matrix::diag(r + 1, r + 1, spec.sigma());
  const Matrix x = spec.U() * core * spec.V().transpose();

  Matrix shape(r + 1, r + 1);
  shape(k - 1, k - 1) = -1.0;
  shape(k - 1, k) = 0.5;
  shape(k, k - 1) = 0.5;
  for (std::size_t j = k + 1; j <= r; ++j) shape(j, j) = 0.75;
  Matrix z = (spec.sigma_last() / spec.t_star()) * (spec.U() * shape * spec.V().transpose());

  return Counterexample{make_point(x, spec.budget()), std::move(z)};
}

LambdaPair lambda_pm(double tau) {
  const double a = 1.0 - tau;
  const double d = std::sqrt(a * a + tau * tau);
  return {(a + d) / 2.0, (a - d) / 2.0};
}

EigenvectorPair w_pm(double tau) {
  if (tau == 0.0) throw DegenerateInputError("w_pm: tau = 0 gives a zero eigenvector numerator");
  const LambdaPair l = lambda_pm(tau);
  const double half = tau / 2.0;
  const double np = std::hypot(l.plus, half);
  const double nm = std::hypot(l.minus, half);
  return {{l.plus / np, half / np}, {l.minus / nm, half / nm}};
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::below_one:
      return "below_one";
    case Branch::above_one:
      return "above_one";
    case Branch::at_one:
      return "at_one";
  }
  return "unknown";
}

Branch classify(double tau) {
  if (!(tau > kBranchLow && tau < kBranchHigh)) {
    throw OutOfBranchError("tau = " + format_real(tau) + " is outside (12/17, 4/3)");
  }
  if (tau == 1.0) return Branch::at_one;
  return tau < 1.0 ? Branch::below_one : Branch::above_one;
}

Matrix analytic_projection(const CounterexampleSpec& spec, double tau) {
  const Branch branch = classify(tau);
  if (branch == Branch::at_one) {
    throw OutOfBranchError("analytic_projection: tau = 1 is a tie; no branch formula applies");
  }
  const std::size_t r = spec.budget().r();
  const std::size_t k = spec.base_rank();
  const double s = spec.sigma_last();

  // Untouched triplets: sigma_1..sigma_{k-1} and the (3/4) tau sigma_k block.
  Matrix core(r + 1, r + 1);
  for (std::size_t i = 0; i + 1 < k; ++i) core(i, i) = spec.sigma()[i];
  for (std::size_t j = k + 1; j <= r; ++j) core(j, j) = 0.75 * tau * s;
  Matrix p = spec.U() * core * spec.V().transpose();

  const LambdaPair l = lambda_pm(tau);
  const EigenvectorPair w = w_pm(tau);
  // Below 1 the kept eigenvalue is lambda_+; above 1 it is lambda_- (kept via
  // its absolute value with the left vector negated, which cancels here).
  if (branch == Branch::below_one) {
    p += outer(spec.swap_frame_U(), spec.swap_frame_V(), w.plus, s * l.plus);
  } else {
    p += outer(spec.swap_frame_U(), spec.swap_frame_V(), w.minus, s * l.minus);
  }
  return p;
}

Matrix numeric_projection(const CounterexampleSpec& spec, double tau) {
  const Counterexample ce = build_counterexample(spec);
  return project_to_variety(ce.X.matrix() + (tau * spec.t_star()) * ce.Z, spec.budget()).matrix();
}

Matrix frame_block(const CounterexampleSpec& spec, const Matrix& p) {
  return spec.swap_frame_U().transpose() * p * spec.swap_frame_V();
}

std::vector<SweepRecord> sweep(const CounterexampleSpec& spec, std::span<const double> tau_grid) {
  for (double tau : tau_grid) classify(tau);

  const Counterexample ce = build_counterexample(spec);
  const std::size_t r = spec.budget().r();
  std::vector<SweepRecord> records;
  records.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    const double t = tau * spec.t_star();
    const Matrix moved = ce.X.matrix() + t * ce.Z;
    const SvdFactorization f = svd(moved);
    SweepRecord rec{tau,
                    t,
                    {f.singular_values.begin(), f.singular_values.begin() + static_cast<std::ptrdiff_t>(r + 1)},
                    project_to_variety(moved, spec.budget()).matrix(),
                    classify(tau),
                    std::nullopt,
                    std::numeric_limits<double>::quiet_NaN()};
    if (rec.branch != Branch::at_one) {
      rec.analytic_projection = analytic_projection(spec, tau);
      rec.deviation = frobenius_norm(rec.projection - *rec.analytic_projection);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

double max_deviation(std::span<const SweepRecord> records) {
  double worst = 0.0;
  for (const auto& rec : records) {
    if (rec.branch != Branch::at_one) worst = std::max(worst, rec.deviation);
  }
  return worst;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records, std::size_t r) {
  out << "tau,t";
  for (std::size_t i = 1; i <= r + 1; ++i) out << ",sigma_" << i;
  out << ",deviation,branch\n";
  for (const auto& rec : records) {
    out << format_real(rec.tau) << ',' << format_real(rec.t);
    for (double s : rec.singular_values) out << ',' << format_real(s);
    out << ',' << format_real(rec.deviation) << ',' << to_string(rec.branch) << '\n';
  }
}

JumpMagnitude jump_magnitude(const CounterexampleSpec& spec, double delta) {
  const double closed = spec.sigma_last() * std::sqrt(2.0) / 2.0;
  const Matrix left = numeric_projection(spec, 1.0 - delta);
  const Matrix right = numeric_projection(spec, 1.0 + delta);
  return {closed, frobenius_norm(left - right)};
}

}  // namespace lowrank::counterexample
