#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lowrank/matrix.hpp"
#include "lowrank/variety.hpp"

// Discontinuity of the projective retraction on the bounded-rank set.
//
// For X = U diag(sigma_1..sigma_k, 0_{r-k+1}) V^T (k = rank X) and
//   Z = sigma_k / t* * U diag(0_{k-1}, [[-1, 1/2], [1/2, 0]], 3/4 I_{r-k}) V^T,
// the matrix X + t Z (tau = t / t*) has rank r + 1 and its two singular values
// sigma_k |lambda_pm(tau)| swap order at tau = 1. Every selection of
// t -> P(X + t Z) therefore jumps at t*.
namespace lowrank::counterexample {

inline constexpr double kBranchLow = 12.0 / 17.0;
inline constexpr double kBranchHigh = 4.0 / 3.0;
/// Offset from tau = 1 used for the one-sided limits.
inline constexpr double kLimitOffset = 1e-6;

class CounterexampleSpec {
 public:
  /// Throws PreconditionError unless sigma is positive, descending, of length
  /// at most r, and U (m x (r+1)), V (n x (r+1)) have orthonormal columns
  /// within 1e-10, and t_star > 0.
  CounterexampleSpec(VarietyBudget budget, std::vector<double> sigma, Matrix U, Matrix V, double t_star);

  const VarietyBudget& budget() const noexcept { return budget_; }
  const std::vector<double>& sigma() const noexcept { return sigma_; }
  const Matrix& U() const noexcept { return u_; }
  const Matrix& V() const noexcept { return v_; }
  double t_star() const noexcept { return t_star_; }
  std::size_t base_rank() const noexcept { return sigma_.size(); }
  /// sigma_k, the smallest nonzero singular value of X.
  double sigma_last() const noexcept { return sigma_.back(); }

  /// Columns k-1 and k (0-based) of U and V: the plane where the swap happens.
  Matrix swap_frame_U() const { return u_.cols_range(base_rank() - 1, 2); }
  Matrix swap_frame_V() const { return v_.cols_range(base_rank() - 1, 2); }

 private:
  VarietyBudget budget_;
  std::vector<double> sigma_;
  Matrix u_;
  Matrix v_;
  double t_star_;
};

/// m = n = 3, r = 2, U = V = I, sigma = (2, 1), t* = 1.
CounterexampleSpec default_spec();
/// m = n = 3, r = 2, U = V = I, sigma = (1), t* = 1 (exercises the 3/4 I block).
CounterexampleSpec deficient_spec();

struct Counterexample {
  VarietyPoint X;
  Matrix Z;
};

Counterexample build_counterexample(const CounterexampleSpec& spec);

struct LambdaPair {
  double plus;
  double minus;
};

/// Eigenvalues of [[1 - tau, tau/2], [tau/2, 0]]: (1 - tau +- sqrt((1-tau)^2 + tau^2)) / 2.
LambdaPair lambda_pm(double tau);

struct EigenvectorPair {
  std::array<double, 2> plus;
  std::array<double, 2> minus;
};

/// Unit eigenvectors (lambda_pm, tau/2) / ||.||. Throws DegenerateInputError at tau = 0.
EigenvectorPair w_pm(double tau);

enum class Branch { below_one, above_one, at_one };

std::string_view to_string(Branch b);

/// Branch of tau; throws OutOfBranchError outside (12/17, 4/3).
Branch classify(double tau);

/// Closed-form projection of X + tau t* Z for tau in (12/17, 1) or (1, 4/3).
/// Throws OutOfBranchError elsewhere (including tau = 1).
Matrix analytic_projection(const CounterexampleSpec& spec, double tau);

/// Numeric projection of X + tau t* Z through project_to_variety.
Matrix numeric_projection(const CounterexampleSpec& spec, double tau);

/// U2^T P V2 with U2, V2 the swap frame.
Matrix frame_block(const CounterexampleSpec& spec, const Matrix& p);

struct SweepRecord {
  double tau;
  double t;
  std::vector<double> singular_values;  // leading r + 1 singular values of X + t Z
  Matrix projection;
  Branch branch;
  std::optional<Matrix> analytic_projection;  // absent at tau = 1
  double deviation;                           // NaN at tau = 1
};

/// One record per grid point. Throws OutOfBranchError if a point lies outside (12/17, 4/3).
std::vector<SweepRecord> sweep(const CounterexampleSpec& spec, std::span<const double> tau_grid);

/// Largest deviation over records not flagged at_one (0 for an empty sweep).
double max_deviation(std::span<const SweepRecord> records);

/// CSV: tau,t,sigma_1..sigma_{r+1},deviation,branch
void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records, std::size_t r);

struct JumpMagnitude {
  double closed_form;  // sigma_k * sqrt(2) / 2
  double numeric;      // ||P(1 - delta) - P(1 + delta)||_F
};

JumpMagnitude jump_magnitude(const CounterexampleSpec& spec, double delta = kLimitOffset);

}  // namespace lowrank::counterexample
