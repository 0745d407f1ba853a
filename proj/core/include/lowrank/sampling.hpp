#pragma once

#include <cstddef>
#include <random>

#include "lowrank/matrix.hpp"
#include "lowrank/variety.hpp"

// Random instances for property checks and the CLI's verify-retraction probes.
namespace lowrank::sampling {

using Rng = std::mt19937_64;

/// Entries uniform in [lo, hi].
Matrix uniform_matrix(std::size_t rows, std::size_t cols, Rng& rng, double lo = -1.0, double hi = 1.0);

/// m x p with orthonormal columns (left singular vectors of a uniform matrix).
Matrix random_orthonormal(std::size_t m, std::size_t p, Rng& rng);

/// Random m x n matrix of rank `rank` with singular values drawn in [0.5, 2].
Matrix random_rank_matrix(std::size_t m, std::size_t n, std::size_t rank, Rng& rng);

/// Point of the given rank (<= budget.r()).
VarietyPoint random_point(const VarietyBudget& budget, std::size_t rank, Rng& rng);

/// Tangent-cone element with uniform A, B, C blocks and a corner block of rank
/// exactly min(corner budget, corner dims), scaled by corner_weight.
TangentVector random_tangent_vector(const TangentConeChart& chart, Rng& rng, double corner_weight = 1.0);

}  // namespace lowrank::sampling
