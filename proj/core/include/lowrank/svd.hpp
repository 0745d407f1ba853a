#pragma once

#include <cstddef>
#include <vector>

#include "lowrank/matrix.hpp"

namespace lowrank {

/// Singular values below this fraction of sigma_1 count as zero when a rank
/// is determined.
inline constexpr double kDefaultRankTolerance = 1e-12;

struct SvdFactorization {
  Matrix U;                             // m x k, orthonormal columns
  std::vector<double> singular_values;  // length k, descending, >= 0
  Matrix V;                             // n x k, orthonormal columns

  std::size_t k() const noexcept { return singular_values.size(); }

  /// U diag(sigma) V^T using only the leading `count` triplets.
  Matrix reconstruct(std::size_t count) const;
  Matrix reconstruct() const { return reconstruct(k()); }
};

/// Thin SVD with k = min(m, n), computed by one-sided (Hestenes) Jacobi.
///
/// The result is a pure function of the input bits. Sign convention: in each
/// singular pair the largest-magnitude entry of the left vector is positive
/// (the first one on ties). Columns belonging to zero singular values are
/// completed with orthonormal_complement, so U and V are always Stiefel.
SvdFactorization svd(const Matrix& a);

/// Number of singular values > rel_tol * sigma_1.
std::size_t numerical_rank(const std::vector<double>& singular_values,
                           double rel_tol = kDefaultRankTolerance);
std::size_t numerical_rank(const Matrix& a, double rel_tol = kDefaultRankTolerance);

/// Flip the sign of column j of `left` (and `right`, if non-null) so that the
/// largest-magnitude entry of left's column is positive (first one on ties,
/// magnitudes within a relative 1e-12 counting as tied).
void normalize_column_sign(Matrix& left, std::size_t j, Matrix* right = nullptr);

/// Orthonormal basis of the orthogonal complement of im(u) (Householder completion).
///
/// u must have orthonormal columns within 1e-10. Columns of the result follow
/// the same sign convention as svd().
Matrix orthonormal_complement(const Matrix& u);

}  // namespace lowrank
