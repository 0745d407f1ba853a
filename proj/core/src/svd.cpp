#include "lowrank/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "lowrank/errors.hpp"

namespace lowrank {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOrthonormalInputTol = 1e-10;

// Hestenes one-sided Jacobi on a tall matrix (m >= n). On return the columns
// of w are mutually orthogonal and a = w * v^T.
void orthogonalize_columns(Matrix& w, Matrix& v) {
  const std::size_t m = w.rows();
  const std::size_t n = w.cols();
  // Rotate a pair while |gamma| > tol * sqrt(alpha * beta): a relative test,
  // so small singular values are resolved to full relative accuracy.
  const double tol = static_cast<double>(std::max<std::size_t>(m, 1)) *
                     std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double wp = w(i, p);
          const double wq = w(i, q);
          alpha += wp * wp;
          beta += wq * wq;
          gamma += wp * wq;
        }
        if (gamma == 0.0 || std::abs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        for (std::size_t i = 0; i < m; ++i) {
          const double wp = w(i, p);
          const double wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p);
          const double vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
        rotated = true;
      }
    }
    if (!rotated) return;
  }
}

SvdFactorization svd_tall(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix w = a;
  Matrix v = Matrix::identity(n);
  orthogonalize_columns(w, v);

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += w(i, j) * w(i, j);
    norms[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdFactorization f{Matrix(m, n), std::vector<double>(n, 0.0), Matrix(n, n)};
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    for (std::size_t i = 0; i < n; ++i) f.V(i, k) = v(i, j);
    const double sigma = norms[j];
    if (sigma >= std::numeric_limits<double>::min()) {
      f.singular_values[k] = sigma;
      for (std::size_t i = 0; i < m; ++i) f.U(i, k) = w(i, j) / sigma;
      ++nonzero;
    }
  }
  // Zero singular values sort last; their left vectors complete the basis.
  if (nonzero < n) {
    const Matrix fill = orthonormal_complement(f.U.cols_range(0, nonzero));
    f.U.set_block(0, nonzero, fill.cols_range(0, n - nonzero));
  }
  return f;
}

}  // namespace

Matrix SvdFactorization::reconstruct(std::size_t count) const {
  count = std::min(count, k());
  Matrix us = U.cols_range(0, count);
  for (std::size_t j = 0; j < count; ++j)
    for (std::size_t i = 0; i < us.rows(); ++i) us(i, j) *= singular_values[j];
  return us * V.cols_range(0, count).transpose();
}

void normalize_column_sign(Matrix& left, std::size_t j, Matrix* right) {
  // Magnitudes within a relative 1e-12 of the maximum count as tied, so that
  // rounding noise cannot flip which entry decides the sign.
  double largest = 0.0;
  for (std::size_t i = 0; i < left.rows(); ++i) largest = std::max(largest, std::abs(left(i, j)));
  std::size_t arg = 0;
  while (arg + 1 < left.rows() && std::abs(left(arg, j)) < largest * (1.0 - 1e-12)) ++arg;
  if (left.rows() == 0 || left(arg, j) >= 0.0) return;
  for (std::size_t i = 0; i < left.rows(); ++i) left(i, j) = -left(i, j);
  if (right != nullptr) {
    for (std::size_t i = 0; i < right->rows(); ++i) (*right)(i, j) = -(*right)(i, j);
  }
}

SvdFactorization svd(const Matrix& a) {
  if (!a.all_finite()) throw PreconditionError("svd: input has non-finite entries");
  SvdFactorization f;
  if (a.rows() >= a.cols()) {
    f = svd_tall(a);
  } else {
    f = svd_tall(a.transpose());
    std::swap(f.U, f.V);
  }
  for (std::size_t j = 0; j < f.k(); ++j) normalize_column_sign(f.U, j, &f.V);
  return f;
}

std::size_t numerical_rank(const std::vector<double>& singular_values, double rel_tol) {
  if (singular_values.empty() || singular_values.front() == 0.0) return 0;
  const double cutoff = rel_tol * singular_values.front();
  return static_cast<std::size_t>(std::count_if(singular_values.begin(), singular_values.end(),
                                                [&](double s) { return s > cutoff; }));
}

std::size_t numerical_rank(const Matrix& a, double rel_tol) {
  return numerical_rank(svd(a).singular_values, rel_tol);
}

Matrix orthonormal_complement(const Matrix& u) {
  const std::size_t m = u.rows();
  const std::size_t p = u.cols();
  if (p > m) throw PreconditionError("orthonormal_complement: more columns than rows");
  if (orthonormality_defect(u) > kOrthonormalInputTol) {
    throw PreconditionError("orthonormal_complement: input columns are not orthonormal");
  }

  // Householder QR of u: H_0 ... H_{p-1} u = R. The trailing m - p columns of
  // Q = H_0 ... H_{p-1} span the complement.
  Matrix a = u;
  std::vector<std::vector<double>> reflectors;
  reflectors.reserve(p);
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<double> x(m - j);
    for (std::size_t i = j; i < m; ++i) x[i - j] = a(i, j);
    double norm = 0.0;
    for (double xi : x) norm += xi * xi;
    norm = std::sqrt(norm);
    x[0] += (x[0] >= 0.0 ? norm : -norm);
    double vnorm2 = 0.0;
    for (double xi : x) vnorm2 += xi * xi;
    if (vnorm2 == 0.0) {
      reflectors.emplace_back();
      continue;
    }
    for (double& xi : x) xi /= std::sqrt(vnorm2);
    // a(j:, j:) -= 2 v (v^T a(j:, j:))
    for (std::size_t c = j; c < p; ++c) {
      double d = 0.0;
      for (std::size_t i = j; i < m; ++i) d += x[i - j] * a(i, c);
      for (std::size_t i = j; i < m; ++i) a(i, c) -= 2.0 * d * x[i - j];
    }
    reflectors.push_back(std::move(x));
  }

  Matrix q(m, m - p);
  for (std::size_t c = 0; c < m - p; ++c) q(p + c, c) = 1.0;
  for (std::size_t jj = p; jj-- > 0;) {
    const auto& v = reflectors[jj];
    if (v.empty()) continue;
    for (std::size_t c = 0; c < q.cols(); ++c) {
      double d = 0.0;
      for (std::size_t i = jj; i < m; ++i) d += v[i - jj] * q(i, c);
      for (std::size_t i = jj; i < m; ++i) q(i, c) -= 2.0 * d * v[i - jj];
    }
  }
  for (std::size_t c = 0; c < q.cols(); ++c) normalize_column_sign(q, c);
  return q;
}

}  // namespace lowrank
