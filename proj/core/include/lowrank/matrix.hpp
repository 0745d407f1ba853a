#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lowrank {

/// Dense real matrix stored row-major.
///
/// Every entry is finite; the constructors that take external data reject
/// NaN/Inf. Zero-sized dimensions are allowed so that empty bases (m x 0)
/// can be represented.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n);
  static Matrix diag(std::span<const double> d);
  static Matrix diag(std::initializer_list<double> d);
  /// Rectangular diagonal: d placed on the main diagonal of a rows x cols matrix.
  static Matrix diag(std::size_t rows, std::size_t cols, std::span<const double> d);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

  std::span<const double> entries() const noexcept { return data_; }

  Matrix transpose() const;
  /// Columns [first, first + count).
  Matrix cols_range(std::size_t first, std::size_t count) const;
  Matrix block(std::size_t row, std::size_t col, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t row, std::size_t col, const Matrix& b);
  std::vector<double> column(std::size_t j) const;

  bool is_zero() const noexcept;
  bool all_finite() const noexcept;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s) noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// [a b]
Matrix hcat(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& a);
/// Frobenius inner product trace(a^T b).
double inner(const Matrix& a, const Matrix& b);

/// ||a^T a - I||_F, the Stiefel defect of a's columns.
double orthonormality_defect(const Matrix& a);

}  // namespace lowrank
