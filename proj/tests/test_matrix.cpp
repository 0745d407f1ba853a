#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lowrank/errors.hpp"
#include "lowrank/matrix.hpp"
#include "lowrank/matrix_io.hpp"
#include "lowrank/sampling.hpp"
#include "test_helpers.hpp"

namespace lowrank {
namespace {

using testing::MatrixNear;

TEST(Matrix, FrobeniusNormExamples) {
  EXPECT_EQ(frobenius_norm(Matrix::zeros(2, 2)), 0.0);
  EXPECT_DOUBLE_EQ(frobenius_norm(Matrix::identity(3)), std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(frobenius_norm(Matrix::from_rows({{3, 4}})), 5.0);
}

TEST(Matrix, ArithmeticAndTranspose) {
  const Matrix a = Matrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  const Matrix b = Matrix::from_rows({{1, 0}, {0, 1}, {1, 1}});
  EXPECT_EQ(a * b, Matrix::from_rows({{4, 5}, {10, 11}}));
  EXPECT_EQ(a.transpose(), Matrix::from_rows({{1, 4}, {2, 5}, {3, 6}}));
  EXPECT_EQ(a + a, 2.0 * a);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_DOUBLE_EQ(inner(a, a), 91.0);
}

TEST(Matrix, DimensionMismatchThrows) {
  const Matrix a(2, 3), b(3, 2);
  EXPECT_THROW(a + b, DimensionError);
  EXPECT_THROW(a * a, DimensionError);
  EXPECT_THROW(inner(a, b), DimensionError);
  EXPECT_THROW(a.block(1, 1, 2, 2), DimensionError);
  EXPECT_THROW(Matrix(2, 2, {1, 2, 3}), DimensionError);
}

TEST(Matrix, RejectsNonFiniteEntries) {
  EXPECT_THROW(Matrix(1, 2, {1.0, NAN}), PreconditionError);
  EXPECT_THROW(Matrix(1, 1, {INFINITY}), PreconditionError);
}

TEST(Matrix, BlocksAndConcatenation) {
  const Matrix a = Matrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  EXPECT_EQ(a.block(1, 1, 2, 2), Matrix::from_rows({{5, 6}, {8, 9}}));
  EXPECT_EQ(a.cols_range(2, 1), Matrix::from_rows({{3}, {6}, {9}}));
  EXPECT_EQ(hcat(a.cols_range(0, 1), a.cols_range(1, 2)), a);
  EXPECT_EQ(Matrix::diag({3, 2, 0}), Matrix::from_rows({{3, 0, 0}, {0, 2, 0}, {0, 0, 0}}));
  EXPECT_EQ(a.cols_range(0, 0).rows(), 3u);
}

TEST(MatrixIo, WritesSeventeenDigitsAndReadsBack) {
  const Matrix a = Matrix::from_rows({{0.1, -2.0}, {1.0 / 3.0, 1e-300}});
  std::ostringstream out;
  write_matrix(out, a);
  EXPECT_EQ(out.str(), "2 2\n0.10000000000000001 -2\n0.33333333333333331 1e-300\n");
  std::istringstream in(out.str());
  EXPECT_EQ(read_matrix(in), a);
}

TEST(MatrixIo, RoundTripIsBitExact) {
  sampling::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = sampling::uniform_matrix(1 + trial % 5, 1 + trial % 3, rng, -1e3, 1e3);
    std::stringstream s;
    write_matrix(s, a);
    EXPECT_EQ(read_matrix(s), a);
  }
}

TEST(MatrixIo, MalformedInputIsRejected) {
  for (const char* text : {"", "2\n", "2 2\n1 2\n3\n", "1 2\n1 2 3\n", "1 1\nabc\n", "1 1\n1x\n",
                           "1 1\nnan\n", "1 1\n1\n2\n", "-1 2\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_matrix(in), ParseError) << "input: " << text;
  }
}

}  // namespace
}  // namespace lowrank
