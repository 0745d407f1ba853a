#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lowrank/matrix.hpp"

namespace lowrank::testing {

inline ::testing::AssertionResult MatrixNear(const Matrix& actual, const Matrix& expected, double tol) {
  if (actual.rows() != expected.rows() || actual.cols() != expected.cols()) {
    return ::testing::AssertionFailure() << "shape " << actual.rows() << "x" << actual.cols() << " vs "
                                         << expected.rows() << "x" << expected.cols();
  }
  const double d = frobenius_norm(actual - expected);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "||actual - expected||_F = " << d << " > " << tol;
}

// The tail half of the sequence is non-increasing, with strict decrease
// wherever the values are above the roundoff floor.
inline bool eventually_decreasing(const std::vector<double>& seq, double floor = 1e-12) {
  for (std::size_t i = seq.size() / 2; i + 1 < seq.size(); ++i) {
    if (seq[i + 1] <= floor) continue;
    if (!(seq[i + 1] < seq[i])) return false;
  }
  return true;
}

}  // namespace lowrank::testing
