#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lowrank/matrix.hpp"

namespace lowrank {

// Text format: first line "m n", then m lines of n numbers separated by
// single spaces. Numbers are written with 17 significant digits.

Matrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const Matrix& a);

Matrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const Matrix& a);

/// %.17g rendering shared by the matrix and CSV writers.
std::string format_real(double x);

}  // namespace lowrank
