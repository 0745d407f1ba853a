#include "lowrank/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lowrank/errors.hpp"

namespace lowrank {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Matrix read_matrix(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("matrix: missing header line");
  std::istringstream hs(header);
  long long m = -1, n = -1;
  if (!(hs >> m >> n) || m < 0 || n < 0) throw ParseError("matrix: header must be two non-negative integers");
  std::string extra;
  if (hs >> extra) throw ParseError("matrix: trailing data on header line");

  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m * n));
  std::string line;
  for (long long i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw ParseError("matrix: expected " + std::to_string(m) + " rows");
    std::istringstream ls(line);
    for (long long j = 0; j < n; ++j) {
      std::string tok;
      if (!(ls >> tok)) throw ParseError("matrix: row " + std::to_string(i + 1) + " is too short");
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("matrix: bad number '" + tok + "'");
      }
      if (used != tok.size()) throw ParseError("matrix: bad number '" + tok + "'");
      data.push_back(x);
    }
    if (ls >> extra) throw ParseError("matrix: row " + std::to_string(i + 1) + " is too long");
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParseError("matrix: trailing rows");
  }
  try {
    return Matrix(static_cast<std::size_t>(m), static_cast<std::size_t>(n), std::move(data));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("matrix: ") + e.what());
  }
}

void write_matrix(std::ostream& out, const Matrix& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_real(a(i, j));
    }
    out << '\n';
  }
}

Matrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_matrix(in);
}

void save_matrix(const std::filesystem::path& path, const Matrix& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_matrix(out, a);
}

}  // namespace lowrank
