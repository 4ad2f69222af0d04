#pragma once
// Small text output helpers: matrices as CSV with a "rows,cols,name" header,
// and whitespace-separated point tables. Full double precision throughout.

#include <Eigen/Dense>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace trifr {

inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

inline void write_matrix_csv(const std::string& path, const std::string& name,
                             const Eigen::MatrixXd& A) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << A.rows() << "," << A.cols() << "," << name << "\n";
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j) out << ",";
      out << format_full(A(i, j));
    }
    out << "\n";
  }
}

// Rows of equal-length tuples, e.g. "x y w" point tables.
inline void write_point_table(const std::string& path,
                              const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) out << " ";
      out << format_full(r[j]);
    }
    out << "\n";
  }
}

// Generic CSV with a header line and uniform numeric rows.
inline void write_csv(const std::string& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << header << "\n";
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) out << ",";
      out << format_full(r[j]);
    }
    out << "\n";
  }
}

}  // namespace trifr
