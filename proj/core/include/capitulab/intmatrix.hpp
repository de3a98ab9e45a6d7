#pragma once

#include "capitulab/common.hpp"

#include <vector>

namespace capitulab {

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, const std::vector<std::vector<Integer>>& data);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<Integer>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<Integer> row(std::size_t i) const;
  void append_row(const std::vector<Integer>& r);
  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const = default;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row_i += k * row_j
  void add_row_multiple(std::size_t i, std::size_t j, const Integer& k);
  void add_col_multiple(std::size_t i, std::size_t j, const Integer& k);

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> a_;
};

// Diagonal of the Smith form, non-negative, each entry dividing the next.
// Length min(rows, cols).
std::vector<Integer> smith_diagonal(IntMatrix m);

struct HermiteResult {
  IntMatrix h;  // row echelon form, positive pivots, entries above pivots reduced
  IntMatrix u;  // unimodular with u * input == h
  std::size_t rank = 0;
};

HermiteResult hermite_form(const IntMatrix& m);

// Basis (as rows) of the left kernel {x : x * m == 0}.
IntMatrix left_kernel(const IntMatrix& m);

// True when v is an integer combination of the rows of m.
bool in_row_lattice(const IntMatrix& m, const std::vector<Integer>& v);

}  // namespace capitulab
