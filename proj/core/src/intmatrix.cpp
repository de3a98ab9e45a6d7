#include "capitulab/intmatrix.hpp"

#include <utility>

#include "capitulab/arith.hpp"

namespace capitulab {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, const std::vector<std::vector<Integer>>& data)
    : IntMatrix(rows, cols) {
  if (data.size() != rows) throw DomainError("IntMatrix: row count mismatch");
  for (std::size_t i = 0; i < rows; ++i) {
    if (data[i].size() != cols) throw DomainError("IntMatrix: column count mismatch");
    for (std::size_t j = 0; j < cols; ++j) (*this)(i, j) = data[i][j];
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

std::vector<Integer> IntMatrix::row(std::size_t i) const {
  return {a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_};
}

void IntMatrix::append_row(const std::vector<Integer>& r) {
  if (r.size() != cols_) throw DomainError("append_row: column count mismatch");
  a_.insert(a_.end(), r.begin(), r.end());
  ++rows_;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw DomainError("IntMatrix product: dimension mismatch");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += k * (*this)(j, c);
}

void IntMatrix::add_col_multiple(std::size_t i, std::size_t j, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += k * (*this)(r, j);
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

std::vector<Integer> smith_diagonal(IntMatrix m) {
  const std::size_t R = m.rows(), C = m.cols(), n = std::min(R, C);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = R, pj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (m(i, j) != 0 && (pi == R || abs(m(i, j)) < abs(m(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == R) {
        std::vector<Integer> d;
        for (std::size_t k = 0; k < n; ++k) d.push_back(abs(m(k, k)));
        return d;
      }
      m.swap_rows(t, pi);
      m.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (m(i, t) == 0) continue;
        m.add_row_multiple(i, t, -floor_div(m(i, t), m(t, t)));
        if (m(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (m(t, j) == 0) continue;
        m.add_col_multiple(j, t, -floor_div(m(t, j), m(t, t)));
        if (m(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility of the trailing block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (!mpz_divisible_p(m(i, j).get_mpz_t(), m(t, t).get_mpz_t())) {
            m.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
  std::vector<Integer> d;
  for (std::size_t k = 0; k < n; ++k) d.push_back(abs(m(k, k)));
  return d;
}

HermiteResult hermite_form(const IntMatrix& input) {
  HermiteResult res{input, IntMatrix::identity(input.rows()), 0};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  const std::size_t R = h.rows(), C = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    // Euclid on column c below row r.
    for (;;) {
      std::size_t best = R;
      for (std::size_t i = r; i < R; ++i)
        if (h(i, c) != 0 && (best == R || abs(h(i, c)) < abs(h(best, c)))) best = i;
      if (best == R) break;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < R; ++i) {
        if (h(i, c) == 0) continue;
        Integer q = floor_div(h(i, c), h(r, c));
        h.add_row_multiple(i, r, -q);
        u.add_row_multiple(i, r, -q);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      for (std::size_t j = 0; j < C; ++j) h(r, j) = -h(r, j);
      for (std::size_t j = 0; j < R; ++j) u(r, j) = -u(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h(i, c), h(r, c));
      h.add_row_multiple(i, r, -q);
      u.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  res.rank = r;
  return res;
}

IntMatrix left_kernel(const IntMatrix& m) {
  HermiteResult hr = hermite_form(m);
  IntMatrix k(0, m.rows());
  for (std::size_t i = hr.rank; i < m.rows(); ++i) k.append_row(hr.u.row(i));
  return k;
}

bool in_row_lattice(const IntMatrix& m, const std::vector<Integer>& v) {
  if (v.size() != m.cols()) throw DomainError("in_row_lattice: dimension mismatch");
  HermiteResult hr = hermite_form(m);
  std::vector<Integer> w = v;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (r < hr.rank && hr.h(r, c) != 0) {
      if (!mpz_divisible_p(w[c].get_mpz_t(), hr.h(r, c).get_mpz_t())) return false;
      Integer q = w[c] / hr.h(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) w[j] -= q * hr.h(r, j);
      ++r;
    } else if (w[c] != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace capitulab
