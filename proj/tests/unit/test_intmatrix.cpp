#include "capitulab/intmatrix.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace capitulab;

namespace {

Integer det(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    const Integer t = m[0][j] * det(minor);
    s += (j % 2 == 0) ? t : Integer(-t);
  }
  return s;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// d_k = D_k / D_{k-1} with D_k the gcd of all k x k minors.
std::vector<Integer> determinantal_divisors(const IntMatrix& a) {
  const std::size_t r = std::min(a.rows(), a.cols());
  std::vector<Integer> D{1}, out;
  for (std::size_t k = 1; k <= r; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(a.rows(), k, 0, cur, rs);
    subsets(a.cols(), k, 0, cur, cs);
    Integer g = 0;
    for (const auto& R : rs)
      for (const auto& C : cs) {
        std::vector<std::vector<Integer>> m;
        for (auto i : R) {
          std::vector<Integer> row;
          for (auto j : C) row.push_back(a(i, j));
          m.push_back(row);
        }
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(det(m)).get_mpz_t());
      }
    D.push_back(g);
    out.push_back(D[k - 1] == 0 ? Integer(0) : Integer(g / D[k - 1]));
  }
  return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long range) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % (2 * range + 1)) - range;
  return m;
}

}  // namespace

TEST(IntMatrix, SmithOfDiagonalSortsIntoChain) {
  EXPECT_EQ(smith_diagonal(IntMatrix::diagonal({4, 6})), (std::vector<Integer>{2, 12}));
  EXPECT_EQ(smith_diagonal(IntMatrix::diagonal({12, 4, 2})), (std::vector<Integer>{2, 4, 12}));
  EXPECT_EQ(smith_diagonal(IntMatrix(2, 3)), (std::vector<Integer>{0, 0}));
}

TEST(IntMatrix, SmithMatchesDeterminantalDivisors) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 400; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const IntMatrix m = random_matrix(rng, r, c, t % 2 ? 9 : 40);
    ASSERT_EQ(smith_diagonal(m), determinantal_divisors(m)) << "trial " << t;
  }
}

TEST(IntMatrix, HermiteTransformIsExact) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 4;
    const IntMatrix m = random_matrix(rng, r, c, 12);
    const auto h = hermite_form(m);
    ASSERT_EQ(h.u * m, h.h);
    const Integer du = det([&] {
      std::vector<std::vector<Integer>> v;
      for (std::size_t i = 0; i < h.u.rows(); ++i) v.push_back(h.u.row(i));
      return v;
    }());
    ASSERT_TRUE(du == 1 || du == -1);
    // Rows past the rank vanish; pivots step right and are positive.
    long last = -1;
    for (std::size_t i = 0; i < h.h.rows(); ++i) {
      long piv = -1;
      for (std::size_t j = 0; j < c; ++j)
        if (h.h(i, j) != 0) {
          piv = static_cast<long>(j);
          break;
        }
      if (i >= h.rank) {
        ASSERT_EQ(piv, -1);
        continue;
      }
      ASSERT_GT(piv, last);
      ASSERT_GT(h.h(i, piv), 0);
      for (std::size_t k = 0; k < i; ++k) {
        ASSERT_GE(h.h(k, piv), 0);
        ASSERT_LT(h.h(k, piv), h.h(i, piv));
      }
      last = piv;
    }
  }
}

TEST(IntMatrix, LeftKernelAnnihilatesAndHasFullRank) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 3;
    const IntMatrix m = random_matrix(rng, r, c, 6);
    const IntMatrix k = left_kernel(m);
    const auto rank = hermite_form(m).rank;
    ASSERT_EQ(k.rows(), r - rank);
    if (k.rows()) {
      const IntMatrix z = k * m;
      for (std::size_t i = 0; i < z.rows(); ++i)
        for (std::size_t j = 0; j < z.cols(); ++j) ASSERT_EQ(z(i, j), 0);
    }
  }
}

TEST(IntMatrix, RowLatticeMembership) {
  const IntMatrix m = IntMatrix::diagonal({4, 6});
  EXPECT_TRUE(in_row_lattice(m, {8, -6}));
  EXPECT_FALSE(in_row_lattice(m, {2, 0}));
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const IntMatrix a = random_matrix(rng, 3, 3, 8);
    std::vector<Integer> v(3);
    for (std::size_t i = 0; i < 3; ++i) {
      const long c = static_cast<long>(rng() % 11) - 5;
      for (std::size_t j = 0; j < 3; ++j) v[j] += c * a(i, j);
    }
    ASSERT_TRUE(in_row_lattice(a, v));
  }
}
