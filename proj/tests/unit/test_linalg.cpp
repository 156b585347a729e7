#include <gtest/gtest.h>

#include <random>

#include "coarse/linalg.hpp"
#include "oracles/determinantal.hpp"

using coarse::Integer;
using coarse::IntMatrix;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

std::vector<std::vector<long long>> as_rows(const IntMatrix& m) {
  std::vector<std::vector<long long>> out(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).to_int64();
  return out;
}

bool is_diagonal_chain(const IntMatrix& d, std::size_t rank) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && !d(i, j).is_zero()) return false;
  for (std::size_t i = 0; i < rank; ++i) {
    if (d(i, i) <= Integer(0)) return false;
    if (i > 0 && !coarse::floor_divmod(d(i, i), d(i - 1, i - 1)).rem.is_zero()) return false;
  }
  for (std::size_t i = rank; i < std::min(d.rows(), d.cols()); ++i)
    if (!d(i, i).is_zero()) return false;
  return true;
}

}  // namespace

TEST(Smith, KnownExample) {
  IntMatrix a = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  auto f = coarse::smith_normal_form(a);
  ASSERT_EQ(f.rank, 3u);
  EXPECT_EQ(f.diagonal[0], Integer(2));
  EXPECT_EQ(f.diagonal[1], Integer(6));
  EXPECT_EQ(f.diagonal[2], Integer(12));
}

TEST(Smith, TransformsAreInverseAndDiagonalize) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 150; ++t) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    IntMatrix a = random_matrix(rng, r, c, -9, 9);
    auto f = coarse::smith_normal_form(a);
    EXPECT_EQ(f.u * a * f.v, f.d);
    EXPECT_EQ(f.u * f.u_inv, IntMatrix::identity(r));
    EXPECT_EQ(f.v * f.v_inv, IntMatrix::identity(c));
    EXPECT_TRUE(is_diagonal_chain(f.d, f.rank));
  }
}

TEST(Smith, InvariantFactorsMatchDeterminantalOracle) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 120; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix a = random_matrix(rng, r, c, -6, 6);
    if (t % 3 == 0 && r > 1) {
      // force rank deficiency and interesting torsion
      for (std::size_t j = 0; j < c; ++j) a(r - 1, j) = a(0, j) * Integer(2);
    }
    auto mine = coarse::invariant_factors(a);
    auto want = oracle::invariant_factors(as_rows(a));
    ASSERT_EQ(mine.size(), want.size());
    for (std::size_t i = 0; i < mine.size(); ++i) EXPECT_EQ(mine[i].str(), want[i].str());
  }
}

TEST(Smith, LargeEntriesPromoteExactly) {
  IntMatrix a(2, 2);
  a(0, 0) = Integer::parse("100000000000000000000");
  a(1, 1) = Integer::parse("300000000000000000000");
  a(0, 1) = Integer(1);
  auto f = coarse::smith_normal_form(a);
  EXPECT_EQ(f.u * a * f.v, f.d);
  EXPECT_EQ(f.diagonal[0], Integer(1));
  EXPECT_EQ(f.diagonal[1].str(), "30000000000000000000000000000000000000000");
}

TEST(Hermite, CanonicalForSameLattice) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 80; ++t) {
    std::size_t n = 1 + rng() % 4, k = 1 + rng() % 4;
    IntMatrix a = random_matrix(rng, n, k, -5, 5);
    // b = a * (random unimodular) spans the same lattice
    IntMatrix u = IntMatrix::identity(k);
    for (int s = 0; s < 6; ++s) {
      std::size_t i = rng() % k, j = rng() % k;
      if (i != j) u.add_col_multiple(i, j, Integer(static_cast<int>(rng() % 5) - 2));
    }
    IntMatrix b = IntMatrix::hcat(a * u, IntMatrix(n, 1));
    EXPECT_EQ(coarse::column_hermite_basis(a), coarse::column_hermite_basis(b));
  }
}

TEST(Kernel, BasisIsKernelAndSolveWorks) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
    IntMatrix a = random_matrix(rng, r, c, -4, 4);
    IntMatrix k = coarse::integer_kernel(a);
    EXPECT_TRUE((a * k).is_zero());
    EXPECT_EQ(k.cols(), c - coarse::integer_rank(a));
    std::vector<Integer> x(c);
    for (auto& v : x) v = Integer(static_cast<int>(rng() % 7) - 3);
    auto y = a * x;
    auto sol = coarse::solve_integer(a, y);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(a * *sol, y);
  }
  IntMatrix two = IntMatrix::from_rows({{2}});
  EXPECT_FALSE(coarse::solve_integer(two, {Integer(1)}).has_value());
}
