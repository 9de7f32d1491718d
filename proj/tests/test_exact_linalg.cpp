#include "doctest.h"

#include "cdga/sparse_matrix.hpp"

#include <random>

using namespace cdga;

namespace {

SparseMatrix dense(std::vector<std::vector<long>> rows, std::size_t cols = 0) {
  std::vector<std::vector<Rational>> q;
  for (const auto& r : rows) {
    q.emplace_back();
    for (long v : r) q.back().emplace_back(v);
  }
  if (q.empty()) return SparseMatrix(0, cols);
  return SparseMatrix::from_dense(q);
}

SparseMatrix random_sparse(std::mt19937& rng, std::size_t rows, std::size_t cols, double density, bool fractions) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> t;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (u(rng) < density) {
        Rational v(num(rng), fractions ? den(rng) : 1);
        v.canonicalize();
        t.emplace_back(i, j, v);
      }
  return SparseMatrix::from_triplets(rows, cols, t);
}

SparseMatrix times(const SparseMatrix& m, const std::vector<Rational>& v) {
  SparseMatrix col(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) col.set_row(i, {{0, v[i]}});
  return multiply(m, col);
}

std::vector<Rational> densify(const SparseRow& r, std::size_t n) {
  std::vector<Rational> v(n);
  for (const auto& [c, x] : r) v[c] = x;
  return v;
}

bool is_rref(const SparseMatrix& m, std::size_t rank) {
  std::size_t last = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto& row = m.row(i);
    if (i >= rank) {
      if (!row.empty()) return false;
      continue;
    }
    if (row.empty() || row.front().second != 1) return false;
    if (i > 0 && row.front().first <= last) return false;
    last = row.front().first;
    pivots.push_back(last);
  }
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t p : pivots)
      if (p != pivots[i] && m.at(i, p) != 0) return false;
  return true;
}

}  // namespace

TEST_SUITE("exact_linalg") {

TEST_CASE("rationals stay canonical") {
  Rational a = parse_rational("6/4");
  CHECK(a.get_num() == 3);
  CHECK(a.get_den() == 2);
  CHECK(to_string(parse_rational("-10/5")) == "-2");
  CHECK(to_string(a * parse_rational("2/3")) == "1");
  CHECK(parse_rational(" 7 ") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  std::uint32_t res = 0;
  CHECK(reduce_mod(parse_rational("1/2"), 7, res));
  CHECK(res == 4);
  CHECK_FALSE(reduce_mod(parse_rational("1/7"), 7, res));
}

TEST_CASE("sparse matrices store no zeros and check bounds") {
  SparseMatrix m = SparseMatrix::from_triplets(2, 3, {{0, 1, Rational(2)}, {0, 1, Rational(-2)}, {1, 2, Rational(5)}});
  CHECK(m.nnz() == 1);
  CHECK(m.at(1, 2) == 5);
  CHECK_THROWS(m.set_row(0, {{3, Rational(1)}}));
  CHECK(m.transpose().transpose() == m);
}

TEST_CASE("rref examples") {
  RrefResult empty = rref(SparseMatrix(0, 0));
  CHECK(empty.rank == 0);
  CHECK(empty.pivots.empty());

  RrefResult id = rref(SparseMatrix::identity(3));
  CHECK(id.rank == 3);
  CHECK(id.pivots == std::vector<std::size_t>{0, 1, 2});

  RrefResult r = rref(dense({{1, 2}, {2, 4}}));
  CHECK(r.rank == 1);
  CHECK(r.pivots == std::vector<std::size_t>{0});
  CHECK(r.reduced.at(0, 1) == 2);
}

TEST_CASE("rref of a rational matrix") {
  // [[2,4,1],[1,2,0]] -> [[1,2,0],[0,0,1]]
  RrefResult r = rref(dense({{2, 4, 1}, {1, 2, 0}}));
  CHECK(r.rank == 2);
  CHECK(r.reduced == dense({{1, 2, 0}, {0, 0, 1}}));
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(SparseMatrix::identity(2)).empty());
  auto zero = kernel_basis(SparseMatrix(2, 3));
  CHECK(zero.size() == 3);
  auto k = kernel_basis(dense({{1, 1}}));
  REQUIRE(k.size() == 1);
  auto v = densify(k[0], 2);
  CHECK(v[0] == -v[1]);
  CHECK(v[0] != 0);
}

TEST_CASE("modular prescreen examples") {
  CHECK(rank_with_modular_prescreen(SparseMatrix::identity(4)) == 4);
  CHECK(rank_with_modular_prescreen(dense({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}})) == 1);

  std::mt19937 rng(20);
  SparseMatrix a = random_sparse(rng, 20, 10, 0.35, false), b = random_sparse(rng, 10, 20, 0.35, false);
  // force full rank factors
  for (std::size_t i = 0; i < 10; ++i) {
    SparseRow ra = a.row(i);
    ra.emplace_back(i, Rational(1000));
    a.set_row(i, ra);
    SparseRow rb = b.row(i);
    rb.emplace_back(i + 10, Rational(1000));
    b.set_row(i, rb);
  }
  REQUIRE(rank(a) == 10);
  REQUIRE(rank(b) == 10);
  CHECK(rank_with_modular_prescreen(multiply(a, b)) == 10);
}

TEST_CASE("prescreen survives entries divisible by the prime") {
  // p = 2147483629 divides these entries, so the residues vanish mod p.
  const Rational p(2147483629L);
  SparseMatrix m = SparseMatrix::from_dense({{p, Rational(0)}, {Rational(0), p}, {Rational(1, 2147483629L), p}});
  CHECK(rank_with_modular_prescreen(m) == 2);
  CHECK(rank(m) == 2);
  std::vector<std::size_t> rows;
  CHECK_FALSE(rank_mod_p(m, 2147483629u, rows));
}

TEST_CASE("randomized properties of rref, rank and kernel") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = std::uniform_int_distribution<std::size_t>(0, 14)(rng);
    const std::size_t cols = std::uniform_int_distribution<std::size_t>(1, 14)(rng);
    SparseMatrix m = random_sparse(rng, rows, cols, 0.3, trial % 2 == 0);
    RrefResult r = rref(m);
    CHECK(r.rank == rank(m.transpose()));
    CHECK(is_rref(r.reduced, r.rank));
    RrefResult again = rref(r.reduced);
    CHECK(again.reduced == r.reduced);
    auto k = kernel_basis(m);
    CHECK(r.rank + k.size() == cols);
    for (const auto& v : k) CHECK(is_zero(times(m, densify(v, cols))));
    CHECK(rank_with_modular_prescreen(m) == r.rank);
  }
}

TEST_CASE("row reducer keeps a reduced basis") {
  RowReducer red(3);
  CHECK(red.add({{1, Rational(2)}, {2, Rational(4)}}));
  CHECK(red.add({{0, Rational(1)}, {1, Rational(1)}}));
  CHECK_FALSE(red.add({{0, Rational(1)}, {1, Rational(3)}, {2, Rational(4)}}));
  CHECK(red.rank() == 2);
  CHECK(red.pivots() == std::vector<std::size_t>{0, 1});
  CHECK(red.reduce({{1, Rational(1)}}) == SparseRow{{2, Rational(-2)}});
  CHECK(red.pivot_row(0) == SparseRow{{0, Rational(1)}, {2, Rational(-2)}});
}

}
