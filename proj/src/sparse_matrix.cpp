#include "cdga/sparse_matrix.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace cdga {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& dense) {
  std::size_t cols = dense.empty() ? 0 : dense.front().size();
  SparseMatrix m(dense.size(), cols);
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i].size() != cols) throw Error("ragged dense matrix");
    SparseRow r;
    for (std::size_t j = 0; j < cols; ++j)
      if (!is_zero(dense[i][j])) r.emplace_back(j, dense[i][j]);
    m.data_[i] = std::move(r);
  }
  return m;
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         const std::vector<std::tuple<std::size_t, std::size_t, Rational>>& entries) {
  SparseMatrix m(rows, cols);
  for (const auto& [i, j, v] : entries) {
    if (i >= rows || j >= cols) throw Error("triplet index out of bounds");
    m.data_[i].emplace_back(j, v);
  }
  for (auto& r : m.data_) normalize_row(r);
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
  return m;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t total = 0;
  for (const auto& r : data_) total += r.size();
  return total;
}

void SparseMatrix::set_row(std::size_t i, SparseRow r) {
  if (i >= rows_) throw Error("row index out of bounds");
  normalize_row(r);
  if (!r.empty() && r.back().first >= cols_) throw Error("column index out of bounds");
  data_[i] = std::move(r);
}

Rational SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto& r = data_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
  if (it != r.end() && it->first == j) return it->second;
  return Rational(0);
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) t.data_[j].emplace_back(i, v);
  return t;
}

std::vector<std::vector<Rational>> SparseMatrix::to_dense() const {
  std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) d[i][j] = v;
  return d;
}

void normalize_row(SparseRow& r) {
  std::stable_sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow out;
  out.reserve(r.size());
  for (auto& e : r) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(std::move(e));
    if (is_zero(out.back().second)) out.pop_back();
  }
  r = std::move(out);
}

void axpy(const Rational& a, const SparseRow& x, SparseRow& y) {
  SparseRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  Rational t;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.push_back(std::move(y[j]));
      ++j;
    } else {
      t = a * x[i].second;
      t += y[j].second;
      if (!is_zero(t)) out.emplace_back(x[i].first, t);
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw Error("dimension mismatch in matrix product");
  SparseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    SparseRow acc;
    for (const auto& [k, v] : a.row(i)) axpy(v, b.row(k), acc);
    c.set_row(i, std::move(acc));
  }
  return c;
}

bool is_zero(const SparseMatrix& m) { return m.nnz() == 0; }

// ---------------------------------------------------------------------------

SparseRow RowReducer::reduce(const SparseRow& v) const {
  if (rows_.empty()) return v;
  thread_local std::vector<Rational> acc;
  thread_local std::vector<char> mark;
  if (acc.size() < cols_) {
    acc.resize(cols_);
    mark.resize(cols_, 0);
  }
  std::vector<std::size_t> touched;
  touched.reserve(v.size() * 2);
  for (const auto& [c, a] : v) {
    if (c >= cols_) throw Error("vector longer than reducer width");
    if (pivot_row_[c] >= 0) continue;
    acc[c] = a;
    mark[c] = 1;
    touched.push_back(c);
  }
  Rational t;
  for (const auto& [c, a] : v) {
    if (pivot_row_[c] < 0) continue;
    for (const auto& [cc, b] : rows_[static_cast<std::size_t>(pivot_row_[c])]) {
      if (cc == c) continue;
      if (!mark[cc]) {
        mark[cc] = 1;
        acc[cc] = 0;
        touched.push_back(cc);
      }
      t = a * b;
      acc[cc] -= t;
    }
  }
  std::sort(touched.begin(), touched.end());
  SparseRow out;
  out.reserve(touched.size());
  for (std::size_t c : touched) {
    if (!is_zero(acc[c])) out.emplace_back(c, acc[c]);
    mark[c] = 0;
  }
  return out;
}

bool RowReducer::add(const SparseRow& v) {
  SparseRow r = reduce(v);
  if (r.empty()) return false;
  const std::size_t p = r.front().first;
  if (r.front().second != 1) {
    Rational inv = 1 / r.front().second;
    for (auto& e : r) e.second *= inv;
  }
  for (auto& row : rows_) {
    auto it = std::lower_bound(row.begin(), row.end(), p, [](const auto& e, std::size_t c) { return e.first < c; });
    if (it == row.end() || it->first != p) continue;
    Rational factor = -it->second;
    axpy(factor, r, row);
  }
  pivot_row_[p] = static_cast<long>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

std::vector<std::size_t> RowReducer::pivots() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cols_; ++c)
    if (pivot_row_[c] >= 0) out.push_back(c);
  return out;
}

SparseMatrix RowReducer::to_matrix() const {
  auto piv = pivots();
  SparseMatrix m(piv.size(), cols_);
  for (std::size_t i = 0; i < piv.size(); ++i) m.set_row(i, rows_[static_cast<std::size_t>(pivot_row_[piv[i]])]);
  return m;
}

namespace {

std::vector<std::size_t> sparsest_first(const SparseMatrix& m) {
  std::vector<std::size_t> order(m.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.row(a).size() < m.row(b).size(); });
  return order;
}

}  // namespace

RrefResult rref(const SparseMatrix& m) {
  RowReducer red(m.cols());
  for (std::size_t i : sparsest_first(m)) red.add(m.row(i));
  RrefResult res;
  res.rank = red.rank();
  res.pivots = red.pivots();
  res.reduced = red.to_matrix();
  // Keep the row count of the input: zero rows at the bottom.
  SparseMatrix full(m.rows(), m.cols());
  for (std::size_t i = 0; i < res.rank; ++i) full.set_row(i, res.reduced.row(i));
  res.reduced = std::move(full);
  return res;
}

std::vector<SparseRow> kernel_basis(const SparseMatrix& m) {
  RrefResult r = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (std::size_t p : r.pivots) is_pivot[p] = 1;
  std::vector<SparseRow> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    SparseRow v;
    v.emplace_back(f, Rational(1));
    for (std::size_t i = 0; i < r.rank; ++i) {
      Rational a = r.reduced.at(i, f);
      if (!is_zero(a)) v.emplace_back(r.pivots[i], -a);
    }
    normalize_row(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const SparseMatrix& m) {
  RowReducer red(m.cols());
  for (std::size_t i : sparsest_first(m)) red.add(m.row(i));
  return red.rank();
}

bool rank_mod_p(const SparseMatrix& m, std::uint32_t p, std::vector<std::size_t>& independent_rows) {
  using Row = std::vector<std::pair<std::size_t, std::uint32_t>>;
  independent_rows.clear();
  std::vector<Row> rows;
  std::vector<long> pivot_row(m.cols(), -1);
  std::vector<std::uint64_t> acc(m.cols(), 0);
  std::vector<char> mark(m.cols(), 0);
  auto inverse = [p](std::uint64_t a) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  for (std::size_t i : sparsest_first(m)) {
    std::vector<std::size_t> touched;
    std::vector<std::pair<std::size_t, std::uint64_t>> pivot_hits;
    for (const auto& [c, q] : m.row(i)) {
      std::uint32_t res;
      if (!reduce_mod(q, p, res)) return false;
      if (res == 0) continue;
      if (pivot_row[c] >= 0) {
        pivot_hits.emplace_back(c, res);
      } else {
        acc[c] = res;
        mark[c] = 1;
        touched.push_back(c);
      }
    }
    for (const auto& [c, a] : pivot_hits) {
      for (const auto& [cc, b] : rows[static_cast<std::size_t>(pivot_row[c])]) {
        if (cc == c) continue;
        if (!mark[cc]) {
          mark[cc] = 1;
          acc[cc] = 0;
          touched.push_back(cc);
        }
        acc[cc] = (acc[cc] + (p - a) * b) % p;
      }
    }
    std::sort(touched.begin(), touched.end());
    Row r;
    for (std::size_t c : touched) {
      if (acc[c] != 0) r.emplace_back(c, static_cast<std::uint32_t>(acc[c]));
      mark[c] = 0;
    }
    if (r.empty()) continue;
    std::uint64_t inv = inverse(r.front().second);
    for (auto& e : r) e.second = static_cast<std::uint32_t>(e.second * inv % p);
    const std::size_t piv = r.front().first;
    for (auto& row : rows) {
      auto it = std::lower_bound(row.begin(), row.end(), piv, [](const auto& e, std::size_t c) { return e.first < c; });
      if (it == row.end() || it->first != piv) continue;
      std::uint64_t f = it->second;
      // row -= f * r
      Row out;
      std::size_t x = 0, y = 0;
      while (x < r.size() || y < row.size()) {
        if (y == row.size() || (x < r.size() && r[x].first < row[y].first)) {
          out.emplace_back(r[x].first, static_cast<std::uint32_t>((p - f) * r[x].second % p));
          ++x;
        } else if (x == r.size() || row[y].first < r[x].first) {
          out.push_back(row[y]);
          ++y;
        } else {
          std::uint64_t v = (row[y].second + (p - f) * r[x].second) % p;
          if (v) out.emplace_back(row[y].first, static_cast<std::uint32_t>(v));
          ++x;
          ++y;
        }
      }
      row = std::move(out);
    }
    pivot_row[piv] = static_cast<long>(rows.size());
    rows.push_back(std::move(r));
    independent_rows.push_back(i);
  }
  return true;
}

std::size_t rank_with_modular_prescreen(const SparseMatrix& m) {
  static constexpr std::array<std::uint32_t, 4> primes{2147483629u, 2147483587u, 2147483579u, 2147483563u};
  std::vector<std::size_t> independent;
  bool screened = false;
  for (std::uint32_t p : primes)
    if ((screened = rank_mod_p(m, p, independent))) break;
  if (!screened) return rank(m);

  RowReducer red(m.cols());
  std::vector<char> used(m.rows(), 0);
  for (std::size_t i : independent) {
    red.add(m.row(i));
    used[i] = 1;
  }
  // Independence mod p implies independence over Q; the remaining rows must be
  // checked exactly since the rank can drop modulo p.
  for (std::size_t i : sparsest_first(m))
    if (!used[i]) red.add(m.row(i));
  return red.rank();
}

}  // namespace cdga
