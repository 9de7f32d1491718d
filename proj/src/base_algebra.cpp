#include "cdga/base_algebra.hpp"

#include "cdga/sparse_matrix.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cdga {

BaseAlgebra::BaseAlgebra(std::string name, int complex_dim, std::vector<BasisElement> basis)
    : name_(std::move(name)), n_(complex_dim), basis_(std::move(basis)), table_(basis_.size() * basis_.size()) {}

void BaseAlgebra::set_product(std::size_t i, std::size_t j, Product terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Product clean;
  for (auto& t : terms) {
    if (t.first >= basis_.size()) throw Error("product term index out of range");
    if (!clean.empty() && clean.back().first == t.first)
      clean.back().second += t.second;
    else
      clean.push_back(std::move(t));
    if (is_zero(clean.back().second)) clean.pop_back();
  }
  table_.at(i * basis_.size() + j) = std::move(clean);
}

void BaseAlgebra::install_unit_products() {
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    set_product(unit_, j, {{j, Rational(1)}});
    set_product(j, unit_, {{j, Rational(1)}});
  }
}

std::size_t BaseAlgebra::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].label == label) return i;
  throw Error("unknown basis label '" + label + "' in " + name_);
}

BaseVector BaseAlgebra::multiply(const BaseVector& a, const BaseVector& b) const {
  BaseVector out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b)
      for (const auto& [k, c] : product(i, j)) out[k] += x * y * c;
  for (auto it = out.begin(); it != out.end();) it = is_zero(it->second) ? out.erase(it) : std::next(it);
  return out;
}

Rational BaseAlgebra::pairing(std::size_t i, std::size_t j) const {
  for (const auto& [k, c] : product(i, j))
    if (k == fundamental_) return c;
  return Rational(0);
}

std::vector<int> BaseAlgebra::betti() const {
  std::vector<int> b(static_cast<std::size_t>(2 * n_ + 1), 0);
  for (const auto& e : basis_)
    if (e.degree >= 0 && e.degree <= 2 * n_) ++b[static_cast<std::size_t>(e.degree)];
  return b;
}

long BaseAlgebra::euler_characteristic() const {
  long chi = 0;
  for (const auto& e : basis_) chi += (e.degree % 2 == 0) ? 1 : -1;
  return chi;
}

std::vector<std::size_t> BaseAlgebra::indices_of_degree(int d) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree == d) out.push_back(i);
  return out;
}

void BaseAlgebra::validate() const {
  const std::size_t dim = basis_.size();
  auto lbl = [&](std::size_t i) { return "'" + basis_[i].label + "'"; };
  if (n_ < 0) throw AlgebraLawError("dimension", "complex dimension must be nonnegative");
  if (dim == 0) throw AlgebraLawError("basis", "empty basis");
  for (std::size_t i = 0; i < dim; ++i) {
    if (basis_[i].degree < 0 || basis_[i].degree > 2 * n_)
      throw AlgebraLawError("degree-range", lbl(i) + " has degree outside [0, 2n]");
    for (std::size_t j = 0; j < i; ++j)
      if (basis_[i].label == basis_[j].label) throw AlgebraLawError("basis", "duplicate label " + lbl(i));
  }
  if (unit_ >= dim || basis_[unit_].degree != 0) throw AlgebraLawError("unit", "unit must be a degree-0 basis element");
  if (fundamental_ >= dim || basis_[fundamental_].degree != 2 * n_)
    throw AlgebraLawError("fundamental-class", "fundamental class must have degree 2n");

  for (std::size_t j = 0; j < dim; ++j) {
    Product id{{j, Rational(1)}};
    if (product(unit_, j) != id || product(j, unit_) != id)
      throw AlgebraLawError("unit", "unit does not act as identity on " + lbl(j));
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (const auto& [k, c] : product(i, j)) {
        if (basis_[k].degree != basis_[i].degree + basis_[j].degree)
          throw AlgebraLawError("degree-additivity", lbl(i) + "*" + lbl(j) + " has a term " + lbl(k));
        if (basis_[k].weight != basis_[i].weight + basis_[j].weight)
          throw AlgebraLawError("weight-additivity", lbl(i) + "*" + lbl(j) + " has a term " + lbl(k));
      }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      Product swapped = product(j, i);
      if ((basis_[i].degree * basis_[j].degree) % 2 != 0)
        for (auto& t : swapped) t.second = -t.second;
      if (swapped != product(i, j))
        throw AlgebraLawError("graded-commutativity", "pair (" + lbl(i) + ", " + lbl(j) + ")");
    }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) {
        BaseVector bi{{i, Rational(1)}}, bj{{j, Rational(1)}}, bk{{k, Rational(1)}};
        if (multiply(multiply(bi, bj), bk) != multiply(bi, multiply(bj, bk)))
          throw AlgebraLawError("associativity", "triple (" + lbl(i) + ", " + lbl(j) + ", " + lbl(k) + ")");
      }
  for (int d = 0; d <= 2 * n_; ++d) {
    auto rows = indices_of_degree(d);
    auto cols = indices_of_degree(2 * n_ - d);
    if (rows.size() != cols.size())
      throw AlgebraLawError("poincare-pairing", "degree block " + std::to_string(d) + " is not square");
    if (rows.empty()) continue;
    SparseMatrix m(rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a) {
      SparseRow r;
      for (std::size_t b = 0; b < cols.size(); ++b) {
        Rational v = pairing(rows[a], cols[b]);
        if (!is_zero(v)) r.emplace_back(b, v);
      }
      m.set_row(a, std::move(r));
    }
    if (rank(m) != rows.size())
      throw AlgebraLawError("poincare-pairing", "degenerate pairing in degree block " + std::to_string(d));
  }
}

BaseAlgebra tensor_product(const BaseAlgebra& a, const BaseAlgebra& b) {
  const std::size_t da = a.dimension(), db = b.dimension();
  std::vector<BasisElement> basis;
  basis.reserve(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      basis.push_back({a.element(i).label + "|" + b.element(j).label, a.degree(i) + b.degree(j),
                       a.weight(i) + b.weight(j)});
  BaseAlgebra t(a.name() + "x" + b.name(), a.complex_dimension() + b.complex_dimension(), std::move(basis));
  t.set_unit(a.unit() * db + b.unit());
  t.set_fundamental(a.fundamental() * db + b.fundamental());
  // (u ⊗ v)(u' ⊗ v') = (-1)^{|v||u'|} uu' ⊗ vv'
  for (std::size_t i1 = 0; i1 < da; ++i1)
    for (std::size_t j1 = 0; j1 < db; ++j1)
      for (std::size_t i2 = 0; i2 < da; ++i2)
        for (std::size_t j2 = 0; j2 < db; ++j2) {
          const auto& pa = a.product(i1, i2);
          const auto& pb = b.product(j1, j2);
          if (pa.empty() || pb.empty()) continue;
          const bool neg = (b.degree(j1) * a.degree(i2)) % 2 != 0;
          BaseAlgebra::Product terms;
          for (const auto& [k, x] : pa)
            for (const auto& [l, y] : pb) terms.emplace_back(k * db + l, neg ? Rational(-x * y) : Rational(x * y));
          t.set_product(i1 * db + j1, i2 * db + j2, std::move(terms));
        }
  return t;
}

BaseAlgebra tensor_power(const BaseAlgebra& base, int r) {
  if (r < 1) throw Error("tensor power needs r >= 1");
  BaseAlgebra out = base;
  for (int i = 1; i < r; ++i) out = tensor_product(out, base);
  out.set_name(base.name() + "^" + std::to_string(r));
  return out;
}

BaseAlgebra parse_base_algebra(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed algebra document: ") + e.what());
  }
  try {
    std::vector<BasisElement> basis;
    for (const auto& e : doc.at("basis")) {
      int deg = e.at("degree").get<int>();
      basis.push_back({e.at("label").get<std::string>(), deg, e.value("weight", deg)});
    }
    BaseAlgebra alg(doc.value("name", std::string("custom")), doc.at("n").get<int>(), std::move(basis));
    alg.set_unit(alg.index_of(doc.at("unit").get<std::string>()));
    alg.set_fundamental(alg.index_of(doc.at("fundamental").get<std::string>()));
    alg.install_unit_products();
    if (doc.contains("products")) {
      for (const auto& p : doc.at("products")) {
        if (!p.is_array() || p.size() != 3) throw Error("each product must be [left, right, terms]");
        std::size_t i = alg.index_of(p[0].get<std::string>());
        std::size_t j = alg.index_of(p[1].get<std::string>());
        BaseAlgebra::Product terms;
        for (const auto& t : p[2]) {
          if (!t.is_array() || t.size() != 2) throw Error("each product term must be [label, rational]");
          terms.emplace_back(alg.index_of(t[0].get<std::string>()), parse_rational(t[1].get<std::string>()));
        }
        alg.set_product(i, j, std::move(terms));
      }
    }
    alg.validate();
    return alg;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed algebra document: ") + e.what());
  }
}

BaseAlgebra load_base_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open algebra file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_base_algebra(ss.str());
}

}  // namespace cdga
