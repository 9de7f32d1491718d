#include "cdga/models.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace cdga {

namespace {

BaseVector scaled(const BaseVector& v, const Rational& s) {
  BaseVector out;
  if (is_zero(s)) return out;
  for (const auto& [i, c] : v) out[i] = c * s;
  return out;
}

void add_into(BaseVector& into, const BaseVector& v, const Rational& s = Rational(1)) {
  for (const auto& [i, c] : v) {
    into[i] += c * s;
    if (is_zero(into[i])) into.erase(i);
  }
}

BaseVector unit_vector(std::size_t i) { return BaseVector{{i, Rational(1)}}; }

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

std::string shifted_label(const std::string& label) {
  bool plain = std::all_of(label.begin(), label.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '^'; });
  return plain ? "s" + label : "s(" + label + ")";
}

ChernData parse_chern(const BaseAlgebra& base, const nlohmann::json& doc) {
  ChernData chern;
  for (const auto& cls : doc) {
    BaseVector v;
    for (const auto& t : cls) {
      if (!t.is_array() || t.size() != 2) throw Error("chern terms must be [label, rational]");
      v[base.index_of(t[0].get<std::string>())] += parse_rational(t[1].get<std::string>());
    }
    chern.cotangent.push_back(std::move(v));
  }
  if (chern.cotangent.size() != static_cast<std::size_t>(base.complex_dimension() + 1))
    throw Error("chern data must list c_0 .. c_n");
  return chern;
}

Space load_custom_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open algebra file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  Space s;
  s.spec = "custom:" + path;
  s.base = parse_base_algebra(ss.str());
  auto doc = nlohmann::json::parse(ss.str());
  if (doc.contains("chern")) s.chern = parse_chern(s.base, doc.at("chern"));
  return s;
}

Space atomic_space(const std::string& token) {
  auto number = [&](std::size_t from) {
    std::string digits = token.substr(from);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      throw Error("bad space expression '" + token + "'");
    return std::stoi(digits);
  };
  Space s;
  s.spec = token;
  if (!token.empty() && token[0] == 'P') {
    int n = number(1);
    if (n < 1) throw Error("projective space needs n >= 1");
    s.base = projective_space(n);
    s.chern = projective_space_chern(s.base);
  } else if (!token.empty() && token[0] == 'S') {
    s.base = surface(number(1));
    s.chern = surface_chern(s.base);
  } else {
    throw Error("unknown space '" + token + "' (expected P<n>, S<g>, products AxB or custom:<path>)");
  }
  return s;
}

bool satisfies_diagonal_identity(const BaseAlgebra& base, const BaseAlgebra& square, const BaseVector& delta) {
  const std::size_t dim = base.dimension();
  for (std::size_t x = 0; x < dim; ++x) {
    BaseVector diff;
    add_into(diff, unit_vector(x * dim + base.unit()));
    add_into(diff, unit_vector(base.unit() * dim + x), Rational(-1));
    if (!square.multiply(diff, delta).empty()) return false;
  }
  return true;
}

}  // namespace

BaseAlgebra projective_space(int n) {
  std::vector<BasisElement> basis;
  for (int i = 0; i <= n; ++i) basis.push_back({i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)), 2 * i, 2 * i});
  BaseAlgebra a("P" + std::to_string(n), n, std::move(basis));
  a.set_unit(0);
  a.set_fundamental(static_cast<std::size_t>(n));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j)
      a.set_product(static_cast<std::size_t>(i), static_cast<std::size_t>(j), {{static_cast<std::size_t>(i + j), Rational(1)}});
  return a;
}

BaseAlgebra surface(int genus) {
  if (genus < 0) throw Error("genus must be nonnegative");
  std::vector<BasisElement> basis{{"1", 0, 0}};
  for (int i = 1; i <= genus; ++i) basis.push_back({"a" + std::to_string(i), 1, 1});
  for (int i = 1; i <= genus; ++i) basis.push_back({"b" + std::to_string(i), 1, 1});
  basis.push_back({"X", 2, 2});
  const std::size_t top = basis.size() - 1;
  BaseAlgebra s("S" + std::to_string(genus), 1, std::move(basis));
  s.set_unit(0);
  s.set_fundamental(top);
  s.install_unit_products();
  for (int i = 1; i <= genus; ++i) {
    const std::size_t a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(genus + i);
    s.set_product(a, b, {{top, Rational(1)}});
    s.set_product(b, a, {{top, Rational(-1)}});
  }
  return s;
}

ChernData projective_space_chern(const BaseAlgebra& pn) {
  const int n = pn.complex_dimension();
  ChernData c;
  for (int i = 0; i <= n; ++i) {
    Integer b = binomial(n + 1, i);
    c.cotangent.push_back({{static_cast<std::size_t>(i), Rational(i % 2 == 0 ? b : Integer(-b))}});
  }
  return c;
}

ChernData surface_chern(const BaseAlgebra& sigma) {
  const long genus = static_cast<long>(sigma.dimension() - 2) / 2;
  ChernData c;
  c.cotangent.push_back(unit_vector(sigma.unit()));
  BaseVector c1;
  if (genus != 1) c1[sigma.fundamental()] = Rational(2 * genus - 2);
  c.cotangent.push_back(c1);
  return c;
}

Space product_space(const Space& a, const Space& b) {
  Space s;
  s.spec = a.spec + "x" + b.spec;
  s.base = tensor_product(a.base, b.base);
  s.base.set_name(s.spec);
  if (a.chern && b.chern) {
    const std::size_t db = b.base.dimension();
    const int n = s.base.complex_dimension();
    ChernData c;
    c.cotangent.assign(static_cast<std::size_t>(n + 1), BaseVector{});
    for (std::size_t i = 0; i < a.chern->cotangent.size(); ++i)
      for (std::size_t j = 0; j < b.chern->cotangent.size(); ++j)
        for (const auto& [k, x] : a.chern->cotangent[i])
          for (const auto& [l, y] : b.chern->cotangent[j]) {
            auto& slot = c.cotangent[i + j];
            slot[k * db + l] += x * y;
            if (is_zero(slot[k * db + l])) slot.erase(k * db + l);
          }
    s.chern = std::move(c);
  }
  return s;
}

Space build_space(const std::string& spec) {
  if (spec.rfind("custom:", 0) == 0) return load_custom_space(spec.substr(7));
  std::vector<std::string> tokens;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, 'x')) tokens.push_back(tok);
  if (tokens.empty()) throw Error("empty space expression");
  Space s = atomic_space(tokens[0]);
  for (std::size_t i = 1; i < tokens.size(); ++i) s = product_space(s, atomic_space(tokens[i]));
  s.spec = spec;
  s.base.validate();
  return s;
}

BaseVector parse_degree_two_class(const BaseAlgebra& base, const std::string& text) {
  auto h2 = base.indices_of_degree(2);
  std::vector<Rational> coords;
  std::string body = text;
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw Error("malformed class '" + text + "'");
    body = body.substr(1, body.size() - 2);
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, ':')) coords.push_back(parse_rational(part));
  } else {
    coords.push_back(parse_rational(body));
  }
  if (coords.size() != h2.size())
    throw Error("class '" + text + "' needs " + std::to_string(h2.size()) + " coordinates (dim H^2)");
  BaseVector c;
  for (std::size_t i = 0; i < h2.size(); ++i)
    if (!is_zero(coords[i])) c[h2[i]] = coords[i];
  return c;
}

std::vector<BaseVector> dual_basis(const BaseAlgebra& base) {
  std::vector<BaseVector> dual(base.dimension());
  const int top = base.top_degree();
  for (int d = 0; d <= top; ++d) {
    auto rows = base.indices_of_degree(d);
    auto cols = base.indices_of_degree(top - d);
    if (rows.size() != cols.size()) throw Error("singular pairing block in degree " + std::to_string(d));
    const std::size_t k = rows.size();
    if (k == 0) continue;
    // rref([M | I]) = [I | M^{-1}]
    RowReducer red(2 * k);
    for (std::size_t a = 0; a < k; ++a) {
      SparseRow r;
      for (std::size_t b = 0; b < k; ++b) {
        Rational v = base.pairing(rows[a], cols[b]);
        if (!is_zero(v)) r.emplace_back(b, v);
      }
      r.emplace_back(k + a, Rational(1));
      red.add(r);
    }
    for (std::size_t b = 0; b < k; ++b)
      if (!red.is_pivot(b)) throw Error("singular pairing block in degree " + std::to_string(d));
    // dual(rows[a]) = Σ_b (M^{-1})[b][a] cols[b]
    for (std::size_t b = 0; b < k; ++b)
      for (const auto& [col, v] : red.pivot_row(b))
        if (col >= k) dual[rows[col - k]][cols[b]] = v;
  }
  return dual;
}

BaseVector diagonal_class(const BaseAlgebra& base) {
  const auto dual = dual_basis(base);
  const BaseAlgebra square = tensor_power(base, 2);
  const std::size_t dim = base.dimension();
  const std::size_t top = base.fundamental() * dim + base.fundamental();
  for (int convention = 0; convention < 4; ++convention) {
    const bool degree_sign = convention % 2 == 0;
    const bool dual_first = convention >= 2;
    BaseVector delta;
    for (std::size_t j = 0; j < dim; ++j) {
      Rational s = (degree_sign && base.degree(j) % 2 != 0) ? Rational(-1) : Rational(1);
      for (const auto& [k, y] : dual[j]) {
        std::size_t idx = dual_first ? k * dim + j : j * dim + k;
        add_into(delta, unit_vector(idx), s * y);
      }
    }
    if (!satisfies_diagonal_identity(base, square, delta)) continue;
    BaseVector self = square.multiply(delta, delta);
    Rational chi = self.count(top) ? self.at(top) : Rational(0);
    if (chi == base.euler_characteristic()) return delta;
  }
  throw Error("no sign convention makes the diagonal class satisfy (x⊗1 - 1⊗x)Δ = 0 and Δ² = χ");
}

std::size_t tensor_index(std::size_t factor_dim, const std::vector<std::size_t>& digits) {
  std::size_t idx = 0;
  for (std::size_t d : digits) idx = idx * factor_dim + d;
  return idx;
}

std::vector<std::size_t> tensor_digits(std::size_t factor_dim, int r, std::size_t index) {
  std::vector<std::size_t> digits(static_cast<std::size_t>(r));
  for (int a = r - 1; a >= 0; --a) {
    digits[static_cast<std::size_t>(a)] = index % factor_dim;
    index /= factor_dim;
  }
  return digits;
}

BaseVector pull_back(const BaseAlgebra& factor, int r, int a, const BaseVector& v) {
  BaseVector out;
  std::vector<std::size_t> digits(static_cast<std::size_t>(r), factor.unit());
  for (const auto& [i, c] : v) {
    digits[static_cast<std::size_t>(a - 1)] = i;
    out[tensor_index(factor.dimension(), digits)] = c;
  }
  return out;
}

namespace {

struct ModelLayout {
  std::vector<GeneratorSpec> generators;
  std::map<std::pair<int, int>, std::size_t> pairs;
  std::vector<std::size_t> shifted, alpha, eta;
};

ModelLayout configuration_layout(const BaseAlgebra& base, int r) {
  ModelLayout l;
  const int n = base.complex_dimension();
  for (int a = 1; a <= r; ++a)
    for (int b = a + 1; b <= r; ++b) {
      l.pairs[{a, b}] = l.generators.size();
      l.generators.push_back({"G" + std::to_string(a) + std::to_string(b), 2 * n - 1, 2 * n});
    }
  return l;
}

std::size_t pair_generator(const ModelLayout& l, int a, int b) { return l.pairs.at({std::min(a, b), std::max(a, b)}); }

/// Arnold and diagonal relations plus d(G_ab) = π_ab^*(Δ) inside ctx.
void add_configuration_structure(const AlgebraContext& ctx, const BaseAlgebra& base, int r, const ModelLayout& l,
                                 std::vector<Element>& relations, std::vector<Element>& differential) {
  if (r < 2) return;
  const std::size_t dim = base.dimension();
  const BaseVector delta = diagonal_class(base);
  auto G = [&](int a, int b) { return ctx.generator_element(pair_generator(l, a, b)); };
  for (int a = 1; a <= r; ++a)
    for (int b = a + 1; b <= r; ++b)
      for (int c = b + 1; c <= r; ++c) {
        Element rel = ctx.multiply(G(a, b), G(a, c));
        rel += ctx.multiply(G(b, c), G(b, a));
        rel += ctx.multiply(G(c, a), G(c, b));
        relations.push_back(std::move(rel));
      }
  for (const auto& [ab, g] : l.pairs) {
    const auto [a, b] = ab;
    for (std::size_t x = 0; x < dim; ++x) {
      if (base.degree(x) == 0) continue;
      BaseVector diff = pull_back(base, r, a, unit_vector(x));
      add_into(diff, pull_back(base, r, b, unit_vector(x)), Rational(-1));
      relations.push_back(ctx.multiply(ctx.base_element(diff), ctx.generator_element(g)));
    }
    BaseVector image;
    for (const auto& [idx, c] : delta) {
      std::vector<std::size_t> digits(static_cast<std::size_t>(r), base.unit());
      digits[static_cast<std::size_t>(a - 1)] = idx / dim;
      digits[static_cast<std::size_t>(b - 1)] = idx % dim;
      image[tensor_index(dim, digits)] += c;
    }
    differential[g] = ctx.base_element(image);
  }
}

std::string class_string(const BaseAlgebra& base, const BaseVector& v) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [i, c] : v) {
    if (!s.empty()) s += " + ";
    s += to_string(c) + "*" + base.element(i).label;
  }
  return s;
}

Presentation marked_model(const BaseAlgebra& base, int r, const BaseVector& alpha_image, const BaseVector& c,
                          std::string name) {
  if (r < 1) throw Error("r must be >= 1");
  for (const auto& [i, v] : c)
    if (base.degree(i) != 2) throw Error("the class c must be homogeneous of degree 2");
  const int n = base.complex_dimension();
  ModelLayout l = configuration_layout(base, r);
  for (std::size_t j = 0; j < base.dimension(); ++j) {
    l.shifted.push_back(l.generators.size());
    l.generators.push_back({shifted_label(base.element(j).label), base.degree(j) + 1, base.weight(j) + 2});
  }
  for (int i = 1; i <= r; ++i) {
    l.alpha.push_back(l.generators.size());
    l.generators.push_back({"alpha" + std::to_string(i), 2 * n - 1, 2 * n});
  }
  for (int i = 1; i <= r; ++i) {
    l.eta.push_back(l.generators.size());
    l.generators.push_back({"eta" + std::to_string(i), 2 * n, 2 * n + 2});
  }
  auto power = std::make_shared<const BaseAlgebra>(tensor_power(base, r));
  auto ctx = std::make_shared<const AlgebraContext>(power, l.generators);

  Presentation p;
  p.context = ctx;
  p.name = std::move(name);
  p.differential.assign(ctx->generator_count(), Element{});
  add_configuration_structure(*ctx, base, r, l, p.relations, p.differential);

  const auto dual = dual_basis(base);
  for (int i = 1; i <= r; ++i) {
    const std::size_t ai = l.alpha[static_cast<std::size_t>(i - 1)];
    const std::size_t ei = l.eta[static_cast<std::size_t>(i - 1)];
    p.differential[ai] = ctx->base_element(pull_back(base, r, i, alpha_image));
    // ε_i = Σ_j π_i^*(b_j^∨) sb_j
    Element eps;
    for (std::size_t j = 0; j < base.dimension(); ++j)
      eps += ctx->multiply(ctx->base_element(pull_back(base, r, i, dual[j])), ctx->generator_element(l.shifted[j]));
    eps -= ctx->multiply(ctx->base_element(pull_back(base, r, i, c)), ctx->generator_element(ai));
    p.differential[ei] = std::move(eps);
  }
  SymmetricStructure sym;
  sym.r = r;
  sym.factor = std::make_shared<const BaseAlgebra>(base);
  sym.pair_generators = l.pairs;
  sym.alpha = l.alpha;
  sym.eta = l.eta;
  p.symmetry = std::move(sym);
  p.parameters = {{"space", base.name()}, {"r", std::to_string(r)}, {"c", class_string(base, c)}};
  p.validate();
  return p;
}

}  // namespace

Presentation build_C_r(const BaseAlgebra& base, int r) {
  if (r < 1) throw Error("r must be >= 1");
  ModelLayout l = configuration_layout(base, r);
  auto power = std::make_shared<const BaseAlgebra>(tensor_power(base, r));
  auto ctx = std::make_shared<const AlgebraContext>(power, l.generators);
  Presentation p;
  p.context = ctx;
  p.name = "C_" + std::to_string(r) + "(" + base.name() + ")";
  p.differential.assign(ctx->generator_count(), Element{});
  add_configuration_structure(*ctx, base, r, l, p.relations, p.differential);
  SymmetricStructure sym;
  sym.r = r;
  sym.factor = std::make_shared<const BaseAlgebra>(base);
  sym.pair_generators = l.pairs;
  p.symmetry = std::move(sym);
  p.parameters = {{"space", base.name()}, {"r", std::to_string(r)}};
  p.validate();
  return p;
}

Presentation build_A_r(const BaseAlgebra& base, const BaseVector& c, int r) {
  Presentation p = marked_model(base, r, unit_vector(base.fundamental()), c,
                                "A_" + std::to_string(r) + "(" + base.name() + ", c)");
  return p;
}

EulerTwist euler_class_twist(const BaseAlgebra& base, const ChernData& chern, const BaseVector& c1, int d) {
  const int n = base.complex_dimension();
  if (d < 0) throw Error("twist d must be >= 0");
  if (chern.cotangent.size() != static_cast<std::size_t>(n + 1)) throw Error("chern data must list c_0 .. c_n");
  // e(Ω¹ ⊗ L^d) = Σ_i c_i(Ω¹) c_1(L)^{n-i} d^{n-i}
  EulerTwist t;
  for (int i = 0; i <= n; ++i) {
    BaseVector term = chern.cotangent[static_cast<std::size_t>(i)];
    for (int k = 0; k < n - i; ++k) term = base.multiply(term, scaled(c1, Rational(d)));
    add_into(t.euler_class, term);
  }
  for (const auto& [i, v] : t.euler_class)
    if (base.degree(i) != 2 * n) throw Error("Euler class is not of top degree");
  t.m = t.euler_class.count(base.fundamental()) ? t.euler_class.at(base.fundamental()) : Rational(0);
  return t;
}

Presentation build_A_r_L(const BaseAlgebra& base, const ChernData& chern, const BaseVector& c1, int d, int r) {
  EulerTwist e = euler_class_twist(base, chern, c1, d);
  Presentation p = marked_model(base, r, e.euler_class, scaled(c1, Rational(d)),
                                "A_" + std::to_string(r) + "(L^" + std::to_string(d) + ") over " + base.name());
  p.parameters.emplace_back("d", std::to_string(d));
  p.parameters.emplace_back("m(d)", to_string(e.m));
  return p;
}

Homomorphism symmetric_action(const Presentation& p, const Permutation& sigma) {
  if (!p.symmetry) throw Error("presentation carries no symmetric group action");
  const auto& sym = *p.symmetry;
  const int r = sym.r;
  if (static_cast<int>(sigma.size()) != r) throw Error("permutation has the wrong size");
  {
    std::vector<int> sorted = sigma;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < r; ++i)
      if (sorted[static_cast<std::size_t>(i)] != i) throw Error("not a permutation");
  }
  const auto& ctx = p.ctx();
  const BaseAlgebra& factor = *sym.factor;
  const std::size_t fd = factor.dimension();

  Homomorphism phi = identity_homomorphism(ctx);
  for (std::size_t idx = 0; idx < ctx.base().dimension(); ++idx) {
    auto digits = tensor_digits(fd, r, idx);
    std::vector<std::size_t> moved(digits.size());
    bool negative = false;
    for (int a = 0; a < r; ++a) {
      moved[static_cast<std::size_t>(sigma[static_cast<std::size_t>(a)])] = digits[static_cast<std::size_t>(a)];
      for (int b = a + 1; b < r; ++b)
        if (sigma[static_cast<std::size_t>(a)] > sigma[static_cast<std::size_t>(b)] &&
            factor.degree(digits[static_cast<std::size_t>(a)]) % 2 != 0 &&
            factor.degree(digits[static_cast<std::size_t>(b)]) % 2 != 0)
          negative = !negative;
    }
    phi.base_images[idx] = Element(ctx.base_monomial(tensor_index(fd, moved)), negative ? Rational(-1) : Rational(1));
  }
  for (const auto& [ab, g] : sym.pair_generators) {
    int a = sigma[static_cast<std::size_t>(ab.first - 1)] + 1, b = sigma[static_cast<std::size_t>(ab.second - 1)] + 1;
    phi.generator_images[g] = ctx.generator_element(sym.pair_generators.at({std::min(a, b), std::max(a, b)}));
  }
  for (std::size_t i = 0; i < sym.alpha.size(); ++i) {
    phi.generator_images[sym.alpha[i]] = ctx.generator_element(sym.alpha[static_cast<std::size_t>(sigma[i])]);
    phi.generator_images[sym.eta[i]] = ctx.generator_element(sym.eta[static_cast<std::size_t>(sigma[i])]);
  }

  SliceCache cache(p);
  auto vanishes = [&](const Element& e) {
    if (e.is_zero()) return true;
    SliceKey key{ctx.degree(e), ctx.weight_if_homogeneous(e)};
    try {
      return cache.get(key)->coordinates(e).empty();
    } catch (const Error&) {
      return false;
    }
  };
  for (std::size_t g = 0; g < ctx.generator_count(); ++g) {
    Element diff = apply_homomorphism(ctx, phi, p.differential[g]) - p.d(phi.generator_images[g]);
    if (!vanishes(diff)) throw Error("symmetric action does not commute with d on " + ctx.generator(g).label);
  }
  for (const auto& rel : p.relations)
    if (!vanishes(apply_homomorphism(ctx, phi, rel))) throw Error("symmetric action does not preserve the relations");
  return phi;
}

SparseMatrix action_matrix(const Presentation& p, const Homomorphism& phi, const SliceBasis& slice) {
  SparseMatrix m(slice.dimension(), slice.dimension());
  for (std::size_t i = 0; i < slice.dimension(); ++i)
    m.set_row(i, slice.coordinates(apply_homomorphism(p.ctx(), phi, Element(slice.basis_monomial(i)))));
  return m;
}

}  // namespace cdga
