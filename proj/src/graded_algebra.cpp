#include "cdga/graded_algebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cdga {

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = std::hash<std::uint32_t>{}(m.base);
  for (auto e : m.exps) h = h * 1000003u ^ e;
  return h;
}

Element::Element(const Monomial& m, Rational c) {
  if (!cdga::is_zero(c)) terms_.emplace(m, std::move(c));
}

void Element::add(const Monomial& m, const Rational& c) {
  if (cdga::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (cdga::is_zero(it->second)) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

Element& Element::operator*=(const Rational& c) {
  if (cdga::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Rational Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

// ---------------------------------------------------------------------------

AlgebraContext::AlgebraContext(std::shared_ptr<const BaseAlgebra> base, std::vector<GeneratorSpec> generators)
    : base_(std::move(base)), gens_(std::move(generators)) {
  if (!base_) throw Error("context needs a base algebra");
  for (const auto& g : gens_)
    if (g.degree < 1) throw Error("generator '" + g.label + "' must have positive degree");
}

std::size_t AlgebraContext::generator_index(const std::string& label) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].label == label) return i;
  throw Error("unknown generator '" + label + "'");
}

void AlgebraContext::check(const Monomial& m) const {
  if (m.exps.size() != gens_.size() || m.base >= base_->dimension())
    throw Error("monomial does not belong to this algebra context");
  for (std::size_t g = 0; g < gens_.size(); ++g)
    if (gens_[g].odd() && m.exps[g] > 1) throw Error("odd generator with exponent > 1");
}

int AlgebraContext::degree(const Monomial& m) const {
  int d = base_->degree(m.base);
  for (std::size_t g = 0; g < gens_.size(); ++g) d += m.exps[g] * gens_[g].degree;
  return d;
}

int AlgebraContext::weight(const Monomial& m) const {
  int w = base_->weight(m.base);
  for (std::size_t g = 0; g < gens_.size(); ++g) w += m.exps[g] * gens_[g].weight;
  return w;
}

int AlgebraContext::degree(const Element& e) const {
  if (e.is_zero()) throw Error("degree of zero element");
  int d = degree(e.begin()->first);
  for (const auto& [m, c] : e)
    if (degree(m) != d) throw Error("element is not degree-homogeneous");
  return d;
}

std::optional<int> AlgebraContext::weight_if_homogeneous(const Element& e) const {
  if (e.is_zero()) return std::nullopt;
  int w = weight(e.begin()->first);
  for (const auto& [m, c] : e)
    if (weight(m) != w) return std::nullopt;
  return w;
}

bool AlgebraContext::homogeneous(const Element& e) const {
  if (e.is_zero()) return true;
  int d = degree(e.begin()->first);
  for (const auto& [m, c] : e)
    if (degree(m) != d) return false;
  return weight_if_homogeneous(e).has_value();
}

Monomial AlgebraContext::unit_monomial() const { return base_monomial(base_->unit()); }

Monomial AlgebraContext::base_monomial(std::size_t base_index) const {
  return Monomial{static_cast<std::uint32_t>(base_index), std::vector<std::uint16_t>(gens_.size(), 0)};
}

Element AlgebraContext::base_element(const BaseVector& v) const {
  Element e;
  for (const auto& [i, c] : v) e.add(base_monomial(i), c);
  return e;
}

Element AlgebraContext::generator_element(std::size_t g) const {
  Monomial m = unit_monomial();
  m.exps.at(g) = 1;
  return Element(m);
}

Element AlgebraContext::multiply(const Monomial& a, const Monomial& b) const {
  if (a.exps.size() != gens_.size() || b.exps.size() != gens_.size())
    throw Error("context mismatch in multiply");
  bool negative = false;
  std::vector<std::uint16_t> exps(gens_.size());
  int odd_in_a = 0;
  for (std::size_t g = 0; g < gens_.size(); ++g)
    if (gens_[g].odd() && a.exps[g]) ++odd_in_a;
  // Move the generator part of a past the base part of b.
  if (odd_in_a % 2 != 0 && base_->degree(b.base) % 2 != 0) negative = !negative;
  // Merge generator parts; an odd generator of b moves left past the odd
  // generators of a with larger index.
  int odd_a_above = odd_in_a;
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    if (gens_[g].odd()) {
      if (a.exps[g]) --odd_a_above;
      if (b.exps[g]) {
        if (a.exps[g]) return {};
        if (odd_a_above % 2 != 0) negative = !negative;
      }
    }
    exps[g] = static_cast<std::uint16_t>(a.exps[g] + b.exps[g]);
  }
  Element out;
  for (const auto& [k, c] : base_->product(a.base, b.base))
    out.add(Monomial{static_cast<std::uint32_t>(k), exps}, negative ? Rational(-c) : c);
  return out;
}

Element AlgebraContext::multiply(const Element& a, const Element& b) const {
  Element out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Element p = multiply(ma, mb);
      if (p.is_zero()) continue;
      Rational f = ca * cb;
      for (const auto& [m, c] : p) out.add(m, f * c);
    }
  return out;
}

Element AlgebraContext::power(const Element& a, unsigned k) const {
  Element out(unit_monomial());
  for (unsigned i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

std::vector<Monomial> AlgebraContext::monomials_of(int degree, std::optional<int> weight) const {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  std::vector<std::vector<std::size_t>> base_by_degree(static_cast<std::size_t>(base_->top_degree() + 1));
  for (std::size_t i = 0; i < base_->dimension(); ++i)
    base_by_degree[static_cast<std::size_t>(base_->degree(i))].push_back(i);

  std::vector<std::uint16_t> exps(gens_.size(), 0);
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t g, int deg_left, int w_used) {
    if (g == gens_.size()) {
      if (deg_left > base_->top_degree()) return;
      for (std::size_t b : base_by_degree[static_cast<std::size_t>(deg_left)]) {
        if (weight && w_used + base_->weight(b) != *weight) continue;
        out.push_back(Monomial{static_cast<std::uint32_t>(b), exps});
      }
      return;
    }
    const int d = gens_[g].degree;
    const int max_e = gens_[g].odd() ? 1 : deg_left / d;
    for (int e = 0; e <= max_e && e * d <= deg_left; ++e) {
      exps[g] = static_cast<std::uint16_t>(e);
      rec(g + 1, deg_left - e * d, w_used + e * gens_[g].weight);
    }
    exps[g] = 0;
  };
  rec(0, degree, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string AlgebraContext::to_string(const Monomial& m) const {
  std::ostringstream os;
  bool first = true;
  if (m.base != base_->unit() || std::all_of(m.exps.begin(), m.exps.end(), [](auto e) { return e == 0; })) {
    os << base_->element(m.base).label;
    first = false;
  }
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    if (!m.exps[g]) continue;
    if (!first) os << '*';
    os << gens_[g].label;
    if (m.exps[g] > 1) os << '^' << m.exps[g];
    first = false;
  }
  return os.str();
}

std::string AlgebraContext::to_string(const Element& e) const {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : e) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << '-';
    Rational a = abs(c);
    if (a != 1) os << a.get_str() << '*';
    os << to_string(m);
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

const Element& checked_image(const AlgebraContext& ctx, const Element& image, int source_degree) {
  if (!image.is_zero()) {
    if (!ctx.homogeneous(image) || ctx.degree(image) != source_degree)
      throw Error("homomorphism image is not homogeneous of the source degree");
  }
  return image;
}

}  // namespace

Element apply_homomorphism(const AlgebraContext& ctx, const Homomorphism& phi, const Monomial& m) {
  ctx.check(m);
  if (phi.base_images.size() != ctx.base().dimension() || phi.generator_images.size() != ctx.generator_count())
    throw Error("homomorphism does not match the algebra context");
  Element out = checked_image(ctx, phi.base_images[m.base], ctx.base().degree(m.base));
  for (std::size_t g = 0; g < m.exps.size() && !out.is_zero(); ++g) {
    if (!m.exps[g]) continue;
    const Element& img = checked_image(ctx, phi.generator_images[g], ctx.generator(g).degree);
    for (unsigned k = 0; k < m.exps[g]; ++k) out = ctx.multiply(out, img);
  }
  return out;
}

Element apply_homomorphism(const AlgebraContext& ctx, const Homomorphism& phi, const Element& e) {
  Element out;
  for (const auto& [m, c] : e) {
    Element img = apply_homomorphism(ctx, phi, m);
    for (const auto& [mm, cc] : img) out.add(mm, c * cc);
  }
  return out;
}

Homomorphism identity_homomorphism(const AlgebraContext& ctx) {
  Homomorphism phi;
  for (std::size_t i = 0; i < ctx.base().dimension(); ++i) phi.base_images.emplace_back(ctx.base_monomial(i));
  for (std::size_t g = 0; g < ctx.generator_count(); ++g) phi.generator_images.push_back(ctx.generator_element(g));
  return phi;
}

bool is_multiplicative_on(const AlgebraContext& ctx, const Homomorphism& phi, const std::vector<Monomial>& monomials) {
  for (const auto& u : monomials)
    for (const auto& v : monomials) {
      Element lhs = apply_homomorphism(ctx, phi, ctx.multiply(u, v));
      Element rhs = ctx.multiply(apply_homomorphism(ctx, phi, u), apply_homomorphism(ctx, phi, v));
      if (lhs != rhs) return false;
    }
  return true;
}

}  // namespace cdga
