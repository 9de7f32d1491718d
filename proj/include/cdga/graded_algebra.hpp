#pragma once

// Free graded-commutative algebras B ⊗ Sym_gr(generators) over a finite
// dimensional base B, with bigrading (degree, weight) and Koszul signs.

#include "cdga/base_algebra.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cdga {

struct GeneratorSpec {
  std::string label;
  int degree = 1;
  int weight = 1;
  bool odd() const { return degree % 2 != 0; }
};

/// b · g_1^{e_1} ... g_m^{e_m}, base factor first, generators in index order.
struct Monomial {
  std::uint32_t base = 0;
  std::vector<std::uint16_t> exps;

  // Canonical order: lexicographic on the exponent vector, then base index.
  friend auto operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.exps <=> b.exps; c != 0) return c;
    return a.base <=> b.base;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Sparse linear combination of monomials; zero coefficients are never stored.
class Element {
 public:
  using Terms = std::map<Monomial, Rational>;

  Element() = default;
  Element(const Monomial& m, Rational c = Rational(1));

  void add(const Monomial& m, const Rational& c);
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rational& c);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  Element operator-() const { return Rational(-1) * *this; }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  Rational coefficient(const Monomial& m) const;
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  friend bool operator==(const Element&, const Element&) = default;

 private:
  Terms terms_;
};

/// A base algebra together with an ordered list of free generators.
class AlgebraContext {
 public:
  AlgebraContext(std::shared_ptr<const BaseAlgebra> base, std::vector<GeneratorSpec> generators);

  const BaseAlgebra& base() const { return *base_; }
  std::shared_ptr<const BaseAlgebra> base_ptr() const { return base_; }
  const std::vector<GeneratorSpec>& generators() const { return gens_; }
  std::size_t generator_count() const { return gens_.size(); }
  const GeneratorSpec& generator(std::size_t g) const { return gens_.at(g); }
  std::size_t generator_index(const std::string& label) const;

  int degree(const Monomial& m) const;
  int weight(const Monomial& m) const;
  /// Degree of an element; throws if not homogeneous (or zero).
  int degree(const Element& e) const;
  std::optional<int> weight_if_homogeneous(const Element& e) const;
  bool homogeneous(const Element& e) const;

  Monomial unit_monomial() const;
  Monomial base_monomial(std::size_t base_index) const;
  Element base_element(const BaseVector& v) const;
  Element generator_element(std::size_t g) const;

  /// Product of monomials with Koszul signs; zero if an odd generator repeats.
  Element multiply(const Monomial& a, const Monomial& b) const;
  Element multiply(const Element& a, const Element& b) const;
  Element power(const Element& a, unsigned k) const;

  /// All monomials of the given degree (and weight), in canonical order.
  std::vector<Monomial> monomials_of(int degree, std::optional<int> weight = std::nullopt) const;

  /// Throws if the monomial does not belong to this context.
  void check(const Monomial& m) const;

  std::string to_string(const Monomial& m) const;
  std::string to_string(const Element& e) const;

 private:
  std::shared_ptr<const BaseAlgebra> base_;
  std::vector<GeneratorSpec> gens_;
};

/// Algebra map defined on base basis elements and generators.
struct Homomorphism {
  std::vector<Element> base_images;
  std::vector<Element> generator_images;
};

/// Multiplicative extension of a generator-defined map. Images must be
/// homogeneous with the degree of their source; throws otherwise.
Element apply_homomorphism(const AlgebraContext& ctx, const Homomorphism& phi, const Element& e);
Element apply_homomorphism(const AlgebraContext& ctx, const Homomorphism& phi, const Monomial& m);

Homomorphism identity_homomorphism(const AlgebraContext& ctx);

/// Checks phi(u v) = phi(u) phi(v) on all pairs of the given monomials.
bool is_multiplicative_on(const AlgebraContext& ctx, const Homomorphism& phi, const std::vector<Monomial>& monomials);

}  // namespace cdga
