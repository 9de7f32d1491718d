#pragma once

// Finite-dimensional graded-commutative algebras with a Poincaré pairing,
// e.g. H*(X; Q) for a smooth projective X.

#include "cdga/rational.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cdga {

struct BasisElement {
  std::string label;
  int degree = 0;
  int weight = 0;
};

/// Sparse linear combination of basis elements.
using BaseVector = std::map<std::size_t, Rational>;

/// Thrown when a candidate algebra violates one of the structural laws; the
/// message starts with the law name (e.g. "associativity: ...").
class AlgebraLawError : public Error {
 public:
  AlgebraLawError(const std::string& law, const std::string& detail)
      : Error(law + ": " + detail), law_(law) {}
  const std::string& law() const { return law_; }

 private:
  std::string law_;
};

class BaseAlgebra {
 public:
  using Product = std::vector<std::pair<std::size_t, Rational>>;

  BaseAlgebra() = default;
  BaseAlgebra(std::string name, int complex_dim, std::vector<BasisElement> basis);

  /// Sets b_i * b_j; the caller must supply a consistent table (validate()).
  void set_product(std::size_t i, std::size_t j, Product terms);
  void set_unit(std::size_t i) { unit_ = i; }
  void set_fundamental(std::size_t i) { fundamental_ = i; }

  /// Fills products with the unit as identity (overwriting entries).
  void install_unit_products();

  /// Throws AlgebraLawError naming the first violated law.
  void validate() const;

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  int complex_dimension() const { return n_; }
  int top_degree() const { return 2 * n_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& element(std::size_t i) const { return basis_.at(i); }
  int degree(std::size_t i) const { return basis_[i].degree; }
  int weight(std::size_t i) const { return basis_[i].weight; }
  std::size_t unit() const { return unit_; }
  std::size_t fundamental() const { return fundamental_; }
  /// Throws if the label is unknown.
  std::size_t index_of(const std::string& label) const;

  const Product& product(std::size_t i, std::size_t j) const { return table_[i * basis_.size() + j]; }
  BaseVector multiply(const BaseVector& a, const BaseVector& b) const;

  /// Coefficient of the fundamental class in b_i * b_j.
  Rational pairing(std::size_t i, std::size_t j) const;

  std::vector<int> betti() const;  // indexed by degree 0..2n
  long euler_characteristic() const;
  std::vector<std::size_t> indices_of_degree(int d) const;

 private:
  std::string name_;
  int n_ = 0;
  std::vector<BasisElement> basis_;
  std::vector<Product> table_;
  std::size_t unit_ = 0;
  std::size_t fundamental_ = 0;
};

BaseAlgebra tensor_product(const BaseAlgebra& a, const BaseAlgebra& b);

/// r-fold tensor power. Basis index of b_{j_1} ⊗ ... ⊗ b_{j_r} is the base-dim
/// positional number with j_1 most significant; labels are joined with '|'.
BaseAlgebra tensor_power(const BaseAlgebra& base, int r);

/// Parses the JSON document format:
///   {"name", "n", "basis": [{"label","degree","weight"?}], "unit", "fundamental",
///    "products": [["left","right",[["label","p/q"],...]], ...]}
/// Omitted products are zero, except those involving the unit. Validated.
BaseAlgebra parse_base_algebra(const std::string& json_text);
BaseAlgebra load_base_algebra(const std::string& path);

}  // namespace cdga
