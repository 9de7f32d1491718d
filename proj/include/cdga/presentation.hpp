#pragma once

// A CDGA presented as (B ⊗ Sym_gr(generators)) / (relations) with a
// generator-defined differential that vanishes on B.

#include "cdga/graded_algebra.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cdga {

/// How the symmetric group acts on a model built over B^{⊗r}: tensor factors
/// of the base are permuted, and the indexed generators G_ab, alpha_i, eta_i
/// follow their indices. Indices are 1-based.
struct SymmetricStructure {
  int r = 1;
  std::shared_ptr<const BaseAlgebra> factor;
  std::map<std::pair<int, int>, std::size_t> pair_generators;  // (a, b), a < b
  std::vector<std::size_t> alpha;                               // alpha[i-1]
  std::vector<std::size_t> eta;
};

struct Presentation {
  std::shared_ptr<const AlgebraContext> context;
  std::vector<Element> relations;
  /// d of each generator, indexed like context->generators().
  std::vector<Element> differential;
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::optional<SymmetricStructure> symmetry;

  const AlgebraContext& ctx() const { return *context; }

  /// Throws cdga::Error if a relation or a differential image is not
  /// bihomogeneous, or if some d(g) has the wrong degree or weight.
  void validate() const;

  Element d(const Monomial& m) const;
  Element d(const Element& e) const;
};

}  // namespace cdga
