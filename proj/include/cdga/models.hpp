#pragma once

// The concrete CDGAs: cohomology rings of the example spaces, the diagonal
// class, the configuration-space model C_r(X), the marked-hypersurface models
// A_r(X, c) and A_r(L^d), and the symmetric group action on them.

#include "cdga/engine.hpp"
#include "cdga/presentation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cdga {

/// Chern classes c_0..c_n of the cotangent bundle, as base vectors.
struct ChernData {
  std::vector<BaseVector> cotangent;
};

struct Space {
  std::string spec;
  BaseAlgebra base;
  std::optional<ChernData> chern;
};

BaseAlgebra projective_space(int n);
BaseAlgebra surface(int genus);
ChernData projective_space_chern(const BaseAlgebra& pn);
ChernData surface_chern(const BaseAlgebra& sigma);
Space product_space(const Space& a, const Space& b);

/// Space expressions: "P<n>", "S<g>" (genus-g surface), products "AxB" such as
/// "P1xP1", and "custom:<path>" for a JSON algebra file (optional "chern" field).
Space build_space(const std::string& spec);

/// Parses "p" (rank-one H^2) or "[p:q:...]" (coordinates in the degree-2
/// basis, ascending basis index). Not required to be ample.
BaseVector parse_degree_two_class(const BaseAlgebra& base, const std::string& text);

/// b_j^∨ for every basis element b_j: coefficient of [X] in b_i b_j^∨ is δ_ij.
std::vector<BaseVector> dual_basis(const BaseAlgebra& base);

/// Diagonal class in H*(X)⊗H*(X), indexed like tensor_power(base, 2).
/// Signs are fixed by requiring (x⊗1 - 1⊗x)Δ = 0 for every basis x and
/// <Δ·Δ, [X]⊗[X]> = χ(X); throws if no convention satisfies both.
BaseVector diagonal_class(const BaseAlgebra& base);

/// Index of b_{j_1} ⊗ ... ⊗ b_{j_r} in tensor_power(base, r); digits are 0-based.
std::size_t tensor_index(std::size_t factor_dim, const std::vector<std::size_t>& digits);
std::vector<std::size_t> tensor_digits(std::size_t factor_dim, int r, std::size_t index);
/// π_a^*(v) for 1-based a.
BaseVector pull_back(const BaseAlgebra& factor, int r, int a, const BaseVector& v);

Presentation build_C_r(const BaseAlgebra& base, int r);
Presentation build_A_r(const BaseAlgebra& base, const BaseVector& c, int r);

struct EulerTwist {
  BaseVector euler_class;  // e(Ω¹(L^d)) in H^{2n}(X)
  Rational m;              // its [X]-coefficient
};

EulerTwist euler_class_twist(const BaseAlgebra& base, const ChernData& chern, const BaseVector& c1, int d);
Presentation build_A_r_L(const BaseAlgebra& base, const ChernData& chern, const BaseVector& c1, int d, int r);

/// Zero-based permutation: sigma[a] is the image of position a.
using Permutation = std::vector<int>;

/// Algebra automorphism induced by sigma on a model carrying a
/// SymmetricStructure. Verified to commute with d and to preserve the
/// relations; throws cdga::Error otherwise.
Homomorphism symmetric_action(const Presentation& p, const Permutation& sigma);

/// Row i: normal form of phi(i-th basis monomial) in the slice's quotient basis.
SparseMatrix action_matrix(const Presentation& p, const Homomorphism& phi, const SliceBasis& slice);

}  // namespace cdga
