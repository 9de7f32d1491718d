#include "random_presentations.hpp"

#include "dense_oracle.hpp"

#include "cdga/engine.hpp"
#include "cdga/models.hpp"

#include <random>

namespace oracle {

using namespace cdga;

namespace {

Presentation free_presentation(const std::shared_ptr<const BaseAlgebra>& base, const std::vector<GeneratorSpec>& gens,
                               const std::vector<Element>& dg) {
  Presentation p;
  p.context = std::make_shared<const AlgebraContext>(base, gens);
  p.differential = dg;
  p.name = "random";
  return p;
}

/// Re-expresses an element of a smaller context (fewer generators) in ctx.
Element widen(const AlgebraContext& ctx, const Element& e) {
  Element out;
  for (const auto& [m, c] : e) {
    Monomial w = m;
    w.exps.resize(ctx.generator_count(), 0);
    out.add(w, c);
  }
  return out;
}

/// Random element of the cocycle space of the free slice, or zero.
Element random_cocycle(const Presentation& p, int degree, int weight, std::mt19937& rng) {
  SliceBasis src = quotient_slice(p, degree, weight);
  if (src.dimension() == 0) return {};
  SparseMatrix d = differential_matrix(p, src, quotient_slice(p, degree + 1, weight));
  auto kernel = kernel_basis(d.transpose());
  std::uniform_int_distribution<int> coeff(-2, 2);
  Element e;
  for (const auto& v : kernel) {
    const int c = coeff(rng);
    if (c == 0) continue;
    for (const auto& [col, x] : v) e.add(src.basis_monomial(col), x * c);
  }
  return e;
}

BaseAlgebra random_base(std::mt19937& rng) {
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0: return projective_space(1);
    case 1: return projective_space(2);
    case 2: return surface(1);
    case 3: return surface(0);
    default: return build_space("P1xP1").base;
  }
}

}  // namespace

RandomPresentation random_presentation(std::uint32_t seed, std::size_t budget) {
  std::mt19937 rng(seed);
  for (int attempt = 0;; ++attempt) {
    auto base = std::make_shared<const BaseAlgebra>(random_base(rng));
    const int max_degree = std::uniform_int_distribution<int>(3, 5)(rng);
    const int n_gens = std::uniform_int_distribution<int>(1, 3)(rng);

    std::vector<GeneratorSpec> gens;
    std::vector<Element> dg;
    for (int g = 0; g < n_gens; ++g) {
      const int deg = std::uniform_int_distribution<int>(1, 3)(rng);
      const int w = deg + std::uniform_int_distribution<int>(0, 2)(rng);
      Presentation so_far = free_presentation(base, gens, dg);
      Element image = random_cocycle(so_far, deg + 1, w, rng);
      gens.push_back({"g" + std::to_string(g + 1), deg, w});
      auto wider = std::make_shared<const AlgebraContext>(base, gens);
      for (auto& e : dg) e = widen(*wider, e);
      dg.push_back(widen(*wider, image));
    }

    Presentation p = free_presentation(base, gens, dg);
    const int n_rel = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int k = 0; k < n_rel; ++k) {
      const int deg = std::uniform_int_distribution<int>(1, max_degree)(rng);
      const int w = deg + std::uniform_int_distribution<int>(0, 2)(rng);
      Element rel = random_cocycle(p, deg, w, rng);
      if (!rel.is_zero()) p.relations.push_back(std::move(rel));
    }
    if (total_free_dimension(p, max_degree) > budget) {
      if (attempt > 1000) throw Error("no random presentation fits the budget");
      continue;
    }
    p.name = "random#" + std::to_string(seed);
    p.validate();
    return {std::move(p), max_degree};
  }
}

}  // namespace oracle
