#include "cdga/analysis.hpp"

#include "cdga/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

namespace cdga {

std::vector<Permutation> all_permutations(int r) {
  if (r < 0) throw Error("r must be nonnegative");
  std::vector<Permutation> out;
  Permutation p = identity_permutation(r);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Permutation identity_permutation(int r) {
  Permutation p(static_cast<std::size_t>(r));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw Error("composing permutations of different sizes");
  Permutation c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
  return c;
}

Permutation inverse(const Permutation& p) {
  Permutation q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return q;
}

std::vector<int> cycle_type(const Permutation& p) {
  std::vector<int> lengths;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

int permutation_sign(const Permutation& p) {
  int s = 1;
  for (int len : cycle_type(p))
    if (len % 2 == 0) s = -s;
  return s;
}

Permutation parse_permutation(const std::string& text, int r) {
  Permutation p;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
      char* end = nullptr;
      long v = std::strtol(part.c_str(), &end, 10);
      if (part.empty() || *end != '\0') throw Error("bad permutation '" + text + "'");
      p.push_back(static_cast<int>(v) - 1);
    }
  } else {
    for (char ch : text) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw Error("bad permutation '" + text + "'");
      p.push_back(ch - '1');
    }
  }
  if (static_cast<int>(p.size()) != r) throw Error("permutation '" + text + "' does not act on " + std::to_string(r) + " points");
  Permutation sorted = p;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != identity_permutation(r)) throw Error("'" + text + "' is not a permutation");
  return p;
}

void check_subgroup(const std::vector<Permutation>& group, int r) {
  if (group.empty()) throw Error("subgroup is empty");
  std::set<Permutation> elems;
  for (const auto& g : group) {
    if (static_cast<int>(g.size()) != r) throw Error("subgroup element of the wrong size");
    Permutation sorted = g;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != identity_permutation(r)) throw Error("subgroup element is not a permutation");
    if (!elems.insert(g).second) throw Error("subgroup lists an element twice");
  }
  for (const auto& a : group)
    for (const auto& b : group)
      if (!elems.count(compose(a, b))) throw Error("subgroup not closed under composition");
}

std::vector<std::vector<int>> partitions(int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int max_part) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(left, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, left - part, part);
      cur.pop_back();
    }
  };
  rec(rec, r, r);
  return out;
}

ClassFunction::ClassFunction(int r) : r_(r) {
  for (const auto& lambda : partitions(r)) values_[lambda] = Rational(0);
}

ClassFunction ClassFunction::trivial(int r) {
  ClassFunction f(r);
  for (auto& [lambda, v] : f.values_) v = 1;
  return f;
}

ClassFunction ClassFunction::sign(int r) {
  ClassFunction f(r);
  for (auto& [lambda, v] : f.values_) {
    int s = 1;
    for (int len : lambda)
      if (len % 2 == 0) s = -s;
    v = s;
  }
  return f;
}

ClassFunction ClassFunction::regular(int r) {
  ClassFunction f(r);
  long fact = 1;
  for (int i = 2; i <= r; ++i) fact *= i;
  f.values_[std::vector<int>(static_cast<std::size_t>(r), 1)] = Rational(fact);
  return f;
}

void ClassFunction::set(const std::vector<int>& type, Rational value) {
  auto it = values_.find(type);
  if (it == values_.end()) throw Error("not a cycle type of S_" + std::to_string(r_));
  it->second = std::move(value);
}

const Rational& ClassFunction::at(const std::vector<int>& type) const {
  auto it = values_.find(type);
  if (it == values_.end()) throw Error("not a cycle type of S_" + std::to_string(r_));
  return it->second;
}

// --- series -----------------------------------------------------------------

BigradedSeries poincare_series_U(const BaseAlgebra& base, int max_exp, char variable) {
  if (variable != 'w' && variable != 't') throw Error("series variable must be 'w' or 't'");
  const auto betti = base.betti();
  BigradedSeries s = BigradedSeries::one(max_exp, variable);
  for (std::size_t i = 0; i < betti.size(); ++i) {
    if (betti[i] == 0) continue;
    const int deg = static_cast<int>(i);
    const int sign = deg % 2 == 0 ? 1 : -1;
    BigradedSeries factor = BigradedSeries::one(max_exp, variable);
    if (variable == 'w') {
      factor.add(deg + 2, -1);
    } else {
      if (deg >= base.top_degree()) continue;
      // 1 - (-t)^{i+1}
      factor.add(deg + 1, (deg + 1) % 2 == 0 ? -1 : 1);
    }
    s = s * factor.pow(sign * betti[i]);
  }
  return s;
}

BigradedSeries weightwise_euler(const Presentation& p, int w_max, ExecutionOptions opts) {
  if (w_max < 0) throw Error("w_max must be nonnegative");
  const auto& ctx = p.ctx();
  for (std::size_t j = 0; j < ctx.base().dimension(); ++j)
    if (ctx.base().weight(j) < ctx.base().degree(j))
      throw Error("base class " + ctx.base().element(j).label + " has weight below its degree");
  for (const auto& g : ctx.generators())
    if (g.weight < g.degree) throw Error("generator " + g.label + " has weight below its degree");

  SliceCache cache(p);
  std::vector<SliceKey> keys;
  for (int k = 0; k <= w_max; ++k)
    for (int i = 0; i <= k; ++i) keys.push_back({i, k});
  cache.prefetch(keys, opts.threads);
  BigradedSeries s(w_max, 'w');
  for (const auto& key : keys) {
    const auto dim = static_cast<std::int64_t>(cache.get(key)->dimension());
    s.add(*key.weight, key.degree % 2 == 0 ? dim : -dim);
  }
  return s;
}

BigradedSeries p_r_closed_form(const BaseAlgebra& base, int r, int w_max) {
  const int n = base.complex_dimension();
  BigradedSeries pu = poincare_series_U(base, w_max, 'w');
  if (r == 0) return pu;
  BigradedSeries pfr = weightwise_euler(build_C_r(base, r), w_max);
  BigradedSeries num = BigradedSeries::one(w_max, 'w') - BigradedSeries::monomial(2 * n, 1, w_max, 'w');
  BigradedSeries den = BigradedSeries::one(w_max, 'w') - BigradedSeries::monomial(2 * n + 2, 1, w_max, 'w');
  return pfr * pu * (num * den.reciprocal()).pow(r);
}

BigradedSeries rho_bracket(const BaseAlgebra& base, int t_max) {
  const int n = base.complex_dimension();
  const auto betti = base.betti();
  auto b = [&](int j) -> std::int64_t { return j < 0 || j >= static_cast<int>(betti.size()) ? 0 : betti[static_cast<std::size_t>(j)]; };
  BigradedSeries s(t_max, 't');
  for (int i = 0; i <= n; ++i) s.add(i, b(i + n - 1));
  for (int i = 1; i <= n - 1; ++i) s.add(i, -b(i + n + 1));
  for (int i = n + 1; i <= 2 * n + 1; ++i) s.add(i, b(i - n));
  for (int i = n + 2; i <= 2 * n; ++i) s.add(i, -b(i - n - 2));
  return s;
}

BigradedSeries rho_series(const BaseAlgebra& base, int t_max) {
  return poincare_series_U(base, t_max, 't') * rho_bracket(base, t_max);
}

BigradedSeries r1_stable_series(const BaseAlgebra& base, int t_max) {
  const int n = base.complex_dimension();
  auto ctx = std::make_shared<const AlgebraContext>(std::make_shared<const BaseAlgebra>(base),
                                                    std::vector<GeneratorSpec>{{"alpha", 2 * n - 1, 2 * n}});
  Presentation sphere_bundle;
  sphere_bundle.context = ctx;
  sphere_bundle.name = "H*(X)[alpha]";
  sphere_bundle.differential = {ctx->base_element({{base.fundamental(), Rational(1)}})};
  CohomologyTable h = cohomology(sphere_bundle, t_max, true);
  BigradedSeries s(t_max, 't');
  for (int i = 0; i <= t_max; ++i) s.set(i, static_cast<std::int64_t>(h.dim(i)));
  return s * poincare_series_U(base, t_max, 't');
}

// --- symmetric group ----------------------------------------------------------

namespace {

struct WeightedAction {
  Homomorphism phi;
  Rational coeff;
};

std::vector<SliceKey> bigraded_keys(SliceCache& cache, int max_degree) {
  std::vector<SliceKey> keys;
  for (int i = 0; i <= max_degree; ++i)
    for (int k : cache.weights_in_degree(i)) keys.push_back({i, k});
  return keys;
}

/// Row basis of the image of sum_g coeff_g g on the slice.
SparseMatrix projected_basis(const Presentation& p, const std::vector<WeightedAction>& actions, const SliceBasis& slice) {
  const std::size_t dim = slice.dimension();
  if (dim == 0) return SparseMatrix(0, 0);
  std::vector<std::vector<Rational>> proj(dim, std::vector<Rational>(dim));
  for (const auto& [phi, coeff] : actions) {
    SparseMatrix a = action_matrix(p, phi, slice);
    for (std::size_t r = 0; r < dim; ++r)
      for (const auto& [c, v] : a.row(r)) proj[r][c] += coeff * v;
  }
  RrefResult red = rref(SparseMatrix::from_dense(proj));
  SparseMatrix basis(red.rank, dim);
  for (std::size_t r = 0; r < red.rank; ++r) basis.set_row(r, red.reduced.row(r));
  return basis;
}

CohomologyTable projected_cohomology(const Presentation& p, const std::vector<WeightedAction>& actions, int max_degree,
                                     const std::string& label, ExecutionOptions opts) {
  if (max_degree < 0) throw Error("max_degree must be nonnegative");
  SliceCache cache(p);
  std::vector<SliceKey> keys = bigraded_keys(cache, max_degree + 1);
  cache.prefetch(std::vector<SliceKey>(keys.rbegin(), keys.rend()), opts.threads);

  std::vector<SparseMatrix> bases(keys.size());
  parallel_for(keys.size(), opts.threads, [&](std::size_t j) { bases[j] = projected_basis(p, actions, *cache.get(keys[j])); });
  std::map<SliceKey, std::size_t> at;
  for (std::size_t j = 0; j < keys.size(); ++j) at[keys[j]] = j;

  // rank of d restricted to the projected subspace, per source slice
  std::vector<std::size_t> ranks(keys.size(), 0);
  parallel_for(keys.size(), opts.threads, [&](std::size_t j) {
    auto tgt_it = at.find(SliceKey{keys[j].degree + 1, keys[j].weight});
    if (keys[j].degree > max_degree || tgt_it == at.end() || bases[j].rows() == 0) return;
    auto src = cache.get(keys[j]);
    auto tgt = cache.get(tgt_it->first);
    if (tgt->dimension() == 0) return;
    ranks[j] = rank_with_modular_prescreen(multiply(bases[j], differential_matrix(p, *src, *tgt)));
  });

  CohomologyTable table;
  table.model = label;
  table.max_degree = max_degree;
  table.by_weight = true;
  for (std::size_t j = 0; j < keys.size(); ++j) {
    if (keys[j].degree > max_degree) continue;
    auto prev = at.find(SliceKey{keys[j].degree - 1, keys[j].weight});
    const std::size_t in_rank = prev == at.end() ? 0 : ranks[prev->second];
    const std::size_t h = bases[j].rows() - ranks[j] - in_rank;
    if (h > 0) table.entries[{keys[j].degree, *keys[j].weight}] = h;
  }
  return table;
}

int symmetric_degree(const Presentation& p) {
  if (!p.symmetry) throw Error("presentation carries no symmetric group action");
  return p.symmetry->r;
}

long factorial(int r) {
  long f = 1;
  for (int i = 2; i <= r; ++i) f *= i;
  return f;
}

}  // namespace

CohomologyTable invariant_cohomology(const Presentation& p, const std::vector<Permutation>& subgroup, int max_degree,
                                     ExecutionOptions opts) {
  const int r = symmetric_degree(p);
  check_subgroup(subgroup, r);
  std::vector<WeightedAction> actions;
  const Rational c(1, static_cast<long>(subgroup.size()));
  for (const auto& g : subgroup) actions.push_back({symmetric_action(p, g), c});
  return projected_cohomology(p, actions, max_degree, p.name + " invariants", opts);
}

CohomologyTable isotypic_cohomology(const Presentation& p, const ClassFunction& chi, int max_degree, ExecutionOptions opts) {
  const int r = symmetric_degree(p);
  if (chi.r() != r) throw Error("class function is for a different symmetric group");
  const Rational scale = chi(identity_permutation(r)) / Rational(factorial(r));
  std::vector<WeightedAction> actions;
  for (const auto& g : all_permutations(r)) {
    Rational c = scale * chi(g);
    if (!is_zero(c)) actions.push_back({symmetric_action(p, g), c});
  }
  return projected_cohomology(p, actions, max_degree, p.name + " isotypic", opts);
}

BigradedSeries character_euler(const Presentation& p, const ClassFunction& chi, int w_max, ExecutionOptions opts) {
  const int r = symmetric_degree(p);
  if (chi.r() != r) throw Error("class function is for a different symmetric group");
  if (w_max < 0) throw Error("w_max must be nonnegative");
  std::vector<WeightedAction> actions;
  for (const auto& g : all_permutations(r))
    if (!is_zero(chi(g))) actions.push_back({symmetric_action(p, g), chi(g) / Rational(factorial(r))});

  SliceCache cache(p);
  std::vector<SliceKey> keys;
  for (int k = 0; k <= w_max; ++k)
    for (int i = 0; i <= k; ++i) keys.push_back({i, k});
  cache.prefetch(keys, opts.threads);
  std::vector<Rational> contributions(keys.size());
  parallel_for(keys.size(), opts.threads, [&](std::size_t j) {
    auto slice = cache.get(keys[j]);
    Rational total;
    for (const auto& [phi, coeff] : actions) {
      Rational trace;
      for (std::size_t b = 0; b < slice->dimension(); ++b) {
        const SparseRow row = slice->coordinates(apply_homomorphism(p.ctx(), phi, Element(slice->basis_monomial(b))));
        auto it = std::lower_bound(row.begin(), row.end(), b, [](const auto& e, std::size_t col) { return e.first < col; });
        if (it != row.end() && it->first == b) trace += it->second;
      }
      total += coeff * trace;
    }
    contributions[j] = keys[j].degree % 2 == 0 ? total : Rational(-total);
  });
  std::map<int, Rational> per_weight;
  for (std::size_t j = 0; j < keys.size(); ++j) per_weight[*keys[j].weight] += contributions[j];
  BigradedSeries s(w_max, 'w');
  for (const auto& [k, v] : per_weight) {
    if (v.get_den() != 1) throw Error("character Euler characteristic is not integral in weight " + std::to_string(k));
    if (!v.get_num().fits_slong_p()) throw Error("series coefficient overflow");
    s.set(k, v.get_num().get_si());
  }
  return s;
}

long stable_range_bound(int i, int r, long chi_X, int k) {
  if (i < 0 || r < 0 || k < 0) throw Error("stable_range_bound expects nonnegative i, r, k");
  return std::max(std::labs(chi_X), static_cast<long>(k) * (2L * i + 2L * r + 3)) + 1;
}

}  // namespace cdga
