#pragma once

// Generating functions and symmetric-group summaries of the models:
// Poincaré and weight series, closed forms for the stable Euler
// characteristics, invariant and isotypic cohomology, character-weighted
// Euler characteristics and the stable-range bound.

#include "cdga/engine.hpp"
#include "cdga/models.hpp"
#include "cdga/series.hpp"

#include <map>
#include <vector>

namespace cdga {

// --- permutations -----------------------------------------------------------

/// All permutations of {0..r-1} in lexicographic order (identity first).
std::vector<Permutation> all_permutations(int r);
Permutation identity_permutation(int r);
/// (a*b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
int permutation_sign(const Permutation& p);
/// Cycle lengths, descending: a partition of r.
std::vector<int> cycle_type(const Permutation& p);
/// Parses one-line notation of 1-based images, e.g. "213" or "2,1,3".
Permutation parse_permutation(const std::string& text, int r);
/// Throws cdga::Error unless the set is nonempty, duplicate-free, of size r
/// permutations and closed under composition.
void check_subgroup(const std::vector<Permutation>& group, int r);

/// Integer partitions of r, each descending; listed in reverse lexicographic order.
std::vector<std::vector<int>> partitions(int r);

/// A rational value per conjugacy class of S_r, keyed by cycle type.
class ClassFunction {
 public:
  explicit ClassFunction(int r);
  static ClassFunction trivial(int r);
  static ClassFunction sign(int r);
  /// r! at the identity, 0 elsewhere.
  static ClassFunction regular(int r);

  int r() const { return r_; }
  void set(const std::vector<int>& cycle_type, Rational value);
  const Rational& at(const std::vector<int>& cycle_type) const;
  const Rational& operator()(const Permutation& p) const { return at(cycle_type(p)); }
  const std::map<std::vector<int>, Rational>& values() const { return values_; }

 private:
  int r_;
  std::map<std::vector<int>, Rational> values_;
};

// --- series -----------------------------------------------------------------

/// variable 'w': prod_i (1 - w^{i+2})^{(-1)^i b_i} over all degrees of the
/// base (sb for a degree-i class has weight i+2).
/// variable 't': P(t) = prod_{i<2n} (1 - (-t)^{i+1})^{(-1)^i b_i}.
BigradedSeries poincare_series_U(const BaseAlgebra& base, int max_exp, char variable);

/// sum_k sum_i (-1)^i dim Q_{i,k} w^k, from the quotient slices alone.
/// Requires weight >= degree for every base class and generator.
BigradedSeries weightwise_euler(const Presentation& p, int w_max, ExecutionOptions opts = {});

/// P_Fr(w) P_U(w) ((1 - w^{2n}) / (1 - w^{2n+2}))^r with P_Fr computed from C_r.
BigradedSeries p_r_closed_form(const BaseAlgebra& base, int r, int w_max);

/// The bracket whose product with P(t) is sum_p rho_p t^p.
BigradedSeries rho_bracket(const BaseAlgebra& base, int t_max);
BigradedSeries rho_series(const BaseAlgebra& base, int t_max);

/// Cohomology series of (H*(X)[alpha], d alpha = [X]) times P(t).
BigradedSeries r1_stable_series(const BaseAlgebra& base, int t_max);

// --- symmetric group ----------------------------------------------------------

/// Cohomology of the image of (1/|G|) sum_g g on each slice.
CohomologyTable invariant_cohomology(const Presentation& p, const std::vector<Permutation>& subgroup, int max_degree,
                                     ExecutionOptions opts = {});
/// Cohomology of the chi-isotypic part, projector (chi(1)/r!) sum_s chi(s) s.
/// chi must be an irreducible character of S_r.
CohomologyTable isotypic_cohomology(const Presentation& p, const ClassFunction& chi, int max_degree,
                                    ExecutionOptions opts = {});

/// Coefficient of w^k: (1/r!) sum_s chi(s) sum_i (-1)^i tr(s | Q_{i,k}).
/// Throws if a coefficient is not an integer.
BigradedSeries character_euler(const Presentation& p, const ClassFunction& chi, int w_max, ExecutionOptions opts = {});

/// max(|chi_X|, k(2i + 2r + 3)) + 1.
long stable_range_bound(int i, int r, long chi_X, int k);

}  // namespace cdga
