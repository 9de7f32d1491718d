// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on failure.

#include "cdga/analysis.hpp"
#include "cdga/job.hpp"

#include "support/dense_oracle.hpp"
#include "support/random_presentations.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace cdga;

namespace {

struct Verdict {
  bool ok;
  std::string detail;
};

Presentation a_model(const std::string& space, const std::string& c, int r) {
  Space s = build_space(space);
  return build_A_r(s.base, parse_degree_two_class(s.base, c), r);
}

std::vector<std::size_t> dims(const Presentation& p, int max_degree) {
  if (!verify_d_squared(p, max_degree).ok) throw Error(p.name + " fails d^2 = 0");
  return cohomology(p, max_degree, true).totals();
}

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

std::vector<std::size_t> coefficients(const BigradedSeries& s) {
  std::vector<std::size_t> out;
  for (auto c : s.coefficients()) out.push_back(static_cast<std::size_t>(c));
  return out;
}

Verdict table1() {
  std::size_t matched = 0, total = 0;
  std::string bad;
  for (const auto& col : table1_expected()) {
    auto got = dims(a_model(col.space, col.c, col.r), 10);
    for (std::size_t i = 0; i < col.dims.size(); ++i, ++total) {
      if (got[i] == col.dims[i]) ++matched;
      else bad += " " + col.space + "/r=" + std::to_string(col.r) + "/H^" + std::to_string(i);
    }
  }
  return {matched == total, std::to_string(matched) + "/" + std::to_string(total) + " entries" + bad};
}

Verdict example_c_dependence() {
  auto c10 = dims(a_model("P1xP1", "[1:0]", 2), 10);
  auto c11 = dims(a_model("P1xP1", "[1:1]", 2), 10);
  const bool ok = c10[9] == 19 && c10[10] == 17 && c11[9] == 18 && c11[10] == 15;
  return {ok, "[1:0]: H9=" + std::to_string(c10[9]) + " H10=" + std::to_string(c10[10]) + "; [1:1]: H9=" +
                  std::to_string(c11[9]) + " H10=" + std::to_string(c11[10])};
}

Verdict example_line() {
  // (1+t)^2 (1+t^3) / (1-t^2)
  BigradedSeries one = BigradedSeries::one(10, 't');
  BigradedSeries t = BigradedSeries::monomial(1, 1, 10, 't');
  BigradedSeries expected = (one + t).pow(2) * (one + t * t * t) * (one - t * t).reciprocal();
  auto got = dims(a_model("P1", "1", 2), 10);
  return {got == coefficients(expected), "H^0..10 = " + join(got)};
}

Verdict one_point() {
  BigradedSeries one = BigradedSeries::one(12, 't');
  auto term = [&](int e) { return one + BigradedSeries::monomial(e, 1, 12, 't'); };
  auto expected = coefficients(term(2) * term(1) * term(3) * term(5));
  Space p2 = build_space("P2");
  bool ok = true;
  std::string detail;
  for (const char* c : {"1", "-5/2"}) {
    auto got = dims(build_A_r(p2.base, parse_degree_two_class(p2.base, c), 1), 12);
    ok = ok && got == expected;
    detail += std::string(detail.empty() ? "" : "; ") + "c=" + c + ": " + join(got);
  }
  return {ok, detail};
}

Verdict twist() {
  Space p2 = build_space("P2");
  const BaseVector x = parse_degree_two_class(p2.base, "1");
  EulerTwist e = euler_class_twist(p2.base, *p2.chern, x, 2);
  auto lhs = dims(build_A_r_L(p2.base, *p2.chern, x, 2, 2), 8);
  auto rhs = dims(build_A_r(p2.base, x, 2), 8);
  return {e.m == 1 && lhs == rhs, "m(2) = " + to_string(e.m) + ", H^0..8 = " + join(lhs)};
}

Verdict rho() {
  BigradedSeries p2 = rho_series(projective_space(2), 12);
  BigradedSeries p1 = rho_bracket(projective_space(1), 12);
  BigradedSeries expected = BigradedSeries::one(12, 't') + BigradedSeries::monomial(3, 1, 12, 't');
  return {p2.is_zero() && p1 == expected, "rho(P2) = " + p2.to_string() + ", bracket(P1) = " + p1.to_string()};
}

Verdict properties() {
  std::vector<std::string> failed;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  };

  // d^2 = 0 and d(I) in I
  std::vector<Presentation> builtin;
  for (const char* sp : {"P1", "P2", "S1", "P1xP1"}) {
    Space s = build_space(sp);
    const BaseVector c = parse_degree_two_class(s.base, s.base.indices_of_degree(2).size() == 2 ? "[1:1]" : "1");
    for (int r = 1; r <= 2; ++r) {
      builtin.push_back(build_C_r(s.base, r));
      builtin.push_back(build_A_r(s.base, c, r));
    }
  }
  builtin.push_back(build_C_r(projective_space(1), 3));
  builtin.push_back(a_model("P2", "1", 3));
  {
    Space p2 = build_space("P2");
    builtin.push_back(build_A_r_L(p2.base, *p2.chern, parse_degree_two_class(p2.base, "1"), 2, 2));
  }
  for (const auto& p : builtin) check(verify_d_squared(p, 11).ok, "d^2 on " + p.name);

  // weight preservation of d, and Euler characteristic without d
  for (const auto& p : builtin) {
    SliceCache cache(p);
    bool preserved = true;
    for (int i = 0; i <= 8; ++i)
      for (const auto& m : p.ctx().monomials_of(i))
        for (const auto& [t, c] : p.d(m)) preserved = preserved && p.ctx().weight(t) == p.ctx().weight(m);
    check(preserved, "weight preservation on " + p.name);

    CohomologyTable h = cohomology(p, 8, true);
    for (int k = 0; k <= 8; ++k) {
      long a = 0, b = 0;
      for (int i = 0; i <= k; ++i) {
        a += (i % 2 ? -1 : 1) * static_cast<long>(h.dim(i, k));
        b += (i % 2 ? -1 : 1) * static_cast<long>(cache.get({i, k})->dimension());
      }
      check(a == b, "Euler characteristic in weight " + std::to_string(k) + " on " + p.name);
    }
  }

  // closed forms
  check(weightwise_euler(a_model("P1", "1", 2), 12) == p_r_closed_form(projective_space(1), 2, 12), "closed form P1 r=2");
  check(weightwise_euler(a_model("P2", "1", 2), 12) == p_r_closed_form(projective_space(2), 2, 12), "closed form P2 r=2");

  // equivariance on all slices of A_2(P1, c)
  Presentation a2 = a_model("P1", "1", 2);
  for (const auto& sigma : all_permutations(2)) {
    Homomorphism phi = symmetric_action(a2, sigma);
    SliceCache cache(a2);
    for (int i = 0; i <= 11; ++i)
      for (int k : cache.weights_in_degree(i)) {
        auto src = cache.get({i, k}), tgt = cache.get({i + 1, k});
        SparseMatrix d = differential_matrix(a2, *src, *tgt);
        check(multiply(action_matrix(a2, phi, *src), d) == multiply(d, action_matrix(a2, phi, *tgt)),
              "equivariance in slice (" + std::to_string(i) + "," + std::to_string(k) + ")");
      }
  }

  // trivial + sign isotypic parts
  CohomologyTable full = cohomology(a2, 11, true);
  CohomologyTable inv = invariant_cohomology(a2, all_permutations(2), 11);
  CohomologyTable sgn = isotypic_cohomology(a2, ClassFunction::sign(2), 11);
  for (int i = 0; i <= 11; ++i) check(inv.dim(i) + sgn.dim(i) == full.dim(i), "isotypic sum in degree " + std::to_string(i));

  // configuration spaces of the sphere
  check(dims(build_C_r(projective_space(1), 2), 8) == std::vector<std::size_t>{1, 0, 1, 0, 0, 0, 0, 0, 0}, "C_2(P1)");
  check(dims(build_C_r(projective_space(1), 3), 8) == std::vector<std::size_t>{1, 0, 0, 1, 0, 0, 0, 0, 0}, "C_3(P1)");

  std::string detail = std::to_string(builtin.size()) + " models certified";
  for (const auto& f : failed) detail += "; FAILED " + f;
  return {failed.empty(), detail};
}

Verdict cross_validation() {
  std::size_t agreed = 0, total = 0, largest = 0;
  std::string bad;
  auto compare = [&](const Presentation& p, int max_degree) {
    ++total;
    largest = std::max(largest, oracle::total_free_dimension(p, max_degree));
    if (cohomology(p, max_degree, true).entries == oracle::dense_cohomology(p, max_degree)) ++agreed;
    else bad += " " + p.name;
  };
  for (std::uint32_t seed = 100; seed < 124; ++seed) {
    auto rp = oracle::random_presentation(seed, 50);
    compare(rp.presentation, rp.max_degree);
  }
  compare(build_C_r(projective_space(1), 2), 4);
  compare(a_model("P1", "1", 1), 3);
  return {agreed == total, std::to_string(agreed) + "/" + std::to_string(total) +
                               " presentations agree, largest total free dimension " + std::to_string(largest) + bad};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"reference table of 44 cohomology dimensions", table1},
      {"c-dependence for P1xP1 ([1:0] vs [1:1])", example_c_dependence},
      {"two points on the line: (1+t)^2(1+t^3)/(1-t^2)", example_line},
      {"one marked point on P2: (1+t^2)(1+t)(1+t^3)(1+t^5)", one_point},
      {"line bundle twist d=2 on P2 equals c = x", twist},
      {"rho series: 0 for P2, bracket 1+t^3 for P1", rho},
      {"property suites", properties},
      {"sparse engine vs dense brute force", cross_validation},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.ok) ++failures;
    std::cout << (v.ok ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first << " | " << v.detail
              << " (" << std::fixed << std::setprecision(2) << secs << "s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
