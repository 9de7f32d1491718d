#include "doctest.h"

#include "cdga/models.hpp"

#include "support/dense_oracle.hpp"
#include "support/random_presentations.hpp"

using namespace cdga;

namespace {

Presentation a_model(const std::string& space, const std::string& c, int r) {
  Space s = build_space(space);
  return build_A_r(s.base, parse_degree_two_class(s.base, c), r);
}

Presentation c2_p1() { return build_C_r(projective_space(1), 2); }

std::vector<std::size_t> dims(const Presentation& p, int max_degree) { return cohomology(p, max_degree, true).totals(); }

}  // namespace

TEST_SUITE("cdga_engine") {

TEST_CASE("ideal slices") {
  auto base = std::make_shared<const BaseAlgebra>(projective_space(2));
  Presentation free;
  free.context = std::make_shared<const AlgebraContext>(base, std::vector<GeneratorSpec>{{"y", 3, 3}});
  free.differential = {Element{}};
  CHECK(ideal_slice(free, 3).rows() == 0);
  CHECK(ideal_slice(free, 5, 5).rows() == 0);

  Presentation c2 = c2_p1();
  SparseMatrix deg3 = ideal_slice(c2, 3);
  CHECK(deg3.cols() == 2);
  CHECK(rank(deg3) == 1);
  CHECK(rank(ideal_slice(c2, 2)) == 0);
}

TEST_CASE("quotient slices") {
  for (const auto& p : {c2_p1(), a_model("P2", "1", 2), a_model("S1", "1", 2), build_C_r(projective_space(1), 3)})
    CHECK(quotient_slice(p, 0).dimension() == 1);
  SliceBasis s = quotient_slice(c2_p1(), 3);
  CHECK(s.free_dimension() == 2);
  CHECK(s.ideal_rank() == 1);
  CHECK(s.dimension() == 1);
  CHECK(quotient_slice(a_model("P2", "1", 2), 1).dimension() == 1);
}

TEST_CASE("normal-form projector is idempotent and kills the ideal") {
  for (const auto& p : {a_model("P1xP1", "[1:1]", 2), build_C_r(projective_space(1), 3), a_model("S1", "1", 2)})
    for (int d = 0; d <= 5; ++d) {
      SliceBasis s = quotient_slice(p, d);
      SparseMatrix proj = s.projector();
      CHECK(multiply(proj, proj) == proj);
      SparseMatrix ideal = ideal_slice(p, d);
      if (ideal.rows() > 0) CHECK(is_zero(multiply(ideal, proj)));
      CHECK(rank(proj) == s.dimension());
      CHECK(s.dimension() + s.ideal_rank() == s.free_dimension());
    }
}

TEST_CASE("normal forms reject elements of another slice") {
  Presentation p = c2_p1();
  SliceBasis s = quotient_slice(p, 2);
  Element g = p.ctx().generator_element(0);
  CHECK_THROWS_AS(s.coordinates(g), Error);
}

TEST_CASE("differential matrices") {
  Presentation c2 = c2_p1();
  CHECK(is_zero(differential_matrix(c2, 0)));
  SparseMatrix dg = differential_matrix(c2, 1);
  CHECK(dg.rows() == 1);
  CHECK(rank(dg) == 1);

  Presentation a1 = a_model("P1", "1", 1);
  const auto& ctx = a1.ctx();
  CHECK(a1.d(ctx.generator_element(ctx.generator_index("alpha1"))) == Element(ctx.base_monomial(ctx.base().fundamental())));
  SliceBasis src = quotient_slice(a1, 1, 2), tgt = quotient_slice(a1, 2, 2);
  CHECK(rank(differential_matrix(a1, src, tgt)) == 1);
}

TEST_CASE("Leibniz rule") {
  Presentation p = a_model("S1", "1", 2);
  const auto& ctx = p.ctx();
  for (int da = 0; da <= 2; ++da)
    for (int db = 0; db <= 2; ++db)
      for (const auto& a : ctx.monomials_of(da))
        for (const auto& b : ctx.monomials_of(db)) {
          Element lhs = p.d(ctx.multiply(a, b));
          Element rhs = ctx.multiply(p.d(a), Element(b));
          rhs += Rational(da % 2 == 0 ? 1 : -1) * ctx.multiply(Element(a), p.d(b));
          CHECK(lhs == rhs);
        }
}

TEST_CASE("published cohomology columns") {
  CHECK(dims(a_model("P2", "1", 2), 10) == std::vector<std::size_t>{1, 1, 2, 3, 1, 4, 5, 3, 4, 4, 6});
  CHECK(dims(a_model("S1", "1", 2), 10) == std::vector<std::size_t>{1, 5, 15, 29, 47, 69, 94, 122, 153, 187, 224});
  CHECK(dims(a_model("P2", "1", 3), 10) == std::vector<std::size_t>{1, 1, 3, 4, 1, 9, 12, 7, 15, 21, 22});
}

TEST_CASE("d squared verification") {
  CHECK(verify_d_squared(c2_p1(), 6).ok);
  CHECK(verify_d_squared(a_model("P1xP1", "[1:1]", 2), 11).ok);

  Presentation wrong = c2_p1();
  const auto& ctx = wrong.ctx();
  const auto& base = ctx.base();
  wrong.differential[0] = ctx.base_element({{base.index_of("x|1"), Rational(1)}});
  DSquaredReport rep = verify_d_squared(wrong, 6);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.failing_slice.has_value());
  Element expected_witness = ctx.multiply(
      ctx.base_element({{base.index_of("x|1"), Rational(1)}, {base.index_of("1|x"), Rational(-1)}}), ctx.generator_element(0));
  CHECK(rep.witness == expected_witness);
}

TEST_CASE("weight splitting, weight preservation and Euler characteristics") {
  for (const auto& p : {a_model("P2", "1", 2), a_model("S1", "1", 2), a_model("P1xP1", "[1:0]", 2), c2_p1()}) {
    CohomologyTable split = cohomology(p, 8, true);
    CohomologyTable whole = cohomology(p, 8, false);
    CHECK(split.totals() == whole.totals());

    const auto& ctx = p.ctx();
    for (int d = 0; d <= 6; ++d)
      for (const auto& m : ctx.monomials_of(d))
        for (const auto& [t, c] : p.d(m)) CHECK(ctx.weight(t) == ctx.weight(m));

    for (int k = 0; k <= 8; ++k) {
      long from_h = 0, from_slices = 0;
      for (int i = 0; i <= k; ++i) {
        const long sign = i % 2 == 0 ? 1 : -1;
        from_h += sign * static_cast<long>(split.dim(i, k));
        from_slices += sign * static_cast<long>(quotient_slice(p, i, k).dimension());
      }
      CHECK(from_h == from_slices);
    }
  }
}

TEST_CASE("results do not depend on the thread count") {
  Presentation p = a_model("S1", "1", 2);
  CohomologyTable serial = cohomology_serial(p, 9, true);
  for (int threads : {1, 2, 4}) {
    CohomologyTable t = cohomology(p, 9, true, {threads});
    CHECK(t.entries == serial.entries);
  }
}

TEST_CASE("sparse path agrees with the dense oracle") {
  for (std::uint32_t seed = 1; seed <= 12; ++seed) {
    auto rp = oracle::random_presentation(seed);
    CAPTURE(seed);
    REQUIRE(verify_d_squared(rp.presentation, rp.max_degree).ok);
    auto sparse = cohomology(rp.presentation, rp.max_degree, true).entries;
    CHECK(sparse == oracle::dense_cohomology(rp.presentation, rp.max_degree));
  }
  Presentation c2 = c2_p1();
  CHECK(cohomology(c2, 4, true).entries == oracle::dense_cohomology(c2, 4));
}

}
