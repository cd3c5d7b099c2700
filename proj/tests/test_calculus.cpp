#include "ncjet/calculus.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace ncjet;
using ncjet::testing::random_quotient_calculus;

namespace {

Mat axa(const AlgebraPtr& a, const std::string& x, const std::string& y) {
  return Mat::kron(a->element(x), a->element(y));
}

}  // namespace

TEST_CASE("universal calculus dimensions and d of the unit") {
  auto h = quaternions();
  Calculus u = universal_calculus(h);
  CHECK(u.omega1->dim == 12);
  CHECK(u.d_of(h->element("1")).is_zero());
  CHECK(validate_calculus(u).pass());

  Calculus u2 = universal_calculus(dual_numbers());
  CHECK(u2.omega1->dim == 2);
  CHECK(universal_calculus(upper_triangular2()).omega1->dim == 6);
}

TEST_CASE("the universal one-forms of the quaternions are the span of three generators") {
  auto h = quaternions();
  Calculus u = universal_calculus(h);
  std::vector<Mat> gens;
  for (const std::string& q : {"i", "j", "k"})
    gens.push_back(u.retr_univ * (axa(h, q, q) + axa(h, "1", "1")));
  CHECK(submodule_closure(*u.univ, gens).dim() == 12);
}

TEST_CASE("terminal kernels over the quaternions match the published spans") {
  auto h = quaternions();
  Calculus u = universal_calculus(h);
  TerminalCalculus ti = terminal_calculus(h, {h->element("i")});
  CHECK(ti.per_element_kernels[0].dim() == 8);
  std::vector<Mat> ni_gens = {u.retr_univ * (axa(h, "i", "i") + axa(h, "1", "1")),
                              u.retr_univ * (axa(h, "j", "j") - axa(h, "k", "k"))};
  CHECK(submodule_closure(*u.univ, ni_gens) == ti.per_element_kernels[0]);

  TerminalCalculus tij = terminal_calculus(h, {h->element("i"), h->element("j")});
  CHECK(tij.calc.relation_space.dim() == 4);
  Mat nij_gen = u.retr_univ *
                (axa(h, "1", "1") + axa(h, "i", "i") + axa(h, "j", "j") - axa(h, "k", "k"));
  CHECK(submodule_closure(*u.univ, {nij_gen}) == tij.calc.relation_space);
  CHECK(tij.calc.omega1->dim == 8);
  CHECK(left_free_on(tij.calc, {tij.calc.d_of(h->element("i")), tij.calc.d_of(h->element("j"))})
            .free);
}

TEST_CASE("the 1-terminal calculus is zero") {
  auto h = quaternions();
  TerminalCalculus t1 = terminal_calculus(h, {h->unit});
  CHECK(t1.calc.omega1->dim == 0);
  CHECK(validate_calculus(t1.calc).pass());
}

TEST_CASE("singleton terminal calculus carries the commutator differential") {
  auto h = quaternions();
  TerminalCalculus ti = terminal_calculus(h, {h->element("i")});
  REQUIRE(ti.ideal_carrier.has_value());
  // d_f(x) = [f, x] inside A
  for (int x = 0; x < 4; ++x) {
    Mat fx = h->multiply(h->element("i"), h->basis_el(x)) -
             h->multiply(h->basis_el(x), h->element("i"));
    CHECK(ti.ideal_carrier->incl * (ti.ideal_d * h->basis_el(x)) == fx);
  }
}

TEST_CASE("infinitesimal quotient calculus") {
  auto a = dual_numbers();
  Calculus u = universal_calculus(a);
  Mat tdt = u.retr_univ * axa(a, "t", "t");
  Calculus c = quotient_calculus(u, {tdt});
  CHECK(c.omega1->dim == 1);
  CHECK(c.relation_space.dim() == 1);
  CHECK(validate_calculus(c).pass());
  // the differential kills 1 and sends t to a generator
  CHECK(c.d_of(a->element("1")).is_zero());
  CHECK_FALSE(c.d_of(a->element("t")).is_zero());
}

TEST_CASE("quotient by nothing returns the universal calculus") {
  auto a = dual_numbers();
  Calculus u = universal_calculus(a);
  Calculus c = quotient_calculus(u, {});
  CHECK(c.omega1->dim == u.omega1->dim);
  CHECK(c.relation_space.dim() == 0);
}

TEST_CASE("quotient by everything is the zero calculus, still valid") {
  auto a = dual_numbers();
  Calculus u = universal_calculus(a);
  std::vector<Mat> gens;
  for (int r = 0; r < u.omega1->dim; ++r) gens.push_back(unit_col(u.omega1->dim, r));
  Calculus c = quotient_calculus(u, gens);
  CHECK(c.omega1->dim == 0);
  CHECK(validate_calculus(c).pass());
}

TEST_CASE("one-form dimension bookkeeping") {
  std::mt19937 rng(31);
  for (const AlgebraPtr& a : {quaternions(), dual_numbers(), upper_triangular2()}) {
    Calculus u = universal_calculus(a);
    for (int t = 0; t < 4; ++t) {
      Calculus c = random_quotient_calculus(u, rng, 1 + t % 2);
      CHECK(c.omega1->dim == u.omega1->dim - c.relation_space.dim());
      CHECK(validate_calculus(c).pass());
    }
  }
}

TEST_CASE("structure relations reproduce the quaternion table") {
  auto h = quaternions();
  Calculus c = terminal_calculus(h, {h->element("i"), h->element("j")}).calc;
  std::vector<Mat> theta = {c.d_of(h->element("i")), c.d_of(h->element("j"))};
  StructureRelations sr = structure_relations(c, theta);
  REQUIRE(sr.ok);
  // dk = -j di + i dj
  CHECK(sr.d_coeffs[3][0] == -h->element("j"));
  CHECK(sr.d_coeffs[3][1] == h->element("i"));
  // d1 = 0, di = di, dj = dj
  CHECK(sr.d_coeffs[0][0].is_zero());
  CHECK(sr.d_coeffs[0][1].is_zero());
  CHECK(sr.d_coeffs[1][0] == h->unit);
  CHECK(sr.d_coeffs[1][1].is_zero());

  // bimodule structure: i di = -(di)i, j di = -(di)j, k di = (di)k, same for dj
  auto lhs = [&](const std::string& x, int t) { return c.omega1->lact(h->element(x)) * theta[size_t(t)]; };
  auto rhs = [&](const std::string& x, int t) { return c.omega1->ract(h->element(x)) * theta[size_t(t)]; };
  for (int t : {0, 1}) {
    CHECK(lhs("i", t) == -rhs("i", t));
    CHECK(lhs("j", t) == -rhs("j", t));
    CHECK(lhs("k", t) == rhs("k", t));
  }

  // the right-hand expansion agrees with the left one through the relations
  REQUIRE(sr.right_expansion_ok);
  CHECK(sr.right_form[1][0][0] == -h->element("i"));  // i·di = di·(-i)
}

TEST_CASE("structure relations reject non-free input") {
  auto h = quaternions();
  Calculus c = terminal_calculus(h, {h->element("i"), h->element("j")}).calc;
  StructureRelations sr = structure_relations(c, {c.d_of(h->element("i"))});
  CHECK_FALSE(sr.ok);
}

TEST_CASE("calculus morphisms exist exactly along relation inclusion") {
  auto h = quaternions();
  Calculus u = universal_calculus(h);
  Calculus ci = terminal_calculus(h, {h->element("i")}).calc;
  Calculus cij = terminal_calculus(h, {h->element("i"), h->element("j")}).calc;

  CHECK(calculus_morphism(u, ci).has_value());
  CHECK(calculus_morphism(u, cij).has_value());
  CHECK(calculus_morphism(cij, ci).has_value());       // N_ij ⊆ N_i
  CHECK_FALSE(calculus_morphism(ci, cij).has_value());  // N_i ⊄ N_ij
  auto id = calculus_morphism(cij, cij);
  REQUIRE(id.has_value());
  CHECK(*id == Mat::identity(cij.omega1->dim));
  auto phi = calculus_morphism(cij, ci);
  CHECK(rref(*phi).rank() == ci.omega1->dim);  // epimorphism
}

TEST_CASE("terminal property over a random family of quotient calculi") {
  auto h = quaternions();
  Calculus u = universal_calculus(h);
  TerminalCalculus tij = terminal_calculus(h, {h->element("i"), h->element("j")});
  std::mt19937 rng(41);
  int found = 0;
  for (int t = 0; t < 12; ++t) {
    Calculus c = random_quotient_calculus(u, rng, 1);
    bool below = true;
    for (const Subspace& nf : tij.per_element_kernels)
      below = below && nf.contains(c.relation_space);
    if (below) {
      ++found;
      CHECK(calculus_morphism(c, tij.calc).has_value());
    }
  }
  // the universal calculus itself is always below every kernel
  CHECK(calculus_morphism(u, tij.calc).has_value());
  (void)found;
}
