#include "ncjet/diffops.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace ncjet;

namespace {

struct Setup {
  std::shared_ptr<const Calculus> calc;
  std::shared_ptr<const ExteriorAlgebra> ext;
  std::unique_ptr<JetContext> ctx;
};

Setup& quaternion_setup() {
  static Setup s = [] {
    Setup out;
    auto h = quaternions();
    out.calc = std::make_shared<Calculus>(
        terminal_calculus(h, {h->element("i"), h->element("j")}).calc);
    out.ext = std::make_shared<ExteriorAlgebra>(maximal_exterior(out.calc, 3));
    out.ctx = std::make_unique<JetContext>(out.calc, out.ext);
    return out;
  }();
  return s;
}

Mat partial(const Setup& s, int which) {
  auto h = s.calc->alg;
  StructureRelations sr = structure_relations(
      *s.calc, {s.calc->d_of(h->element("i")), s.calc->d_of(h->element("j"))});
  Mat p(4, 4);
  for (int x = 0; x < 4; ++x) p.set_column(x, sr.d_coeffs[size_t(x)][size_t(which)]);
  return p;
}

}  // namespace

TEST_CASE("right multiplications have order zero, left ones do not") {
  auto& s = quaternion_setup();
  auto h = s.calc->alg;
  ModulePtr e = s.ctx->algebra_module();
  for (const std::string& q : {"1", "i", "j", "k"})
    CHECK(operator_order(*s.ctx, h->rmul(h->element(q)), e, e, JetFlavor::holonomic, 2) == 0);
  CHECK(operator_order(*s.ctx, h->lmul(h->element("i")), e, e, JetFlavor::holonomic, 3) == 1);
  CHECK(operator_order(*s.ctx, h->lmul(h->element("k")), e, e, JetFlavor::holonomic, 3) == 2);
  CHECK(operator_order(*s.ctx, Mat::identity(4), e, e, JetFlavor::holonomic, 2) == 0);
}

TEST_CASE("partial derivatives have order exactly one") {
  auto& s = quaternion_setup();
  ModulePtr e = s.ctx->algebra_module();
  for (int which : {0, 1}) {
    Mat p = partial(s, which);
    CHECK_FALSE(order_at_most(*s.ctx, p, e, e, 0, JetFlavor::holonomic).has_value());
    auto cert = order_at_most(*s.ctx, p, e, e, 1, JetFlavor::holonomic);
    REQUIRE(cert.has_value());
    CHECK(cert->solution_space_dim == 0);
    CHECK(cert->lift * s.ctx->jet1(e).prolong == p);
  }
}

TEST_CASE("the differential is a first-order operator into the one-forms") {
  auto& s = quaternion_setup();
  ModulePtr e = s.ctx->algebra_module();
  CHECK(operator_order(*s.ctx, s.calc->d, e, s.calc->omega1, JetFlavor::holonomic, 2) == 1);
  // its unique lift is the stored dtilde
  auto cert = order_at_most(*s.ctx, s.calc->d, e, s.calc->omega1, 1, JetFlavor::holonomic);
  REQUIRE(cert.has_value());
  CHECK(cert->lift == s.ctx->dtilde());
}

TEST_CASE("every linear map has order at most one for the universal calculus") {
  for (const AlgebraPtr& a : {quaternions(), dual_numbers()}) {
    JetContext ctx(std::make_shared<Calculus>(universal_calculus(a)));
    ModulePtr e = ctx.algebra_module();
    std::mt19937 rng(71);
    for (int t = 0; t < 4; ++t) {
      Mat delta = ncjet::testing::rand_matrix(rng, a->dim, a->dim);
      auto cert = order_at_most(ctx, delta, e, e, 1, JetFlavor::holonomic);
      REQUIRE(cert.has_value());
      // the lift is a⊗e ↦ aΔ(e)
      const Jet1& j = ctx.jet1(e);
      Mat expected(a->dim, a->dim * a->dim);
      for (int i = 0; i < a->dim; ++i)
        for (int k = 0; k < a->dim; ++k)
          expected.set_column(i * a->dim + k, a->lmul(a->basis_el(i)) * (delta * a->basis_el(k)));
      CHECK(cert->lift == expected * j.from_carrier);
    }
    OperatorSpace os = operator_space(ctx, e, e, 1);
    CHECK(os.dims[1] == a->dim * a->dim);
  }
}

TEST_CASE("quaternion operator space dims and full report") {
  auto& s = quaternion_setup();
  ModulePtr e = s.ctx->algebra_module();
  OperatorSpace os = operator_space(*s.ctx, e, e, 3);
  CHECK(os.dims == std::vector<int>{4, 12, 16, 16});
  CHECK(os.dims[0] == int(hom_A(*e, *e).size()));
  QuaternionOperatorReport rep = quaternion_operator_report(*s.ctx);
  CHECK(rep.pass());
}

TEST_CASE("composition carries a certificate of the sum order") {
  auto& s = quaternion_setup();
  ModulePtr e = s.ctx->algebra_module();
  Mat pi = partial(s, 0), pj = partial(s, 1);
  DiffOp d1{e, e, pi, order_at_most(*s.ctx, pi, e, e, 1, JetFlavor::holonomic)};
  DiffOp d2{e, e, pj, order_at_most(*s.ctx, pj, e, e, 1, JetFlavor::holonomic)};
  DiffOp comp = compose_ops(*s.ctx, d2, d1);
  CHECK(comp.certificate->order == 2);
  CHECK(comp.m == pj * pi);
  // the quantum laplacian is this composite doubled, of order exactly 2
  Mat lap = comp.m.scaled(2);
  CHECK(operator_order(*s.ctx, lap, e, e, JetFlavor::holonomic, 3) == 2);

  // zero-order composed with zero-order stays zero-order
  auto h = s.calc->alg;
  DiffOp r1{e, e, h->rmul(h->element("i")),
            order_at_most(*s.ctx, h->rmul(h->element("i")), e, e, 0, JetFlavor::holonomic)};
  DiffOp r2{e, e, h->rmul(h->element("j")),
            order_at_most(*s.ctx, h->rmul(h->element("j")), e, e, 0, JetFlavor::holonomic)};
  DiffOp rr = compose_ops(*s.ctx, r2, r1);
  CHECK(operator_order(*s.ctx, rr.m, e, e, JetFlavor::holonomic, 2) == 0);
}

TEST_CASE("curvature of a covariant derivative has order zero") {
  auto& s = quaternion_setup();
  ModulePtr f2 = free_module(s.calc->alg, 2);
  ConnectionSpace cs = connections(*s.ctx, f2);
  REQUIRE(cs.exists);
  ExtCovDeriv cd = covariant_derivative(*s.ext, f2, cs.nabla, 2);
  Mat curv = cd.curvature(0);
  CHECK(operator_order(*s.ctx, curv, f2, cd.omega_e[2].carrier, JetFlavor::holonomic, 1) == 0);
  // while the covariant derivative itself has order at most one
  CHECK(operator_order(*s.ctx, cs.nabla, f2, cd.omega_e[1].carrier, JetFlavor::holonomic, 2) <= 1);
}

TEST_CASE("connections biject with splittings and round-trip") {
  auto& s = quaternion_setup();
  for (const ModulePtr& e : {s.ctx->algebra_module(), free_module(s.calc->alg, 2)}) {
    ConnectionSpace cs = connections(*s.ctx, e);
    REQUIRE(cs.exists);
    const Jet1& j = s.ctx->jet1(e);
    CHECK(cs.splitting * j.incl_forms == Mat::identity(j.forms.carrier->dim));
    Mat back = splitting_from_connection(*s.ctx, e, cs.nabla);
    CHECK(back == cs.splitting);
    CHECK(connection_from_splitting(*s.ctx, e, back) == cs.nabla);
  }
}

TEST_CASE("no connection exists on k[0] over the infinitesimal calculus") {
  auto a = dual_numbers();
  Calculus u = universal_calculus(a);
  Mat tdt = u.retr_univ * Mat::kron(a->element("t"), a->element("t"));
  JetContext ctx(std::make_shared<Calculus>(quotient_calculus(u, {tdt})));
  ConnectionSpace cs = connections(ctx, ncjet::testing::k0_module());
  CHECK_FALSE(cs.exists);
}

TEST_CASE("certificates transform along the flavor inclusions") {
  auto& s = quaternion_setup();
  ModulePtr e = s.ctx->algebra_module();
  auto h = s.calc->alg;
  Mat lk = h->lmul(h->element("k"));
  auto nonhol = order_at_most(*s.ctx, lk, e, e, 2, JetFlavor::nonholonomic);
  REQUIRE(nonhol.has_value());
  // restrict along the semiholonomic inclusion
  const SemiholTower& sh = s.ctx->semiholonomic(e, 2);
  Mat semi_lift = nonhol->lift * sh.level[2].incl_nonhol;
  CHECK(semi_lift * sh.level[2].prolong == lk);
  ModuleMap semi_map{sh.level[2].carrier, e, semi_lift};
  CHECK(semi_map.is_left_linear());
  // then along the holonomic-to-semiholonomic comparison
  const HolTower& hol = s.ctx->holonomic(e, 2);
  Mat hol_lift = semi_lift * hol.level[2].to_semihol;
  CHECK(hol_lift * hol.level[2].prolong == lk);
  ModuleMap hol_map{hol.level[2].carrier, e, hol_lift};
  CHECK(hol_map.is_left_linear());
}

TEST_CASE("order scan stabilizes instead of growing forever") {
  auto& s = quaternion_setup();
  ModulePtr e = s.ctx->algebra_module();
  // conjugation-like map that is not any finite order? over this calculus all
  // 16 linear maps are order ≤ 2, so take a map that is NOT a diff op of
  // order ≤ 4 only if it is not linear-lifted; instead verify the scan bound:
  std::mt19937 rng(5);
  Mat delta = ncjet::testing::rand_matrix(rng, 4, 4);
  int order = operator_order(*s.ctx, delta, e, e, JetFlavor::holonomic, 6);
  CHECK(order >= 0);
  CHECK(order <= 2);  // the tower stabilizes at two
}
