#include "ncjet/diffops.hpp"

#include "ncjet/builtin.hpp"

namespace ncjet {

namespace {

/// Affine solve for {T A-linear, T * pin = rhs}; returns lift and freedom.
std::optional<std::pair<Mat, int>> solve_linear_lift(const AlgebraPtr& alg, const Module& jetmod,
                                                     const Module& codmod, const Mat& pin,
                                                     const Mat& rhs) {
  const int jd = jetmod.dim, fd = codmod.dim;
  const int unknowns = fd * jd;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs_col;
  for (int i = 0; i < alg->dim; ++i)
    for (int r = 0; r < fd; ++r)
      for (int c = 0; c < jd; ++c) {
        std::vector<Rational> row(unknowns);
        for (int t = 0; t < fd; ++t)
          if (codmod.left[i].at(r, t) != 0) row[size_t(t) * jd + c] += codmod.left[i].at(r, t);
        for (int t = 0; t < jd; ++t)
          if (jetmod.left[i].at(t, c) != 0) row[size_t(r) * jd + t] -= jetmod.left[i].at(t, c);
        rows.push_back(std::move(row));
        rhs_col.push_back(0);
      }
  for (int r = 0; r < fd; ++r)
    for (int s = 0; s < pin.cols(); ++s) {
      std::vector<Rational> row(unknowns);
      for (int t = 0; t < jd; ++t)
        if (pin.at(t, s) != 0) row[size_t(r) * jd + t] += pin.at(t, s);
      rows.push_back(std::move(row));
      rhs_col.push_back(rhs.at(r, s));
    }
  Mat sys = Mat::from_rows(rows);
  AffineSolution sol = solve_affine(sys, Mat::col(rhs_col));
  if (!sol.solvable) return std::nullopt;
  Mat lift(fd, jd);
  for (int r = 0; r < fd; ++r)
    for (int c = 0; c < jd; ++c) lift.at(r, c) = sol.particular.at(r * jd + c, 0);
  return std::make_pair(lift, sol.homogeneous.dim());
}

}  // namespace

bool first_order_criterion(JetContext& ctx, const Mat& delta, const ModulePtr& e,
                           const ModulePtr& f) {
  const Jet1& j = ctx.jet1(e);
  const Algebra& a = *ctx.calc().alg;
  // universal lift a⊗e -> a Δ(e) on the plain space, tested on the relations
  Mat lift_u(f->dim, a.dim * e->dim);
  for (int i = 0; i < a.dim; ++i)
    for (int s = 0; s < e->dim; ++s)
      lift_u.set_column(i * e->dim + s, f->left[i] * (delta * unit_col(e->dim, s)));
  return (lift_u * j.relations.basis_cols()).is_zero();
}

std::optional<OrderCertificate> order_at_most(JetContext& ctx, const Mat& delta,
                                              const ModulePtr& e, const ModulePtr& f, int n,
                                              JetFlavor flavor) {
  check(delta.rows() == f->dim && delta.cols() == e->dim, "order_at_most: bad operator shape");
  JetSpace js = ctx.jet_space(flavor, e, n);
  auto sol = solve_linear_lift(ctx.calc().alg, *js.carrier, *f, js.prolong, delta);
  if (n == 1) {
    bool criterion = first_order_criterion(ctx, delta, e, f);
    if (criterion != sol.has_value())
      throw std::logic_error("order-1 criterion disagrees with the lift solver");
    if (sol && sol->second != 0)
      throw std::logic_error("order-1 lift is not unique");
  }
  if (!sol) return std::nullopt;
  OrderCertificate cert;
  cert.flavor = flavor;
  cert.order = n;
  cert.lift = sol->first;
  cert.solution_space_dim = sol->second;
  return cert;
}

int operator_order(JetContext& ctx, const Mat& delta, const ModulePtr& e, const ModulePtr& f,
                   JetFlavor flavor, int max_n) {
  for (int n = 0; n <= max_n; ++n) {
    if (order_at_most(ctx, delta, e, f, n, flavor)) return n;
    if (n >= 1) {
      // tower stabilization: a bijective canonical projection means higher
      // orders cannot help
      JetSpace js = ctx.jet_space(flavor, e, n);
      const Mat& pi = js.projections.back();
      if (pi.rows() == pi.cols() && rref(pi).rank() == pi.rows()) return -1;
    }
  }
  return -1;
}

ConnectionSpace connections(JetContext& ctx, const ModulePtr& e) {
  const Jet1& j = ctx.jet1(e);
  ConnectionSpace cs;
  auto sol = solve_linear_lift(ctx.calc().alg, *j.carrier, *j.forms.carrier, j.incl_forms,
                               Mat::identity(j.forms.carrier->dim));
  cs.exists = sol.has_value();
  if (!cs.exists) return cs;
  cs.affine_dim = sol->second;
  cs.splitting = sol->first;
  cs.nabla = cs.splitting * j.prolong;
  return cs;
}

Mat splitting_from_connection(JetContext& ctx, const ModulePtr& e, const Mat& nabla) {
  const Jet1& j = ctx.jet1(e);
  const Algebra& a = *ctx.calc().alg;
  Mat plain(j.forms.carrier->dim, a.dim * e->dim);
  for (int i = 0; i < a.dim; ++i)
    for (int s = 0; s < e->dim; ++s)
      plain.set_column(i * e->dim + s, j.forms.carrier->left[i] * (nabla * unit_col(e->dim, s)));
  if (!(plain * j.relations.basis_cols()).is_zero())
    throw std::invalid_argument("splitting_from_connection: map fails the Leibniz rule");
  return plain * j.from_carrier;
}

Mat connection_from_splitting(JetContext& ctx, const ModulePtr& e, const Mat& splitting) {
  return splitting * ctx.jet1(e).prolong;
}

Mat holonomic_of_map(JetContext& ctx, const ModulePtr& x, const ModulePtr& y, const Mat& f,
                     int m) {
  if (m == 0) return f;
  Mat g = holonomic_of_map(ctx, x, y, f, m - 1);
  const HolTower& tx = ctx.holonomic(x, m);
  const HolTower& ty = ctx.holonomic(y, m);
  Mat lifted = ctx.jet1_of_map(tx.level[size_t(m) - 1].carrier, ty.level[size_t(m) - 1].carrier, g);
  return solve_must(ty.level[size_t(m)].incl_next, lifted * tx.level[size_t(m)].incl_next,
                    "holonomic functor on maps");
}

DiffOp compose_ops(JetContext& ctx, const DiffOp& second, const DiffOp& first) {
  check(second.dom.get() == first.cod.get(), "compose_ops: domain/codomain mismatch");
  check(first.certificate && second.certificate, "compose_ops: certificates required");
  check(first.certificate->flavor == JetFlavor::holonomic &&
            second.certificate->flavor == JetFlavor::holonomic,
        "compose_ops: holonomic certificates required");
  const int n = first.certificate->order, m = second.certificate->order;
  const HolTower& te = ctx.holonomic(first.dom, m + n);
  const ModulePtr& jn = te.level[size_t(n)].carrier;
  Mat jm_of_lift = holonomic_of_map(ctx, jn, second.dom, first.certificate->lift, m);
  Mat lift = second.certificate->lift * jm_of_lift * ctx.l_split(first.dom, m, n);

  DiffOp out;
  out.dom = first.dom;
  out.cod = second.cod;
  out.m = second.m * first.m;
  if (lift * te.level[size_t(m + n)].prolong != out.m)
    throw std::logic_error("compose_ops: composed lift does not lift the composite");
  OrderCertificate cert;
  cert.flavor = JetFlavor::holonomic;
  cert.order = m + n;
  cert.lift = std::move(lift);
  cert.solution_space_dim = -1;  // not recomputed here
  out.certificate = std::move(cert);
  return out;
}

OperatorSpace operator_space(JetContext& ctx, const ModulePtr& e, const ModulePtr& f, int n) {
  OperatorSpace os;
  for (int k = 0; k <= n; ++k) {
    JetSpace js = ctx.jet_space(JetFlavor::holonomic, e, k);
    std::vector<Mat> homs = hom_A(*js.carrier, *f);
    RowReducer red(f->dim * e->dim);
    std::vector<Mat> ops;
    for (const Mat& t : homs) {
      Mat op = t * js.prolong;
      std::vector<Rational> row(size_t(f->dim) * e->dim);
      for (int r = 0; r < f->dim; ++r)
        for (int c = 0; c < e->dim; ++c) row[size_t(r) * e->dim + c] = op.at(r, c);
      if (red.insert(std::move(row))) ops.push_back(std::move(op));
    }
    os.dims.push_back(red.rank());
    if (k == n) os.basis = std::move(ops);
  }
  return os;
}

Mat inner_product_from_values(JetContext& ctx, const ExteriorAlgebra& ext,
                              const std::vector<Mat>& theta,
                              const std::vector<std::vector<Mat>>& values) {
  const Calculus& c = ctx.calc();
  const Algebra& a = *c.alg;
  const ModulePtr& t2 = ext.tensors.at(2);
  const int r = int(theta.size());
  std::vector<Mat> span_cols, value_cols;
  for (int s = 0; s < r; ++s)
    for (int t = 0; t < r; ++t) {
      Mat pure = ext.tensors.steps[1].proj * Mat::kron(theta[size_t(s)], theta[size_t(t)]);
      for (int i = 0; i < a.dim; ++i) {
        span_cols.push_back(t2->left[i] * pure);
        value_cols.push_back(a.lmul(a.basis_el(i)) * values[size_t(s)][size_t(t)]);
      }
    }
  Mat span = Mat::from_cols(span_cols);
  if (rref(span).rank() != t2->dim)
    throw std::invalid_argument("inner_product_from_values: basis does not left-generate T²");
  Mat sol = solve_must(span.transpose(), Mat::from_cols(value_cols).transpose(),
                       "inner product is not well-defined on T²");
  return sol.transpose();
}

LaplacianCheck laplacian_check(JetContext& ctx, const ExteriorAlgebra& ext, const Mat& metric_t2,
                               const Mat& inner_product, const Mat& delta_op) {
  LaplacianCheck out;
  const Calculus& c = ctx.calc();
  const Algebra& a = *c.alg;
  const ModulePtr& t2 = ext.tensors.at(2);

  out.inner_product_bilinear = true;
  for (int i = 0; i < a.dim; ++i) {
    if (inner_product * t2->left[i] != a.lmul(a.basis_el(i)) * inner_product)
      out.inner_product_bilinear = false;
    if (inner_product * t2->right[i] != a.rmul(a.basis_el(i)) * inner_product)
      out.inner_product_bilinear = false;
  }
  // metric lies in S² = ker(∧: T² → Ω²)
  out.metric_symmetric =
      ext.max_grade >= 2 && (ext.wedge_all[2] * metric_t2).is_zero();

  out.identity_holds = true;
  for (int i = 0; i < a.dim && out.identity_holds; ++i)
    for (int j = 0; j < a.dim; ++j) {
      Mat lhs = delta_op * a.mult[i][j];
      Mat da_db = ext.tensors.steps[1].proj *
                  Mat::kron(c.d_of(a.basis_el(i)), c.d_of(a.basis_el(j)));
      Mat rhs = a.rmul(a.basis_el(j)) * (delta_op * a.basis_el(i)) +
                a.lmul(a.basis_el(i)) * (delta_op * a.basis_el(j)) +
                (inner_product * da_db).scaled(2);
      if (lhs != rhs) {
        out.identity_holds = false;
        break;
      }
    }
  return out;
}

bool QuaternionOperatorReport::pass() const {
  return diff_dims == std::vector<int>{4, 12, 16, 16} && basis_spans && partial_squares_vanish &&
         partial_anticommute && anticom_unit && anticom_zero && commutators_match &&
         order_L_i == 1 && order_L_j == 1 && order_L_k == 2 && order_partial_i == 1 &&
         order_partial_j == 1 && order_laplacian == 2 && laplacian_is_bracket && laplacian.pass();
}

QuaternionOperatorReport quaternion_operator_report(JetContext& ctx) {
  QuaternionOperatorReport rep;
  const Calculus& c = ctx.calc();
  const AlgebraPtr& h = c.alg;
  check(h->dim == 4, "quaternion report: not the quaternion algebra");
  const ModulePtr& e = ctx.algebra_module();
  const ExteriorAlgebra& ext = ctx.ext();

  OperatorSpace os = operator_space(ctx, e, e, 3);
  rep.diff_dims = os.dims;

  // partial derivatives from the free-basis expansion da = ∂_i(a)di + ∂_j(a)dj
  std::vector<Mat> theta = {c.d_of(h->element("i")), c.d_of(h->element("j"))};
  StructureRelations sr = structure_relations(c, theta);
  check(sr.ok, "quaternion report: one-forms are not free on {di, dj}");
  Mat partial_i(4, 4), partial_j(4, 4);
  for (int x = 0; x < 4; ++x) {
    partial_i.set_column(x, sr.d_coeffs[size_t(x)][0]);
    partial_j.set_column(x, sr.d_coeffs[size_t(x)][1]);
  }
  auto rmul = [&](const std::string& q) { return h->rmul(h->element(q)); };
  auto lmul = [&](const std::string& q) { return h->lmul(h->element(q)); };
  Mat r1 = Mat::identity(4), ri = rmul("i"), rj = rmul("j"), rk = rmul("k");

  // the 16 products R_q, ∂_p∘R_q, ∂_i∂_j∘R_q span Diff³
  {
    RowReducer red(16);
    auto add = [&](const Mat& op) {
      std::vector<Rational> row(16);
      for (int r = 0; r < 4; ++r)
        for (int cc = 0; cc < 4; ++cc) row[size_t(r) * 4 + cc] = op.at(r, cc);
      red.insert(std::move(row));
    };
    for (const Mat& rq : {r1, ri, rj, rk}) add(rq);
    for (const Mat& p : {partial_i, partial_j})
      for (const Mat& rq : {r1, ri, rj, rk}) add(p * rq);
    for (const Mat& rq : {r1, ri, rj, rk}) add(partial_i * partial_j * rq);
    rep.basis_spans = red.rank() == 16 && !os.dims.empty() && os.dims.back() == 16;
  }

  auto anti = [](const Mat& x, const Mat& y) { return x * y + y * x; };
  auto comm = [](const Mat& x, const Mat& y) { return x * y - y * x; };
  rep.partial_squares_vanish = (partial_i * partial_i).is_zero() && (partial_j * partial_j).is_zero();
  rep.partial_anticommute = anti(partial_i, partial_j).is_zero();
  rep.anticom_unit =
      anti(partial_i, ri) == Mat::identity(4) && anti(partial_j, rj) == Mat::identity(4);
  rep.anticom_zero = anti(partial_i, rj).is_zero() && anti(partial_j, ri).is_zero();
  rep.commutators_match = comm(partial_j, rk) == ri && comm(partial_i, rk) == -rj;

  const int max_order = 4;
  rep.order_L_i = operator_order(ctx, lmul("i"), e, e, JetFlavor::holonomic, max_order);
  rep.order_L_j = operator_order(ctx, lmul("j"), e, e, JetFlavor::holonomic, max_order);
  rep.order_L_k = operator_order(ctx, lmul("k"), e, e, JetFlavor::holonomic, max_order);
  rep.order_partial_i = operator_order(ctx, partial_i, e, e, JetFlavor::holonomic, max_order);
  rep.order_partial_j = operator_order(ctx, partial_j, e, e, JetFlavor::holonomic, max_order);

  Mat laplacian = (partial_j * partial_i).scaled(2);
  rep.order_laplacian = operator_order(ctx, laplacian, e, e, JetFlavor::holonomic, max_order);
  rep.laplacian_is_bracket = laplacian == comm(partial_j, partial_i);

  // metric di⊗dj - dj⊗di with the induced inverse pairing
  Mat metric = ext.tensors.steps[1].proj *
               (Mat::kron(theta[0], theta[1]) - Mat::kron(theta[1], theta[0]));
  Mat zero(4, 1), one = h->unit;
  std::vector<std::vector<Mat>> values = {{zero, -one}, {one, zero}};
  Mat ip = inner_product_from_values(ctx, ext, theta, values);
  rep.laplacian = laplacian_check(ctx, ext, metric, ip, laplacian);
  return rep;
}

}  // namespace ncjet
