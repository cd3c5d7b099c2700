#include "ncjet/jets.hpp"

namespace ncjet {

std::string to_string(JetFlavor f) {
  switch (f) {
    case JetFlavor::nonholonomic: return "nonholonomic";
    case JetFlavor::semiholonomic: return "semiholonomic";
    case JetFlavor::sesquiholonomic: return "sesquiholonomic";
    case JetFlavor::holonomic: return "holonomic";
  }
  return "holonomic";
}

std::optional<JetFlavor> parse_flavor(std::string_view s) {
  if (s == "nonholonomic") return JetFlavor::nonholonomic;
  if (s == "semiholonomic") return JetFlavor::semiholonomic;
  if (s == "sesquiholonomic") return JetFlavor::sesquiholonomic;
  if (s == "holonomic") return JetFlavor::holonomic;
  return std::nullopt;
}

namespace {

/// Action map A⊗M → M, column (i,s) = e_i . m_s.
Mat action_map(const Module& m) {
  Mat a(m.dim, m.alg->dim * m.dim);
  for (int i = 0; i < m.alg->dim; ++i)
    for (int s = 0; s < m.dim; ++s) a.set_column(i * m.dim + s, m.left[i].column(s));
  return a;
}

}  // namespace

JetContext::JetContext(std::shared_ptr<const Calculus> c,
                       std::shared_ptr<const ExteriorAlgebra> ext)
    : calc_(std::move(c)), ext_(std::move(ext)) {
  if (ext_) {
    check(ext_->calc.get() == calc_.get(), "jet context: exterior algebra over another calculus");
    regular_ = ext_->tensors.base;
  } else {
    regular_ = regular_bimodule(calc_->alg);
  }
}

const ExteriorAlgebra& JetContext::ext() const {
  check(ext_ != nullptr, "this construction needs an exterior algebra (grade >= 2)");
  return *ext_;
}

const Jet1& JetContext::jet1(const ModulePtr& m) { return jet1_impl(m); }

const Jet1& JetContext::jet1_impl(const ModulePtr& m) {
  auto it = jet1_cache_.find(m.get());
  if (it != jet1_cache_.end()) return it->second;
  check(m->has_left(), "jet1: needs a left module");
  check(same_algebra(m->alg, calc_->alg), "jet1: algebra mismatch");

  const Algebra& a = *calc_->alg;
  const int ad = a.dim, md = m->dim;
  const int plain = ad * md;
  if (plain > max_carrier_dim())
    throw std::invalid_argument("jet1: carrier dimension cap exceeded (NCJET_MAX_DIM)");

  Jet1 j;
  j.base = m;
  j.forms = (m == regular_) ? unit_right_step(calc_->omega1, calc_->alg)
                            : tensor_over_A(*calc_->omega1, *m);
  Mat act = action_map(*m);

  // p(Σ a_i ⊗ m_i) = -Σ da_i ⊗ m_i, the forms-valued symbol map on A⊗M
  Mat p_plain(j.forms.carrier->dim, plain);
  for (int i = 0; i < ad; ++i) {
    Mat da = calc_->d_of(a.basis_el(i));
    for (int s = 0; s < md; ++s)
      p_plain.set_column(i * md + s, -(j.forms.proj * Mat::kron(da, unit_col(md, s))));
  }

  j.relations = intersect(kernel(act), kernel(p_plain));
  Quotient q = quotient(plain, j.relations);
  j.to_carrier = q.proj;
  j.from_carrier = q.sect;

  Module carrier;
  carrier.alg = calc_->alg;
  carrier.dim = q.dim;
  Mat id_m = Mat::identity(md);
  Mat id_a = Mat::identity(ad);
  for (int i = 0; i < ad; ++i) {
    carrier.left.push_back(q.proj * Mat::kron(a.lmul(a.basis_el(i)), id_m) * q.sect);
    if (m->has_right()) carrier.right.push_back(q.proj * Mat::kron(id_a, m->right[i]) * q.sect);
  }
  j.carrier = make_module(std::move(carrier));

  j.proj_base = act * q.sect;
  j.prolong = q.proj * Mat::kron(a.unit, id_m);
  j.rho = p_plain * q.sect;
  // forms -> universal one-forms -> A⊗A⊗M -> A⊗M -> carrier
  j.incl_forms = q.proj * Mat::kron(Mat::identity(ad), act) *
                 Mat::kron(calc_->incl_univ * calc_->p_sect, id_m) * j.forms.sect;

  // splitting identities
  if (j.rho * j.incl_forms != Mat::identity(j.forms.carrier->dim) ||
      !(j.proj_base * j.incl_forms).is_zero() ||
      j.proj_base * j.prolong != Mat::identity(md) ||
      j.prolong * j.proj_base + j.incl_forms * j.rho != Mat::identity(q.dim))
    throw std::logic_error("jet1: splitting identities fail");

  return jet1_cache_.emplace(m.get(), std::move(j)).first->second;
}

Mat JetContext::jet1_of_map(const ModulePtr& x, const ModulePtr& y, const Mat& f) {
  const Jet1& jx = jet1(x);
  const Jet1& jy = jet1(y);
  check(f.rows() == y->dim && f.cols() == x->dim, "jet1_of_map: shape mismatch");
  return jy.to_carrier * Mat::kron(Mat::identity(calc_->alg->dim), f) * jx.from_carrier;
}

Mat JetContext::dtilde() {
  if (dtilde_) return *dtilde_;
  const Jet1& j = jet1(regular_);
  const Algebra& a = *calc_->alg;
  Mat plain(calc_->omega1->dim, a.dim * a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int k = 0; k < a.dim; ++k)
      plain.set_column(i * a.dim + k, calc_->omega1->left[i] * calc_->d_of(a.basis_el(k)));
  dtilde_ = plain * j.from_carrier;
  return *dtilde_;
}

const NonholTower& JetContext::nonholonomic(const ModulePtr& e, int order) {
  check(order >= 0, "nonholonomic: negative order");
  NonholTower& t = nonhol_cache_[e.get()];
  if (t.level.empty()) t.base = e;
  while (t.order() < order) t.level.push_back(jet1(t.carrier(t.order())));
  return t;
}

Mat JetContext::nh_proj_pos(const ModulePtr& e, int order, int pos) {
  check(pos >= 1 && pos <= order, "nh_proj_pos: position out of range");
  auto key = std::make_tuple(e.get(), order, pos);
  auto it = nh_pos_cache_.find(key);
  if (it != nh_pos_cache_.end()) return it->second;
  const NonholTower& t = nonholonomic(e, order);
  Mat f = t.level[size_t(pos) - 1].proj_base;
  for (int k = pos; k < order; ++k) f = jet1_of_map(t.carrier(k), t.carrier(k - 1), f);
  nh_pos_cache_.emplace(key, f);
  return f;
}

Mat JetContext::nh_proj_to(const ModulePtr& e, int order, int target) {
  check(target >= 0 && target <= order, "nh_proj_to: bad target");
  const NonholTower& t = nonholonomic(e, order);
  Mat f = Mat::identity(t.carrier(order)->dim);
  for (int k = order; k > target; --k) f = t.level[size_t(k) - 1].proj_base * f;
  return f;
}

Mat JetContext::nh_prolong(const ModulePtr& e, int order) {
  const NonholTower& t = nonholonomic(e, order);
  Mat f = Mat::identity(e->dim);
  for (int k = 0; k < order; ++k) f = t.level[size_t(k)].prolong * f;
  return f;
}

JetContext::NhDecomposition JetContext::nh_decompose(const ModulePtr& e, int order, const Mat& xi) {
  const NonholTower& t = nonholonomic(e, order);
  check(xi.rows() == t.carrier(order)->dim && xi.cols() == 1, "nh_decompose: bad vector");
  NhDecomposition d;
  d.base_part = nh_proj_to(e, order, 0) * xi;
  for (int m = 1; m <= order; ++m)
    d.form_parts.push_back(t.level[size_t(m) - 1].rho * (nh_proj_to(e, order, m) * xi));
  return d;
}

Mat JetContext::nh_recompose(const ModulePtr& e, int order, const NhDecomposition& d) {
  const NonholTower& t = nonholonomic(e, order);
  check(int(d.form_parts.size()) == order, "nh_recompose: wrong component count");
  Mat v = d.base_part;
  for (int m = 1; m <= order; ++m) {
    const Jet1& lvl = t.level[size_t(m) - 1];
    v = lvl.prolong * v + lvl.incl_forms * d.form_parts[size_t(m) - 1];
  }
  return v;
}

const EthOperator& JetContext::eth(const ModulePtr& x) {
  auto it = eth_cache_.find(x.get());
  if (it != eth_cache_.end()) return it->second;
  const ExteriorAlgebra& e = ext();
  const Algebra& a = *calc_->alg;
  const int ad = a.dim, xd = x->dim;

  const Jet1& j1x = jet1(x);
  const Jet1& j2x = jet1(j1x.carrier);

  EthOperator op;
  op.base = x;
  op.one_forms = j1x.forms;
  op.two_forms = (x == regular_) ? unit_right_step(e.grade[2], calc_->alg)
                                 : tensor_over_A(*e.grade[2], *x);

  // plain representatives a⊗b⊗c⊗m, flat index ((i*ad+j)*ad+k)*xd+s
  Mat mm(ad, ad * ad);
  for (int i = 0; i < ad; ++i)
    for (int j = 0; j < ad; ++j) mm.set_column(i * ad + j, a.mult[i][j]);
  Mat id_x = Mat::identity(xd);

  // representative map into J¹(J¹X): a⊗b⊗c⊗m -> [a ⊗ [bc ⊗ m]]
  Mat rep = j2x.to_carrier * Mat::kron(Mat::identity(ad), j1x.to_carrier * Mat::kron(mm, id_x));

  Mat dmul = calc_->d * mm;  // (j,k) -> d(e_j e_k)
  Mat lmap(calc_->omega1->dim, ad * ad * ad);
  Mat wmap(e.grade[2]->dim, ad * ad * ad);
  const Mat& w11 = e.wedge_pair(1, 1);
  for (int i = 0; i < ad; ++i) {
    Mat da = calc_->d_of(a.basis_el(i));
    for (int jk = 0; jk < ad * ad; ++jk) {
      lmap.set_column(i * ad * ad + jk, calc_->omega1->lact(a.basis_el(i)) * dmul.column(jk));
      wmap.set_column(i * ad * ad + jk, w11 * Mat::kron(da, dmul.column(jk)));
    }
  }
  Mat di_plain = op.one_forms.proj * Mat::kron(lmap, id_x);
  Mat dii_plain = op.two_forms.proj * Mat::kron(wmap, id_x);

  if (rref(rep).rank() != j2x.carrier->dim)
    throw std::logic_error("jet defect: representatives do not span");
  auto solve_through = [&](const Mat& plain, const char* what) {
    auto sol = solve_exact(rep.transpose(), plain.transpose());
    if (!sol) throw std::logic_error(std::string("jet defect not well-defined: ") + what);
    return sol->transpose();
  };
  op.to_one_forms = solve_through(di_plain, "one-form component");
  op.to_two_forms = solve_through(dii_plain, "two-form component");
  op.full = Mat::vstack(op.to_one_forms, op.to_two_forms);

  // cross-check: first component equals the difference of the two projections
  Mat diff = jet1_of_map(j1x.carrier, x, j1x.proj_base) - j2x.proj_base;
  Mat alt = solve_must(j1x.incl_forms, diff, "defect difference route");
  if (alt != op.to_one_forms)
    throw std::logic_error("jet defect: formula and projection-difference disagree");

  if (!(op.full * (j2x.prolong * j1x.prolong)).is_zero())
    throw std::logic_error("jet defect does not annihilate the prolongation");

  // semidirect sum with twisted left action: f⋆(α+ω) = fα + df∧α + fω
  Module sd;
  sd.alg = calc_->alg;
  const int d1 = op.one_forms.carrier->dim, d2 = op.two_forms.carrier->dim;
  sd.dim = d1 + d2;
  for (int i = 0; i < ad; ++i) {
    Mat da = calc_->d_of(a.basis_el(i));
    Mat wedge_l = op.two_forms.proj *
                  Mat::kron(w11 * Mat::kron(da, Mat::identity(calc_->omega1->dim)), id_x) *
                  op.one_forms.sect;
    Mat l(sd.dim, sd.dim);
    const Mat& l1 = op.one_forms.carrier->left[i];
    const Mat& l2 = op.two_forms.carrier->left[i];
    for (int r = 0; r < d1; ++r)
      for (int c = 0; c < d1; ++c) l.at(r, c) = l1.at(r, c);
    for (int r = 0; r < d2; ++r) {
      for (int c = 0; c < d1; ++c) l.at(d1 + r, c) = wedge_l.at(r, c);
      for (int c = 0; c < d2; ++c) l.at(d1 + r, d1 + c) = l2.at(r, c);
    }
    sd.left.push_back(std::move(l));
    if (x->has_right()) {
      Mat r(sd.dim, sd.dim);
      const Mat& r1 = op.one_forms.carrier->right[i];
      const Mat& r2 = op.two_forms.carrier->right[i];
      for (int u = 0; u < d1; ++u)
        for (int c = 0; c < d1; ++c) r.at(u, c) = r1.at(u, c);
      for (int u = 0; u < d2; ++u)
        for (int c = 0; c < d2; ++c) r.at(d1 + u, d1 + c) = r2.at(u, c);
      sd.right.push_back(std::move(r));
    }
  }
  op.semidirect = make_module(std::move(sd));

  for (int i = 0; i < ad; ++i)
    if (op.full * j2x.carrier->left[i] != op.semidirect->left[i] * op.full)
      throw std::logic_error("jet defect is not linear for the twisted action");

  return eth_cache_.emplace(x.get(), std::move(op)).first->second;
}

Mat JetContext::defect_to_forms(const ModulePtr& e, int level) {
  const NonholTower& t = nonholonomic(e, level + 1);
  const ModulePtr& below = t.carrier(level - 1);
  Mat diff = jet1_of_map(t.carrier(level), below, t.level[size_t(level) - 1].proj_base) -
             t.level[size_t(level)].proj_base;
  return solve_must(jet1(below).incl_forms, diff, "defect factors through the forms");
}

const SemiholTower& JetContext::semiholonomic(const ModulePtr& e, int order) {
  check(order >= 0, "semiholonomic: negative order");
  SemiholTower& t = semihol_cache_[e.get()];
  if (t.level.empty()) {
    t.base = e;
    t.tensor_powers = build_tensor_ladder(calc_->omega1, e, std::max(order, 1), e == regular_);
    SemiholLevel l0;
    l0.carrier = e;
    l0.incl_nonhol = Mat::identity(e->dim);
    l0.prolong = Mat::identity(e->dim);
    l0.incl_tensor = Mat::identity(e->dim);
    t.level.push_back(std::move(l0));
  }
  while (t.tensor_powers.top() < order) {
    t.tensor_powers.steps.push_back(
        tensor_over_A(*calc_->omega1, *t.tensor_powers.carriers.back()));
    t.tensor_powers.carriers.push_back(t.tensor_powers.steps.back().carrier);
  }
  while (int(t.level.size()) <= order) {
    int n = int(t.level.size());
    const NonholTower& nh = nonholonomic(e, n);
    if (n == 1) {
      const Jet1& j = t.level.empty() ? jet1(e) : nh.level[0];
      SemiholLevel l1;
      l1.carrier = j.carrier;
      l1.incl_nonhol = Mat::identity(j.carrier->dim);
      l1.proj_prev = j.proj_base;
      l1.prolong = j.prolong;
      l1.incl_tensor = j.incl_forms;
      t.level.push_back(std::move(l1));
      continue;
    }
    // equalizer of the n position projections
    Subspace eq = Subspace::full(nh.carrier(n)->dim);
    for (int m = 1; m < n; ++m)
      eq = intersect(eq, kernel(nh_proj_pos(e, n, m) - nh_proj_pos(e, n, m + 1)));
    // cross-check: intersection of iterated defect kernels
    Subspace alt = Subspace::full(nh.carrier(n)->dim);
    for (int m = 1; m < n; ++m) {
      Mat f = defect_to_forms(e, m);
      ModulePtr cod = jet1(nh.carrier(m - 1)).forms.carrier;
      for (int tstep = 0; tstep < n - m - 1; ++tstep) {
        f = jet1_of_map(nh.carrier(m + 1 + tstep), cod, f);
        cod = jet1(cod).carrier;
      }
      alt = intersect(alt, kernel(f));
    }
    bool agree = (eq == alt);
    if (!agree)
      throw std::logic_error("semiholonomic jet: equalizer and defect-kernel definitions differ");

    SubmoduleCarrier sub = restrict_to(*nh.carrier(n), eq);
    SemiholLevel lvl;
    lvl.carrier = sub.carrier;
    lvl.incl_nonhol = sub.incl;
    lvl.definitions_agree = agree;
    lvl.proj_prev = solve_must(t.level[size_t(n) - 1].incl_nonhol,
                               nh_proj_pos(e, n, 1) * sub.incl, "semiholonomic projection");
    lvl.prolong = solve_must(sub.incl, nh_prolong(e, n), "prolongation lands in the equalizer");
    // T^n(E) -> nonholonomic carrier, then factor through the equalizer
    Mat iota_t = t.level[size_t(n) - 1].incl_tensor;
    {
      // Ω¹ applied to the previous inclusion-into-semiholonomic, then into
      // the nonholonomic carrier through ι¹.
      Mat prev_into_nh = t.level[size_t(n) - 1].incl_nonhol * iota_t;  // T^{n-1} -> C_{n-1}
      const Jet1& jtop = nh.level[size_t(n) - 1];
      Mat omega_of = jtop.forms.proj *
                     Mat::kron(Mat::identity(calc_->omega1->dim), prev_into_nh) *
                     t.tensor_powers.steps[size_t(n) - 1].sect;
      Mat into_nh = jtop.incl_forms * omega_of;
      lvl.incl_tensor = solve_must(sub.incl, into_nh, "tensor power lands in the equalizer");
    }
    t.level.push_back(std::move(lvl));
  }
  return t;
}

const HolTower& JetContext::holonomic(const ModulePtr& e, int order) {
  check(order >= 0, "holonomic: negative order");
  HolTower& t = hol_cache_[e.get()];
  if (t.level.empty()) {
    t.base = e;
    t.sym = symmetric_forms(ext(), e, std::max(order, 1));
    HolLevel l0;
    l0.carrier = e;
    l0.prolong = Mat::identity(e->dim);
    l0.incl_nonhol = Mat::identity(e->dim);
    l0.to_semihol = Mat::identity(e->dim);
    l0.incl_sym = Mat::identity(e->dim);
    t.level.push_back(std::move(l0));
  }
  if (int(t.sym.level.size()) <= order) t.sym = symmetric_forms(ext(), e, order);
  while (int(t.level.size()) <= order) {
    int n = int(t.level.size());
    if (n == 1) {
      const Jet1& j = jet1(e);
      HolLevel l1;
      l1.carrier = j.carrier;
      l1.incl_next = Mat::identity(j.carrier->dim);
      l1.proj_prev = j.proj_base;
      l1.prolong = j.prolong;
      l1.incl_nonhol = Mat::identity(j.carrier->dim);
      l1.to_semihol = Mat::identity(j.carrier->dim);
      l1.incl_sym = j.incl_forms;
      t.level.push_back(std::move(l1));
      continue;
    }
    const HolLevel& prev = t.level[size_t(n) - 1];
    const HolLevel& prev2 = t.level[size_t(n) - 2];
    const Jet1& jprev = jet1(prev.carrier);
    const EthOperator& defect = eth(prev2.carrier);
    Mat into_second = jet1_of_map(prev.carrier, jet1(prev2.carrier).carrier, prev.incl_next);
    Mat phi = defect.full * into_second;
    SubmoduleCarrier sub = restrict_to(*jprev.carrier, kernel(phi));

    HolLevel lvl;
    lvl.carrier = sub.carrier;
    lvl.incl_next = sub.incl;
    lvl.proj_prev = jprev.proj_base * sub.incl;
    lvl.prolong = solve_must(sub.incl, jprev.prolong * prev.prolong,
                             "prolongation lands in the holonomic jet");
    const NonholTower& nh = nonholonomic(e, n);
    lvl.incl_nonhol = jet1_of_map(prev.carrier, nh.carrier(n - 1), prev.incl_nonhol) * sub.incl;
    const SemiholTower& sh = semiholonomic(e, n);
    lvl.to_semihol = solve_must(sh.level[size_t(n)].incl_nonhol, lvl.incl_nonhol,
                                "holonomic jet lands in the semiholonomic jet");
    // S^n(E) -> Ω¹(S^{n-1}E) -> Ω¹(J^{n-1}E) -> J¹(J^{n-1}E), then restrict
    Mat omega_of = jprev.forms.proj *
                   Mat::kron(Mat::identity(calc_->omega1->dim), prev.incl_sym) *
                   t.sym.ambient[size_t(n)].sect;
    Mat into_amb = jprev.incl_forms * omega_of * t.sym.level[size_t(n)].incl_forms;
    lvl.incl_sym = solve_must(sub.incl, into_amb, "symmetric forms land in the holonomic jet");
    t.level.push_back(std::move(lvl));
  }
  return t;
}

const SesquiTower& JetContext::sesquiholonomic(const ModulePtr& e, int order) {
  check(order >= 0, "sesquiholonomic: negative order");
  SesquiTower& t = sesqui_cache_[e.get()];
  if (t.level.empty()) {
    t.base = e;
    SesquiLevel l0;
    l0.carrier = e;
    l0.prolong = Mat::identity(e->dim);
    l0.incl_nonhol = Mat::identity(e->dim);
    t.level.push_back(std::move(l0));
  }
  while (int(t.level.size()) <= order) {
    int n = int(t.level.size());
    if (n == 1) {
      const Jet1& j = jet1(e);
      SesquiLevel l1;
      l1.carrier = j.carrier;
      l1.incl_next = Mat::identity(j.carrier->dim);
      l1.proj_prev = j.proj_base;
      l1.prolong = j.prolong;
      l1.incl_nonhol = Mat::identity(j.carrier->dim);
      l1.incl_omega_sym = j.incl_forms;
      t.level.push_back(std::move(l1));
      continue;
    }
    const HolTower& hol = holonomic(e, n - 1);
    if (int(hol.sym.level.size()) <= n) hol_cache_[e.get()].sym = symmetric_forms(ext(), e, n);
    const HolTower& h = hol_cache_[e.get()];
    const HolLevel& prev = h.level[size_t(n) - 1];
    const HolLevel& prev2 = h.level[size_t(n) - 2];
    const Jet1& jprev = jet1(prev.carrier);
    const EthOperator& defect = eth(prev2.carrier);
    Mat into_second = jet1_of_map(prev.carrier, jet1(prev2.carrier).carrier, prev.incl_next);
    Mat phi = defect.to_one_forms * into_second;
    SubmoduleCarrier sub = restrict_to(*jprev.carrier, kernel(phi));

    SesquiLevel lvl;
    lvl.carrier = sub.carrier;
    lvl.incl_next = sub.incl;
    lvl.proj_prev = jprev.proj_base * sub.incl;
    lvl.prolong = solve_must(sub.incl, jprev.prolong * prev.prolong,
                             "prolongation lands in the sesquiholonomic jet");
    const NonholTower& nh = nonholonomic(e, n);
    (void)nh;
    lvl.incl_nonhol = jet1_of_map(prev.carrier, nonholonomic(e, n).carrier(n - 1),
                                  prev.incl_nonhol) * sub.incl;
    Mat omega_of = jprev.forms.proj *
                   Mat::kron(Mat::identity(calc_->omega1->dim), prev.incl_sym) *
                   h.sym.ambient[size_t(n)].sect;
    lvl.incl_omega_sym = solve_must(sub.incl, jprev.incl_forms * omega_of,
                                    "one-form symmetric part lands in the sesquiholonomic jet");
    t.level.push_back(std::move(lvl));
  }
  return t;
}

JetSpace JetContext::jet_space(JetFlavor f, const ModulePtr& e, int order) {
  JetSpace js;
  js.flavor = f;
  js.order = order;
  js.base = e;
  if (order == 0) {
    js.carrier = e;
    js.embed = Mat::identity(e->dim);
    js.prolong = Mat::identity(e->dim);
    return js;
  }
  if (order == 1) {
    // all flavors coincide with the 1-jet
    const Jet1& j = jet1(e);
    js.carrier = j.carrier;
    js.embed = Mat::identity(j.carrier->dim);
    js.prolong = j.prolong;
    js.projections.push_back(j.proj_base);
    return js;
  }
  switch (f) {
    case JetFlavor::nonholonomic: {
      const NonholTower& t = nonholonomic(e, order);
      js.carrier = t.carrier(order);
      js.embed = Mat::identity(js.carrier->dim);
      js.prolong = nh_prolong(e, order);
      for (int m = 1; m <= order; ++m) js.projections.push_back(nh_proj_pos(e, order, m));
      break;
    }
    case JetFlavor::semiholonomic: {
      const SemiholTower& t = semiholonomic(e, order);
      js.carrier = t.level[size_t(order)].carrier;
      js.embed = t.level[size_t(order)].incl_nonhol;
      js.prolong = t.level[size_t(order)].prolong;
      js.projections.push_back(t.level[size_t(order)].proj_prev);
      break;
    }
    case JetFlavor::sesquiholonomic: {
      const SesquiTower& t = sesquiholonomic(e, order);
      js.carrier = t.level[size_t(order)].carrier;
      js.embed = t.level[size_t(order)].incl_nonhol;
      js.prolong = t.level[size_t(order)].prolong;
      js.projections.push_back(t.level[size_t(order)].proj_prev);
      break;
    }
    case JetFlavor::holonomic: {
      const HolTower& t = holonomic(e, order);
      js.carrier = t.level[size_t(order)].carrier;
      js.embed = t.level[size_t(order)].incl_nonhol;
      js.prolong = t.level[size_t(order)].prolong;
      js.projections.push_back(t.level[size_t(order)].proj_prev);
      break;
    }
  }
  return js;
}

Mat JetContext::l_split(const ModulePtr& e, int m, int n) {
  check(m >= 0 && n >= 0, "l_split: negative orders");
  auto key = std::make_tuple(e.get(), m, n);
  auto it = l_split_cache_.find(key);
  if (it != l_split_cache_.end()) return it->second;
  const HolTower& base_tower = holonomic(e, m + n);
  Mat result;
  if (m == 0) {
    result = Mat::identity(base_tower.level[size_t(n)].carrier->dim);
  } else if (m == 1) {
    result = base_tower.level[size_t(n) + 1].incl_next;
  } else {
    ModulePtr mn = base_tower.level[size_t(n)].carrier;
    const HolTower& over = holonomic(mn, m);
    Mat inner = l_split(e, m - 1, n);  // J^{m+n-1}E -> J^{m-1}(J^nE)
    Mat rhs = jet1_of_map(base_tower.level[size_t(m + n) - 1].carrier,
                          over.level[size_t(m) - 1].carrier, inner) *
              base_tower.level[size_t(m + n)].incl_next;
    result = solve_must(over.level[size_t(m)].incl_next, rhs, "l_split factorization");
  }
  l_split_cache_.emplace(key, result);
  return result;
}

bool JetContext::omega1_right_flat() {
  if (!omega1_right_flat_) omega1_right_flat_ = is_right_projective(*calc_->omega1);
  return *omega1_right_flat_;
}

JetExactness JetContext::exactness_report(JetFlavor f, const ModulePtr& e, int order) {
  check(order >= 1, "exactness_report: order must be at least 1");
  JetExactness r;
  r.flavor = f;
  r.order = order;
  r.right_flat_hypothesis = omega1_right_flat();

  Mat first, second;
  if (order == 1) {
    const Jet1& j = jet1(e);
    first = j.incl_forms;
    second = j.proj_base;
    r.sub_dim = first.cols();
    r.mid_dim = first.rows();
    r.quot_dim = second.rows();
    r.flags = ses_exact(first, second);
    r.coker_dim = r.quot_dim - rref(second).rank();
    return r;
  }
  switch (f) {
    case JetFlavor::nonholonomic: {
      const NonholTower& t = nonholonomic(e, order);
      first = t.level[size_t(order) - 1].incl_forms;
      second = t.level[size_t(order) - 1].proj_base;
      break;
    }
    case JetFlavor::semiholonomic: {
      const SemiholTower& t = semiholonomic(e, order);
      first = t.level[size_t(order)].incl_tensor;
      second = t.level[size_t(order)].proj_prev;
      break;
    }
    case JetFlavor::sesquiholonomic: {
      const SesquiTower& t = sesquiholonomic(e, order);
      first = t.level[size_t(order)].incl_omega_sym;
      second = t.level[size_t(order)].proj_prev;
      break;
    }
    case JetFlavor::holonomic: {
      const HolTower& t = holonomic(e, order);
      first = t.level[size_t(order)].incl_sym;
      second = t.level[size_t(order)].proj_prev;
      break;
    }
  }
  r.sub_dim = first.cols();
  r.mid_dim = first.rows();
  r.quot_dim = second.rows();
  r.flags = ses_exact(first, second);
  r.coker_dim = r.quot_dim - rref(second).rank();

  if (f == JetFlavor::holonomic && order == 3 && e == regular_ && ext_ && ext_->max_grade >= 3) {
    const ExteriorAlgebra& x = *ext_;
    const HolTower& t = holonomic(e, 3);
    SpencerComplex spencer(x, t.sym);
    const TensorSpace& node12 = spencer.node(1, 2);
    const Algebra& a = *calc_->alg;
    const int ad = a.dim;
    // spanning presentation of T² by dx²⊗dx¹·x⁰ and the matching Ω²⊗Ω¹ image
    std::vector<Mat> pres_cols, target_cols;
    for (int x2 = 0; x2 < ad; ++x2)
      for (int x1 = 0; x1 < ad; ++x1)
        for (int x0 = 0; x0 < ad; ++x0) {
          Mat right = calc_->omega1->right[x0] * calc_->d_of(a.basis_el(x1));
          pres_cols.push_back(x.tensors.steps[1].proj *
                              Mat::kron(calc_->d_of(a.basis_el(x2)), right));
          Mat two = x.wedge_pair(1, 1) *
                    Mat::kron(calc_->d_of(a.basis_el(x2)), calc_->d_of(a.basis_el(x1)));
          target_cols.push_back(node12.proj * Mat::kron(two, calc_->d_of(a.basis_el(x0))));
        }
    Mat pres = Mat::from_cols(pres_cols), targets = Mat::from_cols(target_cols);
    Subspace im_in = image(spencer.delta(2, 1));
    RowReducer red(node12.carrier->dim);
    red.insert_matrix_rows(im_in.basis());
    int growth = 0;
    const SymLevel& s2 = t.sym.level[2];
    for (int c = 0; c < s2.carrier->dim; ++c) {
      Mat coeffs = solve_must(pres, s2.incl_tensor.column(c), "symbol presentation spans");
      Mat w = targets * coeffs;
      if (!(spencer.delta(1, 2) * w).is_zero())
        throw std::logic_error("order-3 obstruction lands outside the Spencer kernel");
      std::vector<Rational> row(node12.carrier->dim);
      for (int i = 0; i < node12.carrier->dim; ++i) row[i] = w.at(i, 0);
      if (red.insert(std::move(row))) ++growth;
    }
    r.obstruction_class_dim = growth;
  }
  return r;
}

bool JetContext::two_jet_presentation_agrees(const ModulePtr& e) {
  const HolTower& t = holonomic(e, 2);
  const NonholTower& nh = nonholonomic(e, 2);
  const Jet1& j1 = nh.level[0];
  const Jet1& j2 = nh.level[1];
  // S²(E) into the nonholonomic carrier through Ω¹(ι¹)
  Mat omega_of = j2.forms.proj * Mat::kron(Mat::identity(calc_->omega1->dim), j1.incl_forms) *
                 t.sym.ambient[2].sect;
  Mat s2_in = j2.incl_forms * omega_of * t.sym.level[2].incl_forms;
  // left-module closure of the prolongation image
  Module left_only;
  left_only.alg = calc_->alg;
  left_only.dim = nh.carrier(2)->dim;
  left_only.left = nh.carrier(2)->left;
  std::vector<Mat> gens;
  Mat j2prol = nh_prolong(e, 2);
  for (int s = 0; s < e->dim; ++s) gens.push_back(j2prol.column(s));
  Subspace a_j2 = submodule_closure(left_only, gens);
  Subspace explicit_presentation = sum(image(s2_in), a_j2);
  Subspace kernel_route = image(t.level[2].incl_nonhol);
  return explicit_presentation == kernel_route;
}

}  // namespace ncjet
