#include "ncjet/exterior.hpp"

namespace ncjet {

TensorSpace unit_right_step(const ModulePtr& omega1, const AlgebraPtr& a) {
  TensorSpace ts;
  ts.carrier = omega1;
  ts.ldim = omega1->dim;
  ts.rdim = a->dim;
  ts.proj = Mat(omega1->dim, omega1->dim * a->dim);
  for (int i = 0; i < omega1->dim; ++i) {
    Mat di(omega1->dim, 1);
    di.at(i, 0) = 1;
    for (int j = 0; j < a->dim; ++j) ts.proj.set_column(i * a->dim + j, omega1->right[j] * di);
  }
  ts.sect = Mat::kron(Mat::identity(omega1->dim), a->unit);
  ts.relations = kernel(ts.proj);
  return ts;
}

TensorLadder build_tensor_ladder(const ModulePtr& omega1, const ModulePtr& base, int n,
                                 bool base_is_algebra) {
  TensorLadder lad;
  lad.base = base;
  lad.carriers.push_back(base);
  for (int k = 0; k < n; ++k) {
    if (k == 0 && base_is_algebra) {
      lad.steps.push_back(unit_right_step(omega1, base->alg));
    } else {
      lad.steps.push_back(tensor_over_A(*omega1, *lad.carriers.back()));
    }
    lad.carriers.push_back(lad.steps.back().carrier);
  }
  return lad;
}

const Mat& ExteriorAlgebra::concat(int p, int q) const {
  check(p >= 0 && q >= 0 && p + q <= max_grade, "concat: grades out of range");
  auto key = std::make_pair(p, q);
  auto it = concat_cache_.find(key);
  if (it != concat_cache_.end()) return it->second;

  Mat m;
  const auto& t = tensors;
  if (p == 0) {
    // A ⊗ T^q -> T^q by the left action
    const Module& tq = *t.at(q);
    m = Mat(tq.dim, calc->alg->dim * tq.dim);
    for (int i = 0; i < calc->alg->dim; ++i)
      for (int s = 0; s < tq.dim; ++s) m.set_column(i * tq.dim + s, tq.left[i].column(s));
  } else if (p == 1) {
    m = t.steps[size_t(q)].proj;
  } else {
    const Mat& inner = concat(p - 1, q);
    m = t.steps[size_t(p + q - 1)].proj *
        Mat::kron(Mat::identity(calc->omega1->dim), inner) *
        Mat::kron(t.steps[size_t(p - 1)].sect, Mat::identity(t.at(q)->dim));
  }
  return concat_cache_.emplace(key, std::move(m)).first->second;
}

const Mat& ExteriorAlgebra::wedge_pair(int k, int h) const {
  check(k >= 0 && h >= 0 && k + h <= max_grade, "wedge_pair: grades out of range");
  auto key = std::make_pair(k, h);
  auto it = wedge_cache_.find(key);
  if (it != wedge_cache_.end()) return it->second;
  Mat m = wedge_all[size_t(k + h)] * concat(k, h) *
          Mat::kron(wedge_sect[size_t(k)], wedge_sect[size_t(h)]);
  return wedge_cache_.emplace(key, std::move(m)).first->second;
}

ExteriorAlgebra maximal_exterior(std::shared_ptr<const Calculus> c, int n) {
  check(n >= 1, "maximal_exterior: need at least grade 1");
  ExteriorAlgebra ext;
  ext.calc = c;
  ext.max_grade = n;
  ext.tensors = build_tensor_ladder(c->omega1, regular_bimodule(c->alg), n, true);

  // generators of the ideal: images of the relation space under d⊗d
  std::vector<Mat> q_gens;
  if (n >= 2) {
    const TensorSpace& t2 = ext.tensors.steps[1];
    for (int r = 0; r < c->relation_space.dim(); ++r) {
      Mat nu = c->incl_univ * Mat::col(c->relation_space.basis().row_vec(r));
      Mat v(t2.carrier->dim, 1);
      const int ad = c->alg->dim;
      for (int i = 0; i < ad; ++i)
        for (int j = 0; j < ad; ++j) {
          const Rational& coeff = nu.at(i * ad + j, 0);
          if (coeff == 0) continue;
          v = v + (t2.proj * Mat::kron(c->d_of(c->alg->basis_el(i)), c->d_of(c->alg->basis_el(j))))
                      .scaled(coeff);
        }
      q_gens.push_back(std::move(v));
    }
    ext.min_sym2 = submodule_closure(*ext.tensors.at(2), q_gens);
  } else {
    ext.min_sym2 = Subspace::zero(0);
  }

  ext.ideal.resize(size_t(n) + 1);
  for (int k = 0; k <= n; ++k) {
    if (k < 2) {
      ext.ideal[size_t(k)] = Subspace::zero(ext.tensors.at(k)->dim);
      continue;
    }
    std::vector<Mat> gens;
    for (int p = 0; p + 2 <= k; ++p) {
      int q = k - 2 - p;
      Mat mid = ext.concat(2, q);  // T²⊗T^q -> T^{2+q}
      for (int r = 0; r < ext.min_sym2.dim(); ++r) {
        Mat s = Mat::col(ext.min_sym2.basis().row_vec(r));
        for (int tq = 0; tq < ext.tensors.at(q)->dim; ++tq) {
          Mat dq(ext.tensors.at(q)->dim, 1);
          dq.at(tq, 0) = 1;
          Mat w = mid * Mat::kron(s, dq);
          if (p == 0) {
            gens.push_back(std::move(w));
          } else {
            for (int tp = 0; tp < ext.tensors.at(p)->dim; ++tp) {
              Mat dp(ext.tensors.at(p)->dim, 1);
              dp.at(tp, 0) = 1;
              gens.push_back(ext.concat(p, 2 + q) * Mat::kron(dp, w));
            }
          }
        }
      }
    }
    ext.ideal[size_t(k)] = submodule_closure(*ext.tensors.at(k), gens);
  }

  for (int k = 0; k <= n; ++k) {
    if (k < 2) {
      ext.grade.push_back(ext.tensors.at(k));
      ext.wedge_all.push_back(Mat::identity(ext.tensors.at(k)->dim));
      ext.wedge_sect.push_back(Mat::identity(ext.tensors.at(k)->dim));
      continue;
    }
    QuotientModule qm = quotient_module(*ext.tensors.at(k), ext.ideal[size_t(k)]);
    ext.grade.push_back(qm.carrier);
    ext.wedge_all.push_back(qm.proj);
    ext.wedge_sect.push_back(qm.sect);
  }

  // differentials: d^k determined by a0 da1∧…∧dak -> da0∧da1∧…∧dak
  ext.diff.push_back(ext.wedge_all[1] * c->d);  // d^0
  const int ad = c->alg->dim;
  for (int k = 1; k < n; ++k) {
    std::vector<Mat> w_cols, t_cols;
    std::vector<int> tuple(size_t(k), 0);  // indices a1..ak
    for (;;) {
      // da1⊗…⊗dak in T^k
      Mat tv = c->d_of(c->alg->basis_el(tuple[size_t(k) - 1]));
      for (int t = k - 2; t >= 0; --t) {
        int len = k - 1 - t;  // current length of tv
        tv = ext.tensors.steps[size_t(len)].proj *
             Mat::kron(c->d_of(c->alg->basis_el(tuple[size_t(t)])), tv);
      }
      Mat bottom = ext.wedge_all[size_t(k)] * tv;
      for (int a0 = 0; a0 < ad; ++a0) {
        w_cols.push_back(ext.grade[size_t(k)]->left[a0] * bottom);
        t_cols.push_back(ext.wedge_all[size_t(k) + 1] * ext.tensors.steps[size_t(k)].proj *
                         Mat::kron(c->d_of(c->alg->basis_el(a0)), tv));
      }
      int pos = k - 1;
      while (pos >= 0 && ++tuple[size_t(pos)] == ad) tuple[size_t(pos--)] = 0;
      if (pos < 0) break;
    }
    Mat w = Mat::from_cols(w_cols), t = Mat::from_cols(t_cols);
    if (rref(w).rank() != ext.grade[size_t(k)]->dim)
      throw std::logic_error("exterior differential: spanning set does not span");
    Mat dk_t = solve_must(w.transpose(), t.transpose(), "exterior differential inconsistent");
    ext.diff.push_back(dk_t.transpose());
  }
  return ext;
}

ExteriorReport validate_exterior(const ExteriorAlgebra& ext) {
  ExteriorReport rep;
  const int n = ext.max_grade;
  for (int k = 0; k + 2 <= n; ++k)
    if (!(ext.diff[size_t(k) + 1] * ext.diff[size_t(k)]).is_zero()) {
      rep.d_squared_zero = false;
      rep.failures.push_back("d∘d nonzero at grade " + std::to_string(k));
    }
  for (int k = 0; k <= n; ++k)
    for (int h = 0; k + h + 1 <= n; ++h) {
      Mat lhs = ext.diff[size_t(k + h)] * ext.wedge_pair(k, h);
      Mat rhs = ext.wedge_pair(k + 1, h) *
                    Mat::kron(ext.diff[size_t(k)], Mat::identity(ext.grade[size_t(h)]->dim)) +
                (ext.wedge_pair(k, h + 1) *
                 Mat::kron(Mat::identity(ext.grade[size_t(k)]->dim), ext.diff[size_t(h)]))
                    .scaled(k % 2 == 0 ? Rational(1) : Rational(-1));
      if (lhs != rhs) {
        rep.graded_leibniz = false;
        rep.failures.push_back("graded Leibniz fails at (" + std::to_string(k) + "," +
                               std::to_string(h) + ")");
      }
    }
  for (int k = 0; k <= n; ++k)
    for (int h = 0; k + h <= n; ++h)
      for (int l = 0; k + h + l <= n; ++l) {
        Mat lhs = ext.wedge_pair(k + h, l) *
                  Mat::kron(ext.wedge_pair(k, h), Mat::identity(ext.grade[size_t(l)]->dim));
        Mat rhs = ext.wedge_pair(k, h + l) *
                  Mat::kron(Mat::identity(ext.grade[size_t(k)]->dim), ext.wedge_pair(h, l));
        if (lhs != rhs) {
          rep.wedge_associative = false;
          rep.failures.push_back("wedge associativity fails at (" + std::to_string(k) + "," +
                                 std::to_string(h) + "," + std::to_string(l) + ")");
        }
      }
  for (int k = 0; k <= n; ++k)
    if (rref(ext.wedge_all[size_t(k)]).rank() != ext.grade[size_t(k)]->dim) {
      rep.wedge_surjective = false;
      rep.failures.push_back("wedge not surjective at grade " + std::to_string(k));
    }
  return rep;
}

SymTower symmetric_forms(const ExteriorAlgebra& ext, const ModulePtr& base, int n) {
  SymTower st;
  st.base = base;
  const ModulePtr& omega1 = ext.calc->omega1;
  bool base_is_algebra = (base == ext.tensors.base);
  if (base_is_algebra && ext.max_grade >= n) {
    st.ladder = ext.tensors;
  } else {
    st.ladder = build_tensor_ladder(omega1, base, n, base_is_algebra);
  }
  st.level.resize(size_t(n) + 1);
  st.ambient.resize(size_t(n) + 1);

  st.level[0] = {base, Mat(), Mat::identity(base->dim)};
  if (n == 0) return st;
  st.ambient[1] = st.ladder.steps[0];
  st.level[1] = {st.ladder.at(1), Mat::identity(st.ladder.at(1)->dim),
                 Mat::identity(st.ladder.at(1)->dim)};

  for (int h = 2; h <= n; ++h) {
    const ModulePtr& prev = st.level[size_t(h) - 1].carrier;
    st.ambient[size_t(h)] = tensor_over_A(*omega1, *prev);
    const TensorSpace& v = st.ambient[size_t(h)];
    const TensorSpace& vprev = st.ambient[size_t(h) - 1];
    TensorSpace u = tensor_over_A(*ext.grade[2], *st.level[size_t(h) - 2].carrier);

    Mat id_omega = Mat::identity(omega1->dim);
    Mat to_plain2 = Mat::kron(id_omega, vprev.sect * st.level[size_t(h) - 1].incl_forms) * v.sect;
    Mat w = u.proj *
            Mat::kron(ext.wedge_pair(1, 1), Mat::identity(st.level[size_t(h) - 2].carrier->dim)) *
            to_plain2;
    SubmoduleCarrier sub = restrict_to(*v.carrier, kernel(w));

    Mat to_tensor = st.ladder.steps[size_t(h) - 1].proj *
                    Mat::kron(id_omega, st.level[size_t(h) - 1].incl_tensor) * v.sect * sub.incl;
    st.level[size_t(h)] = {sub.carrier, sub.incl, std::move(to_tensor)};
  }
  return st;
}

int sym_tensor_comparison_dim(const ExteriorAlgebra& ext, const SymTower& over_algebra,
                              const ModulePtr& e, int n) {
  (void)ext;
  const ModulePtr& sn = over_algebra.at(n);
  check(sn->is_bimodule(), "tensor comparison needs the bimodule of symmetric forms");
  return tensor_over_A(*sn, *e).carrier->dim;
}

SpencerComplex::SpencerComplex(const ExteriorAlgebra& ext, SymTower sym)
    : ext_(ext), sym_(std::move(sym)) {}

const TensorSpace& SpencerComplex::node(int h, int k) const {
  check(k >= 0 && k <= ext_.max_grade, "spencer node: grade out of range");
  check(h >= 0 && h < int(sym_.level.size()), "spencer node: symmetric degree out of range");
  auto key = std::make_pair(h, k);
  auto it = nodes_.find(key);
  if (it != nodes_.end()) return it->second;
  return nodes_.emplace(key, tensor_over_A(*ext_.grade[size_t(k)], *sym_.at(h))).first->second;
}

const Mat& SpencerComplex::delta(int h, int k) const {
  check(h >= 1, "spencer delta: needs h >= 1");
  check(k + 1 <= ext_.max_grade, "spencer delta: grade above truncation");
  auto key = std::make_pair(h, k);
  auto it = deltas_.find(key);
  if (it != deltas_.end()) return it->second;

  const TensorSpace& src = node(h, k);
  const TensorSpace& dst = node(h - 1, k + 1);
  const TensorSpace& v = sym_.ambient[size_t(h)];
  Mat id_k = Mat::identity(ext_.grade[size_t(k)]->dim);
  Mat m = dst.proj *
          Mat::kron(ext_.wedge_pair(k, 1), Mat::identity(sym_.at(h - 1)->dim)) *
          Mat::kron(id_k, v.sect * sym_.level[size_t(h)].incl_forms) * src.sect;
  if (k % 2 != 0) m = -m;
  return deltas_.emplace(key, std::move(m)).first->second;
}

SpencerComplex::Cohomology SpencerComplex::cohomology(int h, int k) const {
  Cohomology c;
  check(h == 0 || k + 1 <= ext_.max_grade,
        "spencer cohomology: outgoing delta is above the truncation grade");
  const TensorSpace& nd = node(h, k);
  c.node_dim = nd.carrier->dim;
  Subspace ker_space = (h >= 1) ? kernel(delta(h, k)) : Subspace::full(c.node_dim);
  Subspace im_space = (k >= 1 && h + 1 < int(sym_.level.size()))
                          ? image(delta(h + 1, k - 1))
                          : Subspace::zero(c.node_dim);
  if (!ker_space.contains(im_space))
    throw std::logic_error("spencer complex: image not contained in kernel");
  c.ker_dim = ker_space.dim();
  c.im_dim = im_space.dim();
  c.h_dim = c.ker_dim - c.im_dim;
  // representatives: a complement of the image inside the kernel
  RowReducer red(c.node_dim);
  red.insert_matrix_rows(im_space.basis());
  std::vector<Mat> reps;
  for (int r = 0; r < ker_space.dim(); ++r) {
    std::vector<Rational> row = ker_space.basis().row_vec(r);
    if (red.insert(row)) reps.push_back(Mat::col(ker_space.basis().row_vec(r)));
  }
  c.reps = reps.empty() ? Mat(c.node_dim, 0) : Mat::from_cols(reps);
  return c;
}

bool connection_leibniz_holds(const ExteriorAlgebra& ext, const ModulePtr& e,
                              const TensorSpace& omega_e, const Mat& nabla) {
  const Calculus& c = *ext.calc;
  for (int i = 0; i < c.alg->dim; ++i)
    for (int s = 0; s < e->dim; ++s) {
      Mat es(e->dim, 1);
      es.at(s, 0) = 1;
      Mat lhs = nabla * (e->left[i] * es);
      Mat rhs = omega_e.proj * Mat::kron(c.d_of(c.alg->basis_el(i)), es) +
                omega_e.carrier->left[i] * (nabla * es);
      if (lhs != rhs) return false;
    }
  return true;
}

ExtCovDeriv covariant_derivative(const ExteriorAlgebra& ext, const ModulePtr& e, const Mat& nabla,
                                 int up_to_grade) {
  check(up_to_grade >= 1 && up_to_grade <= ext.max_grade, "covariant_derivative: bad grade bound");
  ExtCovDeriv cd;
  cd.base = e;
  TensorSpace grade0;
  grade0.carrier = e;
  grade0.proj = Mat::identity(e->dim);
  grade0.sect = Mat::identity(e->dim);
  grade0.ldim = 1;
  grade0.rdim = e->dim;
  grade0.relations = Subspace::zero(e->dim);
  cd.omega_e.push_back(std::move(grade0));
  for (int k = 1; k <= up_to_grade; ++k)
    cd.omega_e.push_back(tensor_over_A(*ext.grade[size_t(k)], *e));

  if (!connection_leibniz_holds(ext, e, cd.omega_e[1], nabla))
    throw std::invalid_argument("covariant_derivative: map is not a connection");

  cd.d_nabla.push_back(nabla);
  for (int k = 1; k + 1 <= up_to_grade; ++k) {
    const TensorSpace& src = cd.omega_e[size_t(k)];
    const TensorSpace& dst = cd.omega_e[size_t(k) + 1];
    Mat id_e = Mat::identity(e->dim);
    Mat id_k = Mat::identity(ext.grade[size_t(k)]->dim);
    Mat term1 = dst.proj * Mat::kron(ext.diff[size_t(k)], id_e);
    Mat term2 = dst.proj * Mat::kron(ext.wedge_pair(k, 1), id_e) *
                Mat::kron(id_k, cd.omega_e[1].sect * nabla);
    Mat plain = (k % 2 == 0) ? term1 + term2 : term1 - term2;
    if (!(plain * src.relations.basis_cols()).is_zero())
      throw std::logic_error("covariant derivative not well-defined on the tensor relations");
    cd.d_nabla.push_back(plain * src.sect);
  }
  return cd;
}

}  // namespace ncjet
