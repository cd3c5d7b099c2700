#include "ncjet/module.hpp"

namespace ncjet {

Mat Module::lact(const Mat& a) const {
  check(has_left(), "module has no left action");
  Mat m(dim, dim);
  for (int i = 0; i < alg->dim; ++i)
    if (a.at(i, 0) != 0) m = m + left[i].scaled(a.at(i, 0));
  return m;
}

Mat Module::ract(const Mat& a) const {
  check(has_right(), "module has no right action");
  Mat m(dim, dim);
  for (int i = 0; i < alg->dim; ++i)
    if (a.at(i, 0) != 0) m = m + right[i].scaled(a.at(i, 0));
  return m;
}

ModuleReport validate_module(const Module& m) {
  ModuleReport rep;
  const Algebra& a = *m.alg;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  if (m.has_left()) {
    if (m.lact(a.unit) != Mat::identity(m.dim)) fail("left unit axiom fails");
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < a.dim; ++j)
        if (m.left[i] * m.left[j] != m.lact(a.mult[i][j]))
          fail("left action fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  if (m.has_right()) {
    if (m.ract(a.unit) != Mat::identity(m.dim)) fail("right unit axiom fails");
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < a.dim; ++j)
        if (m.right[j] * m.right[i] != m.ract(a.mult[i][j]))
          fail("right action fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  if (m.is_bimodule()) {
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < a.dim; ++j)
        if (m.left[i] * m.right[j] != m.right[j] * m.left[i])
          fail("actions do not commute at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  return rep;
}

ModulePtr regular_bimodule(const AlgebraPtr& a) { return free_module(a, 1); }

ModulePtr free_module(const AlgebraPtr& a, int n) {
  Module m;
  m.alg = a;
  m.dim = a->dim * n;
  Mat in = Mat::identity(n);
  for (int i = 0; i < a->dim; ++i) {
    m.left.push_back(Mat::kron(in, a->lmul(a->basis_el(i))));
    m.right.push_back(Mat::kron(in, a->rmul(a->basis_el(i))));
  }
  return make_module(std::move(m));
}

ModulePtr direct_sum(const Module& m, const Module& n) {
  check(same_algebra(m.alg, n.alg), "direct_sum: algebra mismatch");
  check(m.has_left() == n.has_left() && m.has_right() == n.has_right(),
        "direct_sum: sidedness mismatch");
  Module s;
  s.alg = m.alg;
  s.dim = m.dim + n.dim;
  auto block = [&](const Mat& a, const Mat& b) {
    Mat r(s.dim, s.dim);
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) r.at(m.dim + i, m.dim + j) = b.at(i, j);
    return r;
  };
  for (int i = 0; i < m.alg->dim; ++i) {
    if (m.has_left()) s.left.push_back(block(m.left[i], n.left[i]));
    if (m.has_right()) s.right.push_back(block(m.right[i], n.right[i]));
  }
  return make_module(std::move(s));
}

ModulePtr as_left_over_opposite(const Module& m, const AlgebraPtr& op) {
  check(m.has_right(), "opposite view needs a right action");
  Module v;
  v.alg = op;
  v.dim = m.dim;
  v.left = m.right;
  return make_module(std::move(v));
}

bool ModuleMap::is_left_linear() const {
  for (int i = 0; i < dom->alg->dim; ++i)
    if (cod->left[i] * m != m * dom->left[i]) return false;
  return true;
}

bool ModuleMap::is_bilinear() const {
  if (!is_left_linear()) return false;
  for (int i = 0; i < dom->alg->dim; ++i)
    if (cod->right[i] * m != m * dom->right[i]) return false;
  return true;
}

Subspace submodule_closure(const Module& m, const std::vector<Mat>& generators) {
  RowReducer red(m.dim);
  std::vector<Mat> frontier;
  for (const Mat& g : generators) {
    check(g.rows() == m.dim && g.cols() == 1, "closure: generator shape mismatch");
    std::vector<Rational> row(m.dim);
    for (int i = 0; i < m.dim; ++i) row[i] = g.at(i, 0);
    if (red.insert(std::move(row))) frontier.push_back(g);
  }
  while (!frontier.empty()) {
    std::vector<Mat> next;
    for (const Mat& v : frontier) {
      for (int i = 0; i < m.alg->dim; ++i) {
        std::vector<Mat> images;
        if (m.has_left()) images.push_back(m.left[i] * v);
        if (m.has_right()) images.push_back(m.right[i] * v);
        for (Mat& w : images) {
          std::vector<Rational> row(m.dim);
          for (int t = 0; t < m.dim; ++t) row[t] = w.at(t, 0);
          if (red.insert(std::move(row))) next.push_back(std::move(w));
        }
      }
    }
    frontier = std::move(next);
  }
  return subspace_from_reducer(red);
}

Subspace left_submodule_closure(const Module& m, const std::vector<Mat>& generators) {
  check(m.has_left(), "left closure needs a left action");
  Module view;
  view.alg = m.alg;
  view.dim = m.dim;
  view.left = m.left;
  return submodule_closure(view, generators);
}

std::vector<Mat> hom_A(const Module& m, const Module& n) {
  check(same_algebra(m.alg, n.alg), "hom_A: algebra mismatch");
  check(m.has_left() && n.has_left(), "hom_A: needs left modules");
  // Unknown T (n.dim x m.dim), constraints L_N(e_i) T - T L_M(e_i) = 0.
  // vec(T) indexed by (r, c) -> r*m.dim + c.
  const int unknowns = n.dim * m.dim;
  RowReducer red(unknowns);
  for (int i = 0; i < m.alg->dim; ++i) {
    for (int r = 0; r < n.dim; ++r)
      for (int c = 0; c < m.dim; ++c) {
        // entry (r,c) of L_N T - T L_M as linear functional of T
        std::vector<Rational> row(unknowns);
        for (int t = 0; t < n.dim; ++t)
          if (n.left[i].at(r, t) != 0) row[size_t(t) * m.dim + c] += n.left[i].at(r, t);
        for (int t = 0; t < m.dim; ++t)
          if (m.left[i].at(t, c) != 0) row[size_t(r) * m.dim + t] -= m.left[i].at(t, c);
        red.insert(std::move(row));
      }
  }
  Mat coeff = red.basis();
  Subspace sols = kernel(coeff);
  std::vector<Mat> basis;
  for (int k = 0; k < sols.dim(); ++k) {
    Mat t(n.dim, m.dim);
    for (int r = 0; r < n.dim; ++r)
      for (int c = 0; c < m.dim; ++c) t.at(r, c) = sols.basis().at(k, r * m.dim + c);
    basis.push_back(std::move(t));
  }
  return basis;
}

SubmoduleCarrier restrict_to(const Module& m, const Subspace& s) {
  check(s.ambient() == m.dim, "restrict_to: ambient mismatch");
  SubmoduleCarrier out;
  out.incl = s.basis_cols();
  Module sub;
  sub.alg = m.alg;
  sub.dim = s.dim();
  for (int i = 0; i < m.alg->dim; ++i) {
    if (m.has_left()) {
      Mat img = m.left[i] * out.incl;
      Mat coords = solve_must(out.incl, img, "subspace not left-invariant");
      sub.left.push_back(std::move(coords));
    }
    if (m.has_right()) {
      Mat img = m.right[i] * out.incl;
      Mat coords = solve_must(out.incl, img, "subspace not right-invariant");
      sub.right.push_back(std::move(coords));
    }
  }
  out.carrier = make_module(std::move(sub));
  return out;
}

QuotientModule quotient_module(const Module& m, const Subspace& s) {
  check(s.ambient() == m.dim, "quotient_module: ambient mismatch");
  Quotient q = quotient(m.dim, s);
  Mat cols = s.basis_cols();
  Module qm;
  qm.alg = m.alg;
  qm.dim = q.dim;
  for (int i = 0; i < m.alg->dim; ++i) {
    if (m.has_left()) {
      if (!(q.proj * (m.left[i] * cols)).is_zero())
        throw std::logic_error("quotient_module: subspace not left-invariant");
      qm.left.push_back(q.proj * m.left[i] * q.sect);
    }
    if (m.has_right()) {
      if (!(q.proj * (m.right[i] * cols)).is_zero())
        throw std::logic_error("quotient_module: subspace not right-invariant");
      qm.right.push_back(q.proj * m.right[i] * q.sect);
    }
  }
  QuotientModule out;
  out.carrier = make_module(std::move(qm));
  out.proj = q.proj;
  out.sect = q.sect;
  return out;
}

}  // namespace ncjet
