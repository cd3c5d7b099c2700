#include "ncjet/calculus.hpp"

namespace ncjet {

namespace {

/// A⊗A as a free bimodule (flat index i*dim+j).
Module axa_bimodule(const AlgebraPtr& a) {
  Module m;
  m.alg = a;
  m.dim = a->dim * a->dim;
  Mat id = Mat::identity(a->dim);
  for (int e = 0; e < a->dim; ++e) {
    m.left.push_back(Mat::kron(a->lmul(a->basis_el(e)), id));
    m.right.push_back(Mat::kron(id, a->rmul(a->basis_el(e))));
  }
  return m;
}

/// Multiplication A⊗A → A.
Mat mult_map(const Algebra& a) {
  Mat m(a.dim, a.dim * a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) m.set_column(i * a.dim + j, a.mult[i][j]);
  return m;
}

}  // namespace

Calculus universal_calculus(const AlgebraPtr& a) {
  Calculus c;
  c.alg = a;
  Module axa = axa_bimodule(a);
  Subspace k = kernel(mult_map(*a));
  SubmoduleCarrier u = restrict_to(axa, k);
  c.univ = u.carrier;
  c.incl_univ = u.incl;
  Mat rt = solve_must(u.incl.transpose(), Mat::identity(k.dim()), "universal retraction");
  c.retr_univ = rt.transpose();

  c.d_univ = Mat(k.dim(), a->dim);
  for (int i = 0; i < a->dim; ++i) {
    Mat v = Mat::kron(a->unit, a->basis_el(i)) - Mat::kron(a->basis_el(i), a->unit);
    check(k.contains(v), "universal differential leaves the kernel");
    c.d_univ.set_column(i, c.retr_univ * v);
  }

  c.omega1 = c.univ;
  c.d = c.d_univ;
  c.relation_space = Subspace::zero(k.dim());
  c.p = Mat::identity(k.dim());
  c.p_sect = Mat::identity(k.dim());
  return c;
}

Calculus quotient_calculus(const Calculus& universal, const std::vector<Mat>& n_generators) {
  check(universal.is_universal(), "quotient_calculus expects the universal calculus");
  for (const Mat& g : n_generators)
    check(g.rows() == universal.univ->dim && g.cols() == 1,
          "quotient_calculus: generator is not a universal one-form");
  Calculus c;
  c.alg = universal.alg;
  c.univ = universal.univ;
  c.incl_univ = universal.incl_univ;
  c.retr_univ = universal.retr_univ;
  c.d_univ = universal.d_univ;
  c.relation_space = submodule_closure(*universal.univ, n_generators);
  QuotientModule qm = quotient_module(*universal.univ, c.relation_space);
  c.omega1 = qm.carrier;
  c.p = qm.proj;
  c.p_sect = qm.sect;
  c.d = c.p * c.d_univ;
  CalculusReport rep = validate_calculus(c);
  if (!rep.pass()) throw std::logic_error("quotient calculus failed validation");
  return c;
}

TerminalCalculus terminal_calculus(const AlgebraPtr& a, const std::vector<Mat>& elements) {
  check(!elements.empty(), "terminal_calculus: empty element set");
  Calculus u = universal_calculus(a);
  TerminalCalculus out;

  std::vector<Mat> evals;
  for (const Mat& f : elements) {
    check(f.rows() == a->dim && f.cols() == 1, "terminal_calculus: bad element shape");
    Mat ev(a->dim, a->dim * a->dim);
    for (int i = 0; i < a->dim; ++i) {
      Mat fi = a->multiply(a->basis_el(i), f);
      for (int j = 0; j < a->dim; ++j) ev.set_column(i * a->dim + j, a->multiply(fi, a->basis_el(j)));
    }
    Mat ev_u = ev * u.incl_univ;
    evals.push_back(ev_u);
    out.per_element_kernels.push_back(kernel(ev_u));
  }
  Subspace n_s = out.per_element_kernels[0];
  for (size_t i = 1; i < out.per_element_kernels.size(); ++i)
    n_s = intersect(n_s, out.per_element_kernels[i]);

  std::vector<Mat> gens;
  for (int r = 0; r < n_s.dim(); ++r) gens.push_back(Mat::col(n_s.basis().row_vec(r)));
  out.calc = quotient_calculus(u, gens);

  if (elements.size() == 1) {
    Subspace img = image(evals[0]);
    out.ideal_carrier = restrict_to(*regular_bimodule(a), img);
    out.ideal_d = solve_must(out.ideal_carrier->incl, evals[0] * u.d_univ, "terminal ideal differential");
  }
  return out;
}

CalculusReport validate_calculus(const Calculus& c) {
  CalculusReport rep;
  const Algebra& a = *c.alg;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      Mat lhs = c.d * a.mult[i][j];
      Mat rhs = c.omega1->left[i] * c.d_of(a.basis_el(j)) + c.omega1->right[j] * c.d_of(a.basis_el(i));
      if (lhs != rhs) {
        rep.leibniz = false;
        rep.failures.push_back("Leibniz fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  RowReducer red(c.omega1->dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      Mat v = c.omega1->left[i] * c.d_of(a.basis_el(j));
      std::vector<Rational> row(c.omega1->dim);
      for (int t = 0; t < c.omega1->dim; ++t) row[t] = v.at(t, 0);
      red.insert(std::move(row));
    }
  rep.span_rank = red.rank();
  if (rep.span_rank != c.omega1->dim) {
    rep.surjective = false;
    rep.failures.push_back("A·dA does not span the one-forms");
  }
  return rep;
}

FreeBasisCheck left_free_on(const Calculus& c, const std::vector<Mat>& basis) {
  FreeBasisCheck fb;
  const int r = int(basis.size());
  fb.expand = Mat(c.omega1->dim, r * c.alg->dim);
  for (int t = 0; t < r; ++t)
    for (int i = 0; i < c.alg->dim; ++i)
      fb.expand.set_column(t * c.alg->dim + i, c.omega1->left[i] * basis[t]);
  fb.free = (r * c.alg->dim == c.omega1->dim) && (rref(fb.expand).rank() == c.omega1->dim);
  return fb;
}

StructureRelations structure_relations(const Calculus& c, const std::vector<Mat>& free_basis) {
  StructureRelations sr;
  FreeBasisCheck fb = left_free_on(c, free_basis);
  if (!fb.free) {
    sr.error = "the given one-forms are not a left-free basis";
    return sr;
  }
  sr.ok = true;
  const int r = int(free_basis.size());
  const int ad = c.alg->dim;
  for (int x = 0; x < ad; ++x) {
    Mat v = solve_must(fb.expand, c.d_of(c.alg->basis_el(x)), "free expansion of dx");
    std::vector<Mat> per_theta;
    for (int t = 0; t < r; ++t) {
      Mat coeff(ad, 1);
      for (int i = 0; i < ad; ++i) coeff.at(i, 0) = v.at(t * ad + i, 0);
      per_theta.push_back(std::move(coeff));
    }
    sr.d_coeffs.push_back(std::move(per_theta));
  }

  Mat rexpand(c.omega1->dim, r * ad);
  for (int t = 0; t < r; ++t)
    for (int i = 0; i < ad; ++i)
      rexpand.set_column(t * ad + i, c.omega1->right[i] * free_basis[t]);
  sr.right_expansion_ok = (rref(rexpand).rank() == c.omega1->dim) && (r * ad == c.omega1->dim);
  if (sr.right_expansion_ok) {
    for (int x = 0; x < ad; ++x) {
      std::vector<std::vector<Mat>> per_theta;
      for (int t = 0; t < r; ++t) {
        Mat v = solve_must(rexpand, c.omega1->left[x] * free_basis[t], "right expansion");
        std::vector<Mat> coeffs;
        for (int s = 0; s < r; ++s) {
          Mat coeff(ad, 1);
          for (int i = 0; i < ad; ++i) coeff.at(i, 0) = v.at(s * ad + i, 0);
          coeffs.push_back(std::move(coeff));
        }
        per_theta.push_back(std::move(coeffs));
      }
      sr.right_form.push_back(std::move(per_theta));
    }
  }
  return sr;
}

std::optional<Mat> calculus_morphism(const Calculus& src, const Calculus& tgt) {
  check(same_algebra(src.alg, tgt.alg), "calculus_morphism: algebra mismatch");
  if (!tgt.relation_space.contains(src.relation_space)) return std::nullopt;
  Mat phi = tgt.p * src.p_sect;
  if (phi * src.d != tgt.d) throw std::logic_error("calculus morphism fails to intertwine d");
  return phi;
}

}  // namespace ncjet
