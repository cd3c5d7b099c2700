#include "ncjet/homology.hpp"

namespace ncjet {

namespace {

/// Free cover of a left module on the given generators: A^r -> span, column
/// (t,i) = e_i . g_t.
Mat cover_map(const Module& m, const std::vector<Mat>& gens) {
  Mat cov(m.dim, int(gens.size()) * m.alg->dim);
  for (size_t t = 0; t < gens.size(); ++t)
    for (int i = 0; i < m.alg->dim; ++i)
      cov.set_column(int(t) * m.alg->dim + i, m.left[i] * gens[t]);
  return cov;
}

}  // namespace

FreeResolution free_resolution_on(const ModulePtr& m, const std::vector<Mat>& generators,
                                  int depth) {
  check(m->has_left(), "free_resolution: needs a left module");
  FreeResolution r;
  r.target = m;
  const AlgebraPtr a = m->alg;

  std::vector<Mat> gens = generators;
  r.ranks.push_back(int(gens.size()));
  r.frees.push_back(free_module(a, int(gens.size())));
  r.augmentation = cover_map(*m, gens);
  if (rref(r.augmentation).rank() != m->dim)
    throw std::invalid_argument("free_resolution: generators do not generate");

  Mat prev_cover = r.augmentation;
  ModulePtr prev_free = r.frees.back();
  for (int k = 0; k < depth; ++k) {
    Subspace syz = kernel(prev_cover);
    // cover the syzygy on a pruned generating set: skip kernel basis vectors
    // already inside the closure of the previous ones (full-basis covers make
    // the ranks blow up over semisimple algebras)
    std::vector<Mat> next_gens;
    {
      RowReducer closure(prev_free->dim);
      auto as_row = [&](const Mat& v) {
        std::vector<Rational> row(size_t(prev_free->dim));
        for (int i = 0; i < prev_free->dim; ++i) row[size_t(i)] = v.at(i, 0);
        return row;
      };
      for (int t = 0; t < syz.dim(); ++t) {
        Mat g = Mat::col(syz.basis().row_vec(t));
        std::vector<Rational> probe = as_row(g);
        closure.reduce(probe);
        bool redundant = true;
        for (const Rational& x : probe)
          if (x != 0) {
            redundant = false;
            break;
          }
        if (redundant) continue;
        next_gens.push_back(g);
        std::vector<Mat> frontier{g};
        closure.insert(as_row(g));
        while (!frontier.empty()) {
          std::vector<Mat> next;
          for (const Mat& v : frontier)
            for (int i = 0; i < a->dim; ++i) {
              Mat w = prev_free->left[i] * v;
              if (closure.insert(as_row(w))) next.push_back(std::move(w));
            }
          frontier = std::move(next);
        }
      }
    }
    r.ranks.push_back(int(next_gens.size()));
    r.frees.push_back(free_module(a, int(next_gens.size())));
    Mat bd = next_gens.empty() ? Mat(prev_free->dim, 0) : cover_map(*prev_free, next_gens);
    r.boundary.push_back(bd);
    prev_cover = bd;
    prev_free = r.frees.back();
  }
  return r;
}

FreeResolution free_resolution(const ModulePtr& m, int depth) {
  std::vector<Mat> gens;
  for (int s = 0; s < m->dim; ++s) {
    Mat g(m->dim, 1);
    g.at(s, 0) = 1;
    gens.push_back(std::move(g));
  }
  return free_resolution_on(m, gens, depth);
}

bool resolution_exact(const FreeResolution& r) {
  if (rref(r.augmentation).rank() != r.target->dim) return false;
  Mat out = r.augmentation;
  for (const Mat& bd : r.boundary) {
    if (bd.cols() == 0) {
      if (kernel(out).dim() != 0) return false;
    } else {
      if (kernel(out) != image(bd)) return false;
    }
    out = bd;
  }
  return true;
}

TorResult tor(const Module& m_right, const FreeResolution& res, int degree) {
  check(m_right.has_right(), "tor: first argument needs a right action");
  check(degree >= 0 && degree < int(res.boundary.size()), "tor: resolution depth insufficient");
  const int ad = m_right.alg->dim;
  const int md = m_right.dim;

  // M ⊗_A A^r = M^r; induced map from a boundary F' -> F.
  auto induced = [&](const Mat& bd, int rank_src, int rank_dst) {
    Mat ind(rank_dst * md, rank_src * md);
    for (int t = 0; t < rank_src; ++t) {
      // image of generator t: sum_i unit_i * column(t,i)
      Mat w(bd.rows(), 1);
      for (int i = 0; i < ad; ++i)
        if (m_right.alg->unit.at(i, 0) != 0)
          w = w + bd.column(t * ad + i).scaled(m_right.alg->unit.at(i, 0));
      for (int s = 0; s < rank_dst; ++s) {
        Mat coeff(ad, 1);
        for (int j = 0; j < ad; ++j) coeff.at(j, 0) = w.at(s * ad + j, 0);
        Mat block = m_right.ract(coeff);
        for (int u = 0; u < md; ++u)
          for (int v = 0; v < md; ++v)
            if (block.at(u, v) != 0) ind.at(s * md + u, t * md + v) = block.at(u, v);
      }
    }
    return ind;
  };

  Mat d_out = degree == 0
                  ? Mat(0, res.ranks[0] * md)
                  : induced(res.boundary[size_t(degree) - 1], res.ranks[size_t(degree)],
                            res.ranks[size_t(degree) - 1]);
  Mat d_in = induced(res.boundary[size_t(degree)], res.ranks[size_t(degree) + 1],
                     res.ranks[size_t(degree)]);

  Subspace cycles = degree == 0 ? Subspace::full(res.ranks[0] * md) : kernel(d_out);
  Subspace boundaries = image(d_in);
  if (!cycles.contains(boundaries)) throw std::logic_error("tor: boundaries not cycles");

  TorResult out;
  out.dim = cycles.dim() - boundaries.dim();
  RowReducer red(cycles.ambient());
  red.insert_matrix_rows(boundaries.basis());
  std::vector<Mat> reps;
  for (int r = 0; r < cycles.dim(); ++r)
    if (red.insert(cycles.basis().row_vec(r))) reps.push_back(Mat::col(cycles.basis().row_vec(r)));
  out.reps = reps.empty() ? Mat(cycles.ambient(), 0) : Mat::from_cols(reps);
  return out;
}

TorResult tor(const Module& m_right, const ModulePtr& n_left, int degree, int depth) {
  check(same_algebra(m_right.alg, n_left->alg), "tor: algebra mismatch");
  return tor(m_right, free_resolution(n_left, depth), degree);
}

std::optional<Mat> projective_splitting(const Module& m) {
  check(m.has_left(), "projective_splitting: needs a left module");
  if (m.dim == 0) return Mat(0, 0);
  std::vector<Mat> gens;
  for (int s = 0; s < m.dim; ++s) {
    Mat g(m.dim, 1);
    g.at(s, 0) = 1;
    gens.push_back(std::move(g));
  }
  Mat cover = cover_map(m, gens);
  ModulePtr f0 = free_module(m.alg, m.dim);
  // unknown sigma: f0.dim x m.dim with L_{F0}(e) sigma = sigma L_M(e), cover∘sigma = id
  const int fd = f0->dim, md = m.dim, unknowns = fd * md;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (int i = 0; i < m.alg->dim; ++i)
    for (int r = 0; r < fd; ++r)
      for (int c = 0; c < md; ++c) {
        std::vector<Rational> row(unknowns);
        for (int t = 0; t < fd; ++t)
          if (f0->left[i].at(r, t) != 0) row[size_t(t) * md + c] += f0->left[i].at(r, t);
        for (int t = 0; t < md; ++t)
          if (m.left[i].at(t, c) != 0) row[size_t(r) * md + t] -= m.left[i].at(t, c);
        rows.push_back(std::move(row));
        rhs.push_back(0);
      }
  for (int r = 0; r < md; ++r)
    for (int c = 0; c < md; ++c) {
      std::vector<Rational> row(unknowns);
      for (int t = 0; t < fd; ++t)
        if (cover.at(r, t) != 0) row[size_t(t) * md + c] += cover.at(r, t);
      rows.push_back(std::move(row));
      rhs.push_back(r == c ? 1 : 0);
    }
  Mat sys = Mat::from_rows(rows);
  auto sol = solve_exact(sys, Mat::col(rhs));
  if (!sol) return std::nullopt;
  Mat sigma(fd, md);
  for (int t = 0; t < fd; ++t)
    for (int c = 0; c < md; ++c) sigma.at(t, c) = sol->at(t * md + c, 0);
  return sigma;
}

bool is_projective(const Module& m) { return projective_splitting(m).has_value(); }

namespace {

/// Cyclic right test modules A/(e_i·A) plus A itself.
std::vector<Module> right_cyclic_probes(const AlgebraPtr& a) {
  std::vector<Module> probes;
  ModulePtr reg = regular_bimodule(a);
  Module right_only;
  right_only.alg = a;
  right_only.dim = a->dim;
  right_only.right = reg->right;
  probes.push_back(right_only);
  for (int i = 0; i < a->dim; ++i) {
    Subspace ideal = submodule_closure(right_only, {a->basis_el(i)});
    if (ideal.dim() == a->dim || ideal.dim() == 0) continue;
    QuotientModule q = quotient_module(right_only, ideal);
    probes.push_back(*q.carrier);
  }
  return probes;
}

}  // namespace

bool is_flat(const Module& m) {
  bool projective = is_projective(m);
  ModulePtr mp = make_module(m);
  for (const Module& probe : right_cyclic_probes(m.alg)) {
    bool tor_vanishes = tor(probe, mp, 1, 2).dim == 0;
    if (projective && !tor_vanishes)
      throw std::logic_error("flatness probe contradicts projectivity");
  }
  return projective;
}

bool is_right_projective(const Module& m) {
  AlgebraPtr op = std::make_shared<Algebra>(opposite(*m.alg));
  return is_projective(*as_left_over_opposite(m, op));
}

bool is_right_flat(const Module& m) {
  AlgebraPtr op = std::make_shared<Algebra>(opposite(*m.alg));
  return is_flat(*as_left_over_opposite(m, op));
}

SesFlags ses_exact(const Mat& f, const Mat& g) {
  check(f.rows() == g.cols(), "ses_exact: maps do not compose");
  SesFlags flags;
  flags.first_injective = kernel(f).dim() == 0;
  flags.middle_exact = kernel(g) == image(f);
  flags.last_surjective = rref(g).rank() == g.rows();
  return flags;
}

}  // namespace ncjet
