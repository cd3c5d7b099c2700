#include "ncjet/tensor.hpp"

namespace ncjet {

TensorSpace tensor_over_A(const Module& m, const Module& n) {
  check(same_algebra(m.alg, n.alg), "tensor_over_A: algebra mismatch");
  check(m.has_right(), "tensor_over_A: left factor needs a right action");
  check(n.has_left(), "tensor_over_A: right factor needs a left action");
  const int plain = m.dim * n.dim;
  if (plain > max_carrier_dim())
    throw std::invalid_argument("tensor_over_A: carrier dimension cap exceeded (NCJET_MAX_DIM)");

  const Algebra& a = *m.alg;
  RowReducer red(plain);
  std::vector<Rational> row(plain);
  for (int e = 0; e < a.dim; ++e) {
    if (a.basis_el(e) == a.unit) continue;  // unit relations vanish
    for (int s = 0; s < m.dim; ++s)
      for (int t = 0; t < n.dim; ++t) {
        std::fill(row.begin(), row.end(), Rational(0));
        // (m_s . e) ⊗ n_t
        for (int u = 0; u < m.dim; ++u) {
          const Rational& x = m.right[e].at(u, s);
          if (x != 0) row[size_t(u) * n.dim + t] += x;
        }
        // - m_s ⊗ (e . n_t)
        for (int v = 0; v < n.dim; ++v) {
          const Rational& y = n.left[e].at(v, t);
          if (y != 0) row[size_t(s) * n.dim + v] -= y;
        }
        red.insert(row);
      }
  }

  TensorSpace ts;
  ts.ldim = m.dim;
  ts.rdim = n.dim;
  ts.relations = subspace_from_reducer(red);
  Quotient q = quotient(plain, ts.relations);
  ts.proj = q.proj;
  ts.sect = q.sect;

  Module carrier;
  carrier.alg = m.alg;
  carrier.dim = q.dim;
  Mat id_n = Mat::identity(n.dim);
  Mat id_m = Mat::identity(m.dim);
  for (int e = 0; e < a.dim; ++e) {
    if (m.has_left()) carrier.left.push_back(q.proj * Mat::kron(m.left[e], id_n) * q.sect);
    if (n.has_right()) carrier.right.push_back(q.proj * Mat::kron(id_m, n.right[e]) * q.sect);
  }
  ts.carrier = make_module(std::move(carrier));
  return ts;
}

}  // namespace ncjet
