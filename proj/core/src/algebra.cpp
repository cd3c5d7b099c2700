#include "ncjet/algebra.hpp"

namespace ncjet {

Mat Algebra::lmul(const Mat& a) const {
  check(a.rows() == dim && a.cols() == 1, "lmul: bad element shape");
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (a.at(i, 0) == 0) continue;
    for (int j = 0; j < dim; ++j) {
      const Mat& c = mult[i][j];
      for (int t = 0; t < dim; ++t)
        if (c.at(t, 0) != 0) m.at(t, j) += a.at(i, 0) * c.at(t, 0);
    }
  }
  return m;
}

Mat Algebra::rmul(const Mat& a) const {
  check(a.rows() == dim && a.cols() == 1, "rmul: bad element shape");
  Mat m(dim, dim);
  for (int j = 0; j < dim; ++j) {
    if (a.at(j, 0) == 0) continue;
    for (int i = 0; i < dim; ++i) {
      const Mat& c = mult[i][j];
      for (int t = 0; t < dim; ++t)
        if (c.at(t, 0) != 0) m.at(t, i) += a.at(j, 0) * c.at(t, 0);
    }
  }
  return m;
}

Mat Algebra::basis_el(int i) const {
  Mat v(dim, 1);
  v.at(i, 0) = 1;
  return v;
}

Mat Algebra::element(const std::string& label) const {
  for (int i = 0; i < dim; ++i)
    if (basis[i] == label) return basis_el(i);
  throw std::invalid_argument("unknown basis label: " + label);
}

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
  check(same_algebra(a.alg, b.alg), "element product: algebra mismatch");
  return {a.alg, a.alg->multiply(a.coords, b.coords)};
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) {
  check(same_algebra(a.alg, b.alg), "commutator: algebra mismatch");
  return {a.alg, a.alg->multiply(a.coords, b.coords) - a.alg->multiply(b.coords, a.coords)};
}

AlgebraElement anticommutator(const AlgebraElement& a, const AlgebraElement& b) {
  check(same_algebra(a.alg, b.alg), "anticommutator: algebra mismatch");
  return {a.alg, a.alg->multiply(a.coords, b.coords) + a.alg->multiply(b.coords, a.coords)};
}

AlgebraReport validate_algebra(const Algebra& a) {
  AlgebraReport rep;
  auto label = [&](int i) { return i < int(a.basis.size()) ? a.basis[i] : std::to_string(i); };
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      for (int k = 0; k < a.dim; ++k) {
        Mat lhs = a.multiply(a.multiply(a.basis_el(i), a.basis_el(j)), a.basis_el(k));
        Mat rhs = a.multiply(a.basis_el(i), a.multiply(a.basis_el(j), a.basis_el(k)));
        if (lhs != rhs) {
          rep.associative = false;
          rep.failures.push_back("associativity fails at (" + label(i) + "," + label(j) + "," +
                                 label(k) + ")");
        }
      }
  for (int i = 0; i < a.dim; ++i) {
    if (a.multiply(a.unit, a.basis_el(i)) != a.basis_el(i)) {
      rep.unital = false;
      rep.failures.push_back("1*" + label(i) + " != " + label(i));
    }
    if (a.multiply(a.basis_el(i), a.unit) != a.basis_el(i)) {
      rep.unital = false;
      rep.failures.push_back(label(i) + "*1 != " + label(i));
    }
  }
  return rep;
}

Algebra opposite(const Algebra& a) {
  Algebra op = a;
  op.name = a.name + "_op";
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) op.mult[i][j] = a.mult[j][i];
  return op;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->dim == b->dim && a->unit == b->unit && a->mult == b->mult;
}

}  // namespace ncjet
