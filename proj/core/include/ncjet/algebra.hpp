#pragma once

#include "ncjet/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace ncjet {

/// Finite-dimensional unital associative algebra over the rationals, given by
/// structure constants: mult[i][j] = coordinates of e_i * e_j.
struct Algebra {
  std::string name;
  int dim = 0;
  std::vector<std::string> basis;
  Mat unit;                            // dim x 1
  std::vector<std::vector<Mat>> mult;  // mult[i][j]: dim x 1

  /// Left multiplication operator by the element with coordinates a.
  Mat lmul(const Mat& a) const;
  /// Right multiplication operator (x -> x*a).
  Mat rmul(const Mat& a) const;
  Mat multiply(const Mat& a, const Mat& b) const { return lmul(a) * b; }
  Mat basis_el(int i) const;
  /// Coordinates of a named basis element; throws if the label is unknown.
  Mat element(const std::string& label) const;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

struct AlgebraElement {
  AlgebraPtr alg;
  Mat coords;  // dim x 1
};

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement anticommutator(const AlgebraElement& a, const AlgebraElement& b);

struct AlgebraReport {
  bool associative = true;
  bool unital = true;
  std::vector<std::string> failures;
  bool pass() const { return associative && unital; }
};

/// Exhaustive basis-triple associativity check plus unit axioms.
AlgebraReport validate_algebra(const Algebra& a);

/// Opposite algebra: mult_op[i][j] = mult[j][i].
Algebra opposite(const Algebra& a);

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

}  // namespace ncjet
