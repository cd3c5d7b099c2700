#pragma once

#include "ncjet/builtin.hpp"
#include "ncjet/calculus.hpp"
#include "ncjet/module.hpp"

#include <random>

namespace ncjet::testing {

inline Rational rand_rational(std::mt19937& rng, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, 3);
  return Rational(num(rng), den(rng));
}

inline Mat rand_matrix(std::mt19937& rng, int rows, int cols, int lo = -3, int hi = 3) {
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.at(r, c) = rand_rational(rng, lo, hi);
  return m;
}

inline Mat rand_vector(std::mt19937& rng, int dim, int lo = -2, int hi = 2) {
  return rand_matrix(rng, dim, 1, lo, hi);
}

/// Random quotient of the universal calculus by a few one-form generators.
inline Calculus random_quotient_calculus(const Calculus& universal, std::mt19937& rng,
                                         int n_gens) {
  std::vector<Mat> gens;
  for (int g = 0; g < n_gens; ++g) gens.push_back(rand_vector(rng, universal.univ->dim));
  return quotient_calculus(universal, gens);
}

/// The module k[0] over the dual numbers (both actions through evaluation).
inline ModulePtr k0_module() {
  Module k0;
  k0.alg = dual_numbers();
  k0.dim = 1;
  Mat one(1, 1);
  one.at(0, 0) = 1;
  k0.left = {one, Mat(1, 1)};
  k0.right = {one, Mat(1, 1)};
  return make_module(std::move(k0));
}

/// A left-module quotient of the free module of the given rank by the left
/// closure of a few random vectors. Exercises non-flat modules.
inline ModulePtr random_left_quotient(const AlgebraPtr& a, std::mt19937& rng, int rank,
                                      int n_gens) {
  ModulePtr f = free_module(a, rank);
  Module left_only;
  left_only.alg = a;
  left_only.dim = f->dim;
  left_only.left = f->left;
  std::vector<Mat> gens;
  for (int g = 0; g < n_gens; ++g) gens.push_back(rand_vector(rng, f->dim));
  Subspace sub = submodule_closure(left_only, gens);
  if (sub.dim() == f->dim) {
    Module zero;
    zero.alg = a;
    zero.dim = 0;
    for (int i = 0; i < a->dim; ++i) zero.left.push_back(Mat(0, 0));
    return make_module(std::move(zero));
  }
  return quotient_module(left_only, sub).carrier;
}

}  // namespace ncjet::testing
