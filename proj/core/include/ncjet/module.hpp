#pragma once

#include "ncjet/algebra.hpp"

namespace ncjet {

/// Finite-dimensional A-module given by action matrices per algebra basis
/// element. `left` and/or `right` may be empty: a bimodule has both, a
/// one-sided module has one.
struct Module {
  AlgebraPtr alg;
  int dim = 0;
  std::vector<Mat> left;   // left[i]: action of e_i, m -> e_i . m
  std::vector<Mat> right;  // right[i]: m -> m . e_i

  bool has_left() const { return !left.empty(); }
  bool has_right() const { return !right.empty(); }
  bool is_bimodule() const { return has_left() && has_right(); }

  /// Operator m -> a.m for the element with coordinates a.
  Mat lact(const Mat& a) const;
  /// Operator m -> m.a.
  Mat ract(const Mat& a) const;
};

using ModulePtr = std::shared_ptr<const Module>;

inline ModulePtr make_module(Module m) { return std::make_shared<Module>(std::move(m)); }

struct ModuleReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Checks the action axioms (unital homomorphism / antihomomorphism,
/// commuting actions for bimodules).
ModuleReport validate_module(const Module& m);

/// A as a bimodule over itself (free of rank 1).
ModulePtr regular_bimodule(const AlgebraPtr& a);
/// Free bimodule of rank n with coordinate-wise actions.
ModulePtr free_module(const AlgebraPtr& a, int n);
ModulePtr direct_sum(const Module& m, const Module& n);

/// View of a right module as a left module over the opposite algebra.
ModulePtr as_left_over_opposite(const Module& m, const AlgebraPtr& op);

struct ModuleMap {
  ModulePtr dom, cod;
  Mat m;
  bool is_left_linear() const;
  bool is_bilinear() const;
};

/// Smallest subspace containing the generators and closed under all available
/// actions of M (both for bimodules). Computed by saturation to a fixed point.
Subspace submodule_closure(const Module& m, const std::vector<Mat>& generators);

/// Closure under the left action only (one-sided submodules of bimodules).
Subspace left_submodule_closure(const Module& m, const std::vector<Mat>& generators);

/// Basis of the space of left-A-linear maps M -> N.
std::vector<Mat> hom_A(const Module& m, const Module& n);

/// Restriction of M to an invariant subspace; returns the carrier (own
/// coordinates) and the inclusion matrix. Throws std::logic_error if the
/// subspace is not invariant under the available actions.
struct SubmoduleCarrier {
  ModulePtr carrier;
  Mat incl;  // carrier -> ambient coordinates
};
SubmoduleCarrier restrict_to(const Module& m, const Subspace& s);

/// Quotient of M by an invariant subspace, with projection and section.
struct QuotientModule {
  ModulePtr carrier;
  Mat proj;
  Mat sect;
};
QuotientModule quotient_module(const Module& m, const Subspace& s);

}  // namespace ncjet
