#pragma once

#include "ncjet/module.hpp"

#include <optional>

namespace ncjet {

/// Free resolution ... → F_1 → F_0 → M → 0 of a left module, with free covers
/// on the given generating sets (full basis by default).
struct FreeResolution {
  ModulePtr target;
  std::vector<ModulePtr> frees;  // F_0..F_depth
  std::vector<int> ranks;
  Mat augmentation;           // F_0 -> M
  std::vector<Mat> boundary;  // boundary[k]: F_{k+1} -> F_k
};

FreeResolution free_resolution(const ModulePtr& m, int depth);
FreeResolution free_resolution_on(const ModulePtr& m, const std::vector<Mat>& generators,
                                  int depth);

/// Exactness flags of the resolution at every computed node.
bool resolution_exact(const FreeResolution& r);

struct TorResult {
  int dim;
  Mat reps;  // columns in M ⊗_A F_degree coordinates (M^rank flattening)
};

/// Tor_degree(M, N) for a right module M and left module N, computed from a
/// free resolution of N of the given depth (degree < depth required).
TorResult tor(const Module& m_right, const FreeResolution& res_of_n, int degree);
TorResult tor(const Module& m_right, const ModulePtr& n_left, int degree, int depth);

/// Left A-linear splitting of the free cover A^dim(M) ↠ M, when it exists.
std::optional<Mat> projective_splitting(const Module& m);
bool is_projective(const Module& m);

/// Flatness for finite-dimensional modules over a finite-dimensional algebra
/// is decided as projectivity and cross-checked by Tor_1 vanishing against
/// cyclic right test modules.
bool is_flat(const Module& m);

/// Right-side projectivity/flatness via the opposite algebra.
bool is_right_projective(const Module& m);
bool is_right_flat(const Module& m);

struct SesFlags {
  bool first_injective = false;
  bool middle_exact = false;
  bool last_surjective = false;
  bool exact() const { return first_injective && middle_exact && last_surjective; }
};
/// Checks 0 → X →f Y →g Z → 0.
SesFlags ses_exact(const Mat& f, const Mat& g);

}  // namespace ncjet
