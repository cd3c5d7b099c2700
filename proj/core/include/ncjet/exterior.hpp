#pragma once

#include "ncjet/calculus.hpp"

#include <map>
#include <memory>

namespace ncjet {

/// Right-nested tensor powers T^k = Ω¹ ⊗_A T^{k-1} over a base module.
/// carriers[0] is the base; steps[k] presents Ω¹ ⊗_A T^k with carrier T^{k+1}.
struct TensorLadder {
  ModulePtr base;
  std::vector<ModulePtr> carriers;
  std::vector<TensorSpace> steps;

  const ModulePtr& at(int k) const { return carriers[size_t(k)]; }
  int top() const { return int(carriers.size()) - 1; }
};

/// Presentation of Ω¹ ⊗_A A with the one-form module itself as carrier.
TensorSpace unit_right_step(const ModulePtr& omega1, const AlgebraPtr& a);

/// Builds T^0..T^n over `base`. When base_is_algebra, T^1 is the one-form
/// module itself.
TensorLadder build_tensor_ladder(const ModulePtr& omega1, const ModulePtr& base, int n,
                                 bool base_is_algebra);

/// Truncated maximal exterior algebra of a calculus: grade k is the quotient
/// of T^k by the two-sided ideal generated by (d⊗d)(N) in T².
class ExteriorAlgebra {
 public:
  std::shared_ptr<const Calculus> calc;
  int max_grade = 0;
  TensorLadder tensors;              // T^0..T^N over A
  std::vector<Subspace> ideal;       // ideal[k] ⊆ T^k
  std::vector<ModulePtr> grade;      // Ω^0..Ω^N
  std::vector<Mat> wedge_all;        // ∧_k: T^k → Ω^k
  std::vector<Mat> wedge_sect;       // Ω^k → T^k, ∧_k∘sect = id
  std::vector<Mat> diff;             // d^k: Ω^k → Ω^{k+1}, k = 0..N-1
  Subspace min_sym2;                 // span (d⊗d)(N) ⊆ T²

  /// Concatenation T^p ⊗ T^q (plain) → T^{p+q}.
  const Mat& concat(int p, int q) const;
  /// Wedge Ω^k ⊗ Ω^h (plain) → Ω^{k+h}.
  const Mat& wedge_pair(int k, int h) const;

 private:
  friend ExteriorAlgebra maximal_exterior(std::shared_ptr<const Calculus> c, int n);
  mutable std::map<std::pair<int, int>, Mat> concat_cache_;
  mutable std::map<std::pair<int, int>, Mat> wedge_cache_;
};

ExteriorAlgebra maximal_exterior(std::shared_ptr<const Calculus> c, int n);

struct ExteriorReport {
  bool d_squared_zero = true;
  bool graded_leibniz = true;
  bool wedge_associative = true;
  bool wedge_surjective = true;
  std::vector<std::string> failures;
  bool pass() const {
    return d_squared_zero && graded_leibniz && wedge_associative && wedge_surjective;
  }
};
ExteriorReport validate_exterior(const ExteriorAlgebra& ext);

/// Quantum symmetric forms over a base module E: S^0 = E, S^1 = Ω¹(E) and
/// S^n = ker(Ω¹(S^{n-1}) → Ω²(S^{n-2})) with stored inclusions.
struct SymLevel {
  ModulePtr carrier;
  Mat incl_forms;   // S^n -> Ω¹⊗_A S^{n-1} carrier (identity at n <= 1)
  Mat incl_tensor;  // S^n -> T^n(E) carrier
};
struct SymTower {
  ModulePtr base;
  TensorLadder ladder;                 // T^k(E)
  std::vector<SymLevel> level;         // 0..n
  std::vector<TensorSpace> ambient;    // ambient[h] = Ω¹ ⊗_A S^{h-1}, h >= 1
  const ModulePtr& at(int h) const { return level[size_t(h)].carrier; }
};
SymTower symmetric_forms(const ExteriorAlgebra& ext, const ModulePtr& base, int n);

/// dim(S^n(A) ⊗_A E) for the τ-comparison against dim S^n(E).
int sym_tensor_comparison_dim(const ExteriorAlgebra& ext, const SymTower& over_algebra,
                              const ModulePtr& e, int n);

/// Spencer δ-complex nodes Ω^k ⊗_A S^h with δ = (-1)^k ∧^{k,1} ∘ Ω^k(ι).
class SpencerComplex {
 public:
  SpencerComplex(const ExteriorAlgebra& ext, SymTower sym);

  /// Node Ω^k ⊗_A S^h; k ≤ max_grade of the exterior algebra.
  const TensorSpace& node(int h, int k) const;
  /// δ^{h,k}: node(h,k) → node(h-1,k+1); requires h ≥ 1 and k+1 ≤ max grade.
  const Mat& delta(int h, int k) const;

  struct Cohomology {
    int node_dim, ker_dim, im_dim, h_dim;
    Mat reps;  // columns: representatives in node coordinates
  };
  /// H^{h,k} = ker δ^{h,k} / im δ^{h+1,k-1}. Computable for k < max grade.
  Cohomology cohomology(int h, int k) const;

  const SymTower& sym() const { return sym_; }

 private:
  const ExteriorAlgebra& ext_;
  SymTower sym_;
  mutable std::map<std::pair<int, int>, TensorSpace> nodes_;
  mutable std::map<std::pair<int, int>, Mat> deltas_;
};

/// Left connection data: ∇: E → Ω¹(E) with ∇(ae) = da⊗e + a∇e.
bool connection_leibniz_holds(const ExteriorAlgebra& ext, const ModulePtr& e,
                              const TensorSpace& omega_e, const Mat& nabla);

/// Exterior covariant derivative prolonged from a connection, with curvature.
struct ExtCovDeriv {
  ModulePtr base;
  std::vector<TensorSpace> omega_e;  // Ω^k ⊗_A E, k = 0..m (grade 0 carrier = E)
  std::vector<Mat> d_nabla;          // Ω^k(E) → Ω^{k+1}(E), k = 0..m-1
  /// Curvature on grade k (needs k+2 ≤ m).
  Mat curvature(int k) const { return d_nabla[size_t(k) + 1] * d_nabla[size_t(k)]; }
};
ExtCovDeriv covariant_derivative(const ExteriorAlgebra& ext, const ModulePtr& e, const Mat& nabla,
                                 int up_to_grade);

}  // namespace ncjet
