#pragma once

#include "ncjet/exterior.hpp"
#include "ncjet/homology.hpp"

#include <map>
#include <optional>

namespace ncjet {

enum class JetFlavor { nonholonomic, semiholonomic, sesquiholonomic, holonomic };
std::string to_string(JetFlavor f);
std::optional<JetFlavor> parse_flavor(std::string_view s);

/// The 1-jet of a module: carrier (A⊗E)/N(E) with the five structure maps.
/// For E with a right action the carrier is a bimodule.
struct Jet1 {
  ModulePtr base;
  ModulePtr carrier;
  Mat to_carrier;    // plain A⊗E -> carrier
  Mat from_carrier;  // carrier -> plain, to∘from = id
  Mat proj_base;     // carrier -> E        (projection to order 0)
  Mat prolong;       // E -> carrier        (k-linear jet prolongation)
  Mat incl_forms;    // Ω¹(E) -> carrier
  Mat rho;           // carrier -> Ω¹(E)    (retraction onto forms)
  TensorSpace forms;     // Ω¹ ⊗_A E
  Subspace relations;    // N(E) in plain coordinates
};

/// The order-2 defect operator on J¹(J¹X) whose kernel is the holonomic
/// 2-jet. First component lands in one-forms (its kernel cuts out the
/// semiholonomic 2-jet), second in two-forms.
struct EthOperator {
  ModulePtr base;
  TensorSpace one_forms;  // Ω¹ ⊗_A X
  TensorSpace two_forms;  // Ω² ⊗_A X
  Mat to_one_forms;       // J¹(J¹X) carrier -> Ω¹(X)
  Mat to_two_forms;       // J¹(J¹X) carrier -> Ω²(X)
  Mat full;               // vstack of the two components
  ModulePtr semidirect;   // Ω¹(X) ⊕ Ω²(X) with twisted left action
};

struct NonholTower {
  ModulePtr base;
  std::vector<Jet1> level;  // level[k] is the 1-jet over carrier(k)
  const ModulePtr& carrier(int k) const { return k == 0 ? base : level[size_t(k) - 1].carrier; }
  int order() const { return int(level.size()); }
};

struct SemiholLevel {
  ModulePtr carrier;
  Mat incl_nonhol;  // carrier -> nonholonomic carrier(n)
  Mat proj_prev;    // carrier -> previous semiholonomic carrier
  Mat prolong;      // base -> carrier
  Mat incl_tensor;  // T^n(E) -> carrier
  bool definitions_agree = true;  // equalizer == defect-kernel intersection
};
struct SemiholTower {
  ModulePtr base;
  TensorLadder tensor_powers;
  std::vector<SemiholLevel> level;
};

struct HolLevel {
  ModulePtr carrier;
  Mat incl_next;    // carrier -> J¹(previous carrier), n >= 1
  Mat proj_prev;    // carrier -> previous holonomic carrier
  Mat prolong;      // base -> carrier
  Mat incl_nonhol;  // carrier -> nonholonomic carrier(n)
  Mat to_semihol;   // carrier -> semiholonomic carrier(n)
  Mat incl_sym;     // S^n(E) -> carrier
};
struct HolTower {
  ModulePtr base;
  SymTower sym;
  std::vector<HolLevel> level;
};

struct SesquiLevel {
  ModulePtr carrier;
  Mat incl_next;       // carrier -> J¹(holonomic carrier(n-1))
  Mat proj_prev;       // carrier -> holonomic carrier(n-1)
  Mat prolong;         // base -> carrier
  Mat incl_nonhol;     // carrier -> nonholonomic carrier(n)
  Mat incl_omega_sym;  // Ω¹(S^{n-1}E) -> carrier
};
struct SesquiTower {
  ModulePtr base;
  std::vector<SesquiLevel> level;  // level[k] trivial for k <= 1
};

/// Uniform summary of a jet space, per flavor.
struct JetSpace {
  JetFlavor flavor;
  int order;
  ModulePtr base;
  ModulePtr carrier;
  Mat embed;    // carrier -> nonholonomic carrier(order)
  Mat prolong;  // base -> carrier
  std::vector<Mat> projections;  // nonholonomic: per position; otherwise one
};

struct JetExactness {
  JetFlavor flavor = JetFlavor::holonomic;
  int order = 0;
  int sub_dim = 0, mid_dim = 0, quot_dim = 0;
  SesFlags flags;
  bool right_flat_hypothesis = false;
  int coker_dim = 0;
  int obstruction_class_dim = -1;  // order 3 over the algebra: span of classes in H^{1,2}
};

/// Builds and caches jet towers of every flavor over one calculus (plus an
/// exterior algebra for the holonomic and sesquiholonomic flavors).
class JetContext {
 public:
  explicit JetContext(std::shared_ptr<const Calculus> c,
                      std::shared_ptr<const ExteriorAlgebra> ext = nullptr);

  const Calculus& calc() const { return *calc_; }
  const std::shared_ptr<const Calculus>& calc_ptr() const { return calc_; }
  bool has_exterior() const { return ext_ != nullptr; }
  const ExteriorAlgebra& ext() const;
  /// A as a module over itself; towers over this base get bimodule carriers.
  const ModulePtr& algebra_module() const { return regular_; }

  const Jet1& jet1(const ModulePtr& m);
  /// The functor J¹ on maps: J¹(f): J¹X -> J¹Y for an A-linear f: X -> Y.
  Mat jet1_of_map(const ModulePtr& x, const ModulePtr& y, const Mat& f);
  /// The lift J¹A -> Ω¹ of the differential.
  Mat dtilde();

  const NonholTower& nonholonomic(const ModulePtr& e, int order);
  Mat nh_proj_pos(const ModulePtr& e, int order, int pos);     // position projection
  Mat nh_proj_to(const ModulePtr& e, int order, int target);   // canonical iterate
  Mat nh_prolong(const ModulePtr& e, int order);

  struct NhDecomposition {
    Mat base_part;                // in E
    std::vector<Mat> form_parts;  // part m in Ω¹(J^(m-1)E), m = 1..n
  };
  NhDecomposition nh_decompose(const ModulePtr& e, int order, const Mat& xi);
  Mat nh_recompose(const ModulePtr& e, int order, const NhDecomposition& d);

  const EthOperator& eth(const ModulePtr& x);

  const SemiholTower& semiholonomic(const ModulePtr& e, int order);
  const HolTower& holonomic(const ModulePtr& e, int order);
  const SesquiTower& sesquiholonomic(const ModulePtr& e, int order);

  JetSpace jet_space(JetFlavor f, const ModulePtr& e, int order);

  /// l^{m,n}: J^{m+n}E -> J^m(J^nE).
  Mat l_split(const ModulePtr& e, int m, int n);

  JetExactness exactness_report(JetFlavor f, const ModulePtr& e, int order);

  /// Two-route check of the explicit order-2 presentation: the kernel-defined
  /// 2-jet equals S²(E) + A·j²(E) inside the nonholonomic carrier.
  bool two_jet_presentation_agrees(const ModulePtr& e);

  bool omega1_right_flat();

 private:
  const Jet1& jet1_impl(const ModulePtr& m);
  Mat defect_to_forms(const ModulePtr& e, int level);  // DI at a tower level

  std::shared_ptr<const Calculus> calc_;
  std::shared_ptr<const ExteriorAlgebra> ext_;
  ModulePtr regular_;
  std::map<const Module*, Jet1> jet1_cache_;
  std::map<const Module*, EthOperator> eth_cache_;
  std::map<const Module*, NonholTower> nonhol_cache_;
  std::map<const Module*, SemiholTower> semihol_cache_;
  std::map<const Module*, HolTower> hol_cache_;
  std::map<const Module*, SesquiTower> sesqui_cache_;
  std::map<std::tuple<const Module*, int, int>, Mat> nh_pos_cache_;
  std::map<std::tuple<const Module*, int, int>, Mat> l_split_cache_;
  std::optional<bool> omega1_right_flat_;
  std::optional<Mat> dtilde_;
};

}  // namespace ncjet
