#pragma once

#include "ncjet/jets.hpp"

namespace ncjet {

struct OrderCertificate {
  JetFlavor flavor = JetFlavor::holonomic;
  int order = 0;
  Mat lift;                    // jet carrier -> F, left A-linear
  int solution_space_dim = 0;  // affine freedom of the lift
};

struct DiffOp {
  ModulePtr dom, cod;
  Mat m;
  std::optional<OrderCertificate> certificate;
};

/// Solves for an A-linear lift through the order-n prolongation of the given
/// flavor. For n = 1 the kernel-vanishing criterion is cross-checked and the
/// lift is verified unique.
std::optional<OrderCertificate> order_at_most(JetContext& ctx, const Mat& delta,
                                              const ModulePtr& e, const ModulePtr& f, int n,
                                              JetFlavor flavor);

/// Minimal order scan; returns -1 when the order exceeds max_n. Stops early
/// once the jet tower stabilizes (the canonical projection turns bijective).
int operator_order(JetContext& ctx, const Mat& delta, const ModulePtr& e, const ModulePtr& f,
                   JetFlavor flavor, int max_n);

/// Σ n_i Δ(e_i) = 0 on a basis of the 1-jet relation space.
bool first_order_criterion(JetContext& ctx, const Mat& delta, const ModulePtr& e,
                           const ModulePtr& f);

struct ConnectionSpace {
  bool exists = false;
  int affine_dim = 0;
  Mat nabla;      // E -> Ω¹(E)
  Mat splitting;  // J¹E -> Ω¹(E), left split of the 1-jet sequence
};
/// Parametrizes left A-linear splittings of the 1-jet sequence of E.
ConnectionSpace connections(JetContext& ctx, const ModulePtr& e);
Mat splitting_from_connection(JetContext& ctx, const ModulePtr& e, const Mat& nabla);
Mat connection_from_splitting(JetContext& ctx, const ModulePtr& e, const Mat& splitting);

/// Composition with the certified lift through l^{m,n} (holonomic flavor).
DiffOp compose_ops(JetContext& ctx, const DiffOp& second, const DiffOp& first);

/// Holonomic functor on maps, J^m(f): J^m X -> J^m Y.
Mat holonomic_of_map(JetContext& ctx, const ModulePtr& x, const ModulePtr& y, const Mat& f,
                     int m);

struct OperatorSpace {
  std::vector<int> dims;   // dim Diff^k(E,F) for k = 0..n
  std::vector<Mat> basis;  // basis of Diff^n as k-linear maps
};
OperatorSpace operator_space(JetContext& ctx, const ModulePtr& e, const ModulePtr& f, int n);

/// Bimodule inner product on T² for a calculus whose one-forms are left-free
/// on `theta`; values[s][t] = (θ_s, θ_t) as an algebra element.
Mat inner_product_from_values(JetContext& ctx, const ExteriorAlgebra& ext,
                              const std::vector<Mat>& theta,
                              const std::vector<std::vector<Mat>>& values);

struct LaplacianCheck {
  bool inner_product_bilinear = false;
  bool metric_symmetric = false;  // metric lies in S²
  bool identity_holds = false;    // Δ(ab) = Δ(a)b + aΔ(b) + 2(da,db) on all pairs
  bool pass() const { return inner_product_bilinear && metric_symmetric && identity_holds; }
};
LaplacianCheck laplacian_check(JetContext& ctx, const ExteriorAlgebra& ext, const Mat& metric_t2,
                               const Mat& inner_product, const Mat& delta_op);

/// The operator-algebra verification table for the quaternion calculus
/// quotiented by the {i,j}-terminal relations.
struct QuaternionOperatorReport {
  std::vector<int> diff_dims;  // dim Diff^n for n = 0..3
  bool basis_spans = false;    // R_q, ∂_p∘R_q, ∂_i∂_j∘R_q span Diff²
  bool partial_squares_vanish = false;
  bool partial_anticommute = false;
  bool anticom_unit = false;    // {∂_i,R_i} = {∂_j,R_j} = 1
  bool anticom_zero = false;    // {∂_i,R_j} = {∂_j,R_i} = 0
  bool commutators_match = false;  // [∂_j,R_k] = R_i, [∂_i,R_k] = -R_j
  int order_L_i = -1, order_L_j = -1, order_L_k = -1;
  int order_partial_i = -1, order_partial_j = -1, order_laplacian = -1;
  bool laplacian_is_bracket = false;  // Δ = 2 ∂_j∘∂_i = [∂_j, ∂_i]
  LaplacianCheck laplacian;
  bool pass() const;
};
QuaternionOperatorReport quaternion_operator_report(JetContext& ctx);

}  // namespace ncjet
