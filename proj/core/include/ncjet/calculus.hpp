#pragma once

#include "ncjet/tensor.hpp"

#include <optional>

namespace ncjet {

/// First-order differential calculus: a bimodule of one-forms with a
/// differential d satisfying the Leibniz rule and A·dA = Ω¹. Every calculus
/// stores its presentation as a quotient of the universal calculus: the
/// kernel subbimodule, the quotient map p and a chosen section.
struct Calculus {
  AlgebraPtr alg;
  ModulePtr omega1;  // bimodule carrier of one-forms
  Mat d;             // alg->dim -> omega1->dim, k-linear

  // Universal presentation. The universal carrier has its own coordinates;
  // `incl_univ` embeds it into A⊗A (flat index i*dim+j for e_i⊗e_j) and
  // `retr_univ` is a retraction with retr∘incl = id.
  ModulePtr univ;  // bimodule carrier of the universal one-forms
  Mat incl_univ;   // univ.dim -> dim²
  Mat retr_univ;   // dim² -> univ.dim
  Mat d_univ;      // alg->dim -> univ.dim
  Subspace relation_space;  // N ⊆ k^{univ.dim}
  Mat p;                    // univ.dim -> omega1.dim, surjective
  Mat p_sect;               // omega1.dim -> univ.dim, p∘p_sect = id

  bool is_universal() const { return relation_space.dim() == 0; }
  /// d of an algebra element.
  Mat d_of(const Mat& a) const { return d * a; }
};

/// Ω¹_u = ker(multiplication A⊗A → A), d_u(a) = 1⊗a − a⊗1.
Calculus universal_calculus(const AlgebraPtr& a);

/// Quotient of the universal calculus by the subbimodule generated by the
/// given elements of the universal carrier (universal coordinates).
Calculus quotient_calculus(const Calculus& universal, const std::vector<Mat>& n_generators);

struct TerminalCalculus {
  Calculus calc;
  std::vector<Subspace> per_element_kernels;  // N_f in universal coordinates
  // Singleton S = {f} extras: the ideal picture Ω¹_f ⊆ A with d_f = [f,·].
  std::optional<SubmoduleCarrier> ideal_carrier;
  Mat ideal_d;  // alg->dim -> ideal carrier dim (valid when ideal_carrier set)
};

/// S-terminal calculus: quotient by N_S = ⋂_{f∈S} ker(n⊗m ↦ n f m).
TerminalCalculus terminal_calculus(const AlgebraPtr& a, const std::vector<Mat>& elements);

struct CalculusReport {
  bool leibniz = true;
  bool surjective = true;
  int span_rank = 0;
  std::vector<std::string> failures;
  bool pass() const { return leibniz && surjective; }
};
CalculusReport validate_calculus(const Calculus& c);

/// Left-freeness certificate: coordinates of a·θ_t for all basis a, t span.
struct FreeBasisCheck {
  bool free = false;
  Mat expand;  // omega1.dim x (rank * alg.dim): columns are e_i·θ_t
};
FreeBasisCheck left_free_on(const Calculus& c, const std::vector<Mat>& basis);

struct StructureRelations {
  bool ok = false;
  std::string error;
  // d_coeffs[x][t] = left coefficient of θ_t in dx (algebra element coords)
  std::vector<std::vector<Mat>> d_coeffs;
  // right_form[a][t] = right coefficients: a·θ_t = Σ_s θ_s·(coeff s), when the
  // right-hand expansion is solvable; empty otherwise
  bool right_expansion_ok = false;
  std::vector<std::vector<std::vector<Mat>>> right_form;
};
/// Expresses each dx and each a·θ over a left-free basis θ of Ω¹.
StructureRelations structure_relations(const Calculus& c, const std::vector<Mat>& free_basis);

/// The unique calculus morphism src → tgt (exists iff N_src ⊆ N_tgt).
std::optional<Mat> calculus_morphism(const Calculus& src, const Calculus& tgt);

}  // namespace ncjet
