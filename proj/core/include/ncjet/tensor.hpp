#pragma once

#include "ncjet/module.hpp"

namespace ncjet {

/// M ⊗_A N presented as a quotient of the plain k-tensor product of the
/// carriers. Basis pair (s,t) of M⊗N flattens to s*dim(N)+t. `proj` pushes a
/// plain tensor to the carrier, `sect` picks representatives (proj∘sect = id).
struct TensorSpace {
  ModulePtr carrier;
  Mat proj;  // (dim M * dim N) -> carrier dim
  Mat sect;  // carrier dim -> (dim M * dim N)
  int ldim = 0, rdim = 0;
  Subspace relations;  // span{ m.a ⊗ n - m ⊗ a.n }

  int plain_dim() const { return ldim * rdim; }
  /// Plain vector of a pure tensor.
  Mat pure(const Mat& m, const Mat& n) const { return Mat::kron(m, n); }
};

/// Tensor product over A. M must carry a right action and N a left action;
/// the carrier inherits the left action of M (when present) and the right
/// action of N (when present).
TensorSpace tensor_over_A(const Module& m, const Module& n);

}  // namespace ncjet
