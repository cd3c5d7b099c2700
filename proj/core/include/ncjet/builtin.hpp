#pragma once

#include "ncjet/algebra.hpp"

namespace ncjet {

/// The quaternions over Q: basis {1,i,j,k}, i^2=j^2=k^2=ijk=-1.
AlgebraPtr quaternions();

/// k[t]/(t^2): basis {1,t}.
AlgebraPtr dual_numbers();

/// 2x2 upper-triangular matrices: basis {e11,e12,e22}.
AlgebraPtr upper_triangular2();

}  // namespace ncjet
