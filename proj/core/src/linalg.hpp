#pragma once

#include <cstddef>
#include <vector>

#include "ncortho/matrix.hpp"

namespace ncortho::detail {

/// M = RᵀR with R upper triangular. Pivots are the squared diagonal entries
/// of R; the factorization stops at the first pivot <= tol.
struct Cholesky {
  Matrix upper;
  std::vector<double> pivots;
  bool ok = false;
  std::size_t failed_at = 0;
  double min_pivot() const;
};

Cholesky cholesky_upper(const Matrix& m, double tol);

/// Inverse of an upper triangular matrix with nonzero diagonal.
Matrix upper_inverse(const Matrix& r);

}  // namespace ncortho::detail
