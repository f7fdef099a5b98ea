#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ncortho {

double max_abs_difference(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

Matrix direct_sum_power(const Matrix& a, std::size_t copies) {
  const auto n = static_cast<Eigen::Index>(copies);
  Matrix out = Matrix::Zero(a.rows() * n, a.cols() * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.block(i * a.rows(), i * a.cols(), a.rows(), a.cols()) = a;
  }
  return out;
}

namespace detail {

double Cholesky::min_pivot() const {
  if (pivots.empty()) return std::numeric_limits<double>::infinity();
  return *std::min_element(pivots.begin(), pivots.end());
}

Cholesky cholesky_upper(const Matrix& m, double tol) {
  const Eigen::Index n = m.rows();
  Cholesky out;
  out.upper = Matrix::Zero(n, n);
  out.pivots.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = m(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= out.upper(k, j) * out.upper(k, j);
    out.pivots.push_back(pivot);
    if (!(pivot > tol)) {
      out.failed_at = static_cast<std::size_t>(j);
      return out;
    }
    const double diag = std::sqrt(pivot);
    out.upper(j, j) = diag;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double v = m(j, i);
      for (Eigen::Index k = 0; k < j; ++k) v -= out.upper(k, j) * out.upper(k, i);
      out.upper(j, i) = v / diag;
    }
  }
  out.ok = true;
  return out;
}

Matrix upper_inverse(const Matrix& r) {
  return r.triangularView<Eigen::Upper>().solve(Matrix::Identity(r.rows(), r.cols()));
}

}  // namespace detail
}  // namespace ncortho
