#pragma once

#include <Eigen/Dense>

namespace ncortho {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Global default tolerance for positivity pivots and recurrence residuals.
inline constexpr double kDefaultTolerance = 1e-10;

/// Max |a_ij - b_ij|; infinity when shapes differ.
double max_abs_difference(const Matrix& a, const Matrix& b);

/// A ⊕ A ⊕ ... ⊕ A (`copies` diagonal blocks).
Matrix direct_sum_power(const Matrix& a, std::size_t copies);

}  // namespace ncortho
