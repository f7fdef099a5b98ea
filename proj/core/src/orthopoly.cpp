#include "ncortho/orthopoly.hpp"

#include <cmath>
#include <limits>

#include "linalg.hpp"
#include "ncortho/errors.hpp"

namespace ncortho {
namespace {

Eigen::Index upto(int N, int n) {
  return static_cast<Eigen::Index>(words_up_to(N, static_cast<std::size_t>(n)));
}

Eigen::Index level_offset(int N, int n) { return n == 0 ? 0 : upto(N, n - 1); }

Eigen::Index level_size(int N, int n) {
  return static_cast<Eigen::Index>(words_of_length(N, static_cast<std::size_t>(n)));
}

// [⟨X_k φ_τ, φ_σ⟩] for |σ| = row_level, |τ| = col_level, computed as
// C_σ K C_τᵀ with K[β][γ] = s_{I(β) k γ}.
Matrix multiplication_block(const OrthonormalBasis& basis, const MomentFunctional& phi, int k,
                            int row_level, int col_level) {
  const int N = basis.alphabet_size();
  const Eigen::Index rows_upto = upto(N, row_level);
  const Eigen::Index cols_upto = upto(N, col_level);
  Matrix kernel(rows_upto, cols_upto);
  for (Eigen::Index i = 0; i < rows_upto; ++i) {
    const Word beta = word_from_graded_index(N, static_cast<std::size_t>(i));
    const Word left = involute(beta).append(k);
    for (Eigen::Index j = 0; j < cols_upto; ++j) {
      kernel(i, j) = phi.moment(left * word_from_graded_index(N, static_cast<std::size_t>(j)));
    }
  }
  const Matrix& c = basis.coefficients();
  const Matrix c_rows = c.block(level_offset(N, row_level), 0, level_size(N, row_level), rows_upto);
  const Matrix c_cols = c.block(level_offset(N, col_level), 0, level_size(N, col_level), cols_upto);
  return c_rows * kernel * c_cols.transpose();
}

}  // namespace

OrthonormalBasis::OrthonormalBasis(int alphabet_size, int depth, Matrix coefficients)
    : alphabet_size_(alphabet_size), depth_(depth), coeffs_(std::move(coefficients)) {
  const Eigen::Index m = upto(alphabet_size, depth);
  if (coeffs_.rows() != m || coeffs_.cols() != m) {
    throw SchemaError("basis coefficient matrix must be " + std::to_string(m) + "x" +
                      std::to_string(m));
  }
}

double OrthonormalBasis::coefficient(const Word& alpha, const Word& beta) const {
  if (alpha.alphabet_size() != alphabet_size_ || beta.alphabet_size() != alphabet_size_) {
    throw DomainError("word over the wrong alphabet");
  }
  if (alpha.length() > static_cast<std::size_t>(depth_)) {
    throw DomainError("φ_" + alpha.to_string() + " beyond basis depth " + std::to_string(depth_));
  }
  if (beta.length() > alpha.length()) return 0.0;
  return coeffs_(static_cast<Eigen::Index>(alpha.graded_index()),
                 static_cast<Eigen::Index>(beta.graded_index()));
}

Matrix OrthonormalBasis::block(int row_level, int col_level) const {
  if (row_level < 0 || col_level < 0 || row_level > depth_ || col_level > depth_) {
    throw DomainError("coefficient block beyond basis depth");
  }
  return coeffs_.block(level_offset(alphabet_size_, row_level), level_offset(alphabet_size_, col_level),
                       level_size(alphabet_size_, row_level), level_size(alphabet_size_, col_level));
}

NcPolynomial OrthonormalBasis::polynomial(const Word& alpha) const {
  if (alpha.length() > static_cast<std::size_t>(depth_)) {
    throw DomainError("φ_" + alpha.to_string() + " beyond basis depth " + std::to_string(depth_));
  }
  NcPolynomial p(alphabet_size_);
  const auto row = static_cast<Eigen::Index>(alpha.graded_index());
  for (Eigen::Index j = 0; j <= row; ++j) {
    p.add_term(word_from_graded_index(alphabet_size_, static_cast<std::size_t>(j)), coeffs_(row, j));
  }
  return p;
}

NcPolynomial OrthonormalBasis::monic(const Word& alpha) const {
  return polynomial(alpha) * (1.0 / coefficient(alpha, alpha));
}

OrthonormalBasis orthonormalize(const MomentFunctional& phi, int depth, double tol) {
  const auto report = gram(phi, depth, tol);
  if (!report.positive) {
    throw NumericalError("functional not strictly positive at this depth (" + std::to_string(depth) +
                         "): Gram pivot " + std::to_string(report.min_pivot) + " at word " +
                         word_from_graded_index(phi.alphabet_size(), report.pivots.size() - 1).to_string());
  }
  const auto chol = detail::cholesky_upper(report.gram, tol);
  Matrix coeffs = detail::upper_inverse(chol.upper).transpose();
  return OrthonormalBasis(phi.alphabet_size(), depth, std::move(coeffs));
}

double coefficient_oracle(const MomentFunctional& phi, const Word& alpha, const Word& beta) {
  if (compare(beta, alpha) == Ordering::greater) {
    throw DomainError("coefficient a_{α,β} needs β ⪯ α");
  }
  const int N = phi.alphabet_size();
  const auto m = static_cast<Eigen::Index>(alpha.graded_index()) + 1;
  Matrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Word wi = word_from_graded_index(N, static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < m; ++j) {
      g(i, j) = kernel_eval(phi, wi, word_from_graded_index(N, static_cast<std::size_t>(j)));
    }
  }
  const double d_alpha = g.partialPivLu().determinant();
  const double d_prev = m == 1 ? 1.0 : Matrix(g.topLeftCorner(m - 1, m - 1)).partialPivLu().determinant();
  if (!(d_alpha > 0.0) || !(d_prev > 0.0)) {
    throw NumericalError("singular leading Gram minor at word " + alpha.to_string());
  }
  const auto skip = static_cast<Eigen::Index>(beta.graded_index());
  double minor_det = 1.0;
  if (m > 1) {
    Matrix minor(m - 1, m - 1);
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
      for (Eigen::Index j = 0, col = 0; j < m; ++j) {
        if (j == skip) continue;
        minor(i, col++) = g(i, j);
      }
    }
    minor_det = minor.partialPivLu().determinant();
  }
  const double sign = ((m - 1 + skip) % 2 == 0) ? 1.0 : -1.0;
  return sign * minor_det / std::sqrt(d_prev * d_alpha);
}

AdmissibleFamily extract_recurrence(const OrthonormalBasis& basis, const MomentFunctional& phi,
                                    double tol) {
  const int N = basis.alphabet_size();
  const int depth = basis.depth();
  if (phi.alphabet_size() != N) throw DomainError("basis and functional over different alphabets");
  if (depth < 1) throw DomainError("recurrence extraction needs basis depth >= 1");
  if (depth > phi.max_degree()) throw DomainError("basis deeper than the functional's degree bound");
  const bool top_b = 2 * static_cast<std::size_t>(depth) + 1 <= phi.max_word_length();
  std::vector<std::vector<Matrix>> a(static_cast<std::size_t>(depth));
  std::vector<std::vector<Matrix>> b(static_cast<std::size_t>(top_b ? depth + 1 : depth));
  for (int k = 1; k <= N; ++k) {
    for (int n = 1; n <= depth; ++n) {
      a[static_cast<std::size_t>(n - 1)].push_back(multiplication_block(basis, phi, k, n, n - 1));
    }
    for (std::size_t n = 0; n < b.size(); ++n) {
      Matrix blk = multiplication_block(basis, phi, k, static_cast<int>(n), static_cast<int>(n));
      b[n].push_back(0.5 * (blk + blk.transpose()));
    }
  }
  AdmissibleFamily family(N, std::move(a), std::move(b));
  const double residual = three_term_residual(family, depth, [&](int n) {
    std::vector<NcPolynomial> row;
    for (const Word& w : enumerate(N, static_cast<std::size_t>(n))) row.push_back(basis.polynomial(w));
    return row;
  });
  if (!(residual <= tol)) {
    throw NumericalError("three-term residual " + std::to_string(residual) +
                         " exceeds tolerance: inconsistent basis/functional pair");
  }
  return family;
}

Matrix a_matrix_from_coefficients(const OrthonormalBasis& basis, int n) {
  if (n < 1 || n > basis.depth()) throw DomainError("A_n needs 1 <= n <= basis depth");
  const Matrix c_n = basis.block(n, n);
  const Matrix c_prev = basis.block(n - 1, n - 1);
  const Matrix rhs = direct_sum_power(c_prev.transpose(), static_cast<std::size_t>(basis.alphabet_size()));
  return c_n.transpose().triangularView<Eigen::Upper>().solve(rhs);
}

}  // namespace ncortho
