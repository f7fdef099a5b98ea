#pragma once

#include <cstddef>

#include "ncortho/functional.hpp"
#include "ncortho/jacobi.hpp"
#include "ncortho/matrix.hpp"
#include "ncortho/ncpoly.hpp"
#include "ncortho/words.hpp"

namespace ncortho {

/// Orthonormal polynomials φ_α = Σ_{β ⪯ α} a_{α,β} X_β for all |α| <= depth.
///
/// Coefficients are stored as one lower-triangular matrix indexed by
/// Word::graded_index(): row α, column β.
class OrthonormalBasis {
 public:
  OrthonormalBasis(int alphabet_size, int depth, Matrix coefficients);

  int alphabet_size() const noexcept { return alphabet_size_; }
  int depth() const noexcept { return depth_; }
  const Matrix& coefficients() const noexcept { return coeffs_; }

  /// a_{α,β}; zero when α ≺ β.
  double coefficient(const Word& alpha, const Word& beta) const;
  /// [a_{α,β}] with |α| = row_level, |β| = col_level.
  Matrix block(int row_level, int col_level) const;
  NcPolynomial polynomial(const Word& alpha) const;
  /// Monic rescaling p_α = φ_α / a_{α,α}.
  NcPolynomial monic(const Word& alpha) const;

 private:
  int alphabet_size_;
  int depth_;
  Matrix coeffs_;
};

/// Gram–Schmidt in graded-lex order via Gram = RᵀR: coefficient rows are
/// the rows of R⁻ᵀ. Throws NumericalError when a pivot is <= tol.
OrthonormalBasis orthonormalize(const MomentFunctional& phi, int depth,
                                double tol = kDefaultTolerance);

/// Determinant formula
///   a_{α,β} = ± det[K(α',β')]_{α' ≺ α, β' ⪯ α, β' ≠ β} / sqrt(D_{α-1} D_α),
/// with the cofactor sign of column β and D_α the leading Gram minor over
/// words ⪯ α. Slow; meant as an independent check of orthonormalize().
double coefficient_oracle(const MomentFunctional& phi, const Word& alpha, const Word& beta);

/// A_{n+1,k}[σ,τ] = ⟨X_k φ_τ, φ_σ⟩ and B_{n,k}[σ,τ] = ⟨X_k φ_τ, φ_σ⟩.
///
/// Produces A_1..A_D and B_0..B_{D-1} for a basis of depth D, plus B_D when
/// φ stores moments of length 2D+1. The three-term residual
/// X_kΦ_n − Φ_{n+1}A_{n+1,k} − Φ_nB_{n,k} − Φ_{n−1}A*_{n,k} must vanish
/// coefficientwise within tol, else NumericalError.
AdmissibleFamily extract_recurrence(const OrthonormalBasis& basis, const MomentFunctional& phi,
                                    double tol = kDefaultTolerance);

/// A_n from the coefficients alone: A_n = C_n⁻ᵀ (C_{n−1}ᵀ)^{⊕N} where
/// C_m = [a_{α,β}]_{|α|=|β|=m}.
Matrix a_matrix_from_coefficients(const OrthonormalBasis& basis, int n);

/// max |X_kΦ_n − Φ_{n+1}A_{n+1,k} − Φ_nB_{n,k} − Φ_{n−1}A*_{n,k}| over all
/// coefficients, letters and n < levels, with Φ_n given by `rows(n)`.
template <typename RowSource>
double three_term_residual(const AdmissibleFamily& f, int levels, RowSource&& rows);

}  // namespace ncortho

#include "ncortho/detail/three_term.hpp"
