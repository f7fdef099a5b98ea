#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ncortho/jacobi.hpp"
#include "ncortho/ncpoly.hpp"
#include "ncortho/words.hpp"

namespace ncortho {

/// x φ_n = a_{n+1} φ_{n+1} + b_n φ_n + a_n φ_{n-1}, φ_0 = 1, φ_{-1} = 0.
struct OneDimRecurrence {
  std::string label;
  std::vector<double> a;  // a_1, a_2, ...
  std::vector<double> b;  // b_0, b_1, ...

  /// Largest n for which φ_n is determined (needs a_1..a_n, b_0..b_{n-1}).
  std::size_t available_degree() const noexcept;
  /// Throws DomainError unless every stored a_n is finite and positive.
  void validate() const;
};

enum class ClassicalKind { hermite, chebyshev_t, legendre, laguerre };

/// Orthonormal recurrence coefficients a_1..a_{n_max}, b_0..b_{n_max}.
/// `alpha` is only read for Laguerre and must exceed -1.
OneDimRecurrence classical_coefficients(ClassicalKind kind, int n_max, double alpha = 0.0);

/// Power-basis coefficients of φ_0..φ_n: row m holds c_0..c_m of φ_m.
std::vector<std::vector<double>> one_dim_polynomials(const OneDimRecurrence& rec, int n);

/// Admissible family of depth d from one recurrence per letter:
///   (B_{n,k})_{τ,τ} = b_{n_k(τ),k},     |τ| = n,
///   (A_{n,k})_{kτ,τ} = a_{n_k(τ)+1,k},  |τ| = n-1,
/// every other entry zero; n_k is the leading run of k. B_d is included when
/// every recurrence stores b_d.
AdmissibleFamily build(std::span<const OneDimRecurrence> recurrences, int depth);

/// φ_σ = φ_{e_1,k_1}(X_{k_1}) ⋯ φ_{e_p,k_p}(X_{k_p}) for σ = k_1^{e_1} ⋯ k_p^{e_p}.
NcPolynomial product_polynomial(std::span<const OneDimRecurrence> recurrences, const Word& sigma);

struct ThreeTermReport {
  double max_residual;
  bool ok;
};

/// Checks X_kΦ_n = Φ_{n+1}A_{n+1,k} + Φ_nB_{n,k} + Φ_{n-1}A*_{n,k} for n < d
/// with Φ built from product_polynomial and the matrices from build().
ThreeTermReport verify_three_term(std::span<const OneDimRecurrence> recurrences, int depth,
                                  double tol = 1e-12);

}  // namespace ncortho
