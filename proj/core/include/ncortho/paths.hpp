#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncortho/functional.hpp"
#include "ncortho/jacobi.hpp"
#include "ncortho/matrix.hpp"
#include "ncortho/words.hpp"

namespace ncortho {

enum class StepKind { level, letter_switch, rise, fall };

const char* to_string(StepKind kind) noexcept;

/// (t, k, m): t advancing steps taken, letter plane k, height m.
struct LatticePoint {
  int t;
  int letter;
  int height;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

struct Step {
  StepKind kind;
  LatticePoint from;
  LatticePoint to;
  friend bool operator==(const Step&, const Step&) = default;
};

/// A path in ℳ_σ. Advancing steps (level/rise/fall) are read from the last
/// block of σ to the first; letter switches sit between blocks.
struct LatticePath {
  std::vector<Step> steps;
  std::size_t advancing_length() const noexcept;
  int max_height() const noexcept;
  friend bool operator==(const LatticePath&, const LatticePath&) = default;
};

/// Classical Motzkin number via M_{n+1} = M_n + Σ_j M_j M_{n-1-j}.
std::uint64_t motzkin_number(int n);

/// (1/n) Σ_k C(n,k) C(n-k,k-1) as printed in the source formula; it equals
/// M_{n-1}, not M_n. Kept to pin that discrepancy.
double motzkin_printed_formula(int n);

/// Longest word for which enumerate_paths materializes the path list.
inline constexpr std::size_t kMaxMaterializedPathLength = 8;

/// Every path of ℳ_σ, explicitly, in depth-first order (level < rise < fall).
std::vector<LatticePath> enumerate_paths(const Word& sigma,
                                         std::size_t max_length = kMaxMaterializedPathLength);

/// |ℳ_σ| by a height-indexed transfer count; no path list is built.
std::uint64_t count_paths(const Word& sigma);

/// w(p) = w(step l) ⋯ w(step 1): level at height m weighs B_{m,k}, a rise
/// from m weighs A_{m+1,k}, a fall from m weighs A*_{m,k}, a switch weighs I.
double path_weight(const AdmissibleFamily& f, const LatticePath& p);

/// s_σ = Σ_{p ∈ ℳ_σ} w(p), summed over a depth-first walk of the paths;
/// s_empty = 1. Requires |σ| <= f.determined_length().
double moments_from_paths(const AdmissibleFamily& f, const Word& sigma);

/// Moment table up to length 2n from moments_from_paths, certified strictly
/// positive at degree n like favard_moments.
MomentFunctional moment_table_from_paths(const AdmissibleFamily& f, int n,
                                         double tol = kDefaultTolerance);

struct DistinguishedPath {
  LatticePath path;
  /// Product of step weights, leftmost factor = last step, e.g.
  /// "A*_{1,1} A*_{2,1} A_{2,1} A_{1,1}".
  std::string weight_expression;
};

/// The unique path of maximal height: n rises then n falls, with one level
/// step at height n in between when |σ| = 2n+1 (weight B_{n,i(n+1)}).
DistinguishedPath distinguished_path(const Word& sigma);

/// Σ_{p ∈ ℳ*_σ} w(p) where ℳ*_σ = ℳ_σ minus the distinguished path. Blocks
/// that only the distinguished path touches (A_n for |σ| = 2n, B_n for
/// |σ| = 2n+1) are never read, so they may be absent from f.
double sum_excluding_distinguished(const AdmissibleFamily& f, const Word& sigma);

/// Ã_n = A_n A_{n-1}^{⊕N} ⋯ A_1^{⊕N^{n-1}} (Ã_0 = [1]). Column τ equals
/// A_{n,τ_1} A_{n-1,τ_2} ⋯ A_{1,τ_n}.
Matrix tilde_a(const AdmissibleFamily& f, int n);

/// Jacobi coefficients recovered from moments level by level:
///   A_nᵀA_n = (T⁻ᵀ)([K_φ(σ,τ)]_n − [Σ_{ℳ*_{I(σ)τ}} w]) T⁻¹,  T = Ã_{n-1}^{⊕N},
///   B_{n,k} = Ã_n⁻ᵀ([s_{I(σ)kτ}] − [Σ_{ℳ*_{I(σ)kτ}} w]) Ã_n⁻¹,  |σ| = |τ| = n,
/// with A_n the upper Cholesky factor and B_{0,k} = s_k. Returns a family of
/// depth n_max; B_{n_max} is included when φ stores moments of length
/// 2n_max+1. Throws NumericalError when a pivot is <= tol.
AdmissibleFamily jacobi_from_moments(const MomentFunctional& phi, int n_max,
                                     double tol = kDefaultTolerance);

}  // namespace ncortho
