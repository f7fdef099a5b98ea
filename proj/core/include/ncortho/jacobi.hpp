#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncortho/functional.hpp"
#include "ncortho/matrix.hpp"
#include "ncortho/words.hpp"

namespace ncortho {

/// Jacobi coefficients {A_{n,k}, B_{n,k}} of a three-term recurrence.
///
/// A family of depth d holds A_{n,k} (N^n x N^{n-1}) for n = 1..d and
/// B_{n,k} (N^n x N^n) for n = 0..d-1; the top block B_{d,k} is optional.
/// That is exactly the data fixed by moments of length <= 2d, with B_d
/// added when moments of length 2d+1 are known. Rows and columns follow
/// Word::rank(). The constructor checks shapes only; validate() checks
/// the algebraic constraints.
class AdmissibleFamily {
 public:
  /// `a[n-1][k-1]` = A_{n,k}; `b[n][k-1]` = B_{n,k}. Throws SchemaError on
  /// bad shapes or when b does not cover levels 0..d-1 (or 0..d).
  AdmissibleFamily(int alphabet_size, std::vector<std::vector<Matrix>> a,
                   std::vector<std::vector<Matrix>> b);

  int alphabet_size() const noexcept { return alphabet_size_; }
  int depth() const noexcept { return static_cast<int>(a_.size()); }
  /// Highest level n with B_n stored (depth or depth-1).
  int b_depth() const noexcept { return static_cast<int>(b_.size()) - 1; }
  bool has_b(int n) const noexcept { return n >= 0 && n <= b_depth(); }
  bool has_top_b() const noexcept { return b_depth() == depth(); }

  const Matrix& a(int n, int k) const;
  const Matrix& b(int n, int k) const;
  /// A_n = [A_{n,1} ... A_{n,N}], N^n x N^n.
  Matrix a_concat(int n) const;

  /// The first `depth` levels (B_depth kept if present).
  AdmissibleFamily truncated_to(int depth) const;
  /// Copy without the optional top block B_d.
  AdmissibleFamily without_top_b() const;

  /// Longest word whose moment depends only on stored blocks.
  std::size_t determined_length() const noexcept;

 private:
  int alphabet_size_;
  std::vector<std::vector<Matrix>> a_;
  std::vector<std::vector<Matrix>> b_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// B symmetric within `tol`; A_n upper triangular (strict lower part within
/// `tol`) with diagonal > `tol`.
ValidationReport validate(const AdmissibleFamily& f, double tol = 1e-12);

/// Finite section of J_k: levels 0..L, block tridiagonal with B_{n,k} on the
/// diagonal, A_{n,k} below and A*_{n,k} above.
struct TruncatedOperator {
  int letter;
  int level;
  Matrix matrix;
};

/// Throws DomainError when L > depth or B_L is not stored.
TruncatedOperator truncate(const AdmissibleFamily& f, int letter, int level);

/// ⟨J_σ e₀, e₀⟩ with J_σ = J_{i_1} ... J_{i_p}, evaluated on finite sections
/// at level min(floor(|σ|/2) + 1, d). Exact whenever |σ| <= determined_length().
double operator_moment(const AdmissibleFamily& f, const Word& sigma);

/// Moment table of the functional whose Jacobi family is f, for all words of
/// length <= 2n (requires n <= depth). The table is certified strictly
/// positive at degree n; failure throws NumericalError. `threads` > 1 splits
/// the evaluation across worker threads.
MomentFunctional favard_moments(const AdmissibleFamily& f, int n,
                                double tol = kDefaultTolerance, unsigned threads = 1);

/// Random admissible family: A_n = diag(U[0.5,2]) + strictly upper U[-1,1],
/// B_{n,k} = S + Sᵀ with S ~ U[-1,1].
AdmissibleFamily random_family(int alphabet_size, int depth, std::uint64_t seed,
                               bool with_top_b = true);

/// Max entrywise difference over the blocks both families store; infinity on
/// mismatched alphabets. `levels` limits the comparison to n <= levels.
double max_block_difference(const AdmissibleFamily& f, const AdmissibleFamily& g,
                            std::optional<int> levels = std::nullopt);

}  // namespace ncortho
