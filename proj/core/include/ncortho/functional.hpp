#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "ncortho/matrix.hpp"
#include "ncortho/ncpoly.hpp"
#include "ncortho/words.hpp"

namespace ncortho {

/// Unital moment table s_σ = φ(X_σ) for every word of length <= 2d.
///
/// The table is dense: a missing word is an error, never a silent zero.
/// Stored values satisfy s_{I(σ)} = s_σ exactly; input that is symmetric
/// only up to round-off is averaged onto both entries.
class MomentFunctional {
 public:
  /// Builds from an explicit table; throws SchemaError when an entry is
  /// missing, s_empty != 1, or s_{I(σ)} differs from s_σ beyond
  /// `symmetry_tol` (relative).
  static MomentFunctional from_table(int alphabet_size, int max_degree,
                                     const std::map<Word, double>& moments,
                                     double symmetry_tol = kDefaultTolerance);
  /// Evaluates `moment` on every word of length <= 2d.
  static MomentFunctional from_generator(int alphabet_size, int max_degree,
                                         const std::function<double(const Word&)>& moment,
                                         double symmetry_tol = kDefaultTolerance);
  /// Values in graded-index order; same validation as from_table.
  static MomentFunctional from_values(int alphabet_size, int max_degree,
                                      std::vector<double> values,
                                      double symmetry_tol = kDefaultTolerance);

  int alphabet_size() const noexcept { return alphabet_size_; }
  int max_degree() const noexcept { return max_degree_; }
  /// Longest word with a stored moment (2d).
  std::size_t max_word_length() const noexcept { return 2 * static_cast<std::size_t>(max_degree_); }

  /// s_σ; throws DomainError when |σ| > 2d.
  double moment(const Word& w) const;
  /// All moments in graded-index order.
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const MomentFunctional&, const MomentFunctional&) = default;

 private:
  MomentFunctional(int alphabet_size, int max_degree, std::vector<double> values);

  int alphabet_size_;
  int max_degree_;
  std::vector<double> values_;
};

/// Moments of length <= 2·degree, used for prefix comparisons.
MomentFunctional restrict_degree(const MomentFunctional& phi, int degree);

/// K_φ(α, β) = s_{I(α)β}.
double kernel_eval(const MomentFunctional& phi, const Word& alpha, const Word& beta);

/// Raw kernel values keyed by (α, β).
using KernelTable = std::map<std::pair<Word, Word>, double>;

/// K_φ on all pairs with |α| + |β| <= depth.
KernelTable kernel_table(const MomentFunctional& phi, std::size_t depth);

struct HankelViolation {
  int letter;
  Word sigma;
  Word tau;
  double left;   // K(kσ, τ)
  double right;  // K(σ, kτ)
};

struct HankelReport {
  bool ok = true;
  std::vector<HankelViolation> violations;
};

/// Checks K(kσ, τ) == K(σ, kτ) for every letter k and every pair with
/// |σ| + |τ| + 1 <= depth. Single letters generate the condition for all
/// prefixes α by induction. Throws SchemaError if a needed entry is absent.
HankelReport hankel_check(const KernelTable& raw, int alphabet_size, std::size_t depth);

struct GramReport {
  int degree = 0;
  Matrix gram;                  // indexed by graded_index
  std::vector<double> pivots;   // Cholesky pivots up to the first failure
  double min_pivot = 0.0;
  bool positive = false;
};

/// gram[α][β] = K_φ(β, α) = ⟨X_α, X_β⟩_φ over words of length <= n.
GramReport gram(const MomentFunctional& phi, int n, double tol = kDefaultTolerance);

bool is_strictly_positive(const MomentFunctional& phi, int n, double tol = kDefaultTolerance);

/// φ(p) = Σ c_σ s_σ.
double apply(const MomentFunctional& phi, const NcPolynomial& p);

/// ⟨p, q⟩_φ = φ(q⁺p).
double inner_product(const MomentFunctional& phi, const NcPolynomial& p, const NcPolynomial& q);

/// Free product of functionals, one per consecutive group of letters.
///
/// Part j acts on letters offset_j+1 .. offset_j+N_j of the combined
/// alphabet. A word splits into maximal segments of letters from one group
/// and s_σ is the product of the parts' moments on the segments. The degree
/// bound is the minimum over the parts. The result is unital and hermitian
/// but in general not strictly positive.
MomentFunctional functional_free_product(std::span<const MomentFunctional> parts);

}  // namespace ncortho
