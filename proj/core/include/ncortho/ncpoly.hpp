#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "ncortho/words.hpp"

namespace ncortho {

/// Polynomial in N non-commuting indeterminates with real coefficients,
/// P = Σ c_σ X_σ. Terms are grouped by degree so homogeneous components can
/// be taken without scanning. Zero coefficients are never stored.
class NcPolynomial {
 public:
  using TermMap = std::map<Word, double>;

  explicit NcPolynomial(int alphabet_size);

  static NcPolynomial constant(int alphabet_size, double value);
  static NcPolynomial monomial(const Word& w, double coeff = 1.0);
  /// X_k.
  static NcPolynomial variable(int alphabet_size, int letter);

  int alphabet_size() const noexcept { return alphabet_size_; }
  bool is_zero() const noexcept { return by_degree_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(by_degree_.size()) - 1; }

  double coefficient(const Word& w) const;
  /// Adds c to the coefficient of w, dropping the term if it becomes 0.0.
  void add_term(const Word& w, double coeff);

  /// P_k, the part of degree exactly k.
  NcPolynomial homogeneous(std::size_t k) const;
  /// Terms of degree k (empty map when there are none).
  const TermMap& terms_of_degree(std::size_t k) const;
  /// All terms in graded-lex order.
  std::vector<std::pair<Word, double>> terms() const;
  std::size_t term_count() const noexcept;
  double max_abs_coefficient() const noexcept;

  NcPolynomial& operator+=(const NcPolynomial& other);
  NcPolynomial& operator-=(const NcPolynomial& other);
  NcPolynomial& operator*=(double s);

  friend NcPolynomial operator+(NcPolynomial a, const NcPolynomial& b) { return a += b; }
  friend NcPolynomial operator-(NcPolynomial a, const NcPolynomial& b) { return a -= b; }
  friend NcPolynomial operator*(NcPolynomial a, double s) { return a *= s; }
  friend NcPolynomial operator*(double s, NcPolynomial a) { return a *= s; }
  friend NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b);
  friend bool operator==(const NcPolynomial&, const NcPolynomial&) = default;

 private:
  void trim();
  void check_alphabet(int other) const;

  int alphabet_size_;
  std::vector<TermMap> by_degree_;
};

/// Bilinear extension of word concatenation.
NcPolynomial multiply(const NcPolynomial& p, const NcPolynomial& q);

/// The + involution: the term at σ moves to I(σ).
NcPolynomial adjoint(const NcPolynomial& p);

inline int degree(const NcPolynomial& p) noexcept { return p.degree(); }

}  // namespace ncortho
