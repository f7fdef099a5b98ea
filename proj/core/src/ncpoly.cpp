#include "ncortho/ncpoly.hpp"

#include <algorithm>
#include <cmath>

#include "ncortho/errors.hpp"

namespace ncortho {
namespace {
const NcPolynomial::TermMap kNoTerms;
}

NcPolynomial::NcPolynomial(int alphabet_size) : alphabet_size_(alphabet_size) {
  if (alphabet_size < 1) throw DomainError("alphabet size must be positive");
}

NcPolynomial NcPolynomial::constant(int alphabet_size, double value) {
  NcPolynomial p(alphabet_size);
  p.add_term(Word(alphabet_size), value);
  return p;
}

NcPolynomial NcPolynomial::monomial(const Word& w, double coeff) {
  NcPolynomial p(w.alphabet_size());
  p.add_term(w, coeff);
  return p;
}

NcPolynomial NcPolynomial::variable(int alphabet_size, int letter) {
  return monomial(Word(alphabet_size, {letter}));
}

void NcPolynomial::check_alphabet(int other) const {
  if (other != alphabet_size_) {
    throw DomainError("polynomials over different alphabets (" +
                      std::to_string(alphabet_size_) + " vs " + std::to_string(other) + ")");
  }
}

double NcPolynomial::coefficient(const Word& w) const {
  check_alphabet(w.alphabet_size());
  if (w.length() >= by_degree_.size()) return 0.0;
  const auto& level = by_degree_[w.length()];
  auto it = level.find(w);
  return it == level.end() ? 0.0 : it->second;
}

void NcPolynomial::add_term(const Word& w, double coeff) {
  check_alphabet(w.alphabet_size());
  if (coeff == 0.0) return;
  if (w.length() >= by_degree_.size()) by_degree_.resize(w.length() + 1);
  auto& level = by_degree_[w.length()];
  auto [it, inserted] = level.try_emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) level.erase(it);
  }
  trim();
}

void NcPolynomial::trim() {
  while (!by_degree_.empty() && by_degree_.back().empty()) by_degree_.pop_back();
}

NcPolynomial NcPolynomial::homogeneous(std::size_t k) const {
  NcPolynomial out(alphabet_size_);
  if (k < by_degree_.size() && !by_degree_[k].empty()) {
    out.by_degree_.resize(k + 1);
    out.by_degree_[k] = by_degree_[k];
  }
  return out;
}

const NcPolynomial::TermMap& NcPolynomial::terms_of_degree(std::size_t k) const {
  return k < by_degree_.size() ? by_degree_[k] : kNoTerms;
}

std::vector<std::pair<Word, double>> NcPolynomial::terms() const {
  std::vector<std::pair<Word, double>> out;
  out.reserve(term_count());
  for (const auto& level : by_degree_) {
    for (const auto& term : level) out.push_back(term);
  }
  return out;
}

std::size_t NcPolynomial::term_count() const noexcept {
  std::size_t n = 0;
  for (const auto& level : by_degree_) n += level.size();
  return n;
}

double NcPolynomial::max_abs_coefficient() const noexcept {
  double m = 0.0;
  for (const auto& level : by_degree_) {
    for (const auto& [w, c] : level) m = std::max(m, std::abs(c));
  }
  return m;
}

NcPolynomial& NcPolynomial::operator+=(const NcPolynomial& other) {
  check_alphabet(other.alphabet_size_);
  for (const auto& level : other.by_degree_) {
    for (const auto& [w, c] : level) add_term(w, c);
  }
  return *this;
}

NcPolynomial& NcPolynomial::operator-=(const NcPolynomial& other) {
  check_alphabet(other.alphabet_size_);
  for (const auto& level : other.by_degree_) {
    for (const auto& [w, c] : level) add_term(w, -c);
  }
  return *this;
}

NcPolynomial& NcPolynomial::operator*=(double s) {
  if (s == 0.0) {
    by_degree_.clear();
    return *this;
  }
  for (auto& level : by_degree_) {
    for (auto it = level.begin(); it != level.end();) {
      it->second *= s;
      it = it->second == 0.0 ? level.erase(it) : std::next(it);
    }
  }
  trim();
  return *this;
}

NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b) { return multiply(a, b); }

NcPolynomial multiply(const NcPolynomial& p, const NcPolynomial& q) {
  if (p.alphabet_size() != q.alphabet_size()) {
    throw DomainError("polynomials over different alphabets (" +
                      std::to_string(p.alphabet_size()) + " vs " +
                      std::to_string(q.alphabet_size()) + ")");
  }
  NcPolynomial out(p.alphabet_size());
  const auto right = q.terms();
  for (const auto& [sigma, c] : p.terms()) {
    for (const auto& [tau, d] : right) out.add_term(sigma * tau, c * d);
  }
  return out;
}

NcPolynomial adjoint(const NcPolynomial& p) {
  NcPolynomial out(p.alphabet_size());
  for (const auto& [w, c] : p.terms()) out.add_term(involute(w), c);
  return out;
}

}  // namespace ncortho
