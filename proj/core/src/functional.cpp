#include "ncortho/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "linalg.hpp"
#include "ncortho/errors.hpp"

namespace ncortho {
namespace {

void validate_and_symmetrize(int alphabet_size, int max_degree, std::vector<double>& values,
                             double symmetry_tol) {
  const std::size_t max_len = 2 * static_cast<std::size_t>(max_degree);
  if (values.size() != words_up_to(alphabet_size, max_len)) {
    throw SchemaError("moment table has " + std::to_string(values.size()) +
                      " entries, expected " +
                      std::to_string(words_up_to(alphabet_size, max_len)));
  }
  if (values[0] != 1.0) {
    throw SchemaError("moment of the empty word must be 1, got " + std::to_string(values[0]));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw SchemaError("moment of word " +
                        word_from_graded_index(alphabet_size, i).to_string() + " is not finite");
    }
    const Word w = word_from_graded_index(alphabet_size, i);
    const std::size_t j = involute(w).graded_index();
    if (j <= i) continue;
    const double a = values[i];
    const double b = values[j];
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(a - b) > symmetry_tol * scale) {
      throw SchemaError("moment table not hermitian at word " + w.to_string() + ": " +
                        std::to_string(a) + " vs " + std::to_string(b));
    }
    const double mean = 0.5 * (a + b);
    values[i] = mean;
    values[j] = mean;
  }
}

}  // namespace

MomentFunctional::MomentFunctional(int alphabet_size, int max_degree, std::vector<double> values)
    : alphabet_size_(alphabet_size), max_degree_(max_degree), values_(std::move(values)) {}

MomentFunctional MomentFunctional::from_values(int alphabet_size, int max_degree,
                                               std::vector<double> values,
                                               double symmetry_tol) {
  if (alphabet_size < 1) throw SchemaError("alphabet size must be positive");
  if (max_degree < 0) throw SchemaError("max_degree must be nonnegative");
  validate_and_symmetrize(alphabet_size, max_degree, values, symmetry_tol);
  return MomentFunctional(alphabet_size, max_degree, std::move(values));
}

MomentFunctional MomentFunctional::from_table(int alphabet_size, int max_degree,
                                              const std::map<Word, double>& moments,
                                              double symmetry_tol) {
  if (alphabet_size < 1) throw SchemaError("alphabet size must be positive");
  if (max_degree < 0) throw SchemaError("max_degree must be nonnegative");
  const std::size_t max_len = 2 * static_cast<std::size_t>(max_degree);
  std::vector<double> values(words_up_to(alphabet_size, max_len),
                             std::numeric_limits<double>::quiet_NaN());
  std::vector<bool> seen(values.size(), false);
  for (const auto& [w, v] : moments) {
    if (w.alphabet_size() != alphabet_size) {
      throw SchemaError("moment word " + w.to_string() + " over the wrong alphabet");
    }
    if (w.length() > max_len) {
      throw SchemaError("moment word " + w.to_string() + " longer than 2*max_degree");
    }
    values[w.graded_index()] = v;
    seen[w.graded_index()] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw SchemaError("moment table missing word " +
                        word_from_graded_index(alphabet_size, i).to_string());
    }
  }
  return from_values(alphabet_size, max_degree, std::move(values), symmetry_tol);
}

MomentFunctional MomentFunctional::from_generator(int alphabet_size, int max_degree,
                                                  const std::function<double(const Word&)>& moment,
                                                  double symmetry_tol) {
  if (max_degree < 0) throw SchemaError("max_degree must be nonnegative");
  const auto words = enumerate_up_to(alphabet_size, 2 * static_cast<std::size_t>(max_degree));
  std::vector<double> values;
  values.reserve(words.size());
  for (const Word& w : words) values.push_back(moment(w));
  return from_values(alphabet_size, max_degree, std::move(values), symmetry_tol);
}

double MomentFunctional::moment(const Word& w) const {
  if (w.alphabet_size() != alphabet_size_) {
    throw DomainError("word " + w.to_string() + " over the wrong alphabet");
  }
  if (w.length() > max_word_length()) {
    throw DomainError("moment of word " + w.to_string() + " exceeds degree bound 2*" +
                      std::to_string(max_degree_));
  }
  return values_[w.graded_index()];
}

MomentFunctional restrict_degree(const MomentFunctional& phi, int degree) {
  if (degree < 0 || degree > phi.max_degree()) {
    throw DomainError("cannot restrict to degree " + std::to_string(degree));
  }
  const std::size_t count = words_up_to(phi.alphabet_size(), 2 * static_cast<std::size_t>(degree));
  std::vector<double> values(phi.values().begin(),
                             phi.values().begin() + static_cast<std::ptrdiff_t>(count));
  return MomentFunctional::from_values(phi.alphabet_size(), degree, std::move(values), 0.0);
}

double kernel_eval(const MomentFunctional& phi, const Word& alpha, const Word& beta) {
  if (alpha.length() + beta.length() > phi.max_word_length()) {
    throw DomainError("kernel K(" + alpha.to_string() + ", " + beta.to_string() +
                      ") exceeds degree bound");
  }
  return phi.moment(involute(alpha) * beta);
}

KernelTable kernel_table(const MomentFunctional& phi, std::size_t depth) {
  if (depth > phi.max_word_length()) throw DomainError("kernel table depth exceeds degree bound");
  KernelTable out;
  const auto words = enumerate_up_to(phi.alphabet_size(), depth);
  for (const Word& a : words) {
    for (const Word& b : words) {
      if (a.length() + b.length() > depth) continue;
      out.emplace(std::make_pair(a, b), kernel_eval(phi, a, b));
    }
  }
  return out;
}

HankelReport hankel_check(const KernelTable& raw, int alphabet_size, std::size_t depth) {
  auto lookup = [&](const Word& a, const Word& b) {
    auto it = raw.find({a, b});
    if (it == raw.end()) {
      throw SchemaError("kernel table missing entry (" + a.to_string() + ", " + b.to_string() + ")");
    }
    return it->second;
  };
  HankelReport report;
  if (depth == 0) return report;
  const auto words = enumerate_up_to(alphabet_size, depth - 1);
  for (int k = 1; k <= alphabet_size; ++k) {
    for (const Word& sigma : words) {
      for (const Word& tau : words) {
        if (sigma.length() + tau.length() + 1 > depth) continue;
        const double left = lookup(sigma.prepend(k), tau);
        const double right = lookup(sigma, tau.prepend(k));
        if (left != right) {
          report.ok = false;
          report.violations.push_back({k, sigma, tau, left, right});
        }
      }
    }
  }
  return report;
}

GramReport gram(const MomentFunctional& phi, int n, double tol) {
  if (n < 0 || n > phi.max_degree()) {
    throw DomainError("Gram degree " + std::to_string(n) + " exceeds max_degree " +
                      std::to_string(phi.max_degree()));
  }
  const auto words = enumerate_up_to(phi.alphabet_size(), static_cast<std::size_t>(n));
  const auto m = static_cast<Eigen::Index>(words.size());
  GramReport report;
  report.degree = n;
  report.gram.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      report.gram(i, j) = kernel_eval(phi, words[static_cast<std::size_t>(j)],
                                      words[static_cast<std::size_t>(i)]);
    }
  }
  const auto chol = detail::cholesky_upper(report.gram, tol);
  report.pivots = chol.pivots;
  report.min_pivot = chol.min_pivot();
  report.positive = chol.ok;
  return report;
}

bool is_strictly_positive(const MomentFunctional& phi, int n, double tol) {
  return gram(phi, n, tol).positive;
}

double apply(const MomentFunctional& phi, const NcPolynomial& p) {
  if (p.alphabet_size() != phi.alphabet_size()) {
    throw DomainError("polynomial and functional over different alphabets");
  }
  if (p.degree() > static_cast<int>(phi.max_word_length())) {
    throw DomainError("polynomial degree " + std::to_string(p.degree()) +
                      " exceeds functional degree bound " +
                      std::to_string(phi.max_word_length()));
  }
  double total = 0.0;
  for (const auto& [w, c] : p.terms()) total += c * phi.moment(w);
  return total;
}

double inner_product(const MomentFunctional& phi, const NcPolynomial& p, const NcPolynomial& q) {
  return apply(phi, adjoint(q) * p);
}

MomentFunctional functional_free_product(std::span<const MomentFunctional> parts) {
  if (parts.empty()) throw DomainError("free product needs at least one part");
  std::vector<int> group_of_letter{0};  // 1-based letters
  std::vector<int> offset;
  int degree = parts.front().max_degree();
  int total = 0;
  for (std::size_t g = 0; g < parts.size(); ++g) {
    if (parts[g].moment(Word(parts[g].alphabet_size())) != 1.0) {
      throw DomainError("free product part " + std::to_string(g + 1) + " is not unital");
    }
    offset.push_back(total);
    for (int l = 0; l < parts[g].alphabet_size(); ++l) group_of_letter.push_back(static_cast<int>(g));
    total += parts[g].alphabet_size();
    degree = std::min(degree, parts[g].max_degree());
  }
  auto moment = [&](const Word& w) {
    double value = 1.0;
    std::size_t i = 0;
    while (i < w.length()) {
      const int g = group_of_letter[static_cast<std::size_t>(w[i])];
      std::vector<int> local;
      while (i < w.length() && group_of_letter[static_cast<std::size_t>(w[i])] == g) {
        local.push_back(w[i] - offset[static_cast<std::size_t>(g)]);
        ++i;
      }
      const auto& part = parts[static_cast<std::size_t>(g)];
      value *= part.moment(Word(part.alphabet_size(), std::move(local)));
    }
    return value;
  };
  return MomentFunctional::from_generator(total, degree, moment);
}

}  // namespace ncortho
