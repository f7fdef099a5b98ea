#include "ncortho/freeproduct.hpp"

#include <cmath>

#include "ncortho/errors.hpp"
#include "ncortho/orthopoly.hpp"

namespace ncortho {
namespace {

void check_recurrences(std::span<const OneDimRecurrence> recs, std::size_t degree) {
  if (recs.empty()) throw DomainError("free product needs at least one recurrence");
  for (std::size_t k = 0; k < recs.size(); ++k) {
    recs[k].validate();
    if (recs[k].available_degree() < degree) {
      throw DomainError("recurrence '" + recs[k].label + "' for letter " + std::to_string(k + 1) +
                        " determines degree " + std::to_string(recs[k].available_degree()) +
                        ", need " + std::to_string(degree));
    }
  }
}

}  // namespace

std::size_t OneDimRecurrence::available_degree() const noexcept { return std::min(a.size(), b.size()); }

void OneDimRecurrence::validate() const {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || a[i] <= 0.0) {
      throw DomainError("recurrence '" + label + "': a_" + std::to_string(i + 1) + " must be positive");
    }
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!std::isfinite(b[i])) throw DomainError("recurrence '" + label + "': b_" + std::to_string(i) + " not finite");
  }
}

OneDimRecurrence classical_coefficients(ClassicalKind kind, int n_max, double alpha) {
  if (n_max < 1) throw DomainError("classical coefficients need n_max >= 1");
  OneDimRecurrence rec;
  for (int n = 1; n <= n_max; ++n) {
    const double x = n;
    switch (kind) {
      case ClassicalKind::hermite:
        rec.a.push_back(std::sqrt(x));
        break;
      case ClassicalKind::chebyshev_t:
        rec.a.push_back(n == 1 ? std::sqrt(0.5) : 0.5);
        break;
      case ClassicalKind::legendre:
        rec.a.push_back(x / std::sqrt((2 * x - 1) * (2 * x + 1)));
        break;
      case ClassicalKind::laguerre:
        if (!(alpha > -1.0)) throw DomainError("laguerre needs alpha > -1, got " + std::to_string(alpha));
        rec.a.push_back(std::sqrt(x * (x + alpha)));
        break;
    }
  }
  for (int n = 0; n <= n_max; ++n) {
    rec.b.push_back(kind == ClassicalKind::laguerre ? 2.0 * n + 1.0 + alpha : 0.0);
  }
  switch (kind) {
    case ClassicalKind::hermite:
      rec.label = "hermite";
      break;
    case ClassicalKind::chebyshev_t:
      rec.label = "chebyshev_t";
      break;
    case ClassicalKind::legendre:
      rec.label = "legendre";
      break;
    case ClassicalKind::laguerre:
      rec.label = "laguerre(" + std::to_string(alpha) + ")";
      break;
  }
  return rec;
}

std::vector<std::vector<double>> one_dim_polynomials(const OneDimRecurrence& rec, int n) {
  if (n < 0 || static_cast<std::size_t>(n) > rec.available_degree()) {
    throw DomainError("recurrence '" + rec.label + "' does not determine φ_" + std::to_string(n));
  }
  std::vector<std::vector<double>> phi{{1.0}};
  for (int m = 0; m < n; ++m) {
    // φ_{m+1} = ((x - b_m) φ_m - a_m φ_{m-1}) / a_{m+1}
    const auto& cur = phi[static_cast<std::size_t>(m)];
    std::vector<double> next(cur.size() + 1, 0.0);
    for (std::size_t j = 0; j < cur.size(); ++j) {
      next[j + 1] += cur[j];
      next[j] -= rec.b[static_cast<std::size_t>(m)] * cur[j];
    }
    if (m >= 1) {
      const auto& prev = phi[static_cast<std::size_t>(m - 1)];
      for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= rec.a[static_cast<std::size_t>(m - 1)] * prev[j];
    }
    for (double& c : next) c /= rec.a[static_cast<std::size_t>(m)];
    phi.push_back(std::move(next));
  }
  return phi;
}

AdmissibleFamily build(std::span<const OneDimRecurrence> recurrences, int depth) {
  if (depth < 0) throw DomainError("free product depth must be >= 0");
  check_recurrences(recurrences, static_cast<std::size_t>(depth));
  const int N = static_cast<int>(recurrences.size());
  bool top_b = true;
  for (const auto& r : recurrences) top_b = top_b && r.b.size() > static_cast<std::size_t>(depth);

  std::vector<std::vector<Matrix>> a;
  std::vector<std::vector<Matrix>> b;
  for (int n = 0; n <= depth; ++n) {
    const auto words = enumerate(N, static_cast<std::size_t>(n));
    const auto dim = static_cast<Eigen::Index>(words.size());
    if (n >= 1) {
      const auto shorter = enumerate(N, static_cast<std::size_t>(n - 1));
      std::vector<Matrix> level;
      for (int k = 1; k <= N; ++k) {
        const auto& rec = recurrences[static_cast<std::size_t>(k - 1)];
        Matrix m = Matrix::Zero(dim, static_cast<Eigen::Index>(shorter.size()));
        for (std::size_t j = 0; j < shorter.size(); ++j) {
          const Word& tau = shorter[j];
          const auto run = static_cast<std::size_t>(leading_run(tau, k));
          m(static_cast<Eigen::Index>(tau.prepend(k).rank()), static_cast<Eigen::Index>(j)) = rec.a[run];
        }
        level.push_back(std::move(m));
      }
      a.push_back(std::move(level));
    }
    if (n < depth || top_b) {
      std::vector<Matrix> level;
      for (int k = 1; k <= N; ++k) {
        const auto& rec = recurrences[static_cast<std::size_t>(k - 1)];
        Matrix m = Matrix::Zero(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
          m(i, i) = rec.b[static_cast<std::size_t>(leading_run(words[static_cast<std::size_t>(i)], k))];
        }
        level.push_back(std::move(m));
      }
      b.push_back(std::move(level));
    }
  }
  return AdmissibleFamily(N, std::move(a), std::move(b));
}

NcPolynomial product_polynomial(std::span<const OneDimRecurrence> recurrences, const Word& sigma) {
  const int N = static_cast<int>(recurrences.size());
  if (sigma.alphabet_size() != N) throw DomainError("word " + sigma.to_string() + " over the wrong alphabet");
  NcPolynomial out = NcPolynomial::constant(N, 1.0);
  if (sigma.empty()) return out;
  for (const Block& block : block_decompose(sigma).blocks) {
    const auto& rec = recurrences[static_cast<std::size_t>(block.letter - 1)];
    const auto coeffs = one_dim_polynomials(rec, block.exponent).back();
    NcPolynomial factor(N);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] == 0.0) continue;
      factor.add_term(Word(N, std::vector<int>(j, block.letter)), coeffs[j]);
    }
    out = out * factor;
  }
  return out;
}

ThreeTermReport verify_three_term(std::span<const OneDimRecurrence> recurrences, int depth, double tol) {
  if (depth < 1) throw DomainError("verify_three_term needs depth >= 1");
  const AdmissibleFamily f = build(recurrences, depth);
  const int N = f.alphabet_size();
  const double residual = three_term_residual(f, depth, [&](int n) {
    std::vector<NcPolynomial> row;
    for (const Word& w : enumerate(N, static_cast<std::size_t>(n))) row.push_back(product_polynomial(recurrences, w));
    return row;
  });
  return {residual, residual <= tol};
}

}  // namespace ncortho
