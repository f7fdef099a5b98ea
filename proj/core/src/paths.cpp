#include "ncortho/paths.hpp"

#include <algorithm>
#include <functional>

#include "linalg.hpp"
#include "ncortho/errors.hpp"

namespace ncortho {
namespace {

// Letter used by advancing step t (0-based): blocks are consumed right to left.
int step_letter(const Word& sigma, std::size_t t) { return sigma[sigma.length() - 1 - t]; }

struct Exclusion {
  std::optional<int> max_height;
  std::optional<int> no_level_at;
};

class WeightWalker {
 public:
  WeightWalker(const AdmissibleFamily& f, const Word& sigma, Exclusion exclusion)
      : f_(f), sigma_(sigma), exclusion_(exclusion) {}

  double run() {
    Vector start = Vector::Ones(1);
    return walk(0, 0, start);
  }

 private:
  double walk(std::size_t t, int m, const Vector& v) {
    const std::size_t length = sigma_.length();
    if (t == length) return m == 0 ? v(0) : 0.0;
    const int remaining = static_cast<int>(length - t);
    const int k = step_letter(sigma_, t);
    double total = 0.0;
    // level
    if (m <= remaining - 1 && exclusion_.no_level_at != m) {
      if (!f_.has_b(m)) throw DomainError("path needs B_" + std::to_string(m) + ", beyond family depth");
      total += walk(t + 1, m, f_.b(m, k) * v);
    }
    // rise: must still be able to come back down
    if (m + 1 <= remaining - 1 && (!exclusion_.max_height || m + 1 <= *exclusion_.max_height)) {
      if (m + 1 > f_.depth()) throw DomainError("path needs A_" + std::to_string(m + 1) + ", beyond family depth");
      total += walk(t + 1, m + 1, f_.a(m + 1, k) * v);
    }
    if (m >= 1) total += walk(t + 1, m - 1, f_.a(m, k).transpose() * v);
    return total;
  }

  const AdmissibleFamily& f_;
  const Word& sigma_;
  Exclusion exclusion_;
};

void check_family_word(const AdmissibleFamily& f, const Word& sigma) {
  if (sigma.alphabet_size() != f.alphabet_size()) {
    throw DomainError("word " + sigma.to_string() + " over the wrong alphabet");
  }
}

// Appends advancing step t, preceded by a letter switch when the plane changes.
void push_step(LatticePath& path, const Word& sigma, std::size_t t, StepKind kind, int& m) {
  const int k = step_letter(sigma, t);
  const auto ti = static_cast<int>(t);
  if (t > 0) {
    const int prev = step_letter(sigma, t - 1);
    if (prev != k) path.steps.push_back({StepKind::letter_switch, {ti, prev, m}, {ti, k, m}});
  }
  const int next = kind == StepKind::rise ? m + 1 : kind == StepKind::fall ? m - 1 : m;
  path.steps.push_back({kind, {ti, k, m}, {ti + 1, k, next}});
  m = next;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

const char* to_string(StepKind kind) noexcept {
  switch (kind) {
    case StepKind::level:
      return "level";
    case StepKind::letter_switch:
      return "switch";
    case StepKind::rise:
      return "rise";
    case StepKind::fall:
      return "fall";
  }
  return "?";
}

std::size_t LatticePath::advancing_length() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [](const Step& s) { return s.kind != StepKind::letter_switch; }));
}

int LatticePath::max_height() const noexcept {
  int h = 0;
  for (const Step& s : steps) h = std::max({h, s.from.height, s.to.height});
  return h;
}

std::uint64_t motzkin_number(int n) {
  if (n < 0) throw DomainError("Motzkin number of a negative length");
  std::vector<std::uint64_t> m{1};
  for (int i = 0; i < n; ++i) {
    // M_{i+1} = M_i + Σ_{j=0}^{i-1} M_j M_{i-1-j}
    std::uint64_t next = m[static_cast<std::size_t>(i)];
    for (int j = 0; j + 1 <= i; ++j) {
      next += m[static_cast<std::size_t>(j)] * m[static_cast<std::size_t>(i - 1 - j)];
    }
    m.push_back(next);
  }
  return m.back();
}

double motzkin_printed_formula(int n) {
  if (n < 1) throw DomainError("printed Motzkin formula needs n >= 1");
  std::uint64_t sum = 0;
  for (int k = 0; k <= n; ++k) sum += binomial(n, k) * binomial(n - k, k - 1);
  return static_cast<double>(sum) / n;
}

std::vector<LatticePath> enumerate_paths(const Word& sigma, std::size_t max_length) {
  if (sigma.empty()) throw DomainError("ℳ_σ is defined for nonempty words only");
  if (sigma.length() > max_length) {
    throw DomainError("refusing to materialize paths of length " + std::to_string(sigma.length()) +
                      " (cap " + std::to_string(max_length) + ")");
  }
  std::vector<LatticePath> out;
  LatticePath current;
  const std::size_t length = sigma.length();
  std::function<void(std::size_t, int)> walk = [&](std::size_t t, int m) {
    if (t == length) {
      if (m == 0) out.push_back(current);
      return;
    }
    const int remaining = static_cast<int>(length - t);
    const std::size_t mark = current.steps.size();
    for (StepKind kind : {StepKind::level, StepKind::rise, StepKind::fall}) {
      int next = kind == StepKind::rise ? m + 1 : kind == StepKind::fall ? m - 1 : m;
      if (next < 0 || next > remaining - 1) continue;
      int h = m;
      push_step(current, sigma, t, kind, h);
      walk(t + 1, next);
      current.steps.resize(mark);
    }
  };
  walk(0, 0);
  return out;
}

std::uint64_t count_paths(const Word& sigma) {
  if (sigma.empty()) throw DomainError("ℳ_σ is defined for nonempty words only");
  const std::size_t length = sigma.length();
  std::vector<std::uint64_t> by_height(length + 2, 0);
  by_height[0] = 1;
  for (std::size_t t = 0; t < length; ++t) {
    std::vector<std::uint64_t> next(length + 2, 0);
    for (std::size_t m = 0; m <= length; ++m) {
      if (by_height[m] == 0) continue;
      next[m] += by_height[m];
      next[m + 1] += by_height[m];
      if (m >= 1) next[m - 1] += by_height[m];
    }
    by_height = std::move(next);
  }
  return by_height[0];
}

double path_weight(const AdmissibleFamily& f, const LatticePath& p) {
  Vector v = Vector::Ones(1);
  for (const Step& s : p.steps) {
    const int m = s.from.height;
    const int k = s.from.letter;
    switch (s.kind) {
      case StepKind::letter_switch:
        break;
      case StepKind::level:
        if (!f.has_b(m)) throw DomainError("path needs B_" + std::to_string(m) + ", beyond family depth");
        v = f.b(m, k) * v;
        break;
      case StepKind::rise:
        if (m + 1 > f.depth()) throw DomainError("path needs A_" + std::to_string(m + 1) + ", beyond family depth");
        v = f.a(m + 1, k) * v;
        break;
      case StepKind::fall:
        if (m < 1) throw DomainError("fall step below height 0");
        v = f.a(m, k).transpose() * v;
        break;
    }
  }
  if (v.size() != 1) throw DomainError("path does not return to height 0");
  return v(0);
}

double moments_from_paths(const AdmissibleFamily& f, const Word& sigma) {
  check_family_word(f, sigma);
  if (sigma.empty()) return 1.0;
  if (sigma.length() > f.determined_length()) {
    throw DomainError("family of depth " + std::to_string(f.depth()) +
                      " does not determine the moment of word " + sigma.to_string());
  }
  return WeightWalker(f, sigma, {}).run();
}

MomentFunctional moment_table_from_paths(const AdmissibleFamily& f, int n, double tol) {
  if (n < 0 || n > f.depth()) {
    throw DomainError("moment degree " + std::to_string(n) + " needs a family of depth >= " +
                      std::to_string(n));
  }
  auto phi = MomentFunctional::from_generator(f.alphabet_size(), n,
                                              [&](const Word& w) { return moments_from_paths(f, w); });
  const auto report = gram(phi, n, tol);
  if (!report.positive) {
    throw NumericalError("moment table of the family is not strictly positive at degree " +
                         std::to_string(n) + " (min pivot " + std::to_string(report.min_pivot) + ")");
  }
  return phi;
}

DistinguishedPath distinguished_path(const Word& sigma) {
  if (sigma.empty()) throw DomainError("distinguished path needs a nonempty word");
  const std::size_t length = sigma.length();
  const std::size_t n = length / 2;
  DistinguishedPath out;
  int m = 0;
  std::size_t t = 0;
  for (; t < n; ++t) push_step(out.path, sigma, t, StepKind::rise, m);
  if (length % 2 == 1) push_step(out.path, sigma, t++, StepKind::level, m);
  for (; t < length; ++t) push_step(out.path, sigma, t, StepKind::fall, m);

  // Left factor = last step. Fall j (from the left) sits at height j and
  // reads letter i(j); rise factors read i(|σ|-n+1..|σ|) descending in height.
  std::string expr;
  auto add = [&](const std::string& factor) {
    if (!expr.empty()) expr += ' ';
    expr += factor;
  };
  for (std::size_t j = 1; j <= n; ++j) {
    add("A*_{" + std::to_string(j) + "," + std::to_string(sigma[j - 1]) + "}");
  }
  if (length % 2 == 1) add("B_{" + std::to_string(n) + "," + std::to_string(sigma[n]) + "}");
  for (std::size_t j = n; j >= 1; --j) {
    add("A_{" + std::to_string(j) + "," + std::to_string(sigma[length - j]) + "}");
  }
  out.weight_expression = expr;
  return out;
}

double sum_excluding_distinguished(const AdmissibleFamily& f, const Word& sigma) {
  check_family_word(f, sigma);
  if (sigma.empty()) throw DomainError("ℳ*_σ needs a nonempty word");
  const int n = static_cast<int>(sigma.length() / 2);
  Exclusion exclusion;
  if (sigma.length() % 2 == 0) {
    exclusion.max_height = n - 1;  // only p_σ reaches height n
  } else {
    exclusion.no_level_at = n;  // only p_σ takes a level step at height n
  }
  return WeightWalker(f, sigma, exclusion).run();
}

Matrix tilde_a(const AdmissibleFamily& f, int n) {
  if (n < 0 || n > f.depth()) throw DomainError("Ã_n needs 0 <= n <= depth");
  if (n == 0) return Matrix::Ones(1, 1);
  Matrix out = f.a_concat(n);
  std::size_t copies = static_cast<std::size_t>(f.alphabet_size());
  for (int j = n - 1; j >= 1; --j) {
    out = out * direct_sum_power(f.a_concat(j), copies);
    copies *= static_cast<std::size_t>(f.alphabet_size());
  }
  return out;
}

AdmissibleFamily jacobi_from_moments(const MomentFunctional& phi, int n_max, double tol) {
  const int N = phi.alphabet_size();
  if (n_max < 1 || n_max > phi.max_degree()) {
    throw DomainError("jacobi_from_moments needs 1 <= depth <= max_degree (" +
                      std::to_string(phi.max_degree()) + "), got " + std::to_string(n_max));
  }
  std::vector<std::vector<Matrix>> a;
  std::vector<std::vector<Matrix>> b(1);
  for (int k = 1; k <= N; ++k) b[0].push_back(Matrix::Constant(1, 1, phi.moment(Word(N, {k}))));

  Matrix tilde = Matrix::Ones(1, 1);
  for (int n = 1; n <= n_max; ++n) {
    const auto words = enumerate(N, static_cast<std::size_t>(n));
    const auto dim = static_cast<Eigen::Index>(words.size());

    const AdmissibleFamily previous(N, a, b);
    Matrix reduced(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Word left = involute(words[static_cast<std::size_t>(i)]);
      for (Eigen::Index j = 0; j < dim; ++j) {
        const Word w = left * words[static_cast<std::size_t>(j)];
        reduced(i, j) = phi.moment(w) - sum_excluding_distinguished(previous, w);
      }
    }
    const Matrix spread = direct_sum_power(tilde, static_cast<std::size_t>(N));
    const Matrix spread_inv = detail::upper_inverse(spread);
    Matrix gram_n = spread_inv.transpose() * reduced * spread_inv;
    gram_n = 0.5 * (gram_n + gram_n.transpose());
    const auto chol = detail::cholesky_upper(gram_n, tol);
    if (!chol.ok) {
      throw NumericalError("functional not strictly positive at required depth " + std::to_string(n) +
                           ": pivot " + std::to_string(chol.min_pivot()) + " while factoring A_" +
                           std::to_string(n) + "ᵀA_" + std::to_string(n));
    }
    const Eigen::Index cols = dim / N;
    std::vector<Matrix> blocks;
    for (int k = 0; k < N; ++k) blocks.push_back(chol.upper.middleCols(k * cols, cols));
    a.push_back(std::move(blocks));
    tilde = chol.upper * spread;

    if (2 * static_cast<std::size_t>(n) + 1 > phi.max_word_length()) break;
    const AdmissibleFamily current(N, a, b);
    const Matrix tilde_inv = detail::upper_inverse(tilde);
    std::vector<Matrix> level;
    for (int k = 1; k <= N; ++k) {
      Matrix c(dim, dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        const Word left = involute(words[static_cast<std::size_t>(i)]).append(k);
        for (Eigen::Index j = 0; j < dim; ++j) {
          const Word w = left * words[static_cast<std::size_t>(j)];
          c(i, j) = phi.moment(w) - sum_excluding_distinguished(current, w);
        }
      }
      Matrix bk = tilde_inv.transpose() * c * tilde_inv;
      level.push_back(0.5 * (bk + bk.transpose()));
    }
    b.push_back(std::move(level));
  }
  return AdmissibleFamily(N, std::move(a), std::move(b));
}

}  // namespace ncortho
