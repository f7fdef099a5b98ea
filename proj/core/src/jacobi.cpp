#include "ncortho/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "linalg.hpp"
#include "ncortho/errors.hpp"

namespace ncortho {
namespace {

Eigen::Index level_size(int alphabet_size, int n) {
  return static_cast<Eigen::Index>(words_of_length(alphabet_size, static_cast<std::size_t>(n)));
}

Eigen::Index level_offset(int alphabet_size, int n) {
  return n == 0 ? 0 : static_cast<Eigen::Index>(words_up_to(alphabet_size, static_cast<std::size_t>(n - 1)));
}

void check_letter(const AdmissibleFamily& f, int k) {
  if (k < 1 || k > f.alphabet_size()) {
    throw DomainError("letter " + std::to_string(k) + " outside alphabet 1.." +
                      std::to_string(f.alphabet_size()));
  }
}

// Section of J_k at `level`; a missing B_level block is left zero. Callers
// only do that when no path of the relevant length can touch it.
Matrix section(const AdmissibleFamily& f, int k, int level) {
  const int N = f.alphabet_size();
  const Eigen::Index dim = static_cast<Eigen::Index>(words_up_to(N, static_cast<std::size_t>(level)));
  Matrix j = Matrix::Zero(dim, dim);
  for (int n = 0; n <= level; ++n) {
    const Eigen::Index off = level_offset(N, n);
    const Eigen::Index sz = level_size(N, n);
    if (f.has_b(n)) j.block(off, off, sz, sz) = f.b(n, k);
    if (n >= 1) {
      const Eigen::Index prev = level_offset(N, n - 1);
      const Eigen::Index psz = level_size(N, n - 1);
      j.block(off, prev, sz, psz) = f.a(n, k);
      j.block(prev, off, psz, sz) = f.a(n, k).transpose();
    }
  }
  return j;
}

int moment_level(const AdmissibleFamily& f, const Word& sigma) {
  if (sigma.length() > f.determined_length()) {
    throw DomainError("family of depth " + std::to_string(f.depth()) +
                      " does not determine the moment of word " + sigma.to_string());
  }
  return std::min(static_cast<int>(sigma.length() / 2) + 1, f.depth());
}

}  // namespace

AdmissibleFamily::AdmissibleFamily(int alphabet_size, std::vector<std::vector<Matrix>> a,
                                   std::vector<std::vector<Matrix>> b)
    : alphabet_size_(alphabet_size), a_(std::move(a)), b_(std::move(b)) {
  if (alphabet_size < 1) throw SchemaError("alphabet size must be positive");
  const int d = depth();
  if (b_depth() != d && b_depth() != d - 1) {
    throw SchemaError("family of depth " + std::to_string(d) + " needs B blocks for levels 0.." +
                      std::to_string(d - 1) + " (optionally " + std::to_string(d) + "), got " +
                      std::to_string(b_.size()) + " levels");
  }
  if (b_.empty()) throw SchemaError("family needs at least B_0");
  const auto N = static_cast<std::size_t>(alphabet_size);
  for (int n = 1; n <= d; ++n) {
    const auto& row = a_[static_cast<std::size_t>(n - 1)];
    if (row.size() != N) throw SchemaError("A_" + std::to_string(n) + " needs one block per letter");
    for (std::size_t k = 0; k < N; ++k) {
      if (row[k].rows() != level_size(alphabet_size, n) ||
          row[k].cols() != level_size(alphabet_size, n - 1)) {
        throw SchemaError("A_{" + std::to_string(n) + "," + std::to_string(k + 1) + "} has shape " +
                          std::to_string(row[k].rows()) + "x" + std::to_string(row[k].cols()) +
                          ", expected " + std::to_string(level_size(alphabet_size, n)) + "x" +
                          std::to_string(level_size(alphabet_size, n - 1)));
      }
    }
  }
  for (int n = 0; n <= b_depth(); ++n) {
    const auto& row = b_[static_cast<std::size_t>(n)];
    if (row.size() != N) throw SchemaError("B_" + std::to_string(n) + " needs one block per letter");
    for (std::size_t k = 0; k < N; ++k) {
      const auto sz = level_size(alphabet_size, n);
      if (row[k].rows() != sz || row[k].cols() != sz) {
        throw SchemaError("B_{" + std::to_string(n) + "," + std::to_string(k + 1) + "} has shape " +
                          std::to_string(row[k].rows()) + "x" + std::to_string(row[k].cols()) +
                          ", expected " + std::to_string(sz) + "x" + std::to_string(sz));
      }
    }
  }
}

const Matrix& AdmissibleFamily::a(int n, int k) const {
  if (n < 1 || n > depth()) throw DomainError("A_" + std::to_string(n) + " exceeds family depth");
  check_letter(*this, k);
  return a_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)];
}

const Matrix& AdmissibleFamily::b(int n, int k) const {
  if (!has_b(n)) throw DomainError("B_" + std::to_string(n) + " is not stored in the family");
  check_letter(*this, k);
  return b_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k - 1)];
}

Matrix AdmissibleFamily::a_concat(int n) const {
  const Eigen::Index rows = level_size(alphabet_size_, n);
  const Eigen::Index cols = level_size(alphabet_size_, n - 1);
  Matrix out(rows, cols * alphabet_size_);
  for (int k = 1; k <= alphabet_size_; ++k) out.middleCols((k - 1) * cols, cols) = a(n, k);
  return out;
}

AdmissibleFamily AdmissibleFamily::truncated_to(int d) const {
  if (d < 0 || d > depth()) throw DomainError("cannot truncate family to depth " + std::to_string(d));
  std::vector<std::vector<Matrix>> a(a_.begin(), a_.begin() + d);
  const int top = std::min(d, b_depth());
  std::vector<std::vector<Matrix>> b(b_.begin(), b_.begin() + top + 1);
  return AdmissibleFamily(alphabet_size_, std::move(a), std::move(b));
}

AdmissibleFamily AdmissibleFamily::without_top_b() const {
  if (!has_top_b() || depth() == 0) return *this;
  auto b = b_;
  b.pop_back();
  return AdmissibleFamily(alphabet_size_, a_, std::move(b));
}

std::size_t AdmissibleFamily::determined_length() const noexcept {
  // A path of length ℓ reaches height floor(ℓ/2) and takes a level step at
  // height floor((ℓ-1)/2) at most.
  const auto d = static_cast<std::size_t>(depth());
  return has_top_b() ? 2 * d + 1 : 2 * d;
}

ValidationReport validate(const AdmissibleFamily& f, double tol) {
  ValidationReport report;
  const int N = f.alphabet_size();
  for (int n = 0; n <= f.b_depth(); ++n) {
    for (int k = 1; k <= N; ++k) {
      const Matrix& b = f.b(n, k);
      const double asym = max_abs_difference(b, b.transpose());
      if (!(asym <= tol)) {
        report.violations.push_back("B not symmetric: B_{" + std::to_string(n) + "," +
                                    std::to_string(k) + "} asymmetry " + std::to_string(asym));
      }
      if (!b.allFinite()) {
        report.violations.push_back("B_{" + std::to_string(n) + "," + std::to_string(k) +
                                    "} has non-finite entries");
      }
    }
  }
  for (int n = 1; n <= f.depth(); ++n) {
    const Matrix a = f.a_concat(n);
    if (!a.allFinite()) {
      report.violations.push_back("A_" + std::to_string(n) + " has non-finite entries");
      continue;
    }
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!(a(i, i) > tol)) {
        report.violations.push_back("diagonal not strictly positive: A_" + std::to_string(n) +
                                    " entry (" + std::to_string(i) + "," + std::to_string(i) +
                                    ") = " + std::to_string(a(i, i)));
      }
      for (Eigen::Index j = 0; j < i; ++j) {
        if (std::abs(a(i, j)) > tol) {
          report.violations.push_back("A not upper triangular: A_" + std::to_string(n) +
                                      " entry (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") = " + std::to_string(a(i, j)));
        }
      }
    }
  }
  return report;
}

TruncatedOperator truncate(const AdmissibleFamily& f, int letter, int level) {
  check_letter(f, letter);
  if (level < 0 || level > f.depth() || !f.has_b(level)) {
    throw DomainError("truncation level " + std::to_string(level) + " exceeds family depth " +
                      std::to_string(f.b_depth()));
  }
  return {letter, level, section(f, letter, level)};
}

double operator_moment(const AdmissibleFamily& f, const Word& sigma) {
  if (sigma.alphabet_size() != f.alphabet_size()) {
    throw DomainError("word " + sigma.to_string() + " over the wrong alphabet");
  }
  if (sigma.empty()) return 1.0;
  const int level = moment_level(f, sigma);
  const int N = f.alphabet_size();
  std::vector<Matrix> j;
  j.reserve(static_cast<std::size_t>(N));
  for (int k = 1; k <= N; ++k) j.push_back(section(f, k, level));
  Vector v = Vector::Zero(j.front().rows());
  v(0) = 1.0;
  for (std::size_t i = sigma.length(); i-- > 0;) {
    v = j[static_cast<std::size_t>(sigma[i] - 1)] * v;
  }
  return v(0);
}

MomentFunctional favard_moments(const AdmissibleFamily& f, int n, double tol, unsigned threads) {
  if (n < 0 || n > f.depth()) {
    throw DomainError("moment degree " + std::to_string(n) + " needs a family of depth >= " +
                      std::to_string(n) + ", got " + std::to_string(f.depth()));
  }
  const int N = f.alphabet_size();
  const std::size_t max_len = 2 * static_cast<std::size_t>(n);
  const int level = std::min(n + 1, f.depth());
  std::vector<Matrix> j;
  for (int k = 1; k <= N; ++k) j.push_back(section(f, k, level));

  // J_σ e₀ for every word, built by prepending letters: J_{kσ} e₀ = J_k (J_σ e₀).
  const std::size_t total = words_up_to(N, max_len);
  std::vector<Vector> images(total);
  images[0] = Vector::Zero(j.front().rows());
  images[0](0) = 1.0;
  std::vector<double> values(total, 0.0);
  values[0] = 1.0;
  threads = std::max(1u, threads);
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t first = words_up_to(N, len - 1);
    const std::size_t count = words_of_length(N, len);
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t r = begin; r < end; ++r) {
        // word of rank r: first letter r / N^{len-1}, tail rank r % N^{len-1}
        const std::size_t tail_count = count / static_cast<std::size_t>(N);
        const std::size_t letter = r / tail_count;
        const std::size_t tail = (len == 1 ? 0 : words_up_to(N, len - 2)) + r % tail_count;
        images[first + r] = j[letter] * images[tail];
        values[first + r] = images[first + r](0);
      }
    };
    if (threads == 1 || count < 64) {
      work(0, count);
    } else {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (count + threads - 1) / threads;
      for (std::size_t begin = 0; begin < count; begin += chunk) {
        pool.emplace_back(work, begin, std::min(count, begin + chunk));
      }
    }
  }
  auto phi = MomentFunctional::from_values(N, n, std::move(values));
  const auto report = gram(phi, n, tol);
  if (!report.positive) {
    throw NumericalError("moment table of the family is not strictly positive at degree " +
                         std::to_string(n) + " (min pivot " + std::to_string(report.min_pivot) +
                         "); the family is not admissible");
  }
  return phi;
}

AdmissibleFamily random_family(int alphabet_size, int depth, std::uint64_t seed, bool with_top_b) {
  if (depth < 0) throw DomainError("depth must be nonnegative");
  if (depth == 0 && !with_top_b) throw DomainError("a depth-0 family consists of B_0 only");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> diag(0.5, 2.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int N = alphabet_size;
  std::vector<std::vector<Matrix>> a;
  std::vector<std::vector<Matrix>> b;
  const int b_levels = with_top_b ? depth : depth - 1;
  for (int n = 0; n <= std::max(depth, b_levels); ++n) {
    const Eigen::Index sz = level_size(N, n);
    if (n >= 1 && n <= depth) {
      Matrix full = Matrix::Zero(sz, sz);
      for (Eigen::Index i = 0; i < sz; ++i) {
        full(i, i) = diag(rng);
        for (Eigen::Index jdx = i + 1; jdx < sz; ++jdx) full(i, jdx) = unit(rng);
      }
      const Eigen::Index cols = level_size(N, n - 1);
      std::vector<Matrix> blocks;
      for (int k = 0; k < N; ++k) blocks.push_back(full.middleCols(k * cols, cols));
      a.push_back(std::move(blocks));
    }
    if (n <= b_levels) {
      std::vector<Matrix> blocks;
      for (int k = 0; k < N; ++k) {
        Matrix s(sz, sz);
        for (Eigen::Index i = 0; i < sz; ++i) {
          for (Eigen::Index jdx = 0; jdx < sz; ++jdx) s(i, jdx) = unit(rng);
        }
        blocks.push_back(s + s.transpose());
      }
      b.push_back(std::move(blocks));
    }
  }
  return AdmissibleFamily(N, std::move(a), std::move(b));
}

double max_block_difference(const AdmissibleFamily& f, const AdmissibleFamily& g,
                            std::optional<int> levels) {
  if (f.alphabet_size() != g.alphabet_size()) return std::numeric_limits<double>::infinity();
  const int top_a = std::min({f.depth(), g.depth(), levels.value_or(f.depth())});
  const int top_b = std::min({f.b_depth(), g.b_depth(), levels.value_or(f.b_depth())});
  double worst = 0.0;
  for (int k = 1; k <= f.alphabet_size(); ++k) {
    for (int n = 1; n <= top_a; ++n) worst = std::max(worst, max_abs_difference(f.a(n, k), g.a(n, k)));
    for (int n = 0; n <= top_b; ++n) worst = std::max(worst, max_abs_difference(f.b(n, k), g.b(n, k)));
  }
  return worst;
}

}  // namespace ncortho
