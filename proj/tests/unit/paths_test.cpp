#include <cmath>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "ncortho/errors.hpp"
#include "ncortho/orthopoly.hpp"
#include "ncortho/paths.hpp"
#include "oracles.hpp"

using namespace ncortho;

namespace {

Word w(int N, const char* s) { return Word::parse(N, s); }

std::vector<StepKind> advancing(const LatticePath& p) {
  std::vector<StepKind> out;
  for (const auto& s : p.steps)
    if (s.kind != StepKind::letter_switch) out.push_back(s.kind);
  return out;
}

// Brute force: every level/rise/fall string of length n that stays >= 0
// and ends at 0.
std::uint64_t brute_motzkin(int n) {
  std::uint64_t count = 0;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    int h = 0;
    bool ok = true;
    std::uint64_t c = code;
    for (int i = 0; i < n && ok; ++i) {
      h += static_cast<int>(c % 3) - 1;
      c /= 3;
      ok = h >= 0;
    }
    if (ok && h == 0) ++count;
  }
  return count;
}

AdmissibleFamily laguerre(int depth) { return build(fixture::classical({ClassicalKind::laguerre}), depth); }

}  // namespace

TEST_CASE("Motzkin numbers") {
  const std::vector<std::uint64_t> expected{1, 1, 2, 4, 9, 21, 51, 127, 323};
  for (int n = 0; n <= 8; ++n) {
    CHECK(motzkin_number(n) == expected[static_cast<std::size_t>(n)]);
    CHECK(brute_motzkin(n) == expected[static_cast<std::size_t>(n)]);
  }
  CHECK(motzkin_printed_formula(5) == 9.0);
  for (int n = 1; n <= 10; ++n) CHECK(motzkin_printed_formula(n) == static_cast<double>(motzkin_number(n - 1)));
  CHECK_THROWS_AS(motzkin_number(-1), DomainError);
  CHECK_THROWS_AS(motzkin_printed_formula(0), DomainError);
}

TEST_CASE("path enumeration examples") {
  const auto p11 = enumerate_paths(w(1, "11"));
  REQUIRE(p11.size() == 2);
  std::set<std::vector<StepKind>> shapes;
  for (const auto& p : p11) shapes.insert(advancing(p));
  CHECK(shapes.count({StepKind::rise, StepKind::fall}) == 1);
  CHECK(shapes.count({StepKind::level, StepKind::level}) == 1);

  const auto p12 = enumerate_paths(w(2, "12"));
  REQUIRE(p12.size() == 2);
  for (const auto& p : p12) {
    REQUIRE(p.steps.size() == 3);
    CHECK(p.steps[0].from == LatticePoint{0, 2, 0});
    CHECK(p.steps[0].from.letter == 2);
    CHECK(p.steps[1].kind == StepKind::letter_switch);
    CHECK(p.steps[1].from.letter == 2);
    CHECK(p.steps[1].to.letter == 1);
    CHECK(p.steps[2].from.letter == 1);
    CHECK(p.steps[2].to == LatticePoint{2, 1, 0});
  }
  CHECK(enumerate_paths(w(1, "111")).size() == 4);
  CHECK_THROWS_AS(enumerate_paths(Word(2)), DomainError);
  CHECK_THROWS_AS(enumerate_paths(Word(1, std::vector<int>(9, 1))), DomainError);
  CHECK(enumerate_paths(Word(1, std::vector<int>(9, 1)), 9).size() == 835);
}

TEST_CASE("paths are well formed and counted by Motzkin numbers") {
  for (int N = 1; N <= 3; ++N) {
    for (std::size_t n = 1; n <= (N == 3 ? 5u : 6u); ++n) {
      for (const auto& sigma : enumerate(N, n)) {
        const auto paths = enumerate_paths(sigma);
        CHECK(paths.size() == motzkin_number(static_cast<int>(n)));
        CHECK(count_paths(sigma) == paths.size());
        for (const auto& p : paths) {
          CHECK(p.advancing_length() == n);
          CHECK(p.steps.front().from == LatticePoint{0, sigma.back(), 0});
          CHECK(p.steps.back().to == LatticePoint{static_cast<int>(n), sigma.front(), 0});
          std::size_t t = 0;
          for (std::size_t i = 0; i < p.steps.size(); ++i) {
            const Step& s = p.steps[i];
            if (i > 0) CHECK(s.from == p.steps[i - 1].to);
            CHECK(s.to.height >= 0);
            switch (s.kind) {
              case StepKind::letter_switch:
                CHECK(s.from.letter != s.to.letter);
                CHECK(s.from.t == s.to.t);
                CHECK(s.from.height == s.to.height);
                // only where consecutive letters of the word differ
                CHECK(sigma[n - t] != sigma[n - 1 - t]);
                break;
              case StepKind::level:
                CHECK(s.to.height == s.from.height);
                break;
              case StepKind::rise:
                CHECK(s.to.height == s.from.height + 1);
                break;
              case StepKind::fall:
                CHECK(s.to.height == s.from.height - 1);
                break;
            }
            if (s.kind != StepKind::letter_switch) {
              CHECK(s.from.letter == sigma[n - 1 - t]);
              CHECK(s.to.t == s.from.t + 1);
              ++t;
            }
          }
        }
        std::size_t duplicates = 0;
        for (std::size_t i = 0; i < paths.size(); ++i)
          for (std::size_t j = i + 1; j < paths.size(); ++j) duplicates += paths[i] == paths[j];
        CHECK(duplicates == 0);
      }
    }
  }
}

TEST_CASE("path weights") {
  const auto h = fixture::hermite_family(1, 3);
  for (const auto& p : enumerate_paths(w(1, "11"))) {
    const double expect = advancing(p)[0] == StepKind::rise ? 1.0 : 0.0;
    CHECK(path_weight(h, p) == doctest::Approx(expect));
  }
  const auto lag = laguerre(3);
  double rlf = 0.0;
  double total = 0.0;
  for (const auto& p : enumerate_paths(w(1, "111"))) {
    const double weight = path_weight(lag, p);
    total += weight;
    if (advancing(p) == std::vector<StepKind>{StepKind::rise, StepKind::level, StepKind::fall}) rlf = weight;
  }
  CHECK(rlf == doctest::Approx(3.0));
  CHECK(total == doctest::Approx(6.0));

  const auto shallow = fixture::hermite_family(1, 1).without_top_b();
  const auto deep = enumerate_paths(w(1, "1111"));
  CHECK_THROWS_AS(
      [&] {
        for (const auto& p : deep) path_weight(shallow, p);
      }(),
      DomainError);
}

TEST_CASE("moments from paths") {
  const auto lag = laguerre(2);
  CHECK(moments_from_paths(lag, Word(1)) == 1.0);
  CHECK(moments_from_paths(lag, w(1, "111")) == doctest::Approx(6.0));
  CHECK(moments_from_paths(lag, w(1, "1111")) == doctest::Approx(24.0));

  const auto hh = fixture::hermite_family(2, 3);
  CHECK(moments_from_paths(hh, w(2, "1122")) == doctest::Approx(1.0));
  CHECK(moments_from_paths(hh, w(2, "1111")) == doctest::Approx(3.0));
  CHECK(std::abs(moments_from_paths(hh, w(2, "1212"))) <= 1e-12);
  CHECK(std::abs(oracle::enumerated_path_moment(hh, w(2, "1212"))) <= 1e-12);

  const auto f = random_family(2, 2, 4, false);
  CHECK_THROWS_AS(moments_from_paths(f, w(2, "12121")), DomainError);
  CHECK_THROWS_AS(moments_from_paths(f, w(3, "1")), DomainError);
}

TEST_CASE("path and operator moments agree") {
  for (std::uint64_t seed = 100; seed < 105; ++seed) {
    const auto f = random_family(2, 3, seed);
    for (const auto& sigma : enumerate_up_to(2, 6)) {
      const double a = moments_from_paths(f, sigma);
      CHECK(std::abs(a - operator_moment(f, sigma)) <= 1e-10);
      CHECK(std::abs(a - oracle::enumerated_path_moment(f, sigma)) <= 1e-10);
    }
  }
  const auto f = random_family(3, 2, 7);
  for (const auto& sigma : enumerate_up_to(3, 4)) {
    CHECK(std::abs(moments_from_paths(f, sigma) - operator_moment(f, sigma)) <= 1e-10);
  }
}

TEST_CASE("distinguished path") {
  const auto d1111 = distinguished_path(w(1, "1111"));
  CHECK(d1111.weight_expression == "A*_{1,1} A*_{2,1} A_{2,1} A_{1,1}");
  CHECK(advancing(d1111.path) ==
        std::vector<StepKind>{StepKind::rise, StepKind::rise, StepKind::fall, StepKind::fall});
  CHECK(path_weight(fixture::hermite_family(1, 2), d1111.path) == doctest::Approx(2.0));

  CHECK(distinguished_path(w(1, "11")).weight_expression == "A*_{1,1} A_{1,1}");
  const auto d111 = distinguished_path(w(1, "111"));
  CHECK(d111.weight_expression == "A*_{1,1} B_{1,1} A_{1,1}");
  CHECK(path_weight(fixture::hermite_family(1, 2), d111.path) == 0.0);
  CHECK(distinguished_path(w(2, "12")).weight_expression == "A*_{1,1} A_{1,2}");
  CHECK(distinguished_path(w(3, "12312")).weight_expression == "A*_{1,1} A*_{2,2} B_{2,3} A_{2,1} A_{1,2}");
  CHECK_THROWS_AS(distinguished_path(Word(2)), DomainError);

  for (const auto& sigma : enumerate_up_to(2, 6)) {
    if (sigma.empty()) continue;
    const auto dp = distinguished_path(sigma);
    int found = 0;
    for (const auto& p : enumerate_paths(sigma)) found += (p == dp.path);
    CHECK(found == 1);
    CHECK(dp.path.max_height() == static_cast<int>(sigma.length() / 2));
  }
}

TEST_CASE("distinguished weight equals the maximal path of I(σ)τ") {
  const auto f = random_family(2, 3, 31);
  for (int n = 1; n <= 3; ++n) {
    const Matrix tilde = tilde_a(f, n);
    const auto words = enumerate(2, static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = 0; j < words.size(); ++j) {
        const Word sigma = involute(words[i]) * words[j];
        const double expect = tilde.col(static_cast<Eigen::Index>(i)).dot(tilde.col(static_cast<Eigen::Index>(j)));
        CHECK(path_weight(f, distinguished_path(sigma).path) == doctest::Approx(expect));
      }
    }
  }
}

TEST_CASE("partition by the distinguished path") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto f = random_family(2, 3, seed);
    for (const auto& sigma : enumerate_up_to(2, 6)) {
      if (sigma.empty()) continue;
      const double rest = sum_excluding_distinguished(f, sigma);
      const double top = path_weight(f, distinguished_path(sigma).path);
      CHECK(std::abs(rest + top - moments_from_paths(f, sigma)) <= 1e-10);
      double brute = 0.0;
      const auto dp = distinguished_path(sigma).path;
      for (const auto& p : enumerate_paths(sigma))
        if (!(p == dp)) brute += path_weight(f, p);
      CHECK(std::abs(rest - brute) <= 1e-10);
    }
  }
  const auto f = random_family(2, 2, 2);
  CHECK(sum_excluding_distinguished(f, w(2, "1")) == 0.0);
  CHECK(sum_excluding_distinguished(f, w(2, "12")) == doctest::Approx(f.b(0, 1)(0, 0) * f.b(0, 2)(0, 0)));
}

TEST_CASE("tilde A by definition and structural identity") {
  const auto f = random_family(2, 3, 12);
  CHECK(tilde_a(f, 0)(0, 0) == 1.0);
  CHECK(max_abs_difference(tilde_a(f, 1), f.a_concat(1)) == 0.0);
  for (int n = 1; n <= 3; ++n) {
    const auto words = enumerate(2, static_cast<std::size_t>(n));
    const Matrix tilde = tilde_a(f, n);
    for (std::size_t j = 0; j < words.size(); ++j) {
      // column τ = A_{n,τ_1} A_{n-1,τ_2} ⋯ A_{1,τ_n}
      Vector v = Vector::Ones(1);
      for (int m = 1; m <= n; ++m) v = f.a(m, words[j][static_cast<std::size_t>(n - m)]) * v;
      CHECK((tilde.col(static_cast<Eigen::Index>(j)) - v).cwiseAbs().maxCoeff() <= 1e-12);
    }
    if (n >= 2) {
      const Matrix rec = f.a_concat(n) * direct_sum_power(tilde_a(f, n - 1), 2);
      CHECK(max_abs_difference(rec, tilde) <= 1e-12);
    }
  }

  // With B ≡ 0, [K_φ]_n − Σ_{ℳ*} = Ã*_nÃ_n.
  std::vector<std::vector<Matrix>> a, b;
  for (int n = 1; n <= 3; ++n) a.push_back({f.a(n, 1), f.a(n, 2)});
  for (int n = 0; n <= 3; ++n) b.push_back({Matrix::Zero(f.b(n, 1).rows(), f.b(n, 1).cols()), Matrix::Zero(f.b(n, 2).rows(), f.b(n, 2).cols())});
  const AdmissibleFamily zero_b(2, a, b);
  const auto phi = favard_moments(zero_b, 3);
  for (int n = 1; n <= 3; ++n) {
    const auto words = enumerate(2, static_cast<std::size_t>(n));
    const Matrix tilde = tilde_a(zero_b, n);
    const Matrix expect = tilde.transpose() * tilde;
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = 0; j < words.size(); ++j) {
        const Word sigma = involute(words[i]) * words[j];
        const double lhs = kernel_eval(phi, words[i], words[j]) - sum_excluding_distinguished(zero_b, sigma);
        CHECK(std::abs(lhs - expect(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) <= 1e-10);
      }
  }
}

TEST_CASE("Jacobi coefficients from moments") {
  const auto g = moment_table_from_paths(fixture::hermite_family(1, 3), 3);
  const auto f = jacobi_from_moments(g, 2);
  CHECK(f.a(1, 1)(0, 0) == doctest::Approx(1.0));
  CHECK(f.a(2, 1)(0, 0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(f.b(0, 1)(0, 0)) <= 1e-14);
  CHECK(std::abs(f.b(1, 1)(0, 0)) <= 1e-12);
  CHECK(f.has_top_b());
  CHECK_FALSE(jacobi_from_moments(g, 3).has_top_b());

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto source = random_family(2, 3, seed);
    const auto phi = favard_moments(source, 3);
    const auto back = jacobi_from_moments(phi, 3);
    CHECK(validate(back).ok());
    CHECK(max_block_difference(source, back) <= 1e-8);
    for (int k = 1; k <= 2; ++k) CHECK(back.b(0, k)(0, 0) == phi.moment(Word(2, {k})));
  }

  // B_3 needs moments of length 7: a depth-4 table recovers it too.
  const auto source = random_family(2, 4, 77);
  const auto back = jacobi_from_moments(favard_moments(source, 4), 3);
  CHECK(back.has_top_b());
  CHECK(max_block_difference(source.truncated_to(3), back) <= 1e-8);

  // Moment table -> Jacobi -> moment table.
  for (std::uint64_t seed = 50; seed < 55; ++seed) {
    const auto phi = oracle::matrix_functional(2, 3, 17, seed);
    const auto fam = jacobi_from_moments(phi, 3);
    const auto again = favard_moments(fam, 3);
    double worst = 0.0;
    for (std::size_t i = 0; i < phi.values().size(); ++i)
      worst = std::max(worst, std::abs(phi.values()[i] - again.values()[i]));
    CHECK(worst <= 1e-8);
  }

  // Cross-check of the level-B formula against inner-product extraction.
  const auto phi = oracle::matrix_functional(2, 3, 17, 60);
  CHECK(max_block_difference(jacobi_from_moments(phi, 2), extract_recurrence(orthonormalize(phi, 2), phi)) <= 1e-8);
}
