#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "ncortho/errors.hpp"
#include "ncortho/freeproduct.hpp"
#include "ncortho/orthopoly.hpp"
#include "oracles.hpp"

using namespace ncortho;

namespace {

Word w(int N, const char* s) { return Word::parse(N, s); }
NcPolynomial mono(int N, const char* s, double c = 1.0) { return NcPolynomial::monomial(w(N, s), c); }

double max_diff(const std::vector<double>& a, const std::vector<double>& b, std::size_t count) {
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("classical coefficients match quadrature of their weights") {
  const int n = 5;
  struct Case {
    ClassicalKind kind;
    double alpha;
    double tol;
  };
  for (const Case c : {Case{ClassicalKind::hermite, 0.0, 1e-8}, Case{ClassicalKind::chebyshev_t, 0.0, 1e-8},
                       Case{ClassicalKind::legendre, 0.0, 1e-8}, Case{ClassicalKind::laguerre, 0.0, 1e-7},
                       Case{ClassicalKind::laguerre, 0.5, 1e-7}, Case{ClassicalKind::laguerre, 1.5, 1e-7}}) {
    CAPTURE(static_cast<int>(c.kind));
    CAPTURE(c.alpha);
    const auto reference = oracle::recurrence_from_moments(oracle::quadrature_moments(c.kind, 2 * n + 3, c.alpha), n);
    const auto rec = classical_coefficients(c.kind, n, c.alpha);
    REQUIRE(rec.a.size() == static_cast<std::size_t>(n));
    REQUIRE(rec.b.size() == static_cast<std::size_t>(n + 1));
    CHECK(max_diff(rec.a, reference.a, static_cast<std::size_t>(n)) <= c.tol);
    CHECK(max_diff(rec.b, reference.b, static_cast<std::size_t>(n + 1)) <= c.tol);
  }
}

TEST_CASE("classical coefficients from short moment lists") {
  const auto hermite = oracle::recurrence_from_moments({1, 0, 1, 0, 3, 0, 15, 0}, 2);
  CHECK(hermite.a[0] == doctest::Approx(1.0));
  CHECK(hermite.a[1] == doctest::Approx(std::sqrt(2.0)));
  const auto cheb = oracle::recurrence_from_moments({1, 0, 0.5, 0, 3.0 / 8, 0}, 1);
  CHECK(cheb.a[0] == doctest::Approx(std::sqrt(0.5)));
  const auto expo = oracle::recurrence_from_moments({1, 1, 2, 6, 24, 120}, 1);
  CHECK(expo.b[0] == doctest::Approx(1.0));
  CHECK(expo.b[1] == doctest::Approx(3.0));
  CHECK(expo.a[0] == doctest::Approx(1.0));

  const auto h = classical_coefficients(ClassicalKind::hermite, 3);
  CHECK(h.a == std::vector<double>{1.0, std::sqrt(2.0), std::sqrt(3.0)});
  CHECK(h.b == std::vector<double>{0, 0, 0, 0});
  const auto t = classical_coefficients(ClassicalKind::chebyshev_t, 3);
  CHECK(t.a == std::vector<double>{std::sqrt(0.5), 0.5, 0.5});
  const auto l = classical_coefficients(ClassicalKind::laguerre, 2);
  CHECK(l.b[0] == 1.0);
  CHECK(l.b[1] == 3.0);
  CHECK(l.a[0] == 1.0);

  CHECK_THROWS_AS(classical_coefficients(ClassicalKind::laguerre, 3, -1.0), DomainError);
  CHECK_THROWS_AS(classical_coefficients(ClassicalKind::hermite, 0), DomainError);
}

TEST_CASE("one-dimensional polynomials match Gram–Schmidt") {
  for (auto kind : {ClassicalKind::hermite, ClassicalKind::chebyshev_t, ClassicalKind::legendre, ClassicalKind::laguerre}) {
    const auto rec = classical_coefficients(kind, 5);
    const auto moments = oracle::quadrature_moments(kind, 12);
    const auto reference = oracle::gram_schmidt_1d(moments, 4);
    const auto polys = one_dim_polynomials(rec, 4);
    for (std::size_t m = 0; m <= 4; ++m) CHECK(max_diff(polys[m], reference[m], m + 1) <= 1e-6);
  }
  const auto short_rec = OneDimRecurrence{"short", {1.0}, {0.0}};
  CHECK_THROWS_AS(one_dim_polynomials(short_rec, 2), DomainError);
}

TEST_CASE("free-product family layout") {
  const auto hh = fixture::hermite_family(2, 3);
  CHECK(max_abs_difference(hh.a_concat(1), Matrix::Identity(2, 2)) == 0.0);
  Matrix a12(2, 1);
  a12 << 0, 1;
  CHECK(max_abs_difference(hh.a(1, 2), a12) == 0.0);

  Matrix a21 = Matrix::Zero(4, 2);
  a21(0, 0) = std::sqrt(2.0);  // 11 <- 1
  a21(1, 1) = 1.0;             // 12 <- 2
  CHECK(max_abs_difference(hh.a(2, 1), a21) <= 1e-15);

  const auto lag = build(fixture::classical({ClassicalKind::laguerre, ClassicalKind::laguerre}), 2);
  Matrix b11 = Matrix::Zero(2, 2);
  b11(0, 0) = 3;
  b11(1, 1) = 1;
  CHECK(max_abs_difference(lag.b(1, 1), b11) == 0.0);

  for (const auto& f : {hh, lag, build(fixture::hermite(3), 3),
                        build(fixture::classical({ClassicalKind::chebyshev_t, ClassicalKind::legendre}), 4)}) {
    CHECK(validate(f).ok());
    for (int n = 1; n <= f.depth(); ++n) {
      const Matrix a = f.a_concat(n);
      Matrix off = a;
      off.diagonal().setZero();
      CHECK(off.cwiseAbs().maxCoeff() == 0.0);
      CHECK(a.diagonal().minCoeff() > 0.0);
    }
  }

  CHECK_THROWS_AS(build(fixture::hermite(2, 2), 3), DomainError);
  CHECK(build(fixture::hermite(2, 3), 3).has_top_b());
  const OneDimRecurrence exact{"exact", {1, 1, 1}, {0, 0, 0}};
  CHECK_FALSE(build(std::vector<OneDimRecurrence>{exact, exact}, 3).has_top_b());
}

TEST_CASE("one letter reproduces the input recurrence") {
  const auto rec = classical_coefficients(ClassicalKind::laguerre, 5, 0.5);
  const std::vector<OneDimRecurrence> one{rec};
  const auto f = build(one, 5);
  for (int n = 1; n <= 5; ++n) CHECK(f.a(n, 1)(0, 0) == rec.a[static_cast<std::size_t>(n - 1)]);
  for (int n = 0; n <= 5; ++n) CHECK(f.b(n, 1)(0, 0) == rec.b[static_cast<std::size_t>(n)]);
}

TEST_CASE("product polynomials") {
  const auto hh = fixture::hermite(2);
  CHECK(product_polynomial(hh, w(2, "12")) == mono(2, "12"));
  CHECK(product_polynomial(hh, Word(2)) == NcPolynomial::constant(2, 1.0));
  const auto h1 = fixture::hermite(1);
  const auto expect = (mono(1, "11") - NcPolynomial::constant(1, 1.0)) * (1 / std::sqrt(2.0));
  CHECK((product_polynomial(h1, w(1, "11")) - expect).max_abs_coefficient() <= 1e-15);
  const auto p = product_polynomial(hh, w(2, "112"));
  CHECK((p - (mono(2, "112") - mono(2, "2")) * (1 / std::sqrt(2.0))).max_abs_coefficient() <= 1e-15);
  CHECK_THROWS_AS(product_polynomial(fixture::hermite(2, 2), w(2, "111")), DomainError);
  CHECK_THROWS_AS(product_polynomial(hh, w(3, "1")), DomainError);
}

TEST_CASE("three-term identity for free products") {
  CHECK(verify_three_term(fixture::hermite(2), 4).max_residual <= 1e-12);
  CHECK(verify_three_term(fixture::hermite(2), 4).ok);
  const auto mixed = fixture::classical({ClassicalKind::chebyshev_t, ClassicalKind::hermite});
  CHECK(verify_three_term(mixed, 4).max_residual <= 1e-12);
  CHECK(verify_three_term(fixture::hermite(3), 3).max_residual <= 1e-12);
  const auto lag = fixture::classical({ClassicalKind::laguerre, ClassicalKind::legendre});
  CHECK(verify_three_term(lag, 3).max_residual <= 1e-11);
  CHECK_THROWS_AS(verify_three_term(mixed, 0), DomainError);

  // A wrong family fails the same check.
  auto broken = fixture::hermite(2);
  broken[1].a[0] = 1.5;
  const auto f = build(fixture::hermite(2), 3);
  const double residual = three_term_residual(f, 3, [&](int n) {
    std::vector<NcPolynomial> row;
    for (const auto& word : enumerate(2, static_cast<std::size_t>(n))) row.push_back(product_polynomial(broken, word));
    return row;
  });
  CHECK(residual > 1e-3);
}

TEST_CASE("product polynomials are the orthonormal family of the built functional") {
  for (const auto& recs : {fixture::hermite(2), fixture::classical({ClassicalKind::chebyshev_t, ClassicalKind::hermite}),
                           fixture::classical({ClassicalKind::laguerre, ClassicalKind::legendre})}) {
    const auto f = build(recs, 3);
    const auto phi = favard_moments(f, 3);
    const auto words = enumerate_up_to(2, 3);
    std::vector<NcPolynomial> polys;
    for (const auto& a : words) polys.push_back(product_polynomial(recs, a));
    double defect = 0.0;
    for (std::size_t i = 0; i < polys.size(); ++i)
      for (std::size_t j = 0; j < polys.size(); ++j)
        defect = std::max(defect, std::abs(apply(phi, adjoint(polys[j]) * polys[i]) - (i == j ? 1.0 : 0.0)));
    CHECK(defect <= 1e-9);

    const auto basis = orthonormalize(phi, 3);
    double coeff = 0.0;
    for (std::size_t i = 0; i < words.size(); ++i)
      coeff = std::max(coeff, (basis.polynomial(words[i]) - polys[i]).max_abs_coefficient());
    CHECK(coeff <= 1e-8);
  }
}

TEST_CASE("recurrence validation") {
  OneDimRecurrence bad{"bad", {1.0, -0.5}, {0.0, 0.0}};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK_THROWS_AS(build(std::vector<OneDimRecurrence>{bad}, 1), DomainError);
  CHECK_THROWS_AS(build(std::vector<OneDimRecurrence>{}, 1), DomainError);
  CHECK(OneDimRecurrence{"x", {1, 1, 1}, {0, 0}}.available_degree() == 2);
}
