#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "smpcert/errors.hpp"
#include "smpcert/scalar.hpp"
#include "support.hpp"

using namespace smpcert;
using test::q;

TEST_SUITE("scalar") {
  TEST_CASE("parse picks the backend from the literal") {
    CHECK(Scalar::parse("11/10") == q(11, 10));
    CHECK(Scalar::parse("-22/20") == q(-11, 10));
    CHECK(Scalar::parse("7").is_exact());
    CHECK(Scalar::parse(" 3/4 ") == q(3, 4));
    CHECK_FALSE(Scalar::parse("1.331").is_exact());
    CHECK_FALSE(Scalar::parse("1e-3").is_exact());
    CHECK(Scalar::parse("1.331").to_double() == 1.331);
    CHECK_THROWS_AS(Scalar::parse(""), ParseError);
    CHECK_THROWS_AS(Scalar::parse("1/x"), ParseError);
    CHECK_THROWS_AS(Scalar::parse("1/-2"), ParseError);
    CHECK_THROWS_AS(Scalar::parse("abc"), ParseError);
    CHECK_THROWS_AS(Scalar::parse("1/0"), DivisionByZero);
  }

  TEST_CASE("str round trips") {
    CHECK(q(121, 100).str() == "121/100");
    CHECK(q(4, 2).str() == "2");
    CHECK(Scalar::real(3.0).str() == "3.0");
    CHECK(Scalar::real(-1.0).str() == "-1.0");
    CHECK(q(-3, 9).str() == "-1/3");
    CHECK(Scalar::parse(Scalar::real(0.1).str()) == Scalar::real(0.1));
    CHECK(Scalar::parse(Scalar::real(1.0 / 3.0).str()) == Scalar::real(1.0 / 3.0));
  }

  TEST_CASE("mixing backends throws") {
    const Scalar e = q(1, 2), f = Scalar::real(0.5);
    CHECK_THROWS_AS(e + f, BackendMismatch);
    CHECK_THROWS_AS(e * f, BackendMismatch);
    CHECK_THROWS_AS((void)(e == f), BackendMismatch);
    CHECK_THROWS_AS((void)(e < f), BackendMismatch);
    CHECK_THROWS_AS(f.rational(), BackendMismatch);
    CHECK(e + 1 == q(3, 2));
    CHECK(f + 1 == Scalar::real(1.5));
  }

  TEST_CASE("division by zero") {
    CHECK_THROWS_AS(q(1) / q(0), DivisionByZero);
    CHECK_THROWS_AS(pow(q(0), -1), DivisionByZero);
    CHECK(pow(q(2, 3), -2) == q(9, 4));
    CHECK(pow(q(5), 0) == q(1));
  }

  TEST_CASE("field axioms on random rationals") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 300; ++k) {
      const Scalar a = oracle::random_rational(rng), b = oracle::random_rational(rng),
                   c = oracle::random_rational(rng);
      CHECK(a + b == b + a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - b) + b == a);
      if (!b.is_zero()) CHECK((a / b) * b == a);
      CHECK(abs(a) >= q(0));
    }
  }

  TEST_CASE("approximate comparisons") {
    CHECK(approx_equal(Scalar::real(1.0), Scalar::real(1.0 + 1e-14)));
    CHECK_FALSE(approx_equal(Scalar::real(1.0), Scalar::real(1.0 + 1e-9)));
    CHECK(approx_equal(Scalar::real(1.0), Scalar::real(1.0 + 1e-9), 1e-8));
    CHECK_FALSE(approx_equal(q(1), q(1000000000001, 1000000000000)));
    CHECK(approx_le(Scalar::real(1.0 + 1e-14), Scalar::real(1.0)));
    CHECK(approx_sign(Scalar::real(1e-13)) == 0);
    CHECK(approx_sign(q(1, 1000000000000000)) == 1);
  }

  TEST_CASE("float tolerance is configurable") {
    const double saved = float_tolerance();
    CHECK(saved == 1e-12);
    set_float_tolerance(1e-6);
    CHECK(approx_equal(Scalar::real(1.0), Scalar::real(1.0 + 1e-8)));
    set_float_tolerance(saved);
    CHECK_THROWS_AS(set_float_tolerance(-1.0), DomainError);
  }

  TEST_CASE("kappa powers are powers of c") {
    const KappaContext ctx = test::c_of(11, 10);
    CHECK(ctx.kappa() == q(1331, 1000));
    CHECK(kappa_power(ctx, 2) == q(121, 100));
    CHECK(kappa_power(ctx, -4) == q(10000, 14641));
    for (int j = -7; j <= 7; ++j) {
      for (int k = -7; k <= 7; ++k) CHECK(kappa_power(ctx, j) * kappa_power(ctx, k) == kappa_power(ctx, j + k));
    }
  }

  TEST_CASE("kappa context construction") {
    CHECK(KappaContext::exact_from_kappa(Rational(1331, 1000)).c() == q(11, 10));
    CHECK_THROWS_AS(KappaContext::exact_from_kappa(Rational(2)), DomainError);
    CHECK_THROWS_AS(KappaContext::exact(Rational(1)), DomainError);
    CHECK_THROWS_AS(KappaContext::from_kappa(0.9), DomainError);
    CHECK(KappaContext::from_kappa(q(1331, 1000)).is_exact());
    const KappaContext floating = KappaContext::from_kappa(q(3, 2));
    CHECK_FALSE(floating.is_exact());
    CHECK(std::abs(floating.kappa().to_double() - 1.5) < 1e-14);
  }

  TEST_CASE("exact and float kappa powers agree") {
    for (const auto& [num, den] : {std::pair{11L, 10L}, {6L, 5L}, {5L, 4L}, {101L, 100L}}) {
      const KappaContext exact = test::c_of(num, den);
      const KappaContext floating = exact.to_float();
      for (int k = -9; k <= 9; ++k) {
        CHECK(approx_equal(to_float(kappa_power(exact, k)), kappa_power(floating, k), 1e-14));
      }
    }
  }
}
