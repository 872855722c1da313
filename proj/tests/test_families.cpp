#include <cmath>
#include <numbers>

#include "doctest.h"
#include "smpcert/errors.hpp"
#include "smpcert/families.hpp"
#include "smpcert/permutability.hpp"
#include "support.hpp"

using namespace smpcert;
using test::q;

namespace {

const std::vector<std::pair<long, long>> kRationalC{{11, 10}, {6, 5}, {13, 10}};

Mat2 w(const char* display, const MatrixPair& set) { return evaluate(Word::from_display(display), set); }

}  // namespace

TEST_SUITE("families") {
  TEST_CASE("main family entries") {
    const MatrixSet set = example_main_special(test::c_of(11, 10));
    CHECK(set.backend() == Backend::exact);
    CHECK(set.pair.a == Mat2(q(0), q(-1000, 1331), q(1331, 1000), q(-1)));
    CHECK(set.pair.b == Mat2(q(0), q(-1331, 1000), q(1000, 1331), q(-1)));
    CHECK(set.family == Family::main);
    CHECK_FALSE(set.reducible);
    const MatrixSet general = example_main(test::c_of(11, 10), Angle::two_pi_over_three());
    CHECK(general.pair.a == set.pair.a);
    CHECK(general.pair.b == set.pair.b);
  }

  TEST_CASE("triple products in closed form, exact") {
    for (const auto& [num, den] : kRationalC) {
      const KappaContext ctx = test::c_of(num, den);
      const Scalar k = ctx.kappa();
      const MatrixPair set = example_main_special(ctx).pair;
      const Mat2 baa = w("BAA", set), bba = w("BBA", set);
      CHECK(baa == Mat2(k * k, q(0), k - 1 / k, 1 / (k * k)));
      CHECK(bba == Mat2(k * k, 1 / k - k, q(0), 1 / (k * k)));
      // x^2 - (k^2 + k^-2) x + 1 annihilates k^2: lambda = kappa^2 is an eigenvalue of both.
      const Scalar lambda = k * k;
      for (const Mat2& m : {baa, bba}) {
        CHECK(m.det() == q(1));
        CHECK(m.trace() == lambda + 1 / lambda);
        CHECK(lambda * lambda - m.trace() * lambda + m.det() == q(0));
      }
      for (const char* triple : {"AAB", "ABA", "ABB", "BAB", "BBA", "BAA"}) {
        CHECK(w(triple, set).trace() == lambda + 1 / lambda);
        CHECK(w(triple, set).det() == q(1));
      }
    }
  }

  TEST_CASE("cube identities, exact") {
    for (const auto& [num, den] : kRationalC) {
      const KappaContext ctx = test::c_of(num, den);
      const MatrixSet set = example_main_special(ctx);
      const Mat2 id = Mat2::identity(Backend::exact);
      CHECK(w("AAA", set.pair) == id);
      CHECK(w("BBB", set.pair) == id);
      const NormalizedSet n = normalize(set);
      CHECK(n.lambda == ctx.power(6));
      CHECK(n.lambda_cbrt == ctx.power(2));
      CHECK(n.lambda_cbrt * n.lambda_cbrt * n.lambda_cbrt == n.lambda);
      CHECK(w("AAA", n.pair) == id / n.lambda);
      CHECK(w("BBB", n.pair) == id / n.lambda);
      CHECK(compare_spectral_radius(w("BAA", n.pair), Rational(1)) == 0);
      CHECK(compare_spectral_radius(w("BBA", n.pair), Rational(1)) == 0);
    }
  }

  TEST_CASE("eigenvectors v and w, exact residuals") {
    for (const auto& [num, den] : kRationalC) {
      const KappaContext ctx = test::c_of(num, den);
      const NormalizedSet n = normalize(example_main_special(ctx));
      const SmpEigenvectors closed = eigenvectors_vw(ctx);
      const SmpEigenvectors solved = smp_eigenvectors(n);
      const Scalar k = ctx.kappa();
      CHECK(closed.v == Vec2(q(1), k / (1 + k * k)));
      CHECK(closed.w == Vec2(q(1), q(0)));
      CHECK(solved.v == closed.v);
      CHECK(solved.w == closed.w);
      CHECK(w("BAA", n.pair) * closed.v - closed.v == Vec2::zero(Backend::exact));
      CHECK(w("BBA", n.pair) * closed.w - closed.w == Vec2::zero(Backend::exact));
    }
  }

  TEST_CASE("alt family is normalized by rho(BAA)") {
    const MatrixSet set = example_alt(KappaContext::from_kappa(1.331), Angle::two_pi_over_three());
    CHECK(set.backend() == Backend::floating);
    CHECK(set.pair.a.det().to_double() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(set.pair.a.trace().to_double() == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(verify_tau(set.pair, TauMap(Mat2::quarter_turn(Backend::floating))));
    const NormalizedSet n = normalize(set);
    CHECK(n.lambda.to_double() == doctest::Approx(1.6436089822564957).epsilon(1e-13));
    CHECK(n.lambda_cbrt.to_double() == doctest::Approx(1.1801381103921769).epsilon(1e-13));
    CHECK(spectral_radius(w("BAA", n.pair)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(spectral_radius(w("BBA", n.pair)) == doctest::Approx(1.0).epsilon(1e-13));
    const Mat2 scaled = Mat2::identity(Backend::floating) / n.lambda;
    CHECK(approx_equal(w("AAA", n.pair), scaled, 1e-12));
    CHECK(approx_equal(w("BBB", n.pair), scaled, 1e-12));
    const SmpEigenvectors vw = smp_eigenvectors(n);
    CHECK(approx_equal(w("BAA", n.pair) * vw.v, vw.v, 1e-12));
    CHECK(approx_equal(w("BBA", n.pair) * vw.w, vw.w, 1e-12));
  }

  TEST_CASE("exact and float main family agree") {
    for (double kappa : {1.05, 1.2, 1.331, 1.44, 1.9}) {
      const KappaContext f = KappaContext::from_kappa(kappa);
      const NormalizedSet n = normalize(example_main_special(f));
      CHECK(n.lambda.to_double() == doctest::Approx(kappa * kappa).epsilon(1e-13));
      const SmpEigenvectors closed = eigenvectors_vw(f);
      const SmpEigenvectors solved = smp_eigenvectors(n);
      CHECK(approx_equal(closed.v, solved.v, 1e-10));
      CHECK(approx_equal(closed.w, solved.w, 1e-10));
    }
  }

  TEST_CASE("angles") {
    CHECK(Angle::parse("2pi/3").is_two_pi_over_three());
    CHECK(Angle::parse("1.0").radians() == 1.0);
    CHECK(Angle::from_radians(0.0).is_degenerate());
    CHECK(Angle::from_radians(std::numbers::pi).is_degenerate());
    CHECK_FALSE(Angle::from_radians(std::numbers::pi / 3).is_degenerate());
    CHECK_THROWS_AS(Angle::parse("x"), ParseError);
    const KappaContext ctx = test::c_of(11, 10);
    const MatrixSet third = example_main(ctx, Angle::from_radians(std::numbers::pi / 3));
    CHECK(third.backend() == Backend::floating);
    CHECK(is_irreducible(third.pair));
    // At phi = 0 the main pair is two Jordan blocks with different eigenlines.
    const MatrixSet flat = example_main(ctx, Angle::from_radians(0.0));
    CHECK_FALSE(flat.reducible);
    CHECK(is_irreducible(flat.pair));
    const MatrixSet rotation = example_alt(ctx, Angle::from_radians(0.0));
    CHECK(rotation.reducible);
    CHECK_FALSE(is_irreducible(rotation.pair));
    CHECK(Angle::two_pi_over_three().two_cos(Backend::exact) == q(-1));
    CHECK_THROWS_AS(Angle::from_radians(1.0).two_cos(Backend::exact), DomainError);
  }

  TEST_CASE("family names") {
    CHECK(parse_family("main") == Family::main);
    CHECK(parse_family("alt") == Family::alt);
    CHECK(parse_family("custom") == Family::custom);
    CHECK(to_string(Family::alt) == "alt");
    CHECK_THROWS_AS(parse_family("other"), ParseError);
  }

  TEST_CASE("custom set file format") {
    const MatrixSet set = parse_custom_set(
        "# main family, c = 11/10\n"
        "0 -1000/1331 1331/1000 -1   # A\n"
        "0 -1331/1000\n1000/1331 -1\n");
    CHECK(set.family == Family::custom);
    CHECK(set.pair.a == example_main_special(test::c_of(11, 10)).pair.a);
    CHECK(set.pair.b == example_main_special(test::c_of(11, 10)).pair.b);
    CHECK(parse_custom_set("0.5 0.0 0.0 1.0 1.0 0.0 0.0 2.0").backend() == Backend::floating);
    CHECK_THROWS_AS(parse_custom_set("1 2 3 4 5 6 7"), ParseError);
    CHECK_THROWS_AS(parse_custom_set("1 2 3 4 5 6 7 8 9"), ParseError);
    CHECK_THROWS_AS(parse_custom_set("1 2 3 4 5 6 7 8.0"), ParseError);
    CHECK_THROWS_AS(parse_custom_set("1 2 3 4 5 6 7 x"), ParseError);
    const NormalizedSet n = normalize(set);
    CHECK(n.lambda.to_double() == doctest::Approx(1.771561).epsilon(1e-13));
  }
}
