#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "smpcert/errors.hpp"
#include "smpcert/families.hpp"
#include "smpcert/permutability.hpp"
#include "support.hpp"

using namespace smpcert;
using test::q;

namespace {

Mat2 random_invertible(std::mt19937_64& rng) {
  for (;;) {
    Mat2 p = oracle::random_exact_matrix(rng, 9);
    if (!p.det().is_zero()) return p;
  }
}

Mat2 random_upper(std::mt19937_64& rng) {
  return {oracle::random_rational(rng, 9), oracle::random_rational(rng, 9), q(0), oracle::random_rational(rng, 9)};
}

}  // namespace

TEST_SUITE("permutability") {
  TEST_CASE("pairs with a common eigenvector are reducible") {
    std::mt19937_64 rng(29);
    for (int k = 0; k < 200; ++k) {
      const Mat2 p = random_invertible(rng);
      const MatrixPair set{p * random_upper(rng) * p.inverse(), p * random_upper(rng) * p.inverse()};
      CHECK_FALSE(is_irreducible(set));
      CHECK_FALSE(is_irreducible(MatrixPair{to_float(set.a), to_float(set.b)}));
    }
  }

  TEST_CASE("generic integer pairs are irreducible") {
    std::mt19937_64 rng(31);
    int irreducible = 0;
    for (int k = 0; k < 200; ++k) {
      const MatrixPair set{oracle::random_exact_matrix(rng, 9), oracle::random_exact_matrix(rng, 9)};
      if (is_irreducible(set)) ++irreducible;
    }
    CHECK(irreducible >= 195);
  }

  TEST_CASE("irreducibility edge cases") {
    const Mat2 id = Mat2::identity(Backend::exact);
    const Mat2 rot = Mat2::quarter_turn(Backend::exact);
    CHECK_FALSE(is_irreducible({id, id}));
    CHECK(is_irreducible({id, rot}));
    CHECK(is_irreducible({rot, Mat2(q(1), q(0), q(0), q(2))}));
    CHECK_FALSE(is_irreducible({Mat2(q(1), q(0), q(0), q(2)), Mat2(q(3), q(0), q(0), q(-1))}));
    CHECK_THROWS_AS(is_irreducible({id, to_float(id)}), BackendMismatch);
  }

  TEST_CASE("Friedland criterion") {
    const MatrixSet main = example_main_special(test::c_of(11, 10));
    CHECK(friedland_permutable(main.pair));
    const auto tuple = friedland_5tuple(main.pair.a, main.pair.b);
    CHECK(tuple[0] == q(-1));
    CHECK(tuple[0] == tuple[2]);
    CHECK(tuple[1] == tuple[3]);
    CHECK(tuple[4] == evaluate(Word::from_display("AB"), main.pair).trace());
    CHECK_FALSE(friedland_permutable(MatrixPair{main.pair.a, q(2) * (main.pair.a * main.pair.a)}));
    CHECK_THROWS_AS(friedland_permutable({main.pair.a, main.pair.a}), DomainError);
    CHECK_THROWS_AS(friedland_permutable({Mat2(q(1), q(0), q(0), q(2)), Mat2(q(2), q(0), q(0), q(1))}),
                    CriterionInapplicable);
  }

  TEST_CASE("Friedland agrees with the explicit tau on both families across kappa") {
    for (int step = 0; step <= 8; ++step) {
      const double kappa = 1.05 + 0.05 * step;
      const KappaContext ctx = KappaContext::from_kappa(kappa);
      for (const MatrixSet& set : {example_main_special(ctx), example_alt(ctx, Angle::two_pi_over_three())}) {
        REQUIRE(set.tau_s.has_value());
        CHECK(verify_tau(set.pair, TauMap(*set.tau_s)));
        CHECK(friedland_permutable(set.pair));
      }
    }
  }

  TEST_CASE("tau is multiplicative on words") {
    const MatrixSet set = example_main_special(test::c_of(6, 5));
    const TauMap tau(*set.tau_s);
    std::mt19937_64 rng(37);
    for (int k = 0; k < 200; ++k) {
      const Word w = oracle::random_word(rng, 1 + k % 10);
      CHECK(tau(evaluate(w, set.pair)) == evaluate(tau_word(w), set.pair));
    }
    CHECK_THROWS_AS(TauMap(Mat2(q(1), q(1), q(1), q(1))), SingularMatrix);
    CHECK_FALSE(verify_tau(set.pair, TauMap(Mat2::identity(Backend::exact))));
  }

  TEST_CASE("odd words and their tau images are isospectral, 1000 random cases") {
    const MatrixSet set = example_main_special(test::c_of(11, 10));
    const TauMap tau(*set.tau_s);
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> half(1, 7);
    int failures = 0;
    for (int k = 0; k < 1000; ++k) {
      const Word w = oracle::random_word(rng, 2 * half(rng) + 1);
      const TauImageReport r = tau_image_check(set.pair, tau, w);
      const bool ok = r.odd_length && r.isospectral && r.product.trace() == r.image_product.trace() &&
                      r.product.det() == r.image_product.det() && r.counts.a == r.image_counts.b &&
                      r.counts.a != r.counts.b && r.normal_form != r.image_normal_form && r.passed();
      if (!ok) ++failures;
    }
    CHECK(failures == 0);
  }

  TEST_CASE("tau image report details") {
    const MatrixSet set = example_main_special(test::c_of(11, 10));
    const TauImageReport r = tau_image_check(set.pair, TauMap(*set.tau_s), Word::from_display("BAA"));
    CHECK(r.image.display() == "ABB");
    CHECK(r.counts == FactorCounts{2, 1});
    CHECK(r.image_counts == FactorCounts{1, 2});
    CHECK(r.normal_form.display() == "AAB");
    CHECK(r.image_normal_form.display() == "ABB");
    CHECK(r.passed());
    CHECK(r.to_key_value().find("passed") != std::string::npos);
    const TauImageReport even = tau_image_check(set.pair, TauMap(*set.tau_s), Word::from_display("AB"));
    CHECK_FALSE(even.odd_length);
    CHECK(even.passed());
    CHECK_THROWS_AS(tau_image_check(set.pair, TauMap(Mat2::identity(Backend::exact)), Word::from_display("A")),
                    DomainError);
  }
}
