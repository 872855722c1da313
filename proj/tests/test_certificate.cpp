#include <cmath>
#include <algorithm>
#include <chrono>

#include "doctest.h"
#include "smpcert/certificate.hpp"
#include "smpcert/errors.hpp"
#include "smpcert/polytope.hpp"
#include "support.hpp"

using namespace smpcert;
using test::q;

namespace {

bool has_failure(const Certificate& c, const std::string& prefix) {
  const auto failed = c.failed_checks();
  return std::any_of(failed.begin(), failed.end(), [&](const std::string& f) { return f.rfind(prefix, 0) == 0; });
}

}  // namespace

TEST_SUITE("certificate") {
  TEST_CASE("exact certificate at c = 11/10, mu = 5/4") {
    const auto start = std::chrono::steady_clock::now();
    const Certificate c = certify_smp(Family::main, test::c_of(11, 10), q(5, 4));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(seconds < 1.0);
    CHECK(c.certified());
    CHECK(c.failed_checks().empty());
    CHECK(c.backend == Backend::exact);
    REQUIRE(c.rho_bar.has_value());
    CHECK(*c.rho_bar == q(121, 100));
    CHECK(*c.lambda == q(1771561, 1000000));
    REQUIRE(c.smp_classes.size() == 2);
    CHECK(c.smp_classes[0].representative.display() == "AAB");
    CHECK(c.smp_classes[0].counts == FactorCounts{2, 1});
    CHECK(c.smp_classes[1].representative.display() == "ABB");
    CHECK(c.smp_classes[1].counts == FactorCounts{1, 2});
    CHECK(c.checks.size() > 30);
    for (const auto& check : c.checks) CHECK_MESSAGE(check.passed, check.name);
    const std::string text = c.to_text();
    CHECK(text.find("ρ̄ = 121/100") != std::string::npos);
    CHECK(text.find("{AAB} (2,1) {ABB} (1,2)") != std::string::npos);
    const std::string kv = c.to_key_value();
    CHECK(kv.find("rho_bar = 121/100") != std::string::npos);
    CHECK(kv.find("smp_classes = AAB;ABB") != std::string::npos);
    CHECK(kv.find("= fail") == std::string::npos);
  }

  TEST_CASE("the b3 note records the label discrepancy") {
    const Certificate c = certify_smp(Family::main, test::c_of(11, 10), q(5, 4));
    const bool noted = std::any_of(c.notes.begin(), c.notes.end(),
                                   [](const std::string& n) { return n.find("t(v2,v3,b3)") != std::string::npos; });
    CHECK(noted);
  }

  TEST_CASE("negative control below the interval fails convexity") {
    const Certificate c = certify_smp(Family::main, KappaContext::from_kappa(1.331), Scalar::real(1.04));
    CHECK_FALSE(c.certified());
    CHECK_FALSE(c.rho_bar.has_value());
    CHECK(has_failure(c, "convexity at v1"));
    CHECK(has_failure(c, "convexity at v3"));
    CHECK(has_failure(c, "convexity at v5"));
    CHECK_FALSE(has_failure(c, "convexity at v2"));
    CHECK(has_failure(c, "A~-inclusion of a6"));
  }

  TEST_CASE("negative control above the interval fails the B~ inclusion") {
    for (const Certificate& c : {certify_smp(Family::main, KappaContext::from_kappa(1.331), Scalar::real(1.36)),
                                 certify_smp(Family::main, test::c_of(11, 10), q(34, 25))}) {
      CHECK_FALSE(c.certified());
      CHECK(has_failure(c, "B~-inclusion of b3"));
      CHECK_FALSE(has_failure(c, "convexity"));
      CHECK_FALSE(has_failure(c, "A~-inclusion"));
    }
  }

  TEST_CASE("alt family float certificate") {
    const Certificate c = certify_smp(Family::alt, KappaContext::from_kappa(1.331), Scalar::real(1.07), std::nullopt,
                                      CertifyOptions{.tolerance = 1e-9});
    CHECK(c.certified());
    for (const auto& check : c.checks) CHECK_MESSAGE(check.passed, check.name);
    REQUIRE(c.rho_bar.has_value());
    CHECK(c.rho_bar->to_double() == doctest::Approx(1.1801381103921769).epsilon(1e-12));
    CHECK(c.backend == Backend::floating);
  }

  TEST_CASE("endpoints of the admissible interval are certified") {
    const KappaContext ctx = test::c_of(11, 10);
    const MuThresholds t = mu_thresholds(ctx);
    CHECK(certify_smp(Family::main, ctx, t.mu1).certified());
    CHECK(certify_smp(Family::main, ctx, t.mu2).certified());
    CHECK_FALSE(certify_smp(Family::main, ctx, t.mu2 + q(1, 1000000000)).certified());
  }

  TEST_CASE("certified at ten grid points of the interval, three values of c") {
    for (const auto& [num, den] : {std::pair{21L, 20L}, {11L, 10L}, {28L, 25L}}) {
      const KappaContext ctx = test::c_of(num, den);
      const MuThresholds t = mu_thresholds(ctx);
      for (int k = 0; k <= 9; ++k) {
        const Scalar mu = t.mu1 + (t.mu2 - t.mu1) * q(k, 9);
        CHECK_MESSAGE(certify_smp(Family::main, ctx, mu).certified(), mu.str());
      }
    }
  }

  TEST_CASE("custom set equal to the main family certifies exactly") {
    const MatrixSet set = parse_custom_set("0 -1000/1331 1331/1000 -1  0 -1331/1000 1000/1331 -1");
    const Certificate c = certify_smp(set, q(5, 4));
    for (const auto& check : c.checks) CHECK_MESSAGE(check.passed, check.name);
    CHECK(c.certified());
    REQUIRE(c.lambda.has_value());
    CHECK(*c.lambda == q(1771561, 1000000));
    CHECK(*c.lambda_cbrt == q(121, 100));
  }

  TEST_CASE("exact custom set without a rational cube root falls back to float") {
    const MatrixSet set = parse_custom_set("0 -5/6 6/5 -1  0 -6/5 5/6 -1");
    const Certificate c = certify_smp(set, q(23, 20));
    for (const auto& check : c.checks) CHECK_MESSAGE(check.passed, check.name);
    CHECK(c.certified());
    REQUIRE(c.lambda.has_value());
    CHECK(c.lambda->backend() == Backend::floating);
    CHECK(approx_equal(*c.lambda_cbrt, Scalar::real(std::cbrt(1.44)), 1e-12));
    CHECK_FALSE(certify_smp(set, q(27, 20)).certified());
  }

  TEST_CASE("errors become failed checks or exceptions as documented") {
    const Certificate neg = certify_smp(Family::main, test::c_of(11, 10), q(-1));
    CHECK_FALSE(neg.certified());
    CHECK(has_failure(neg, "mu positive"));
    CHECK_THROWS_AS(certify_smp(example_main_special(test::c_of(11, 10)), Scalar::real(1.25)), BackendMismatch);
    const Certificate converted = certify_smp(example_main_special(KappaContext::from_kappa(1.331)), q(5, 4));
    CHECK(converted.certified());
    CHECK(converted.mu.backend() == Backend::floating);
  }

  TEST_CASE("certification is deterministic") {
    const std::string a = certify_smp(Family::main, test::c_of(11, 10), q(5, 4)).to_key_value();
    const std::string b = certify_smp(Family::main, test::c_of(11, 10), q(5, 4)).to_key_value();
    CHECK(a == b);
  }
}
