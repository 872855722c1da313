#include "smpcert/selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "smpcert/certificate.hpp"
#include "smpcert/cli.hpp"
#include "smpcert/closed_forms.hpp"
#include "smpcert/errors.hpp"
#include "smpcert/families.hpp"
#include "smpcert/figures.hpp"
#include "smpcert/permutability.hpp"
#include "smpcert/polytope.hpp"

namespace smpcert {

namespace {

using Body = std::function<bool(std::string& detail)>;

struct Example {
  std::string name;
  Body body;
};

KappaContext c_of(long p, long q) { return KappaContext::exact(Rational(p, q)); }
Scalar q(long p, long den = 1) { return Scalar::exact(p, den); }

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

struct Built {
  MatrixSet set;
  NormalizedSet normalized;
  Polygon polygon;
  Images im;
};

Built build(const MatrixSet& set, const Scalar& mu) {
  NormalizedSet normalized = normalize(set);
  Polygon polygon = build_polygon(normalized, smp_eigenvectors(normalized), mu);
  Images im = images(polygon, normalized);
  return {set, std::move(normalized), std::move(polygon), std::move(im)};
}

Built main_at(long c_num, long c_den, const Scalar& mu) { return build(example_main_special(c_of(c_num, c_den)), mu); }

int cli(const std::vector<std::string>& args, std::string& out_text) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  out_text = out.str() + err.str();
  return code;
}

std::vector<Example> catalogue() {
  const Angle third = Angle::two_pi_over_three();
  const Angle pi_over_3 = Angle::from_radians(std::numbers::pi / 3.0);
  std::vector<Example> ex;

  ex.push_back({"kappa powers at c = 11/10: kappa = 1331/1000, kappa^(2/3) = 121/100", [](std::string&) {
                  const KappaContext ctx = c_of(11, 10);
                  return kappa_power(ctx, 3) == q(1331, 1000) && kappa_power(ctx, 2) == q(121, 100);
                }});
  ex.push_back({"BAA = [[kappa^2, 0], [kappa - 1/kappa, 1/kappa^2]]", [](std::string& d) {
                  const KappaContext ctx = c_of(11, 10);
                  const Scalar k = ctx.kappa();
                  const Mat2 baa = evaluate(Word::from_display("BAA"), example_main_special(ctx).pair);
                  d = serialize(baa);
                  return baa == Mat2(k * k, q(0), k - 1 / k, 1 / (k * k));
                }});
  ex.push_back({"rho(BAA) at kappa = 1.331 is 1.771561", [](std::string&) {
                  const Mat2 baa = evaluate(Word::from_display("BAA"), example_main_special(c_of(11, 10)).pair);
                  return compare_spectral_radius(baa, Rational(1771561, 1000000)) == 0;
                }});
  ex.push_back({"S^-1 A S = B for the main family similarity", [=](std::string&) {
                  const MatrixSet exact = example_main_special(c_of(11, 10));
                  const MatrixSet general = example_main(KappaContext::from_kappa(1.2), Angle::from_radians(1.0));
                  return similarity(*exact.tau_s, exact.pair.a) == exact.pair.b &&
                         approx_equal(similarity(*general.tau_s, general.pair.a), general.pair.b, 1e-12);
                }});
  ex.push_back({"T^-1 A T = B for the rotation family", [=](std::string&) {
                  const MatrixSet set = example_alt(KappaContext::from_kappa(1.2), pi_over_3);
                  return approx_equal(similarity(Mat2::quarter_turn(Backend::floating), set.pair.a), set.pair.b, 1e-12);
                }});
  ex.push_back({"unit eigenvectors v = (1, kappa/(1+kappa^2)) and w = (1, 0)", [](std::string&) {
                  for (const auto& ctx : {c_of(11, 10), c_of(6, 5), c_of(13, 10)}) {
                    const NormalizedSet n = normalize(example_main_special(ctx));
                    const SmpEigenvectors vw = smp_eigenvectors(n);
                    const SmpEigenvectors closed = eigenvectors_vw(ctx);
                    if (!(vw.v == closed.v && vw.w == closed.w && closed.w == Vec2(q(1), q(0)))) return false;
                  }
                  return true;
                }});
  ex.push_back({"AAA = BBB = I", [](std::string&) {
                  const MatrixSet set = example_main_special(c_of(11, 10));
                  const Mat2 id = Mat2::identity(Backend::exact);
                  return evaluate(Word::from_display("AAA"), set.pair) == id &&
                         evaluate(Word::from_display("BBB"), set.pair) == id;
                }});
  ex.push_back({"AABABB has factor counts (3, 3)", [](std::string&) {
                  return factor_counts(Word::from_display("AABABB")) == FactorCounts{3, 3};
                }});
  ex.push_back({"rotation family irreducible at phi = pi/3, reducible at phi = 0", [=](std::string&) {
                  const KappaContext k = KappaContext::from_kappa(1.2);
                  return is_irreducible(example_alt(k, pi_over_3).pair) &&
                         !is_irreducible(example_alt(k, Angle::from_radians(0.0)).pair);
                }});
  ex.push_back({"both families are permutable (equal trace and determinant)", [=](std::string&) {
                  return friedland_permutable(example_main_special(c_of(11, 10)).pair) &&
                         friedland_permutable(example_main_special(c_of(6, 5)).pair) &&
                         friedland_permutable(example_alt(KappaContext::from_kappa(1.2), pi_over_3).pair);
                }});
  ex.push_back({"tau swaps A and B in both families", [=](std::string&) {
                  const MatrixSet alt = example_alt(KappaContext::from_kappa(1.2), pi_over_3);
                  const MatrixSet main = example_main(KappaContext::from_kappa(1.2), Angle::from_radians(1.0));
                  const MatrixSet exact = example_main_special(c_of(11, 10));
                  return verify_tau(alt.pair, TauMap(*alt.tau_s)) && verify_tau(main.pair, TauMap(*main.tau_s)) &&
                         verify_tau(exact.pair, TauMap(*exact.tau_s));
                }});
  ex.push_back({"tau(BAA) = ABB", [](std::string&) {
                  return tau_word(Word::from_display("BAA")) == Word::from_display("ABB");
                }});
  ex.push_back({"BAA and ABB: isospectral, counts (2,1) vs (1,2), distinct classes", [](std::string& d) {
                  const MatrixSet set = example_main_special(c_of(11, 10));
                  const TauImageReport r = tau_image_check(set.pair, TauMap(*set.tau_s), Word::from_display("BAA"));
                  d = r.counts_differ ? "" : "counts equal";
                  return r.passed() && r.counts == FactorCounts{2, 1} && r.image_counts == FactorCounts{1, 2};
                }});
  ex.push_back({"rotation family at phi = 0 is flagged reducible", [](std::string&) {
                  return example_alt(KappaContext::from_kappa(1.2), Angle::from_radians(0.0)).reducible;
                }});
  ex.push_back({"main family at 2pi/3: A = [[0, -1/kappa], [kappa, -1]], exact", [=](std::string& d) {
                  const MatrixSet general = example_main(c_of(11, 10), third);
                  const MatrixSet special = example_main_special(c_of(11, 10));
                  d = serialize(special.pair.a);
                  return general.pair.a == special.pair.a && general.pair.b == special.pair.b &&
                         special.pair.a == Mat2(q(0), q(-1000, 1331), q(1331, 1000), q(-1));
                }});
  ex.push_back({"tr(BAA) = kappa^2 + 1/kappa^2 exactly", [](std::string&) {
                  const KappaContext ctx = c_of(11, 10);
                  const Scalar k2 = ctx.power(6);
                  return evaluate(Word::from_display("BAA"), example_main_special(ctx).pair).trace() == k2 + 1 / k2;
                }});
  ex.push_back({"normalized set: A~ = (100/121) A, A~^3 = B~^3 = I/lambda, rho(B~A~A~) = 1", [](std::string&) {
                  const MatrixSet set = example_main_special(c_of(11, 10));
                  const NormalizedSet n = normalize(set);
                  const Mat2 scaled = Mat2::identity(Backend::exact) / n.lambda;
                  return n.pair.a == q(100, 121) * set.pair.a && n.pair.a * n.pair.a * n.pair.a == scaled &&
                         n.pair.b * n.pair.b * n.pair.b == scaled &&
                         compare_spectral_radius(evaluate(Word::from_display("BAA"), n.pair), Rational(1)) == 0;
                }});
  ex.push_back({"eigenvector residual B~A~A~ v - v = 0 exactly", [](std::string&) {
                  const KappaContext ctx = c_of(11, 10);
                  const NormalizedSet n = normalize(example_main_special(ctx));
                  const Vec2 v = eigenvectors_vw(ctx).v;
                  return evaluate(Word::from_display("BAA"), n.pair) * v - v == Vec2::zero(Backend::exact);
                }});
  ex.push_back({"polygon: v2 = (1, 0), a1 = v9, cycle v1 -> v9 -> v5 -> v1", [](std::string&) {
                  const Built b = main_at(11, 10, q(5, 4));
                  const Mat2& a = b.normalized.pair.a;
                  const Mat2& bb = b.normalized.pair.b;
                  return b.polygon.vertex(2) == Vec2(q(1), q(0)) && b.im.a(1) == b.polygon.vertex(9) &&
                         a * b.polygon.vertex(9) == b.polygon.vertex(5) && bb * b.polygon.vertex(5) == b.polygon.vertex(1);
                }});
  ex.push_back({"images: b5 = v1, a5 = v1/lambda, b2 = v10/lambda", [](std::string&) {
                  const Built b = main_at(11, 10, q(5, 4));
                  const Scalar& l = b.normalized.lambda;
                  return b.im.b(5) == b.polygon.vertex(1) && b.im.a(5) == b.polygon.vertex(1) / l &&
                         b.im.b(2) == b.polygon.vertex(10) / l;
                }});
  ex.push_back({"sector coordinates of a4 in (v11, v12) and a6 in (v2, v3)", [](std::string&) {
                  const KappaContext ctx = c_of(11, 10);
                  const Scalar mu = q(5, 4);
                  const Built b = main_at(11, 10, mu);
                  const auto table = closed_form::sector_values(ctx, mu);
                  const SectorCoords a4 = sector_coords(b.polygon.vertex(11), b.polygon.vertex(12), b.im.a(4));
                  const SectorCoords a6 = sector_coords(b.polygon.vertex(2), b.polygon.vertex(3), b.im.a(6));
                  return a4.s == table[0].value && a4.t == table[1].value && a6.s == table[2].value &&
                         a6.t == table[3].value;
                }});
  ex.push_back({"h(v11, v12, a4) and h(v12, v2, v1) match their closed forms", [](std::string&) {
                  const KappaContext ctx = c_of(11, 10);
                  const Scalar mu = q(5, 4);
                  const Built b = main_at(11, 10, mu);
                  return triangle_h(b.polygon.vertex(11), b.polygon.vertex(12), b.im.a(4)) ==
                             closed_form::h_values(ctx, mu)[0].value &&
                         triangle_h(b.polygon.vertex(12), b.polygon.vertex(2), b.polygon.vertex(1)) ==
                             closed_form::convexity_values(ctx, mu)[0].value;
                }});
  ex.push_back({"thresholds at kappa = 1.331: 1, 1.21, 1.299757, 1.572706", [](std::string& d) {
                  const MuThresholds t = mu_thresholds(c_of(11, 10));
                  d = t.mu2.str() + ", " + t.mu3.str();
                  return t.mu0 == q(1) && t.mu1 == q(121, 100) && near(t.mu2.to_double(), 1.299757, 1e-6) &&
                         near(t.mu3.to_double(), 1.572706, 1e-6);
                }});
  ex.push_back({"mu0 < mu1 and mu2 < mu3 at kappa = 1.2", [](std::string&) {
                  const MuThresholds t = mu_thresholds(KappaContext::from_kappa(1.2));
                  return t.mu0 < t.mu1 && t.mu2 < t.mu3;
                }});
  ex.push_back({"omega1 = omega5 and omega2 = omega4", [](std::string&) {
                  for (const auto& ctx : {c_of(11, 10), c_of(6, 5), c_of(21, 20)}) {
                    const auto w = omega_thresholds(ctx);
                    if (!(w[0] == w[4] && w[1] == w[3])) return false;
                  }
                  return true;
                }});
  ex.push_back({"omega3 <= omega1 <= mu1 and mu2 <= omega2 <= omega6 at kappa = 1.331", [](std::string&) {
                  const KappaContext ctx = c_of(11, 10);
                  const auto w = omega_thresholds(ctx);
                  const MuThresholds t = mu_thresholds(ctx);
                  return w[2] <= w[0] && w[0] <= t.mu1 && t.mu2 <= w[1] && w[1] <= w[5];
                }});
  ex.push_back({"admissible interval at kappa = 1.331 is [1.21, 1.299757]", [](std::string&) {
                  const auto i = admissible_mu_interval(c_of(11, 10));
                  return i && i->lower == q(121, 100) && near(i->upper.to_double(), 1.299757, 1e-6);
                }});
  ex.push_back({"at kappa_max the interval shrinks to one point", [](std::string& d) {
                  const MuThresholds t = mu_thresholds(KappaContext::from_kappa(kappa_max(Family::main)));
                  d = "mu1 - mu2 = " + (t.mu1 - t.mu2).str();
                  return near(t.mu1.to_double(), t.mu2.to_double(), 1e-8);
                }});
  ex.push_back({"kappa_max(main) = 1.447892", [](std::string& d) {
                  const double k = kappa_max(Family::main);
                  d = std::to_string(k);
                  return near(k, 1.447892, 1e-5);
                }});
  ex.push_back({"kappa_max(alt) = 1.528580", [](std::string& d) {
                  const double k = kappa_max(Family::alt);
                  d = std::to_string(k);
                  return near(k, 1.528580, 1e-5);
                }});
  ex.push_back({"(v1, Tv2) = kappa mu/(kappa^2+1) and (v5, Tv6) = kappa^(7/3) mu/(kappa^2+1)", [](std::string&) {
                  const KappaContext ctx = c_of(11, 10);
                  const Scalar mu = q(5, 4);
                  const OrderReport r = vertex_order_check(main_at(11, 10, mu).polygon);
                  const auto closed = closed_form::vertex_products(ctx, mu);
                  return r.passed && r.products.front().value == closed.front().value &&
                         r.products.back().value == closed.back().value && closed.front().value.sign() > 0;
                }});
  ex.push_back({"vertex order holds at kappa = 1.05, mu = 0.5", [](std::string&) {
                  const MatrixSet set = example_main_special(KappaContext::from_kappa(1.05));
                  return vertex_order_check(build(set, Scalar::real(0.5)).polygon).passed;
                }});
  ex.push_back({"convex at mu = 1.25, not convex at mu = 1.04 (kappa = 1.331)", [](std::string&) {
                  return convexity_check(main_at(11, 10, q(5, 4)).polygon).passed &&
                         !convexity_check(main_at(11, 10, q(26, 25)).polygon).passed;
                }});
  ex.push_back({"all inclusions hold at mu = 1.25; a B~ image escapes at mu = 1.36", [](std::string&) {
                  const Built good = main_at(11, 10, q(5, 4));
                  const Built bad = main_at(11, 10, q(34, 25));
                  const InclusionReport r_bad = verify_inclusions(bad.polygon, bad.normalized);
                  bool b_escapes = false;
                  for (const auto& g : r_bad.gauges) b_escapes = b_escapes || (g.point[0] == 'b' && !g.passed);
                  return verify_inclusions(good.polygon, good.normalized).passed && !r_bad.passed && b_escapes;
                }});
  ex.push_back({"a4 and b3 lie in the sector (v11, v12)", [](std::string&) {
                  for (const auto& [cn, cd] : {std::pair{21L, 20L}, {11L, 10L}, {6L, 5L}}) {
                    for (const Scalar& mu : {q(1, 2), q(1), q(5, 4), q(3)}) {
                      const Built b = main_at(cn, cd, mu);
                      for (const Vec2& z : {b.im.a(4), b.im.b(3)}) {
                        const SectorCoords s = sector_coords(b.polygon.vertex(11), b.polygon.vertex(12), z);
                        if (s.s.sign() < 0 || s.t.sign() < 0) return false;
                      }
                    }
                  }
                  return true;
                }});
  ex.push_back({"gauge(A~ v5) = 1/lambda", [](std::string&) {
                  const Built b = main_at(11, 10, q(5, 4));
                  return polygon_gauge(b.polygon, b.im.a(5)) == 1 / b.normalized.lambda;
                }});
  ex.push_back({"certify main, c = 11/10, mu = 5/4: rho_bar = 121/100", [](std::string& d) {
                  const Certificate cert = certify_smp(Family::main, c_of(11, 10), q(5, 4));
                  if (!cert.certified()) d = "failed: " + cert.failed_checks().front();
                  return cert.certified() && *cert.rho_bar == q(121, 100) && cert.smp_classes.size() == 2;
                }});
  ex.push_back({"certify main, c = 11/10, mu = 34/25: inclusion failure", [](std::string& d) {
                  const Certificate cert = certify_smp(Family::main, c_of(11, 10), q(34, 25));
                  const auto failed = cert.failed_checks();
                  if (!failed.empty()) d = failed.front();
                  return !cert.certified() && !failed.empty() && failed.front().find("B~-inclusion") == 0;
                }});
  ex.push_back({"certify alt, kappa = 1.331, mu = 1.07 in float mode", [](std::string& d) {
                  const Certificate cert = certify_smp(Family::alt, KappaContext::from_kappa(1.331),
                                                       Scalar::real(1.07), std::nullopt, CertifyOptions{1e-9});
                  if (!cert.certified()) return false;
                  d = "rho_bar = " + cert.rho_bar->str();
                  const MatrixSet set = example_alt(KappaContext::from_kappa(1.331), Angle::two_pi_over_three());
                  const double expected = std::cbrt(spectral_radius(evaluate(Word::from_display("BAA"), set.pair)));
                  return near(cert.rho_bar->to_double(), expected, 1e-9);
                }});
  ex.push_back({"figures for mu = 1.25, 1.04 (main) and 1.07 (alt)", [](std::string&) {
                  const std::vector<Built> figures{
                      main_at(11, 10, q(5, 4)), main_at(11, 10, q(26, 25)),
                      build(example_alt(KappaContext::from_kappa(1.331), Angle::two_pi_over_three()), Scalar::real(1.07))};
                  for (const auto& b : figures) {
                    const std::string svg = render_svg(FigureSpec{.polygon = b.polygon, .images = b.im, .title = ""});
                    std::size_t vertices = 0, points = 0;
                    for (std::size_t p = svg.find("class=\"vertex\""); p != std::string::npos;
                         p = svg.find("class=\"vertex\"", p + 1)) {
                      ++vertices;
                    }
                    for (std::size_t p = svg.find("class=\"image\""); p != std::string::npos;
                         p = svg.find("class=\"image\"", p + 1)) {
                      ++points;
                    }
                    if (vertices != 12 || points != 24 || svg.find("</svg>") == std::string::npos) return false;
                  }
                  return !convexity_check(figures[1].polygon).passed;
                }});
  ex.push_back({"cli: certify --family main --c 11/10 --mu 5/4", [](std::string& d) {
                  std::string text;
                  const int code = cli({"certify", "--family", "main", "--c", "11/10", "--mu", "5/4"}, text);
                  d = "exit " + std::to_string(code);
                  return code == kExitOk && text.find("ρ̄ = 121/100") != std::string::npos;
                }});
  ex.push_back({"cli: certify --family main --c 11/10 --mu 34/25", [](std::string& d) {
                  std::string text;
                  const int code = cli({"certify", "--family", "main", "--c", "11/10", "--mu", "34/25"}, text);
                  d = "exit " + std::to_string(code);
                  return code == kExitCheckFailed && text.find("[FAIL] B~-inclusion of b3") != std::string::npos;
                }});
  ex.push_back({"cli: certify --family alt --kappa 1.331 --mu 1.07", [](std::string& d) {
                  std::string text;
                  const int code =
                      cli({"certify", "--family", "alt", "--kappa", "1.331", "--mu", "1.07", "--tol", "1e-9"}, text);
                  d = "exit " + std::to_string(code);
                  return code == kExitOk;
                }});
  ex.push_back({"cli: scan --family main and --family alt", [](std::string& d) {
                  std::string main_text, alt_text;
                  const int a = cli({"scan", "--family", "main"}, main_text);
                  const int b = cli({"scan", "--family", "alt"}, alt_text);
                  d = "exit " + std::to_string(a) + ", " + std::to_string(b);
                  return a == kExitOk && b == kExitOk && main_text.find("1.44789") != std::string::npos &&
                         alt_text.find("1.5285796") != std::string::npos;
                }});
  ex.push_back({"cli: scan --family main --kappa 1.331", [](std::string& d) {
                  std::string text;
                  const int code = cli({"scan", "--family", "main", "--kappa", "1.331", "--format", "csv"}, text);
                  d = "exit " + std::to_string(code);
                  return code == kExitOk && text.find("interval,,\"[1.21, 1.29975705") != std::string::npos ;
                }});
  ex.push_back({"cli: permutable --family main", [](std::string& d) {
                  std::string text;
                  const int code = cli({"permutable", "--family", "main"}, text);
                  d = "exit " + std::to_string(code);
                  return code == kExitOk && text.find("permutable    true") != std::string::npos &&
                         text.find("verified") != std::string::npos;
                }});
  return ex;
}

}  // namespace

std::vector<SelftestResult> run_selftest() {
  std::vector<SelftestResult> results;
  for (const auto& example : catalogue()) {
    SelftestResult r{example.name, false, {}};
    try {
      r.passed = example.body(r.detail);
    } catch (const std::exception& e) {
      r.detail = std::string("threw: ") + e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace smpcert
