#include "smpcert/certificate.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "smpcert/closed_forms.hpp"
#include "smpcert/errors.hpp"
#include "smpcert/permutability.hpp"

namespace smpcert {

namespace {

bool same(const Scalar& a, const Scalar& b, double tolerance) {
  return a.is_exact() ? a == b : approx_equal(a, b, tolerance);
}

bool same(const Mat2& a, const Mat2& b, double tolerance) {
  return a.backend() == Backend::exact ? a == b : approx_equal(a, b, tolerance);
}

bool same(const Vec2& a, const Vec2& b, double tolerance) {
  return a.backend() == Backend::exact ? a == b : approx_equal(a, b, tolerance);
}

/// rho(m) == bound, exactly when possible.
bool radius_equals(const Mat2& m, const Scalar& bound, double tolerance) {
  if (m.backend() == Backend::exact && bound.is_exact()) return compare_spectral_radius(m, bound.rational()) == 0;
  return approx_equal(Scalar::real(spectral_radius(m)), bound.to_float(), tolerance);
}

std::string slug(const std::string& name) {
  std::string out;
  bool pending = false;
  for (char ch : name) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      if (pending && !out.empty()) out += '_';
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      pending = false;
    } else {
      pending = true;
    }
  }
  return out;
}

bool is_main_special(const MatrixSet& set) {
  return set.family == Family::main && set.kappa && set.phi && set.phi->is_two_pi_over_three();
}

class Runner {
 public:
  Runner(Certificate& cert, double tolerance) : cert_(cert), tolerance_(tolerance) {}

  bool check(std::string name, bool passed, std::string detail = {}) {
    cert_.checks.push_back({std::move(name), passed, std::move(detail)});
    return passed;
  }

  /// Runs a stage; any library error becomes a failed check named `name`.
  template <class F>
  bool stage(const std::string& name, F&& body) {
    try {
      body();
      return true;
    } catch (const Error& e) {
      check(name, false, e.what());
      return false;
    }
  }

  void audit(std::string name, Scalar value) { cert_.audit.push_back({std::move(name), std::move(value)}); }

  double tolerance() const { return tolerance_; }

 private:
  Certificate& cert_;
  double tolerance_;
};

void closed_form_checks(Runner& run, Certificate& cert, const MatrixSet& set, const Polygon& polygon,
                        const InclusionReport& inclusions, const ConvexityReport& convexity,
                        const OrderReport& order) {
  const KappaContext& ctx = *set.kappa;
  const double tol = run.tolerance();
  const Scalar& mu = polygon.mu();

  const auto table = [&](const std::string& name, const auto& expected, const std::vector<Scalar>& actual) {
    std::string mismatches;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (!same(expected[i].value, actual[i], tol)) mismatches += (mismatches.empty() ? "" : ", ") + expected[i].name;
    }
    run.check(name, mismatches.empty(), mismatches.empty() ? "" : "mismatch: " + mismatches);
  };

  std::vector<Scalar> products;
  for (const auto& p : order.products) products.push_back(p.value);
  table("closed form: vertex products", closed_form::vertex_products(ctx, mu), products);

  std::vector<Scalar> st;
  std::vector<Scalar> h;
  for (const auto& n : inclusions.nonobvious) {
    st.push_back(n.coords.s);
    st.push_back(n.coords.t);
    h.push_back(n.h);
  }
  table("closed form: sector coordinates", closed_form::sector_values(ctx, mu), st);
  table("closed form: triangle values", closed_form::h_values(ctx, mu), h);
  table("closed form: convexity values", closed_form::convexity_values(ctx, mu),
        std::vector<Scalar>(convexity.h.begin(), convexity.h.end()));

  // The last s/t row of the published table is labeled t(v2, v3, b3); only
  // t(v2, v3, b7) actually equals 1/kappa^4.
  const Images im = images(polygon, normalize(set));
  const Scalar one_over_k4 = Scalar::integer(1, ctx.backend()) / ctx.power(12);
  const Scalar t_b3 = sector_coords(polygon.vertex(2), polygon.vertex(3), im.b(3)).t;
  const Scalar& t_b7 = inclusions.nonobvious[3].coords.t;
  run.audit("t(v2,v3,b3)", t_b3);
  std::string note = "1/kappa^4 = " + one_over_k4.str() + ": t(v2,v3,b7) ";
  note += same(t_b7, one_over_k4, tol) ? "matches" : "does not match";
  note += ", t(v2,v3,b3) ";
  note += same(t_b3, one_over_k4, tol) ? "matches" : "does not match";
  cert.notes.push_back(std::move(note));
}

}  // namespace

std::vector<std::string> Certificate::failed_checks() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.name);
  }
  return out;
}

Certificate certify_smp(const MatrixSet& set, const Scalar& mu_in, const CertifyOptions& options) {
  if (set.backend() == Backend::exact && !mu_in.is_exact()) {
    throw BackendMismatch("an exact matrix set needs an exact mu");
  }
  const Scalar mu = set.backend() == Backend::floating ? mu_in.to_float() : mu_in;

  Certificate cert;
  cert.family = set.family;
  cert.backend = set.backend();
  cert.mu = mu;
  if (set.kappa) {
    cert.c = set.kappa->c();
    cert.kappa = set.kappa->kappa();
  }
  if (set.phi) cert.phi = set.phi->str();
  Runner run(cert, options.tolerance);
  const double tol = options.tolerance;

  if (!run.check("mu positive", mu.sign() > 0, "mu = " + mu.str())) return cert;

  std::optional<NormalizedSet> normalized;
  if (!run.stage("normalization", [&] { normalized = normalize(set); })) return cert;
  cert.lambda = normalized->lambda;
  cert.lambda_cbrt = normalized->lambda_cbrt;
  const MatrixPair& np = normalized->pair;
  const Backend backend = np.backend();

  const Mat2 scaled_identity = Mat2::identity(backend) / normalized->lambda;
  run.check("cube identities", same(np.a * np.a * np.a, scaled_identity, tol) &&
                                   same(np.b * np.b * np.b, scaled_identity, tol),
            "A~^3 = B~^3 = I/lambda");
  const Word aab = Word::from_display("AAB");
  const Word abb = Word::from_display("ABB");
  run.check("rho(BAA) = rho(BBA) = lambda",
            radius_equals(evaluate(aab, set.pair), normalized->lambda, tol) &&
                radius_equals(evaluate(abb, set.pair), normalized->lambda, tol));

  std::optional<SmpEigenvectors> vw;
  if (!run.stage("eigenvectors", [&] { vw = smp_eigenvectors(*normalized); })) return cert;
  if (is_main_special(set)) {
    const SmpEigenvectors closed = eigenvectors_vw(*set.kappa);
    run.check("closed form: eigenvectors", same(vw->v, closed.v, tol) && same(vw->w, closed.w, tol),
              "v = (1, kappa/(1+kappa^2)), w = (1, 0)");
  }

  // A custom exact set whose lambda has no exact cube root is normalized in float.
  const Scalar polygon_mu = backend == Backend::floating ? mu.to_float() : mu;
  if (!run.stage("polygon construction", [&] { cert.polygon = build_polygon(*normalized, *vw, polygon_mu); }))
    return cert;
  const Polygon& polygon = *cert.polygon;

  std::optional<OrderReport> order;
  if (run.stage("vertex order", [&] { order = vertex_order_check(polygon, tol); })) {
    std::string failing;
    for (const auto& p : order->products) {
      run.audit("(v" + std::to_string(p.i) + ",Tv" + std::to_string(p.j) + ")", p.value);
      if (!p.positive) failing += " (v" + std::to_string(p.i) + ",Tv" + std::to_string(p.j) + ")";
    }
    run.check("vertex order", order->passed, order->passed ? "all 15 products positive" : "not positive:" + failing);
  }

  std::optional<ConvexityReport> convexity;
  if (run.stage("convexity", [&] { convexity = convexity_check(polygon, tol); })) {
    for (int i = 1; i <= 6; ++i) {
      const std::string h = "h(v" + std::to_string((i + 10) % 12 + 1) + ",v" + std::to_string(i + 1) + ",v" +
                            std::to_string(i) + ")";
      const auto k = static_cast<std::size_t>(i - 1);
      run.audit(h, convexity->h[k]);
      run.check("convexity at v" + std::to_string(i), convexity->ok[k], h + " = " + convexity->h[k].str() + " >= 1");
    }
  }

  std::optional<InclusionReport> inclusions;
  if (run.stage("inclusions", [&] { inclusions = verify_inclusions(polygon, *normalized, tol); })) {
    for (const auto& id : inclusions->identities) run.check("identity " + id.name, id.passed);
    for (const auto& n : inclusions->nonobvious) {
      const std::string sector = "v" + std::to_string(n.sector_first) + ",v" + std::to_string(n.sector_second);
      run.audit("s(" + sector + "," + n.point + ")", n.coords.s);
      run.audit("t(" + sector + "," + n.point + ")", n.coords.t);
      run.audit("h(" + sector + "," + n.point + ")", n.h);
      const std::string map = n.point[0] == 'a' ? "A~" : "B~";
      std::string detail = "s = " + n.coords.s.str() + ", t = " + n.coords.t.str() + ", h = " + n.h.str();
      if (!n.in_sector) detail += " (outside the sector)";
      else if (!n.in_triangle) detail += " > 1 (" + map + " maps v" + n.point.substr(1) + " outside S)";
      run.check(map + "-inclusion of " + n.point + " in triangle (" + sector + ",0)", n.passed(), detail);
    }
    if (inclusions->gauges.empty()) {
      run.check("gauge of all images <= 1", false, "S is not a convex unit ball");
    } else {
      std::string failing;
      for (const auto& g : inclusions->gauges) {
        run.audit("gauge(" + g.point + ")", g.gauge);
        if (!g.passed) failing += " " + g.point;
      }
      run.check("gauge of all images <= 1", failing.empty(), failing.empty() ? "" : "escaping:" + failing);
      const Scalar one = Scalar::integer(1, backend);
      run.check("induced norms of A~ and B~ equal 1",
                same(*inclusions->induced_norm_a, one, tol) && same(*inclusions->induced_norm_b, one, tol),
                "||A~|| = " + inclusions->induced_norm_a->str() + ", ||B~|| = " + inclusions->induced_norm_b->str());
    }
  }

  if (is_main_special(set) && order && convexity && inclusions) {
    run.stage("closed forms", [&] { closed_form_checks(run, cert, set, polygon, *inclusions, *convexity, *order); });
  }

  if (set.tau_s) {
    run.stage("tau", [&] {
      const TauMap tau(*set.tau_s);
      if (!run.check("tau swaps A and B", verify_tau(set.pair, tau))) return;
      const TauImageReport report = tau_image_check(set.pair, tau, aab);
      run.check("AAB and its tau image ABB are isospectral with distinct classes", report.passed());
    });
  }

  if (std::all_of(cert.checks.begin(), cert.checks.end(), [](const CheckResult& c) { return c.passed; })) {
    cert.rho_bar = normalized->lambda_cbrt;
    cert.smp_classes = {{aab, factor_counts(aab)}, {abb, factor_counts(abb)}};
  }
  return cert;
}

Certificate certify_smp(Family family, const KappaContext& kappa, const Scalar& mu, const std::optional<Angle>& phi,
                        const CertifyOptions& options) {
  const Angle angle = phi.value_or(Angle::two_pi_over_three());
  switch (family) {
    case Family::main:
      return certify_smp(example_main(kappa, angle), mu, options);
    case Family::alt:
      return certify_smp(example_alt(kappa, angle), mu, options);
    case Family::custom:
      break;
  }
  throw DomainError("custom sets are certified through certify_smp(MatrixSet, mu)");
}

std::string Certificate::to_text() const {
  std::ostringstream out;
  out << "family        " << to_string(family) << '\n';
  out << "backend       " << to_string(backend) << '\n';
  if (c) out << "c             " << *c << '\n';
  if (kappa) out << "kappa         " << *kappa << '\n';
  if (phi) out << "phi           " << *phi << '\n';
  out << "mu            " << mu << '\n';
  if (lambda) out << "lambda        " << *lambda << '\n';
  if (lambda_cbrt) out << "lambda^(1/3)  " << *lambda_cbrt << '\n';
  if (polygon) {
    out << "\nvertices\n";
    for (int i = 1; i <= 6; ++i) out << "  v" << i << " = " << polygon->vertex(i) << '\n';
  }
  out << "\nchecks\n";
  for (const auto& check : checks) {
    out << "  [" << (check.passed ? "pass" : "FAIL") << "] " << check.name;
    if (!check.detail.empty()) out << "  (" << check.detail << ')';
    out << '\n';
  }
  if (!audit.empty()) {
    out << "\naudit\n";
    for (const auto& entry : audit) out << "  " << entry.name << " = " << entry.value << '\n';
  }
  for (const auto& note : notes) out << "\nnote: " << note << '\n';
  out << '\n';
  if (rho_bar) {
    out << "result        certified\n";
    out << "ρ̄ = " << *rho_bar << '\n';
    out << "SMP classes  ";
    for (const auto& cls : smp_classes) {
      out << " {" << cls.representative.display() << "} (" << cls.counts.a << ',' << cls.counts.b << ')';
    }
    out << '\n';
  } else {
    out << "result        not certified\n";
    out << "failed       ";
    for (const auto& name : failed_checks()) out << " [" << name << ']';
    out << '\n';
  }
  return out.str();
}

std::string Certificate::to_key_value() const {
  std::ostringstream out;
  out << "family = " << to_string(family) << '\n';
  out << "backend = " << to_string(backend) << '\n';
  if (c) out << "c = " << *c << '\n';
  if (kappa) out << "kappa = " << *kappa << '\n';
  if (phi) out << "phi = " << *phi << '\n';
  out << "mu = " << mu << '\n';
  if (lambda) out << "lambda = " << *lambda << '\n';
  if (lambda_cbrt) out << "lambda_cbrt = " << *lambda_cbrt << '\n';
  if (polygon) {
    for (int i = 1; i <= 12; ++i) {
      out << "vertex.v" << i << " = " << polygon->vertex(i).x1() << ' ' << polygon->vertex(i).x2() << '\n';
    }
  }
  for (const auto& check : checks) out << "check." << slug(check.name) << " = " << (check.passed ? "pass" : "fail") << '\n';
  for (const auto& entry : audit) out << "audit." << entry.name << " = " << entry.value << '\n';
  out << "certified = " << (certified() ? "true" : "false") << '\n';
  if (rho_bar) {
    out << "rho_bar = " << *rho_bar << '\n';
    std::string classes;
    for (const auto& cls : smp_classes) {
      classes += (classes.empty() ? "" : ";") + cls.representative.display();
    }
    out << "smp_classes = " << classes << '\n';
  }
  return out.str();
}

}  // namespace smpcert
