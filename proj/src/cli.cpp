#include "smpcert/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "smpcert/certificate.hpp"
#include "smpcert/errors.hpp"
#include "smpcert/families.hpp"
#include "smpcert/figures.hpp"
#include "smpcert/permutability.hpp"
#include "smpcert/polytope.hpp"
#include "smpcert/selftest.hpp"
#include "smpcert/words.hpp"

namespace smpcert {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

/// A check ran and did not pass; the report was already printed.
class CheckFailed : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string family = "main";
  std::string c;
  std::string kappa;
  std::string mu;
  std::string phi;
  std::string backend;
  std::string config;
  std::string out;
  std::string norm = "maxrow";
  std::string format;
  int max_n = 8;
  double tol = 0.0;
};

struct Resolved {
  Family family = Family::main;
  MatrixSet set;
  std::optional<Scalar> mu;
  /// Float backend chosen implicitly by a decimal or non-cube input.
  bool implicit_float = false;
};

class ToleranceGuard {
 public:
  explicit ToleranceGuard(double tol) : saved_(float_tolerance()) {
    if (tol > 0.0) set_float_tolerance(tol);
  }
  ~ToleranceGuard() { set_float_tolerance(saved_); }
  ToleranceGuard(const ToleranceGuard&) = delete;
  ToleranceGuard& operator=(const ToleranceGuard&) = delete;

 private:
  double saved_;
};

Scalar parse_flag(const std::string& name, const std::string& text) {
  try {
    return Scalar::parse(text);
  } catch (const ParseError& e) {
    throw UsageError("--" + name + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

MatrixSet to_float_set(MatrixSet set) {
  set.pair = {to_float(set.pair.a), to_float(set.pair.b)};
  if (set.tau_s) set.tau_s = to_float(*set.tau_s);
  if (set.kappa) set.kappa = set.kappa->to_float();
  return set;
}

Resolved resolve(const RunConfig& cfg) {
  Resolved r;
  try {
    r.family = parse_family(cfg.family);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  if (!cfg.backend.empty() && cfg.backend != "exact" && cfg.backend != "float") {
    throw UsageError("--backend must be exact or float");
  }
  const bool force_exact = cfg.backend == "exact";
  const bool force_float = cfg.backend == "float";
  if (!cfg.c.empty() && !cfg.kappa.empty()) throw UsageError("--c and --kappa are mutually exclusive");

  std::optional<Scalar> c;
  std::optional<Scalar> kappa;
  if (!cfg.c.empty()) c = parse_flag("c", cfg.c);
  if (!cfg.kappa.empty()) kappa = parse_flag("kappa", cfg.kappa);
  if (!cfg.mu.empty()) r.mu = parse_flag("mu", cfg.mu);
  std::optional<Angle> phi;
  if (!cfg.phi.empty()) {
    try {
      phi = Angle::parse(cfg.phi);
    } catch (const Error& e) {
      throw UsageError(std::string("--phi: ") + e.what());
    }
  }

  const bool decimal = (c && !c->is_exact()) || (kappa && !kappa->is_exact()) || (r.mu && !r.mu->is_exact());
  if (force_exact && decimal) throw UsageError("the exact backend needs rational inputs written as p/q");
  if (force_exact && phi && !phi->is_two_pi_over_three()) {
    throw UsageError("the exact backend supports phi = 2pi/3 only");
  }
  if (r.mu && r.mu->sign() <= 0) throw UsageError("--mu must be positive");

  if (r.family == Family::custom) {
    if (c || kappa || phi) throw UsageError("--c, --kappa and --phi do not apply to the custom family");
    if (cfg.config.empty()) throw UsageError("the custom family needs --config FILE");
    try {
      r.set = parse_custom_set(read_file(cfg.config));
    } catch (const ParseError& e) {
      throw UsageError(cfg.config + ": " + e.what());
    }
    if (force_exact && r.set.backend() != Backend::exact) throw UsageError("the custom set contains decimal entries");
    r.implicit_float = r.set.backend() == Backend::floating || decimal;
  } else {
    if (!cfg.config.empty()) throw UsageError("--config applies to the custom family only");
    std::optional<KappaContext> ctx;
    try {
      if (c) {
        ctx = c->is_exact() ? KappaContext::exact(c->rational()) : KappaContext::from_kappa(c->to_double() *
                                                                                            c->to_double() *
                                                                                            c->to_double());
      } else if (kappa) {
        ctx = KappaContext::from_kappa(*kappa);
        if (kappa->is_exact() && !ctx->is_exact()) {
          if (force_exact) throw UsageError("--kappa " + cfg.kappa + " is not the cube of a rational; use --c");
        }
      } else {
        ctx = KappaContext::exact(Rational(11, 10));
      }
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    r.implicit_float = !ctx->is_exact() || decimal || (phi && !phi->is_two_pi_over_three()) ||
                       r.family == Family::alt;
    if (decimal || force_float) ctx = ctx->to_float();
    const Angle angle = phi.value_or(Angle::two_pi_over_three());
    r.set = r.family == Family::main ? example_main(*ctx, angle) : example_alt(*ctx, angle);
  }

  if (force_float) {
    r.set = to_float_set(std::move(r.set));
    r.implicit_float = false;
  } else if (decimal && r.set.backend() == Backend::exact) {
    r.set = to_float_set(std::move(r.set));
  }
  if (r.mu && r.set.backend() == Backend::floating) r.mu = r.mu->to_float();
  return r;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + cfg.out + "'");
  file << text;
  if (!file.flush()) throw Error("failed writing '" + cfg.out + "'");
}

std::string describe(const Resolved& r) {
  std::ostringstream s;
  s << to_string(r.family);
  if (r.set.kappa) {
    s << ", kappa = " << r.set.kappa->kappa();
    if (r.set.kappa->is_exact()) s << " (c = " << r.set.kappa->c() << ')';
  }
  if (r.set.phi) s << ", phi = " << r.set.phi->str();
  s << ", " << to_string(r.set.backend()) << " backend";
  return s.str();
}

Polygon polygon_for(const Resolved& r) {
  if (!r.mu) throw UsageError("--mu is required here");
  const NormalizedSet normalized = normalize(r.set);
  return build_polygon(normalized, smp_eigenvectors(normalized), *r.mu);
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.max_n < 1) throw UsageError("--max-n must be at least 1");
  const BoundsOptions options;
  if (cfg.max_n > options.max_length) {
    throw UsageError("--max-n exceeds the enumeration cap of " + std::to_string(options.max_length));
  }
  if (cfg.norm != "maxrow" && cfg.norm != "polygon") throw UsageError("--norm must be maxrow or polygon");
  const std::string format = cfg.format.empty() ? "table" : cfg.format;
  if (format != "table" && format != "csv") throw UsageError("--format must be table or csv for bounds");
  const Resolved r = resolve(cfg);

  OperatorNorm norm;
  if (cfg.norm == "polygon") {
    try {
      norm = polygon_operator_norm(polygon_for(r));
    } catch (const NonConvexPolygon& e) {
      throw CheckFailed(std::string("polygon norm unavailable: ") + e.what());
    }
  } else {
    norm = max_row_sum_norm();
  }
  const auto rows = bounds_table(r.set.pair, cfg.max_n, &norm, options);
  if (format == "csv") {
    emit(cfg, format_bounds_csv(rows), out);
  } else {
    std::string text = "# " + describe(r) + ", norm " + cfg.norm + "\n";
    emit(cfg, text + format_bounds_text(rows), out);
  }
  return kExitOk;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string format = cfg.format.empty() ? "text" : cfg.format;
  if (format != "text" && format != "kv") throw UsageError("--format must be text or kv for certify");
  const Resolved r = resolve(cfg);
  if (!r.mu) throw UsageError("certify needs --mu");
  if (r.implicit_float && r.set.backend() == Backend::floating) {
    err << "warning: float backend in use; the certificate is a floating-point check, not an exact proof\n";
  }
  CertifyOptions options;
  if (cfg.tol > 0.0) options.tolerance = cfg.tol;
  const Certificate cert = certify_smp(r.set, *r.mu, options);
  emit(cfg, format == "kv" ? cert.to_key_value() : cert.to_text(), out);
  return cert.certified() ? kExitOk : kExitCheckFailed;
}

std::string bound_text(const Threshold& t) { return t.kind == BoundKind::lower ? "lower bound" : "upper bound"; }

std::string decimal(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

struct ScanRow {
  std::string name;
  std::string exact;  ///< empty on the float backend
  std::string value;
  std::string condition;
};

ScanRow scan_row(std::string name, const Scalar& x, std::string condition) {
  return {std::move(name), x.is_exact() ? x.str() : "", decimal(x.to_double()), std::move(condition)};
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const std::string format = cfg.format.empty() ? "table" : cfg.format;
  if (format != "table" && format != "csv") throw UsageError("--format must be table or csv for scan");
  const Resolved r = resolve(cfg);
  if (r.family == Family::custom) throw UsageError("scan applies to the main and alt families only");
  if (r.set.phi && !r.set.phi->is_two_pi_over_three()) throw UsageError("scan uses phi = 2pi/3");

  std::vector<ScanRow> rows;
  const bool have_kappa = !cfg.c.empty() || !cfg.kappa.empty();
  std::string agreement;
  if (have_kappa) {
    const KappaContext& ctx = *r.set.kappa;
    const NormalizedSet normalized = normalize(r.set);
    const SmpEigenvectors vw = smp_eigenvectors(normalized);
    const auto solved = inclusion_thresholds(normalized, vw);
    const auto solved_convexity = convexity_thresholds(normalized, vw);
    const std::array<std::string, 4> points{"a4", "a6", "b3", "b7"};
    std::array<Scalar, 4> mus;
    std::array<Scalar, 6> omegas;
    if (r.family == Family::main) {
      const MuThresholds t = mu_thresholds(ctx);
      mus = {t.mu0, t.mu1, t.mu2, t.mu3};
      omegas = omega_thresholds(ctx);
      bool agree = true;
      for (std::size_t i = 0; i < 4; ++i) agree = agree && approx_equal(to_float(mus[i]), to_float(solved[i].value), 1e-9);
      for (std::size_t i = 0; i < 6; ++i) {
        agree = agree && approx_equal(to_float(omegas[i]), to_float(solved_convexity[i].value), 1e-9);
      }
      agreement = std::string("closed forms agree with thresholds solved from the polygon: ") + (agree ? "yes" : "NO");
    } else {
      for (std::size_t i = 0; i < 4; ++i) mus[i] = solved[i].value;
      for (std::size_t i = 0; i < 6; ++i) omegas[i] = solved_convexity[i].value;
    }
    rows.push_back(scan_row("kappa", ctx.kappa(), ""));
    for (std::size_t i = 0; i < 4; ++i) {
      rows.push_back(scan_row("mu" + std::to_string(i), mus[i], bound_text(solved[i]) + ", " + points[i] + " in S"));
    }
    for (std::size_t i = 0; i < 6; ++i) {
      rows.push_back(scan_row("omega" + std::to_string(i + 1), omegas[i],
                              bound_text(solved_convexity[i]) + ", convex at v" + std::to_string(i + 1)));
    }
    if (mus[1] <= mus[2]) {
      rows.push_back({"interval", mus[1].is_exact() ? "[" + mus[1].str() + ", " + mus[2].str() + "]" : "",
                      "[" + decimal(mus[1].to_double()) + ", " + decimal(mus[2].to_double()) + "]", "admissible mu"});
    } else {
      rows.push_back({"interval", "", "empty", "admissible mu"});
    }
  }
  rows.push_back({"kappa_max", "", decimal(kappa_max(r.family)), "mu1 = mu2"});

  std::ostringstream text;
  if (format == "csv") {
    text << "quantity,exact,value,condition\n";
    for (const auto& row : rows) {
      text << row.name << ',' << row.exact << ",\"" << row.value << "\"," << row.condition << '\n';
    }
  } else {
    text << "# " << to_string(r.family) << " family, phi = 2pi/3\n";
    for (const auto& row : rows) {
      text << std::left << std::setw(11) << row.name << std::setw(32) << row.value << std::setw(28) << row.condition
           << row.exact << '\n';
    }
    if (!agreement.empty()) text << agreement << '\n';
  }
  emit(cfg, text.str(), out);
  return kExitOk;
}

int cmd_permutable(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Resolved r = resolve(cfg);
  const MatrixPair& pair = r.set.pair;
  std::ostringstream text;
  text << "set           " << describe(r) << '\n';
  text << "A             " << pair.a << '\n';
  text << "B             " << pair.b << '\n';
  text << "tr A, det A   " << pair.a.trace() << ", " << pair.a.det() << '\n';
  text << "tr B, det B   " << pair.b.trace() << ", " << pair.b.det() << '\n';
  const auto tuple = friedland_5tuple(pair.a, pair.b);
  text << "5-tuple       (" << tuple[0] << ", " << tuple[1] << ", " << tuple[2] << ", " << tuple[3] << ", " << tuple[4]
       << ")\n";
  bool permutable = false;
  try {
    permutable = friedland_permutable(pair);
    text << "irreducible   yes\n";
    text << "permutable    " << (permutable ? "true" : "false") << '\n';
  } catch (const CriterionInapplicable& e) {
    text << "irreducible   no\n";
    text << "permutable    " << e.what() << '\n';
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  bool tau_ok = true;
  if (r.set.tau_s) {
    const TauMap tau(*r.set.tau_s);
    tau_ok = verify_tau(pair, tau);
    text << "tau           S = " << *r.set.tau_s << (tau_ok ? "  verified" : "  FAILED") << '\n';
    if (tau_ok) {
      const TauImageReport report = tau_image_check(pair, tau, Word::from_display("BAA"));
      text << report.to_text();
    }
  }
  emit(cfg, text.str(), out);
  return permutable && tau_ok ? kExitOk : kExitCheckFailed;
}

int cmd_figure(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Resolved r = resolve(cfg);
  const Polygon polygon = polygon_for(r);
  const NormalizedSet normalized = normalize(r.set);
  FigureSpec spec{.polygon = polygon, .images = images(polygon, normalized), .title = ""};
  std::ostringstream title;
  title << "S (solid), A~S (dashed), B~S (dash-dot): " << describe(r) << ", mu = " << *r.mu;
  spec.title = title.str();
  const std::string path = cfg.out.empty() ? "figure.svg" : cfg.out;
  render(spec, path);
  out << "wrote " << path << '\n';
  return kExitOk;
}

int cmd_selftest(const RunConfig&, std::ostream& out, std::ostream&) {
  const auto results = run_selftest();
  std::size_t passed = 0;
  for (const auto& res : results) {
    out << (res.passed ? "[pass] " : "[FAIL] ") << res.name;
    if (!res.detail.empty()) out << "  (" << res.detail << ')';
    out << '\n';
    if (res.passed) ++passed;
  }
  out << passed << '/' << results.size() << " passed\n";
  return passed == results.size() ? kExitOk : kExitCheckFailed;
}

void add_parameter_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--family", cfg.family, "main, alt or custom")->capture_default_str();
  cmd->add_option("--c", cfg.c, "cube root of kappa, e.g. 11/10 (exact)");
  cmd->add_option("--kappa", cfg.kappa, "kappa, e.g. 1331/1000 or 1.331");
  cmd->add_option("--phi", cfg.phi, "rotation angle: 2pi/3 or radians");
  cmd->add_option("--backend", cfg.backend, "exact or float");
  cmd->add_option("--config", cfg.config, "custom matrix set file");
  cmd->add_option("--tol", cfg.tol, "float tolerance");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Spectrum maximizing product certification for pairs of 2x2 matrices", "smpcert"};
  app.require_subcommand(1);

  auto* bounds = app.add_subcommand("bounds", "rho_bar_n and rho_n for n = 1..max-n");
  add_parameter_flags(bounds, cfg);
  bounds->add_option("--mu", cfg.mu, "scaling parameter (for --norm polygon)");
  bounds->add_option("--max-n", cfg.max_n, "largest word length")->capture_default_str();
  bounds->add_option("--norm", cfg.norm, "maxrow or polygon")->capture_default_str();
  bounds->add_option("--format", cfg.format, "table or csv");
  bounds->add_option("--out", cfg.out, "write to file");

  auto* certify = app.add_subcommand("certify", "certify the SMPs with the dodecagon norm");
  add_parameter_flags(certify, cfg);
  certify->add_option("--mu", cfg.mu, "scaling parameter");
  certify->add_option("--format", cfg.format, "text or kv");
  certify->add_option("--out", cfg.out, "write to file");

  auto* scan = app.add_subcommand("scan", "admissible mu thresholds and kappa_max");
  add_parameter_flags(scan, cfg);
  scan->add_option("--format", cfg.format, "table or csv");
  scan->add_option("--out", cfg.out, "write to file");

  auto* permutable = app.add_subcommand("permutable", "trace/determinant permutability and tau check");
  add_parameter_flags(permutable, cfg);
  permutable->add_option("--out", cfg.out, "write to file");

  auto* figure = app.add_subcommand("figure", "SVG of S and its images");
  add_parameter_flags(figure, cfg);
  figure->add_option("--mu", cfg.mu, "scaling parameter")->required();
  figure->add_option("--out", cfg.out, "SVG path (default figure.svg)");

  auto* selftest = app.add_subcommand("selftest", "run the built-in reference examples");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const ToleranceGuard guard(cfg.tol);
  using Handler = std::function<int(const RunConfig&, std::ostream&, std::ostream&)>;
  const std::vector<std::pair<CLI::App*, Handler>> handlers{
      {bounds, cmd_bounds}, {certify, cmd_certify}, {scan, cmd_scan},
      {permutable, cmd_permutable}, {figure, cmd_figure}, {selftest, cmd_selftest},
  };
  try {
    for (const auto& [cmd, handler] : handlers) {
      if (cmd->parsed()) return handler(cfg, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CheckFailed& e) {
    err << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const BackendMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace smpcert
