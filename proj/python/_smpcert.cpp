#include <pybind11/gil_safe_call_once.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "smpcert/certificate.hpp"
#include "smpcert/cli.hpp"
#include "smpcert/errors.hpp"
#include "smpcert/figures.hpp"
#include "smpcert/permutability.hpp"
#include "smpcert/polytope.hpp"
#include "smpcert/words.hpp"

namespace py = pybind11;
using namespace smpcert;

namespace {

/// Exact scalars cross over as fractions.Fraction, float ones as float.
py::object to_python(const Scalar& s) {
  if (!s.is_exact()) return py::float_(s.to_double());
  return py::module_::import("fractions").attr("Fraction")(s.str());
}

Scalar from_python(const py::handle& value) {
  if (py::isinstance<py::bool_>(value)) throw py::type_error("expected a number, got bool");
  if (py::isinstance<py::float_>(value)) return Scalar::real(value.cast<double>());
  if (py::isinstance<py::int_>(value) || py::isinstance<py::str>(value) ||
      py::isinstance(value, py::module_::import("fractions").attr("Fraction"))) {
    return Scalar::parse(py::str(value).cast<std::string>());
  }
  throw py::type_error("expected int, float, str or fractions.Fraction");
}

py::object optional_scalar(const std::optional<Scalar>& s) { return s ? to_python(*s) : py::none(); }

KappaContext make_context(const py::object& c, const py::object& kappa) {
  if (!c.is_none() && !kappa.is_none()) throw DomainError("give c or kappa, not both");
  if (!c.is_none()) {
    const Scalar cs = from_python(c);
    if (cs.is_exact()) return KappaContext::exact(cs.rational());
    return KappaContext::from_kappa(cs.to_double() * cs.to_double() * cs.to_double());
  }
  if (!kappa.is_none()) return KappaContext::from_kappa(from_python(kappa));
  return KappaContext::exact(Rational(11, 10));
}

Family parse_family(const std::string& name) {
  if (name == "main") return Family::main;
  if (name == "alt") return Family::alt;
  if (name == "custom") return Family::custom;
  throw DomainError("family must be main, alt or custom");
}

MatrixSet make_set(const std::string& family, const py::object& c, const py::object& kappa, const py::object& phi,
                   const py::object& custom) {
  const Family f = parse_family(family);
  if (f == Family::custom) {
    if (custom.is_none()) throw DomainError("the custom family needs the eight matrix entries");
    return parse_custom_set(custom.cast<std::string>());
  }
  const KappaContext ctx = make_context(c, kappa);
  const Angle angle = phi.is_none() ? Angle::two_pi_over_three() : Angle::parse(py::str(phi).cast<std::string>());
  if (f == Family::main) {
    return example_main(angle.is_two_pi_over_three() ? ctx : ctx.to_float(), angle);
  }
  return example_alt(ctx, angle);
}

py::dict certificate_dict(const Certificate& cert) {
  py::dict d;
  d["family"] = std::string(to_string(cert.family));
  d["backend"] = cert.backend == Backend::exact ? "exact" : "float";
  d["mu"] = to_python(cert.mu);
  d["lambda"] = optional_scalar(cert.lambda);
  d["lambda_cbrt"] = optional_scalar(cert.lambda_cbrt);
  d["rho_bar"] = optional_scalar(cert.rho_bar);
  d["certified"] = cert.certified();
  py::list checks;
  for (const auto& check : cert.checks) checks.append(py::make_tuple(check.name, check.passed, check.detail));
  d["checks"] = checks;
  py::list vertices;
  if (cert.polygon) {
    for (const auto& v : cert.polygon->vertices()) vertices.append(py::make_tuple(to_python(v.x1()), to_python(v.x2())));
  }
  d["vertices"] = vertices;
  py::list classes;
  for (const auto& smp : cert.smp_classes) {
    classes.append(py::make_tuple(smp.representative.display(), smp.counts.a, smp.counts.b));
  }
  d["smp_classes"] = classes;
  d["text"] = cert.to_text();
  return d;
}

}  // namespace

PYBIND11_MODULE(_smpcert, m) {
  m.doc() = "Extremal polygon norms for 2x2 matrix pairs with two spectrum maximizing products";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result([&] { return py::exception<Error>(m, "SmpcertError"); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error.get_stored(), e.what());
    }
  });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line; returns (exit code, stdout, stderr).");

  m.def(
      "certify",
      [](const py::object& mu, const std::string& family, const py::object& c, const py::object& kappa,
         const py::object& phi, const py::object& custom) {
        const MatrixSet set = make_set(family, c, kappa, phi, custom);
        Scalar m = from_python(mu);
        if (set.backend() == Backend::floating) m = m.to_float();
        return certificate_dict(certify_smp(set, m));
      },
      py::arg("mu"), py::kw_only(), py::arg("family") = "main", py::arg("c") = py::none(),
      py::arg("kappa") = py::none(), py::arg("phi") = py::none(), py::arg("custom") = py::none());

  m.def(
      "bounds",
      [](int max_n, const std::string& family, const py::object& c, const py::object& kappa, const py::object& phi,
         const py::object& custom) {
        const MatrixSet set = make_set(family, c, kappa, phi, custom);
        const OperatorNorm norm = max_row_sum_norm();
        py::list rows;
        for (const BoundsRow& row : bounds_table(set.pair, max_n, &norm)) {
          py::list words;
          for (const Word& w : row.maximizers) words.append(w.display());
          rows.append(py::make_tuple(row.n, row.rho_bar_n, row.rho_n ? py::object(py::float_(*row.rho_n)) : py::none(),
                                     words));
        }
        return rows;
      },
      py::arg("max_n"), py::kw_only(), py::arg("family") = "main", py::arg("c") = py::none(),
      py::arg("kappa") = py::none(), py::arg("phi") = py::none(), py::arg("custom") = py::none(),
      "Rows (n, rho_bar_n, rho_n in the max-row-sum norm, maximizing necklaces).");

  m.def(
      "mu_thresholds",
      [](const py::object& c, const py::object& kappa) {
        const MuThresholds t = mu_thresholds(make_context(c, kappa));
        return py::make_tuple(to_python(t.mu0), to_python(t.mu1), to_python(t.mu2), to_python(t.mu3));
      },
      py::kw_only(), py::arg("c") = py::none(), py::arg("kappa") = py::none(),
      "(mu0, mu1, mu2, mu3) for the main family at 2pi/3.");

  m.def(
      "admissible_interval",
      [](const py::object& c, const py::object& kappa) -> py::object {
        const auto interval = admissible_mu_interval(make_context(c, kappa));
        if (!interval) return py::none();
        return py::make_tuple(to_python(interval->lower), to_python(interval->upper));
      },
      py::kw_only(), py::arg("c") = py::none(), py::arg("kappa") = py::none());

  m.def(
      "kappa_max", [](const std::string& family) { return kappa_max(parse_family(family)); },
      py::arg("family") = "main");

  m.def(
      "permutable",
      [](const std::string& family, const py::object& c, const py::object& kappa, const py::object& phi,
         const py::object& custom) {
        return friedland_permutable(make_set(family, c, kappa, phi, custom).pair);
      },
      py::kw_only(), py::arg("family") = "main", py::arg("c") = py::none(), py::arg("kappa") = py::none(),
      py::arg("phi") = py::none(), py::arg("custom") = py::none(),
      "Trace/determinant criterion; raises SmpcertError for reducible pairs.");

  m.def(
      "figure_svg",
      [](const py::object& mu, const std::string& family, const py::object& c, const py::object& kappa) {
        const MatrixSet set = make_set(family, c, kappa, py::none(), py::none());
        const NormalizedSet normalized = normalize(set);
        Scalar m = from_python(mu);
        if (normalized.pair.backend() == Backend::floating) m = m.to_float();
        const Polygon polygon = build_polygon(normalized, smp_eigenvectors(normalized), m);
        return render_svg(FigureSpec{.polygon = polygon, .images = images(polygon, normalized), .title = ""});
      },
      py::arg("mu"), py::kw_only(), py::arg("family") = "main", py::arg("c") = py::none(),
      py::arg("kappa") = py::none());
}
