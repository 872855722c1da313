#include "smpcert/polytope.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <utility>

#include "smpcert/errors.hpp"

namespace smpcert {

namespace {

// Eigenvector and recursion residuals on the float backend.
constexpr double kResidualTolerance = 1e-10;

bool same(const Vec2& a, const Vec2& b, double tolerance) {
  return a.backend() == Backend::exact ? a == b : approx_equal(a, b, tolerance);
}

std::string vname(int i) { return "v" + std::to_string(i); }

double max_abs(const Vec2& x) { return std::max(std::abs(x.x1().to_double()), std::abs(x.x2().to_double())); }

void require_nondegenerate(const Scalar& d, const Vec2& x, const Vec2& y) {
  if (d.is_zero()) throw DegenerateSector("sector spanned by collinear vectors");
  if (!d.is_exact() && std::abs(d.to_double()) <= 1e-14 * max_abs(x) * max_abs(y)) {
    throw DegenerateSector("sector spanned by numerically collinear vectors");
  }
}

Scalar positive_mu(const Scalar& mu) {
  if (mu.sign() <= 0) throw DomainError("mu must be positive, got " + mu.str());
  return mu;
}

}  // namespace

Polygon::Polygon(std::array<Vec2, 12> vertices, Scalar mu) : vertices_(std::move(vertices)), mu_(std::move(mu)) {
  for (const auto& v : vertices_) {
    if (v.backend() != mu_.backend()) throw BackendMismatch("polygon vertices and mu use different backends");
  }
}

Polygon build_polygon(const NormalizedSet& normalized, const SmpEigenvectors& vw, const Scalar& mu_in) {
  const Scalar mu = positive_mu(mu_in);
  const Mat2& a = normalized.pair.a;
  const Mat2& b = normalized.pair.b;
  if (a.backend() != mu.backend() || vw.v.backend() != mu.backend() || vw.w.backend() != mu.backend()) {
    throw BackendMismatch("polygon inputs use different backends");
  }
  if (!same(b * (a * (a * vw.v)), vw.v, kResidualTolerance)) throw DomainError("v is not fixed by the normalized BAA");
  if (!same(b * (b * (a * vw.w)), vw.w, kResidualTolerance)) throw DomainError("w is not fixed by the normalized BBA");

  std::array<Vec2, 12> v;
  v[0] = mu * vw.v;
  v[1] = vw.w;
  v[2] = -(a * v[0]);
  v[3] = -(a * v[1]);
  v[4] = -(a * v[2]);
  v[5] = -(b * v[3]);
  for (int i = 0; i < 6; ++i) v[static_cast<std::size_t>(i + 6)] = -v[static_cast<std::size_t>(i)];

  // The same vertices written directly in terms of v and w.
  const std::array<std::pair<int, Vec2>, 4> closed{{
      {3, -mu * (a * vw.v)},
      {4, -(a * vw.w)},
      {5, mu * (a * (a * vw.v))},
      {6, b * (a * vw.w)},
  }};
  for (const auto& [index, expected] : closed) {
    if (!same(v[static_cast<std::size_t>(index - 1)], expected, kResidualTolerance)) {
      throw InternalError("vertex " + vname(index) + " disagrees with its closed form in v, w");
    }
  }
  return Polygon(v, mu);
}

Images images(const Polygon& polygon, const NormalizedSet& normalized) {
  Images out;
  for (std::size_t i = 0; i < 12; ++i) {
    out.a_images[i] = normalized.pair.a * polygon.vertices()[i];
    out.b_images[i] = normalized.pair.b * polygon.vertices()[i];
  }
  return out;
}

SectorCoords sector_coords(const Vec2& x, const Vec2& y, const Vec2& z) {
  const Scalar d = skew(x, y);
  require_nondegenerate(d, x, y);
  return {skew(z, y) / d, skew(z, x) / (-d)};
}

Scalar triangle_h(const Vec2& x, const Vec2& y, const Vec2& z) {
  const Scalar d = skew(y, x);
  require_nondegenerate(d, x, y);
  return skew(y - x, z) / d;
}

// ---------------------------------------------------------------------------

namespace {

void require_kappa(const KappaContext& kappa) {
  if (!(kappa.c() > 1)) throw DomainError("kappa must exceed 1");
}

}  // namespace

MuThresholds mu_thresholds(const KappaContext& kappa) {
  require_kappa(kappa);
  const Scalar k2 = kappa.power(6);
  const Scalar k4 = kappa.power(12);
  const Scalar mu2 = (k2 + 1) * (k2 + 1) / (k4 + k2 + 1);
  return {Scalar::integer(1, kappa.backend()), kappa.power(2), mu2, kappa.power(2) * mu2};
}

std::array<Scalar, 6> omega_thresholds(const KappaContext& kappa) {
  require_kappa(kappa);
  const Scalar k2 = kappa.power(6);
  const Scalar k4 = kappa.power(12);
  const Scalar w1 = (k2 + 1) / (kappa.power(4) + 1);
  const Scalar w2 = (k2 + 1) * (k2 + kappa.power(2)) / (k4 + k2 + 1);
  const Scalar w3 = kappa.power(2) * (k2 + 1) / (kappa.power(8) + 1);
  const Scalar w6 = (k2 + 1) * (kappa.power(8) + 1) / (k4 + k2 + 1);
  return {w1, w2, w3, w2, w1, w6};
}

std::optional<MuInterval> admissible_mu_interval(const KappaContext& kappa) {
  const MuThresholds t = mu_thresholds(kappa);
  if (t.mu1 > t.mu2) return std::nullopt;
  return MuInterval{t.mu1, t.mu2};
}

Construction construct(Family family, const KappaContext& kappa) {
  require_kappa(kappa);
  MatrixSet set = [&] {
    switch (family) {
      case Family::main:
        return example_main_special(kappa);
      case Family::alt:
        return example_alt(kappa, Angle::two_pi_over_three());
      case Family::custom:
        break;
    }
    throw DomainError("thresholds are defined for the main and alt families only");
  }();
  NormalizedSet normalized = normalize(set);
  SmpEigenvectors vw = smp_eigenvectors(normalized);
  return {std::move(set), std::move(normalized), std::move(vw)};
}

namespace {

/// A condition h(x, y, z) <= 1 (or >= 1) on the polygon at a given mu,
/// reported as the numerator and denominator of h.
using HParts = std::function<std::pair<Scalar, Scalar>(const Polygon&, const Images&)>;

HParts h_parts(std::function<Vec2(const Polygon&)> x, std::function<Vec2(const Polygon&)> y,
               std::function<Vec2(const Polygon&, const Images&)> z) {
  return [x, y, z](const Polygon& p, const Images& im) {
    const Vec2 xv = x(p);
    const Vec2 yv = y(p);
    return std::pair{skew(yv - xv, z(p, im)), skew(yv, xv)};
  };
}

std::function<Vec2(const Polygon&)> vertex_at(int i) {
  return [i](const Polygon& p) { return p.vertex(i); };
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn, rd);
}

Threshold solve_threshold(const NormalizedSet& normalized, const SmpEigenvectors& vw, const HParts& parts,
                          bool want_at_most_one, const std::string& label) {
  const Backend backend = normalized.pair.backend();
  std::array<Scalar, 3> q;
  int denominator_sign = 0;
  for (int m = 1; m <= 3; ++m) {
    const Polygon p = build_polygon(normalized, vw, Scalar::integer(m, backend));
    const auto [num, den] = parts(p, images(p, normalized));
    q[static_cast<std::size_t>(m - 1)] = num - den;
    // The denominator is a monomial in mu, so its sign does not depend on mu.
    if (m == 1) denominator_sign = den.sign();
  }
  if (denominator_sign == 0) throw DegenerateSector("degenerate sector in condition " + label);

  // q(mu) = c0 + c1 mu + c2 mu^2 through (1, q1), (2, q2), (3, q3).
  const Scalar c2 = (q[0] - 2 * q[1] + q[2]) / 2;
  const Scalar c1 = q[1] - q[0] - 3 * c2;
  const Scalar c0 = q[0] - c1 - c2;

  const double scale = std::max({std::abs(c0.to_double()), std::abs(c1.to_double()), std::abs(c2.to_double())});
  const bool linear = backend == Backend::exact ? c2.is_zero() : std::abs(c2.to_double()) <= 1e-10 * scale;

  std::vector<Scalar> roots;
  if (linear) {
    if (c1.is_zero()) throw DomainError("condition " + label + " does not depend on mu");
    roots.push_back(-c0 / c1);
  } else {
    const Scalar disc = c1 * c1 - 4 * c0 * c2;
    if (disc.sign() < 0) throw DomainError("condition " + label + " never changes sign");
    std::optional<Rational> exact_root;
    if (disc.is_exact()) exact_root = rational_sqrt(disc.rational());
    if (exact_root) {
      const Scalar r = Scalar::exact(*exact_root);
      roots.push_back((-c1 + r) / (2 * c2));
      roots.push_back((-c1 - r) / (2 * c2));
    } else {
      const double a = c2.to_double();
      const double b = c1.to_double();
      const double r = std::sqrt(disc.to_double());
      // Cancellation-free pair of roots.
      const double qq = -0.5 * (b + std::copysign(r, b));
      roots.push_back(Scalar::real(qq / a));
      if (qq != 0.0) roots.push_back(Scalar::real(c0.to_double() / qq));
    }
  }
  // Conditions whose numerator and denominator share a factor mu have a
  // root at mu = 0, which float evaluation smears into a tiny +-epsilon.
  double largest = 0.0;
  for (const auto& r : roots) largest = std::max(largest, std::abs(r.to_double()));
  std::vector<Scalar> positive;
  for (auto& r : roots) {
    const bool zero = !r.is_exact() && std::abs(r.to_double()) <= 1e-9 * largest;
    if (r.sign() > 0 && !zero) positive.push_back(r);
  }
  if (positive.empty()) throw DomainError("condition " + label + " has no positive threshold");
  if (positive.size() > 1) throw InternalError("condition " + label + " has two positive thresholds");

  const Scalar root = positive.front();
  const double probe = 2.0 * root.to_double() + 1.0;
  const double q_probe = c0.to_double() + probe * (c1.to_double() + probe * c2.to_double());
  const double h_minus_one = q_probe * denominator_sign;
  const bool holds_above = want_at_most_one ? h_minus_one <= 0.0 : h_minus_one >= 0.0;
  return {root, holds_above ? BoundKind::lower : BoundKind::upper};
}

}  // namespace

std::array<Threshold, 4> inclusion_thresholds(const NormalizedSet& normalized, const SmpEigenvectors& vw) {
  const auto a_image = [](int i) { return [i](const Polygon&, const Images& im) { return im.a(i); }; };
  const auto b_image = [](int i) { return [i](const Polygon&, const Images& im) { return im.b(i); }; };
  return {
      solve_threshold(normalized, vw, h_parts(vertex_at(11), vertex_at(12), a_image(4)), true, "a4"),
      solve_threshold(normalized, vw, h_parts(vertex_at(2), vertex_at(3), a_image(6)), true, "a6"),
      solve_threshold(normalized, vw, h_parts(vertex_at(11), vertex_at(12), b_image(3)), true, "b3"),
      solve_threshold(normalized, vw, h_parts(vertex_at(2), vertex_at(3), b_image(7)), true, "b7"),
  };
}

std::array<Threshold, 6> convexity_thresholds(const NormalizedSet& normalized, const SmpEigenvectors& vw) {
  std::array<Threshold, 6> out;
  for (int i = 1; i <= 6; ++i) {
    const auto own = [i](const Polygon& p, const Images&) { return p.vertex(i); };
    out[static_cast<std::size_t>(i - 1)] = solve_threshold(
        normalized, vw, h_parts(vertex_at(i - 1), vertex_at(i + 1), own), false, "convexity at " + vname(i));
  }
  return out;
}

double kappa_max(Family family) {
  std::function<double(double)> gap;
  switch (family) {
    case Family::main:
      gap = [](double kappa) {
        const MuThresholds t = mu_thresholds(KappaContext::from_kappa(kappa));
        return (t.mu1 - t.mu2).to_double();
      };
      break;
    case Family::alt:
      gap = [](double kappa) {
        const Construction c = construct(Family::alt, KappaContext::from_kappa(kappa));
        const auto t = inclusion_thresholds(c.normalized, c.vw);
        return (t[1].value - t[2].value).to_double();
      };
      break;
    case Family::custom:
      throw DomainError("kappa_max is defined for the main and alt families only");
  }
  double lo = 1.0 + 1e-6;
  double hi = 2.0;
  double f_lo = gap(lo);
  const double f_hi = gap(hi);
  if (!(f_lo < 0.0 && f_hi > 0.0)) throw InternalError("mu1 = mu2 is not bracketed on (1, 2)");
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = gap(mid);
    if (f_mid <= 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------

OrderReport vertex_order_check(const Polygon& polygon, double tolerance) {
  for (int i = 1; i <= 6; ++i) {
    if (polygon.vertex(i).is_zero()) throw DegenerateSector("vertex " + vname(i) + " is zero");
  }
  OrderReport report;
  report.passed = true;
  for (int i = 1; i <= 6; ++i) {
    for (int j = i + 1; j <= 6; ++j) {
      Scalar value = skew(polygon.vertex(i), polygon.vertex(j));
      const bool positive = approx_sign(value, tolerance) > 0;
      report.passed = report.passed && positive;
      report.products.push_back({i, j, std::move(value), positive});
    }
  }
  return report;
}

ConvexityReport convexity_check(const Polygon& polygon, double tolerance) {
  ConvexityReport report;
  report.passed = true;
  for (int i = 1; i <= 6; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    report.h[k] = triangle_h(polygon.vertex(i - 1), polygon.vertex(i + 1), polygon.vertex(i));
    report.ok[k] = approx_ge(report.h[k], Scalar::integer(1, polygon.backend()), tolerance);
    report.passed = report.passed && report.ok[k];
  }
  return report;
}

PolygonGauge::PolygonGauge(Polygon polygon, double tolerance) : polygon_(std::move(polygon)), tolerance_(tolerance) {
  bool ordered = false;
  try {
    ordered = vertex_order_check(polygon_, tolerance_).passed;
  } catch (const DegenerateSector&) {
    ordered = false;
  }
  if (!ordered) throw NonConvexPolygon("polygon vertices are not in clockwise order");
  if (!convexity_check(polygon_, tolerance_).passed) throw NonConvexPolygon("polygon is not convex");
}

Scalar PolygonGauge::operator()(const Vec2& x) const {
  if (x.backend() != polygon_.backend()) throw BackendMismatch("gauge argument and polygon use different backends");
  if (x.is_zero()) return Scalar::integer(0, x.backend());
  for (int i = 1; i <= 12; ++i) {
    const Vec2& a = polygon_.vertex(i);
    const Vec2& b = polygon_.vertex(i + 1);
    const SectorCoords sc = sector_coords(a, b, x);
    if (approx_sign(sc.s, tolerance_) >= 0 && approx_sign(sc.t, tolerance_) >= 0) return triangle_h(a, b, x);
  }
  throw InternalError("no sector of the polygon contains the point");
}

Scalar polygon_gauge(const Polygon& polygon, const Vec2& x) { return PolygonGauge(polygon)(x); }

OperatorNorm polygon_operator_norm(const Polygon& polygon) {
  auto gauge = std::make_shared<const PolygonGauge>(polygon);
  return [gauge](const Mat2& m) {
    const Polygon& p = gauge->polygon();
    Scalar best = (*gauge)(m * p.vertex(1));
    for (int i = 2; i <= 6; ++i) {
      Scalar g = (*gauge)(m * p.vertex(i));
      if (g > best) best = std::move(g);
    }
    return best;
  };
}

InclusionReport verify_inclusions(const Polygon& polygon, const NormalizedSet& normalized, double tolerance) {
  const Images im = images(polygon, normalized);
  const Scalar& lambda = normalized.lambda;
  const Backend backend = polygon.backend();
  const Scalar one = Scalar::integer(1, backend);
  InclusionReport report;

  const auto identity = [&](std::string name, const Vec2& lhs, const Vec2& rhs) {
    report.identities.push_back({std::move(name), same(lhs, rhs, tolerance)});
  };
  identity("a1 = v9", im.a(1), polygon.vertex(9));
  identity("a2 = v10", im.a(2), polygon.vertex(10));
  identity("a3 = v11", im.a(3), polygon.vertex(11));
  identity("a5 = v1/lambda", im.a(5), polygon.vertex(1) / lambda);
  identity("b2 = v10/lambda", im.b(2), polygon.vertex(10) / lambda);
  identity("b4 = v12", im.b(4), polygon.vertex(12));
  identity("b5 = v1", im.b(5), polygon.vertex(1));
  identity("b6 = v2", im.b(6), polygon.vertex(2));

  const auto nonobvious = [&](std::string point, const Vec2& z, int first) {
    const Vec2& x = polygon.vertex(first);
    const Vec2& y = polygon.vertex(first + 1);
    NonobviousInclusion n;
    n.point = std::move(point);
    n.sector_first = first;
    n.sector_second = first + 1;
    n.coords = sector_coords(x, y, z);
    n.h = triangle_h(x, y, z);
    n.in_sector = approx_sign(n.coords.s, tolerance) >= 0 && approx_sign(n.coords.t, tolerance) >= 0;
    n.in_triangle = n.in_sector && approx_le(n.h, one, tolerance);
    report.nonobvious.push_back(std::move(n));
  };
  nonobvious("a4", im.a(4), 11);
  nonobvious("a6", im.a(6), 2);
  nonobvious("b3", im.b(3), 11);
  nonobvious("b7", im.b(7), 2);

  std::optional<PolygonGauge> gauge;
  try {
    gauge.emplace(polygon, tolerance);
  } catch (const NonConvexPolygon&) {
  }
  if (gauge) {
    const auto check = [&](std::string point, const Vec2& z) {
      Scalar g = (*gauge)(z);
      const bool ok = approx_le(g, one, tolerance);
      report.gauges.push_back({std::move(point), std::move(g), ok});
    };
    for (int i = 1; i <= 12; ++i) check("a" + std::to_string(i), im.a(i));
    for (int i = 1; i <= 12; ++i) check("b" + std::to_string(i), im.b(i));
    for (const auto& n : report.nonobvious) {
      const auto it = std::find_if(report.gauges.begin(), report.gauges.end(),
                                   [&](const GaugeCheck& g) { return g.point == n.point; });
      if (it->passed != n.passed()) {
        throw InternalError("sector test and gauge test disagree on " + n.point);
      }
    }
    const auto max_of = [&](char letter) {
      std::optional<Scalar> best;
      for (const auto& g : report.gauges) {
        if (g.point[0] == letter && (!best || g.gauge > *best)) best = g.gauge;
      }
      return best;
    };
    report.induced_norm_a = max_of('a');
    report.induced_norm_b = max_of('b');
  }

  report.passed = std::all_of(report.identities.begin(), report.identities.end(),
                              [](const IdentityCheck& c) { return c.passed; }) &&
                  std::all_of(report.nonobvious.begin(), report.nonobvious.end(),
                              [](const NonobviousInclusion& n) { return n.passed(); }) &&
                  std::all_of(report.gauges.begin(), report.gauges.end(), [](const GaugeCheck& g) { return g.passed; });
  return report;
}

}  // namespace smpcert
