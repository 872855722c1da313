#include "smpcert/families.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "smpcert/errors.hpp"
#include "smpcert/permutability.hpp"

namespace smpcert {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::alt:
      return "alt";
    case Family::main:
      return "main";
    case Family::custom:
      return "custom";
  }
  return "custom";
}

Family parse_family(std::string_view text) {
  if (text == "alt") return Family::alt;
  if (text == "main") return Family::main;
  if (text == "custom") return Family::custom;
  throw ParseError("unknown family '" + std::string(text) + "' (expected main, alt or custom)");
}

Angle Angle::from_radians(double radians) {
  if (!std::isfinite(radians)) throw DomainError("angle must be finite");
  return Angle(radians, false);
}

Angle Angle::two_pi_over_three() { return Angle(2.0 * std::numbers::pi / 3.0, true); }

Angle Angle::parse(std::string_view text) {
  if (text == "2pi/3" || text == "2*pi/3") return two_pi_over_three();
  const Scalar value = Scalar::parse(text);
  return from_radians(value.to_double());
}

bool Angle::is_degenerate() const {
  if (symbolic_) return false;
  return std::abs(std::sin(radians_)) <= 1e-12;
}

Scalar Angle::two_cos(Backend backend) const {
  if (symbolic_) return Scalar::integer(-1, backend);
  if (backend == Backend::exact) throw DomainError("2cos(phi) is not exact for phi = " + str());
  return Scalar::real(2.0 * std::cos(radians_));
}

std::string Angle::str() const { return symbolic_ ? "2pi/3" : Scalar::real(radians_).str(); }

MatrixSet example_alt(const KappaContext& kappa, const Angle& phi) {
  const KappaContext ctx = kappa.to_float();
  const Scalar k = ctx.kappa();
  const Scalar cos_phi = Scalar::real(phi.is_two_pi_over_three() ? -0.5 : std::cos(phi.radians()));
  const Scalar sin_phi = Scalar::real(phi.is_two_pi_over_three() ? std::sqrt(3.0) / 2.0 : std::sin(phi.radians()));
  MatrixSet set{
      .pair = {Mat2(cos_phi, -sin_phi / k, k * sin_phi, cos_phi), Mat2(cos_phi, -k * sin_phi, sin_phi / k, cos_phi)},
      .tau_s = Mat2::quarter_turn(Backend::floating),
      .family = Family::alt,
      .kappa = ctx,
      .phi = phi,
      .reducible = phi.is_degenerate(),
  };
  return set;
}

MatrixSet example_main(const KappaContext& kappa, const Angle& phi) {
  const bool exact = kappa.is_exact() && phi.is_two_pi_over_three();
  const KappaContext ctx = exact ? kappa : kappa.to_float();
  const Backend backend = ctx.backend();
  const Scalar k = ctx.kappa();
  const Scalar two_cos = phi.two_cos(backend);
  const Scalar one = Scalar::integer(1, backend);
  const Scalar zero = Scalar::integer(0, backend);
  const Scalar off = k * two_cos / (k * k + 1);
  MatrixPair pair{Mat2(zero, -one / k, k, two_cos), Mat2(zero, -k, one / k, two_cos)};
  // Unlike the rotation family, this pair stays irreducible at phi = 0 and pi
  // (two Jordan blocks with different eigenlines).
  const bool reducible = !is_irreducible(pair);
  return MatrixSet{
      .pair = std::move(pair),
      .tau_s = Mat2(off, one, -one, -off),
      .family = Family::main,
      .kappa = ctx,
      .phi = phi,
      .reducible = reducible,
  };
}

MatrixSet example_main_special(const KappaContext& kappa) { return example_main(kappa, Angle::two_pi_over_three()); }

MatrixSet custom_set(Mat2 a, Mat2 b) {
  if (a.backend() != b.backend()) throw BackendMismatch("custom set matrices use different backends");
  MatrixSet set;
  set.pair = {std::move(a), std::move(b)};
  set.family = Family::custom;
  return set;
}

MatrixSet parse_custom_set(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string token;
    while (words >> token) tokens.push_back(token);
  }
  if (tokens.size() != 8) {
    throw ParseError("custom set needs eight scalars (a11 a12 a21 a22 b11 b12 b21 b22), got " +
                     std::to_string(tokens.size()));
  }
  std::vector<Scalar> v;
  for (const auto& token : tokens) v.push_back(Scalar::parse(token));
  try {
    return custom_set(Mat2(v[0], v[1], v[2], v[3]), Mat2(v[4], v[5], v[6], v[7]));
  } catch (const BackendMismatch&) {
    throw ParseError("custom set mixes exact and float scalars");
  }
}

namespace {

std::optional<mpz_class> exact_root(const mpz_class& n, unsigned long k) {
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) == 0) return std::nullopt;
  return r;
}

std::optional<Rational> exact_root(const Rational& q, unsigned long k) {
  const auto num = exact_root(q.get_num(), k);
  const auto den = exact_root(q.get_den(), k);
  if (!num || !den) return std::nullopt;
  return Rational(*num, *den);
}

/// Spectral radius of an exact matrix when it has a rational cube root.
std::optional<std::pair<Rational, Rational>> rational_radius_and_cbrt(const Mat2& m) {
  const Rational t = m.trace().rational();
  const Rational d = m.det().rational();
  const Rational disc = t * t - 4 * d;
  if (sgn(disc) < 0) return std::nullopt;
  const auto root = exact_root(disc, 2);
  if (!root) return std::nullopt;
  Rational lambda = (abs(t) + *root) / 2;
  lambda.canonicalize();
  if (sgn(lambda) <= 0) return std::nullopt;
  auto cbrt = exact_root(lambda, 3);
  if (!cbrt) return std::nullopt;
  return std::pair{lambda, *cbrt};
}

}  // namespace

NormalizedSet normalize(const MatrixSet& set) {
  if (set.family == Family::main && set.kappa && set.phi && set.phi->is_two_pi_over_three()) {
    const KappaContext& ctx = *set.kappa;
    const Scalar cbrt = ctx.power(2);
    return {{set.pair.a / cbrt, set.pair.b / cbrt}, ctx.power(6), cbrt};
  }
  if (set.backend() == Backend::exact) {
    if (const auto exact = rational_radius_and_cbrt(evaluate(Word::from_display("BAA"), set.pair))) {
      const Scalar cbrt = Scalar::exact(exact->second);
      return {{set.pair.a / cbrt, set.pair.b / cbrt}, Scalar::exact(exact->first), cbrt};
    }
  }
  const MatrixPair pair{to_float(set.pair.a), to_float(set.pair.b)};
  const double lambda = spectral_radius(evaluate(Word::from_display("BAA"), pair));
  if (!(lambda > 0.0)) throw DomainError("rho(BAA) vanishes; the set cannot be normalized");
  const Scalar cbrt = Scalar::real(std::cbrt(lambda));
  return {{pair.a / cbrt, pair.b / cbrt}, Scalar::real(lambda), cbrt};
}

SmpEigenvectors eigenvectors_vw(const KappaContext& kappa) {
  const Backend backend = kappa.backend();
  const Scalar k = kappa.kappa();
  const Scalar one = Scalar::integer(1, backend);
  const Scalar zero = Scalar::integer(0, backend);
  return {Vec2(one, k / (k * k + 1)), Vec2(one, zero)};
}

SmpEigenvectors smp_eigenvectors(const NormalizedSet& normalized) {
  const Scalar one = Scalar::integer(1, normalized.pair.backend());
  return {eigenvector_unit_first(evaluate(Word::from_display("BAA"), normalized.pair), one),
          eigenvector_unit_first(evaluate(Word::from_display("BBA"), normalized.pair), one)};
}

}  // namespace smpcert
