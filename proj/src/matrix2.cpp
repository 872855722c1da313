#include "smpcert/matrix2.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <vector>

#include "smpcert/errors.hpp"

namespace smpcert {

namespace {

void require_same(Backend a, Backend b) {
  if (a != b) throw BackendMismatch();
}

double max_abs_entry(const Mat2& m) {
  return std::max({std::abs(m.m11().to_double()), std::abs(m.m12().to_double()), std::abs(m.m21().to_double()),
                   std::abs(m.m22().to_double())});
}

// rho(M) written as p + sqrt(q) with p, q >= 0 rational.
struct RootForm {
  Rational p;
  Rational q;
};

RootForm root_form(const Mat2& m) {
  const Rational t = m.trace().rational();
  const Rational d = m.det().rational();
  const Rational disc = t * t - 4 * d;
  if (sgn(disc) >= 0) return {abs(t) / 2, disc / 4};
  return {Rational(0), d};
}

// sign(a + sqrt(q1) - sqrt(q2)) for q1, q2 >= 0.
int sign_with_roots(const Rational& a, const Rational& q1, const Rational& q2) {
  const int root_sign = cmp(q1, q2);
  const int a_sign = sgn(a);
  if (a_sign == 0) return root_sign;
  if (root_sign == 0 || root_sign == a_sign) return a_sign;
  // Opposite signs: compare a^2 against (sqrt(q1) - sqrt(q2))^2.
  const Rational b = a * a - q1 - q2;
  const Rational prod = q1 * q2;
  int magnitude;
  if (sgn(b) >= 0) {
    magnitude = (sgn(b) == 0 && sgn(prod) == 0) ? 0 : 1;
  } else {
    magnitude = cmp(4 * prod, b * b);
    magnitude = (magnitude > 0) - (magnitude < 0);
  }
  if (magnitude > 0) return a_sign;
  if (magnitude < 0) return root_sign;
  return 0;
}

}  // namespace

Vec2::Vec2(Scalar x1, Scalar x2) : x1_(std::move(x1)), x2_(std::move(x2)) {
  require_same(x1_.backend(), x2_.backend());
}

Vec2 Vec2::zero(Backend backend) { return {Scalar::integer(0, backend), Scalar::integer(0, backend)}; }

Scalar dot(const Vec2& x, const Vec2& y) { return x.x1() * y.x1() + x.x2() * y.x2(); }

Vec2 quarter_turn(const Vec2& x) { return {-x.x2(), x.x1()}; }

Scalar skew(const Vec2& x, const Vec2& y) { return x.x2() * y.x1() - x.x1() * y.x2(); }

bool approx_equal(const Vec2& a, const Vec2& b, double relative) {
  return approx_equal(a.x1(), b.x1(), relative) && approx_equal(a.x2(), b.x2(), relative);
}

Vec2 to_float(const Vec2& x) { return {x.x1().to_float(), x.x2().to_float()}; }

std::ostream& operator<<(std::ostream& os, const Vec2& x) { return os << '(' << x.x1() << ", " << x.x2() << ')'; }

Mat2::Mat2(Scalar m11, Scalar m12, Scalar m21, Scalar m22)
    : m11_(std::move(m11)), m12_(std::move(m12)), m21_(std::move(m21)), m22_(std::move(m22)) {
  require_same(m11_.backend(), m12_.backend());
  require_same(m11_.backend(), m21_.backend());
  require_same(m11_.backend(), m22_.backend());
}

Mat2 Mat2::identity(Backend backend) {
  return {Scalar::integer(1, backend), Scalar::integer(0, backend), Scalar::integer(0, backend),
          Scalar::integer(1, backend)};
}

Mat2 Mat2::quarter_turn(Backend backend) {
  return {Scalar::integer(0, backend), Scalar::integer(-1, backend), Scalar::integer(1, backend),
          Scalar::integer(0, backend)};
}

Mat2 Mat2::inverse() const {
  const Scalar d = det();
  const double scale = max_abs_entry(*this);
  const bool singular =
      d.is_exact() ? d.is_zero() : std::abs(d.to_double()) <= float_tolerance() * std::max(1.0, scale * scale);
  if (singular) {
    throw SingularMatrix("matrix is singular");
  }
  return {m22_ / d, -m12_ / d, -m21_ / d, m11_ / d};
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {a.m11_ + b.m11_, a.m12_ + b.m12_, a.m21_ + b.m21_, a.m22_ + b.m22_};
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  return {a.m11_ - b.m11_, a.m12_ - b.m12_, a.m21_ - b.m21_, a.m22_ - b.m22_};
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.m11_ * b.m11_ + a.m12_ * b.m21_, a.m11_ * b.m12_ + a.m12_ * b.m22_,
          a.m21_ * b.m11_ + a.m22_ * b.m21_, a.m21_ * b.m12_ + a.m22_ * b.m22_};
}

Vec2 operator*(const Mat2& a, const Vec2& x) {
  return {a.m11_ * x.x1() + a.m12_ * x.x2(), a.m21_ * x.x1() + a.m22_ * x.x2()};
}

Mat2 mul(const Mat2& m, const Mat2& n) { return m * n; }

bool approx_equal(const Mat2& a, const Mat2& b, double relative) {
  return approx_equal(a.m11(), b.m11(), relative) && approx_equal(a.m12(), b.m12(), relative) &&
         approx_equal(a.m21(), b.m21(), relative) && approx_equal(a.m22(), b.m22(), relative);
}

Mat2 to_float(const Mat2& m) {
  return {m.m11().to_float(), m.m12().to_float(), m.m21().to_float(), m.m22().to_float()};
}

std::ostream& operator<<(std::ostream& os, const Mat2& m) {
  return os << "[[" << m.m11() << ", " << m.m12() << "], [" << m.m21() << ", " << m.m22() << "]]";
}

std::string serialize(const Mat2& m) {
  return m.m11().str() + ' ' + m.m12().str() + ' ' + m.m21().str() + ' ' + m.m22().str();
}

Mat2 parse_mat2(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Scalar> entries;
  std::string token;
  while (in >> token) entries.push_back(Scalar::parse(token));
  if (entries.size() != 4) throw ParseError("a matrix needs exactly four entries, got " + std::to_string(entries.size()));
  try {
    return {entries[0], entries[1], entries[2], entries[3]};
  } catch (const BackendMismatch&) {
    throw ParseError("matrix entries mix exact and float scalars");
  }
}

Scalar discriminant(const Mat2& m) {
  const Scalar t = m.trace();
  return t * t - 4 * m.det();
}

bool has_real_spectrum(const Mat2& m, double absolute) {
  return approx_sign(discriminant(m), absolute) >= 0;
}

double spectral_radius(const Mat2& m) {
  const Scalar disc_exact = discriminant(m);
  const double t = m.trace().to_double();
  const double d = m.det().to_double();
  if (disc_exact.sign() >= 0) {
    const double disc = std::max(0.0, disc_exact.to_double());
    return (std::abs(t) + std::sqrt(disc)) / 2.0;
  }
  return std::sqrt(d);
}

int compare_spectral_radius(const Mat2& a, const Mat2& b) {
  if (!a.m11().is_exact() || !b.m11().is_exact()) throw BackendMismatch("exact spectral radius comparison needs exact matrices");
  const RootForm ra = root_form(a);
  const RootForm rb = root_form(b);
  return sign_with_roots(ra.p - rb.p, ra.q, rb.q);
}

int compare_spectral_radius(const Mat2& a, const Rational& bound) {
  if (!a.m11().is_exact()) throw BackendMismatch("exact spectral radius comparison needs an exact matrix");
  if (sgn(bound) < 0) return 1;
  const RootForm ra = root_form(a);
  return sign_with_roots(ra.p - bound, ra.q, Rational(0));
}

bool isospectral(const Mat2& a, const Mat2& b, double relative) {
  return approx_equal(a.trace(), b.trace(), relative) && approx_equal(a.det(), b.det(), relative);
}

Mat2 similarity(const Mat2& s, const Mat2& x) { return s.inverse() * x * s; }

Vec2 eigenvector_unit_first(const Mat2& m, const Scalar& lambda) {
  constexpr double kResidualTolerance = 1e-10;
  const bool exact = m.m11().is_exact();
  require_same(m.backend(), lambda.backend());

  const Scalar a = m.m11() - lambda;
  const Scalar b = m.m12();
  const Scalar c = m.m21();
  const Scalar d = m.m22() - lambda;
  const double scale = std::max(1.0, max_abs_entry(m));

  const Scalar char_value = a * d - b * c;
  const bool is_eigenvalue =
      exact ? char_value.is_zero() : std::abs(char_value.to_double()) <= kResidualTolerance * scale * scale;
  if (!is_eigenvalue) throw EigenError("lambda = " + lambda.str() + " is not an eigenvalue");

  const Scalar other = m.trace() - lambda;
  if (exact ? other == lambda : approx_equal(other, lambda, kResidualTolerance)) {
    throw EigenError("eigenvalue " + lambda.str() + " is not simple");
  }

  // Rows of M - lambda I are proportional; solve with x1 = 1 using the row
  // whose x2 coefficient is largest in magnitude.
  const bool use_first = exact ? !b.is_zero() : std::abs(b.to_double()) >= std::abs(d.to_double());
  const Scalar& pivot = use_first ? b : d;
  const Scalar& rest = use_first ? a : c;
  if (exact ? pivot.is_zero() : std::abs(pivot.to_double()) <= kResidualTolerance * scale) {
    throw EigenError("eigenvector is parallel to (0, 1)");
  }
  Vec2 x{Scalar::integer(1, m.backend()), -rest / pivot};

  const Vec2 r = m * x - lambda * x;
  const bool ok = exact ? r.is_zero()
                        : std::max(std::abs(r.x1().to_double()), std::abs(r.x2().to_double())) <=
                              kResidualTolerance * scale * std::max(1.0, std::abs(x.x2().to_double()));
  if (!ok) throw EigenError("eigenvector residual too large");
  return x;
}

}  // namespace smpcert
