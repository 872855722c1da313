#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace smpcert {

using Rational = mpq_class;

enum class Backend { exact, floating };

std::string_view to_string(Backend backend);

/// Relative tolerance used by every float-backend threshold comparison.
/// Process-wide; defaults to 1e-12.
double float_tolerance();
void set_float_tolerance(double relative);

/// A number that is either an arbitrary-precision rational or a binary64
/// value. The two backends never mix: any binary operation on scalars of
/// different backends throws BackendMismatch.
class Scalar {
 public:
  /// Exact zero.
  Scalar();

  static Scalar exact(Rational value);
  static Scalar exact(long numerator, long denominator = 1);
  static Scalar real(double value);
  /// Integer constant in the requested backend.
  static Scalar integer(long value, Backend backend);

  /// "p/q" or "p" give an exact scalar; anything with a decimal point or
  /// exponent gives a float. Throws ParseError.
  static Scalar parse(std::string_view text);

  Backend backend() const noexcept { return value_.index() == 0 ? Backend::exact : Backend::floating; }
  bool is_exact() const noexcept { return value_.index() == 0; }

  /// Throws BackendMismatch on a float scalar.
  const Rational& rational() const;
  double to_double() const;
  Scalar to_float() const;

  /// "p/q" (or "p" for integers) on the exact backend, shortest round-trip
  /// decimal on the float backend, always with a "." or exponent ("3.0").
  std::string str() const;

  int sign() const noexcept;
  bool is_zero() const noexcept { return sign() == 0; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  // Integer literals adopt the backend of the scalar operand.
  friend Scalar operator+(const Scalar& lhs, long rhs) { return lhs + integer(rhs, lhs.backend()); }
  friend Scalar operator+(long lhs, const Scalar& rhs) { return integer(lhs, rhs.backend()) + rhs; }
  friend Scalar operator-(const Scalar& lhs, long rhs) { return lhs - integer(rhs, lhs.backend()); }
  friend Scalar operator-(long lhs, const Scalar& rhs) { return integer(lhs, rhs.backend()) - rhs; }
  friend Scalar operator*(const Scalar& lhs, long rhs) { return lhs * integer(rhs, lhs.backend()); }
  friend Scalar operator*(long lhs, const Scalar& rhs) { return integer(lhs, rhs.backend()) * rhs; }
  friend Scalar operator/(const Scalar& lhs, long rhs) { return lhs / integer(rhs, lhs.backend()); }
  friend Scalar operator/(long lhs, const Scalar& rhs) { return integer(lhs, rhs.backend()) / rhs; }

  /// Exact equality (bitwise value equality on floats). Throws on mixed backends.
  friend bool operator==(const Scalar& lhs, const Scalar& rhs);
  friend std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs);

  friend bool operator==(const Scalar& lhs, long rhs) { return lhs == integer(rhs, lhs.backend()); }
  friend std::partial_ordering operator<=>(const Scalar& lhs, long rhs) {
    return lhs <=> integer(rhs, lhs.backend());
  }

 private:
  std::variant<Rational, double> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& value);

Scalar abs(const Scalar& value);
/// Integer power; negative exponents invert (DivisionByZero on zero).
Scalar pow(const Scalar& base, int exponent);
Scalar to_float(const Scalar& value);

/// Equality up to `relative * max(1, |a|, |b|)` on floats; exact on rationals.
bool approx_equal(const Scalar& a, const Scalar& b, double relative = float_tolerance());
bool approx_le(const Scalar& a, const Scalar& b, double relative = float_tolerance());
bool approx_ge(const Scalar& a, const Scalar& b, double relative = float_tolerance());
/// Sign with a dead zone of `absolute` on floats.
int approx_sign(const Scalar& value, double absolute = float_tolerance());

/// Holds c with kappa = c^3, so every power kappa^(k/3) is c^k and stays
/// rational when c is.
class KappaContext {
 public:
  /// c must exceed 1.
  static KappaContext exact(const Rational& c);
  /// kappa must be the cube of a rational greater than 1.
  static KappaContext exact_from_kappa(const Rational& kappa);
  static KappaContext from_kappa(double kappa);
  /// Exact scalars that are perfect cubes stay exact; everything else floats.
  static KappaContext from_kappa(const Scalar& kappa);

  const Scalar& c() const noexcept { return c_; }
  Scalar kappa() const { return power(3); }
  /// kappa^(k_thirds / 3) == c^k_thirds.
  Scalar power(int k_thirds) const { return pow(c_, k_thirds); }
  Backend backend() const noexcept { return c_.backend(); }
  bool is_exact() const noexcept { return c_.is_exact(); }
  KappaContext to_float() const { return KappaContext(c_.to_float()); }

 private:
  explicit KappaContext(Scalar c) : c_(std::move(c)) {}
  Scalar c_;
};

Scalar kappa_power(const KappaContext& ctx, int k_thirds);

}  // namespace smpcert
