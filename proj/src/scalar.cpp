#include "smpcert/scalar.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <ostream>

#include "smpcert/errors.hpp"

namespace smpcert {

namespace {

std::atomic<double> g_float_tolerance{1e-12};

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) text.remove_prefix(1);
  return !text.empty() && std::all_of(text.begin(), text.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

Rational rational_pow(const Rational& base, unsigned long exponent) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

// Exact integer cube root of a non-negative integer, if one exists.
bool exact_cube_root(const mpz_class& value, mpz_class& root) {
  return mpz_root(root.get_mpz_t(), value.get_mpz_t(), 3) != 0;
}

// mpq_get_d truncates toward zero; step one ulp outward when that is closer.
double nearest_double(const Rational& q) {
  const double truncated = q.get_d();
  if (!std::isfinite(truncated)) return truncated;
  const double outward = std::nextafter(truncated, sgn(q) < 0 ? -HUGE_VAL : HUGE_VAL);
  if (!std::isfinite(outward)) return truncated;
  const Rational gap_in = abs(q - Rational(truncated));
  const Rational gap_out = abs(Rational(outward) - q);
  if (gap_out < gap_in) return outward;
  if (gap_out == gap_in) {
    // Ties go to the even significand.
    int exponent = 0;
    const double mantissa = std::frexp(outward, &exponent);
    const auto bits = static_cast<long long>(std::ldexp(mantissa, 53));
    return (bits % 2 == 0) ? outward : truncated;
  }
  return truncated;
}

}  // namespace

std::string_view to_string(Backend backend) {
  return backend == Backend::exact ? "exact" : "float";
}

double float_tolerance() { return g_float_tolerance.load(std::memory_order_relaxed); }

void set_float_tolerance(double relative) {
  if (!(relative >= 0.0) || !std::isfinite(relative)) throw DomainError("float tolerance must be finite and non-negative");
  g_float_tolerance.store(relative, std::memory_order_relaxed);
}

Scalar::Scalar() : value_(Rational(0)) {}

Scalar Scalar::exact(Rational value) {
  value.canonicalize();
  Scalar out;
  out.value_ = std::move(value);
  return out;
}

Scalar Scalar::exact(long numerator, long denominator) {
  if (denominator == 0) throw DivisionByZero();
  return exact(Rational(numerator, denominator));
}

Scalar Scalar::real(double value) {
  Scalar out;
  out.value_ = value;
  return out;
}

Scalar Scalar::integer(long value, Backend backend) {
  return backend == Backend::exact ? exact(value) : real(static_cast<double>(value));
}

Scalar Scalar::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty scalar");

  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    mpz_class p(std::string(num.front() == '+' ? num.substr(1) : num), 10);
    mpz_class q{std::string(den), 10};
    if (q == 0) throw DivisionByZero();
    return exact(Rational(p, q));
  }
  if (is_integer_literal(text)) {
    return exact(Rational(mpz_class(std::string(text.front() == '+' ? text.substr(1) : text), 10)));
  }

  double value = 0.0;
  const char* first = text.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ParseError("malformed scalar '" + std::string(text) + "'");
  }
  return real(value);
}

const Rational& Scalar::rational() const {
  if (!is_exact()) throw BackendMismatch("rational() called on a float scalar");
  return std::get<Rational>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return nearest_double(std::get<Rational>(value_));
  return std::get<double>(value_);
}

Scalar Scalar::to_float() const {
  if (!is_exact()) return *this;
  return real(nearest_double(std::get<Rational>(value_)));
}

std::string Scalar::str() const {
  if (is_exact()) return std::get<Rational>(value_).get_str();
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
  std::string text(buf, ptr);
  // Keep the float backend visible so the text parses back as a float.
  if (std::isfinite(std::get<double>(value_)) && text.find_first_of(".e") == std::string::npos) text += ".0";
  return text;
}

int Scalar::sign() const noexcept {
  if (is_exact()) return sgn(std::get<Rational>(value_));
  const double x = std::get<double>(value_);
  return (x > 0) - (x < 0);
}

Scalar Scalar::operator-() const {
  if (is_exact()) return exact(-std::get<Rational>(value_));
  return real(-std::get<double>(value_));
}

Scalar& Scalar::operator+=(const Scalar& other) {
  if (backend() != other.backend()) throw BackendMismatch();
  if (is_exact()) std::get<Rational>(value_) += std::get<Rational>(other.value_);
  else std::get<double>(value_) += std::get<double>(other.value_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  if (backend() != other.backend()) throw BackendMismatch();
  if (is_exact()) std::get<Rational>(value_) -= std::get<Rational>(other.value_);
  else std::get<double>(value_) -= std::get<double>(other.value_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  if (backend() != other.backend()) throw BackendMismatch();
  if (is_exact()) std::get<Rational>(value_) *= std::get<Rational>(other.value_);
  else std::get<double>(value_) *= std::get<double>(other.value_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  if (backend() != other.backend()) throw BackendMismatch();
  if (is_exact()) {
    if (sgn(std::get<Rational>(other.value_)) == 0) throw DivisionByZero();
    std::get<Rational>(value_) /= std::get<Rational>(other.value_);
  } else {
    std::get<double>(value_) /= std::get<double>(other.value_);
  }
  return *this;
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.backend() != rhs.backend()) throw BackendMismatch();
  if (lhs.is_exact()) return std::get<Rational>(lhs.value_) == std::get<Rational>(rhs.value_);
  return std::get<double>(lhs.value_) == std::get<double>(rhs.value_);
}

std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.backend() != rhs.backend()) throw BackendMismatch();
  if (lhs.is_exact()) {
    const int c = cmp(std::get<Rational>(lhs.value_), std::get<Rational>(rhs.value_));
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  return std::get<double>(lhs.value_) <=> std::get<double>(rhs.value_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& value) { return os << value.str(); }

Scalar abs(const Scalar& value) { return value.sign() < 0 ? -value : value; }

Scalar pow(const Scalar& base, int exponent) {
  if (!base.is_exact()) return Scalar::real(std::pow(base.to_double(), exponent));
  if (exponent >= 0) return Scalar::exact(rational_pow(base.rational(), static_cast<unsigned long>(exponent)));
  if (base.is_zero()) throw DivisionByZero();
  const Rational inverse = 1 / base.rational();
  return Scalar::exact(rational_pow(inverse, static_cast<unsigned long>(-static_cast<long>(exponent))));
}

Scalar to_float(const Scalar& value) { return value.to_float(); }

bool approx_equal(const Scalar& a, const Scalar& b, double relative) {
  if (a.backend() != b.backend()) throw BackendMismatch();
  if (a.is_exact()) return a == b;
  const double x = a.to_double();
  const double y = b.to_double();
  return std::abs(x - y) <= relative * std::max({1.0, std::abs(x), std::abs(y)});
}

bool approx_le(const Scalar& a, const Scalar& b, double relative) {
  if (a.backend() != b.backend()) throw BackendMismatch();
  if (a.is_exact()) return a <= b;
  return a.to_double() <= b.to_double() || approx_equal(a, b, relative);
}

bool approx_ge(const Scalar& a, const Scalar& b, double relative) { return approx_le(b, a, relative); }

int approx_sign(const Scalar& value, double absolute) {
  if (value.is_exact()) return value.sign();
  const double x = value.to_double();
  if (std::abs(x) <= absolute) return 0;
  return x > 0 ? 1 : -1;
}

KappaContext KappaContext::exact(const Rational& c) {
  if (c <= 1) throw DomainError("kappa context requires c > 1 (kappa = c^3 > 1)");
  return KappaContext(Scalar::exact(c));
}

KappaContext KappaContext::exact_from_kappa(const Rational& kappa) {
  Rational canonical(kappa);
  canonical.canonicalize();
  if (canonical <= 1) throw DomainError("kappa must exceed 1");
  mpz_class num_root;
  mpz_class den_root;
  if (!exact_cube_root(canonical.get_num(), num_root) || !exact_cube_root(canonical.get_den(), den_root)) {
    throw DomainError("kappa " + canonical.get_str() + " is not the cube of a rational");
  }
  return exact(Rational(num_root, den_root));
}

KappaContext KappaContext::from_kappa(double kappa) {
  if (!(kappa > 1.0) || !std::isfinite(kappa)) throw DomainError("kappa must exceed 1");
  return KappaContext(Scalar::real(std::cbrt(kappa)));
}

KappaContext KappaContext::from_kappa(const Scalar& kappa) {
  if (kappa.is_exact()) {
    if (kappa <= 1) throw DomainError("kappa must exceed 1");
    try {
      return exact_from_kappa(kappa.rational());
    } catch (const DomainError&) {
      return from_kappa(kappa.to_double());
    }
  }
  return from_kappa(kappa.to_double());
}

Scalar kappa_power(const KappaContext& ctx, int k_thirds) { return ctx.power(k_thirds); }

}  // namespace smpcert
