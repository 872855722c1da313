#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "smpcert/scalar.hpp"

namespace smpcert {

/// Column vector in the plane. Both coordinates share one backend.
class Vec2 {
 public:
  Vec2() = default;
  Vec2(Scalar x1, Scalar x2);

  static Vec2 zero(Backend backend);

  const Scalar& x1() const noexcept { return x1_; }
  const Scalar& x2() const noexcept { return x2_; }
  Backend backend() const noexcept { return x1_.backend(); }
  bool is_zero() const noexcept { return x1_.is_zero() && x2_.is_zero(); }

  Vec2 operator-() const { return {-x1_, -x2_}; }
  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x1_ + b.x1_, a.x2_ + b.x2_}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x1_ - b.x1_, a.x2_ - b.x2_}; }
  friend Vec2 operator*(const Scalar& k, const Vec2& a) { return {k * a.x1_, k * a.x2_}; }
  friend Vec2 operator*(const Vec2& a, const Scalar& k) { return k * a; }
  friend Vec2 operator/(const Vec2& a, const Scalar& k) { return {a.x1_ / k, a.x2_ / k}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x1_ == b.x1_ && a.x2_ == b.x2_; }

 private:
  Scalar x1_;
  Scalar x2_;
};

/// Euclidean scalar product.
Scalar dot(const Vec2& x, const Vec2& y);
/// T x for the counterclockwise quarter turn T = [[0, -1], [1, 0]].
Vec2 quarter_turn(const Vec2& x);
/// (x, T y) = x2*y1 - x1*y2. Positive when y lies clockwise of x.
Scalar skew(const Vec2& x, const Vec2& y);
bool approx_equal(const Vec2& a, const Vec2& b, double relative = float_tolerance());
Vec2 to_float(const Vec2& x);
std::ostream& operator<<(std::ostream& os, const Vec2& x);

/// 2x2 matrix, row-major entries of one backend.
class Mat2 {
 public:
  Mat2() = default;
  Mat2(Scalar m11, Scalar m12, Scalar m21, Scalar m22);

  static Mat2 identity(Backend backend);
  /// T = [[0, -1], [1, 0]].
  static Mat2 quarter_turn(Backend backend);

  const Scalar& m11() const noexcept { return m11_; }
  const Scalar& m12() const noexcept { return m12_; }
  const Scalar& m21() const noexcept { return m21_; }
  const Scalar& m22() const noexcept { return m22_; }
  Backend backend() const noexcept { return m11_.backend(); }

  Scalar trace() const { return m11_ + m22_; }
  Scalar det() const { return m11_ * m22_ - m12_ * m21_; }
  /// Throws SingularMatrix when det = 0 (exact) or |det| below tolerance (float).
  Mat2 inverse() const;

  Mat2 operator-() const { return {-m11_, -m12_, -m21_, -m22_}; }
  friend Mat2 operator+(const Mat2& a, const Mat2& b);
  friend Mat2 operator-(const Mat2& a, const Mat2& b);
  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend Vec2 operator*(const Mat2& a, const Vec2& x);
  friend Mat2 operator*(const Scalar& k, const Mat2& a) { return {k * a.m11_, k * a.m12_, k * a.m21_, k * a.m22_}; }
  friend Mat2 operator/(const Mat2& a, const Scalar& k) { return {a.m11_ / k, a.m12_ / k, a.m21_ / k, a.m22_ / k}; }
  friend bool operator==(const Mat2& a, const Mat2& b) {
    return a.m11_ == b.m11_ && a.m12_ == b.m12_ && a.m21_ == b.m21_ && a.m22_ == b.m22_;
  }

 private:
  Scalar m11_ = Scalar::exact(1);
  Scalar m12_;
  Scalar m21_;
  Scalar m22_ = Scalar::exact(1);
};

Mat2 mul(const Mat2& m, const Mat2& n);
bool approx_equal(const Mat2& a, const Mat2& b, double relative = float_tolerance());
Mat2 to_float(const Mat2& m);
std::ostream& operator<<(std::ostream& os, const Mat2& m);

/// Row-major "m11 m12 m21 m22" with each entry in Scalar::str() form.
std::string serialize(const Mat2& m);
Mat2 parse_mat2(std::string_view text);

/// tr^2 - 4 det.
Scalar discriminant(const Mat2& m);
bool has_real_spectrum(const Mat2& m, double absolute = float_tolerance());

/// Largest eigenvalue modulus, always in binary64.
double spectral_radius(const Mat2& m);

/// Exact three-way comparison of spectral radii on the exact backend,
/// radical-free. Returns -1, 0 or 1. Throws BackendMismatch on floats.
int compare_spectral_radius(const Mat2& a, const Mat2& b);
/// Exact comparison of rho(a) with a non-negative rational bound.
int compare_spectral_radius(const Mat2& a, const Rational& bound);

/// Equal trace and determinant (exactly, or within `relative` on floats).
bool isospectral(const Mat2& a, const Mat2& b, double relative = float_tolerance());

/// S^-1 X S. Throws SingularMatrix.
Mat2 similarity(const Mat2& s, const Mat2& x);

/// Eigenvector for a simple real eigenvalue, scaled to first coordinate 1.
/// Float residuals are checked against 1e-10. Throws EigenError.
Vec2 eigenvector_unit_first(const Mat2& m, const Scalar& lambda);

}  // namespace smpcert
