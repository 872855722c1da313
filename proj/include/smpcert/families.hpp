#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "smpcert/matrix2.hpp"
#include "smpcert/scalar.hpp"
#include "smpcert/words.hpp"

namespace smpcert {

enum class Family { alt, main, custom };

std::string_view to_string(Family family);
/// "alt", "main" or "custom"; throws ParseError.
Family parse_family(std::string_view text);

/// Rotation angle in radians. 2*pi/3 can be held symbolically so that
/// 2 cos(phi) = -1 stays exact.
class Angle {
 public:
  static Angle from_radians(double radians);
  static Angle two_pi_over_three();
  /// "2pi/3" (symbolic) or a decimal number of radians.
  static Angle parse(std::string_view text);

  double radians() const noexcept { return radians_; }
  bool is_two_pi_over_three() const noexcept { return symbolic_; }
  /// True for phi = 0 or pi modulo 2 pi, where the rotation family becomes
  /// reducible.
  bool is_degenerate() const;
  /// 2 cos(phi); exact only for the symbolic angle on the exact backend.
  Scalar two_cos(Backend backend) const;
  std::string str() const;

 private:
  Angle(double radians, bool symbolic) : radians_(radians), symbolic_(symbolic) {}
  double radians_;
  bool symbolic_;
};

struct MatrixSet {
  MatrixPair pair;
  /// Similarity matrix S with S^-1 A S = B and S^-1 B S = A, when known.
  std::optional<Mat2> tau_s;
  Family family = Family::custom;
  std::optional<KappaContext> kappa;
  std::optional<Angle> phi;
  /// The pair has a common invariant line (the rotation family at phi = 0, pi).
  bool reducible = false;

  Backend backend() const noexcept { return pair.backend(); }
};

/// Rotation by phi with stretching kappa along the axes. Always float:
/// sin(phi) leaves the rationals for every angle of interest.
MatrixSet example_alt(const KappaContext& kappa, const Angle& phi);

/// A = [[0, -1/kappa], [kappa, 2cos phi]], B = [[0, -kappa], [1/kappa, 2cos phi]].
/// Exact when kappa is exact and phi is the symbolic 2pi/3, float otherwise.
MatrixSet example_main(const KappaContext& kappa, const Angle& phi);

/// The main family at phi = 2pi/3: A = [[0, -1/kappa], [kappa, -1]],
/// B = [[0, -kappa], [1/kappa, -1]], in the backend of `kappa`.
MatrixSet example_main_special(const KappaContext& kappa);

MatrixSet custom_set(Mat2 a, Mat2 b);

/// Parses the custom-set file format: eight scalar tokens
/// a11 a12 a21 a22 b11 b12 b21 b22, whitespace separated, '#' starts a
/// comment running to end of line. Throws ParseError.
MatrixSet parse_custom_set(std::string_view text);

/// {A / lambda^(1/3), B / lambda^(1/3)} with lambda = rho(BAA).
struct NormalizedSet {
  MatrixPair pair;
  Scalar lambda;
  Scalar lambda_cbrt;
};

/// For the main family at 2pi/3, lambda = kappa^2 and lambda^(1/3) = c^2 in
/// the kappa backend. Every other set is normalized in float by rho(BAA).
NormalizedSet normalize(const MatrixSet& set);

struct SmpEigenvectors {
  Vec2 v;  ///< fixed by the normalized BAA
  Vec2 w;  ///< fixed by the normalized BBA
};

/// Closed forms for the main family: v = (1, kappa/(1 + kappa^2)), w = (1, 0).
SmpEigenvectors eigenvectors_vw(const KappaContext& kappa);

/// Unit-eigenvalue eigenvectors of the normalized BAA and BBA, first
/// coordinate 1. Throws EigenError.
SmpEigenvectors smp_eigenvectors(const NormalizedSet& normalized);

}  // namespace smpcert
