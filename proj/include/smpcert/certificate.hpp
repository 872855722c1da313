#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smpcert/families.hpp"
#include "smpcert/polytope.hpp"

namespace smpcert {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AuditEntry {
  std::string name;
  Scalar value;
};

struct SmpClass {
  Word representative;
  FactorCounts counts;
};

struct CertifyOptions {
  /// Float-backend tolerance; the exact backend ignores it.
  double tolerance = float_tolerance();
};

/// Outcome of the extremal-norm construction for one parameter choice.
/// Failures are recorded here, never thrown.
struct Certificate {
  Family family = Family::custom;
  Backend backend = Backend::exact;
  std::optional<Scalar> c;
  std::optional<Scalar> kappa;
  std::optional<std::string> phi;
  Scalar mu;
  std::optional<Scalar> lambda;
  std::optional<Scalar> lambda_cbrt;
  std::optional<Polygon> polygon;
  std::vector<CheckResult> checks;
  /// Every intermediate scalar product, s, t, h and gauge value.
  std::vector<AuditEntry> audit;
  std::vector<std::string> notes;
  /// Present only when every check passed: rho_bar = lambda^(1/3).
  std::optional<Scalar> rho_bar;
  std::vector<SmpClass> smp_classes;

  bool certified() const { return rho_bar.has_value(); }
  std::vector<std::string> failed_checks() const;
  std::string to_text() const;
  /// "key = value" lines; exact values as "p/q".
  std::string to_key_value() const;
};

/// Builds S for the normalized set and runs every check: structure,
/// eigenvectors, vertex order, convexity, the eight automatic inclusions,
/// the four nonobvious ones, the gauge of all 24 images and, for the main
/// family, the closed-form tables. A float `mu` with an exact set throws
/// BackendMismatch; an exact `mu` with a float set is converted.
Certificate certify_smp(const MatrixSet& set, const Scalar& mu, const CertifyOptions& options = {});

/// The main or alt family at `phi` (2pi/3 by default).
Certificate certify_smp(Family family, const KappaContext& kappa, const Scalar& mu,
                        const std::optional<Angle>& phi = std::nullopt, const CertifyOptions& options = {});

}  // namespace smpcert
