#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smpcert/families.hpp"
#include "smpcert/matrix2.hpp"
#include "smpcert/words.hpp"

namespace smpcert {

/// Balanced dodecagon with vertices v1..v12 in clockwise order.
class Polygon {
 public:
  Polygon(std::array<Vec2, 12> vertices, Scalar mu);

  /// 1-based and cyclic: vertex(0) is v12, vertex(13) is v1.
  const Vec2& vertex(int i) const { return vertices_[static_cast<std::size_t>(((i - 1) % 12 + 12) % 12)]; }
  const std::array<Vec2, 12>& vertices() const noexcept { return vertices_; }
  const Scalar& mu() const noexcept { return mu_; }
  Backend backend() const noexcept { return mu_.backend(); }

 private:
  std::array<Vec2, 12> vertices_;
  Scalar mu_;
};

/// v1 = mu v, v2 = w, v3 = -A~v1, v4 = -A~v2, v5 = -A~v3, v6 = -B~v4 and
/// v(i+6) = -v(i). Throws DomainError for mu <= 0 or when v, w are not fixed
/// by the normalized BAA, BBA; InternalError when the recursive vertices
/// disagree with their closed forms in v and w.
Polygon build_polygon(const NormalizedSet& normalized, const SmpEigenvectors& vw, const Scalar& mu);

/// a_i = A~ v_i and b_i = B~ v_i.
struct Images {
  std::array<Vec2, 12> a_images;
  std::array<Vec2, 12> b_images;

  const Vec2& a(int i) const { return a_images[static_cast<std::size_t>(((i - 1) % 12 + 12) % 12)]; }
  const Vec2& b(int i) const { return b_images[static_cast<std::size_t>(((i - 1) % 12 + 12) % 12)]; }
};

Images images(const Polygon& polygon, const NormalizedSet& normalized);

/// Coordinates of z in the basis (x, y): z = s x + t y.
struct SectorCoords {
  Scalar s;
  Scalar t;
};

/// s = (z, Ty)/(x, Ty), t = (z, Tx)/(y, Tx); z lies in the sector spanned
/// by x and y iff s, t >= 0. Throws DegenerateSector when (x, Ty) = 0.
SectorCoords sector_coords(const Vec2& x, const Vec2& y, const Vec2& z);

/// h = (y - x, Tz)/(y, Tx) = s + t; inside the sector, z lies in the
/// triangle (x, y, 0) iff h <= 1. Throws DegenerateSector.
Scalar triangle_h(const Vec2& x, const Vec2& y, const Vec2& z);

// ---------------------------------------------------------------------------
// Admissible scaling parameters, closed forms for the main family at 2pi/3.

struct MuThresholds {
  Scalar mu0;  ///< a4 in triangle (v11, v12): mu >= mu0
  Scalar mu1;  ///< a6 in triangle (v2, v3):   mu >= mu1
  Scalar mu2;  ///< b3 in triangle (v11, v12): mu <= mu2
  Scalar mu3;  ///< b7 in triangle (v2, v3):   mu <= mu3
};

MuThresholds mu_thresholds(const KappaContext& kappa);

/// Convexity thresholds at v1..v6: mu >= w1, w3, w5 and mu <= w2, w4, w6.
std::array<Scalar, 6> omega_thresholds(const KappaContext& kappa);

struct MuInterval {
  Scalar lower;
  Scalar upper;
};

/// [mu1, mu2] when mu1 <= mu2, otherwise empty. Endpoints are admissible.
std::optional<MuInterval> admissible_mu_interval(const KappaContext& kappa);

/// Largest kappa with a non-empty admissible mu interval, by bisection on
/// mu1(kappa) = mu2(kappa) over (1, 2) to 1e-10. The main family uses the
/// closed forms, the alt family its numerically solved thresholds.
/// Throws DomainError for custom, InternalError when the root is not bracketed.
double kappa_max(Family family);

// ---------------------------------------------------------------------------
// Family-independent thresholds solved from the constructed polygon.

enum class BoundKind { lower, upper };

struct Threshold {
  Scalar value;
  BoundKind kind;
};

/// The four inclusion conditions of MuThresholds, solved for mu. Each
/// condition's numerator and denominator are polynomials of degree <= 2 in
/// mu, recovered exactly from the polygons at mu = 1, 2, 3. Linear cases stay
/// exact on the exact backend.
std::array<Threshold, 4> inclusion_thresholds(const NormalizedSet& normalized, const SmpEigenvectors& vw);

/// The six convexity conditions h(v(i-1), v(i+1), v(i)) >= 1, solved for mu.
std::array<Threshold, 6> convexity_thresholds(const NormalizedSet& normalized, const SmpEigenvectors& vw);

/// A family built at 2pi/3 for `kappa`, normalized, with its eigenvectors.
struct Construction {
  MatrixSet set;
  NormalizedSet normalized;
  SmpEigenvectors vw;
};

Construction construct(Family family, const KappaContext& kappa);

// ---------------------------------------------------------------------------
// Polygon checks.

struct PairProduct {
  int i = 0;
  int j = 0;
  Scalar value;  ///< (v_i, T v_j)
  bool positive = false;
};

struct OrderReport {
  std::vector<PairProduct> products;  ///< the 15 pairs i < j of v1..v6
  bool passed = false;
};

/// All (v_i, T v_j) > 0 for 1 <= i < j <= 6: six distinct lines and
/// clockwise order matching the indexing. Throws DegenerateSector when a
/// vertex is zero.
OrderReport vertex_order_check(const Polygon& polygon, double tolerance = float_tolerance());

struct ConvexityReport {
  std::array<Scalar, 6> h;  ///< h(v(i-1), v(i+1), v(i)), i = 1..6
  std::array<bool, 6> ok{};
  bool passed = false;
};

/// Each v_i, i = 1..6, lies outside the open triangle (v(i-1), v(i+1), 0).
ConvexityReport convexity_check(const Polygon& polygon, double tolerance = float_tolerance());

/// Minkowski functional of a convex, correctly ordered polygon.
class PolygonGauge {
 public:
  /// Throws NonConvexPolygon when the order or convexity check fails.
  explicit PolygonGauge(Polygon polygon, double tolerance = float_tolerance());

  /// h(v_i, v_(i+1), x) for the first sector (in index order) containing x.
  Scalar operator()(const Vec2& x) const;
  const Polygon& polygon() const noexcept { return polygon_; }

 private:
  Polygon polygon_;
  double tolerance_;
};

Scalar polygon_gauge(const Polygon& polygon, const Vec2& x);

/// Induced operator norm of the polygon gauge: max over vertices of the
/// gauge of their images.
OperatorNorm polygon_operator_norm(const Polygon& polygon);

struct IdentityCheck {
  std::string name;  ///< e.g. "a1 = v9"
  bool passed = false;
};

/// One of the four inclusions that do not follow from the construction.
struct NonobviousInclusion {
  std::string point;  ///< "a4", "a6", "b3" or "b7"
  int sector_first = 0;
  int sector_second = 0;
  SectorCoords coords;
  Scalar h;
  bool in_sector = false;
  bool in_triangle = false;

  bool passed() const { return in_sector && in_triangle; }
};

struct GaugeCheck {
  std::string point;
  Scalar gauge;
  bool passed = false;
};

struct InclusionReport {
  std::vector<IdentityCheck> identities;
  std::vector<NonobviousInclusion> nonobvious;
  /// Gauge of all 24 images; empty when the polygon is not a valid unit ball.
  std::vector<GaugeCheck> gauges;
  std::optional<Scalar> induced_norm_a;
  std::optional<Scalar> induced_norm_b;
  bool passed = false;
};

/// Checks the eight inclusions implied by the construction, the four
/// nonobvious inclusions in their sectors (v11, v12) and (v2, v3), and, when
/// the polygon is a convex unit ball, the gauge of every image. Throws
/// InternalError if the sector test and the gauge test disagree.
InclusionReport verify_inclusions(const Polygon& polygon, const NormalizedSet& normalized,
                                  double tolerance = float_tolerance());

}  // namespace smpcert
