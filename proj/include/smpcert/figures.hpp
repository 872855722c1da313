#pragma once

#include <filesystem>
#include <string>
#include <utility>

#include "smpcert/polytope.hpp"

namespace smpcert {

struct FigureSpec {
  Polygon polygon;
  Images images;
  double canvas = 800.0;
  /// Fraction of the canvas left empty on each side.
  double padding = 0.1;
  std::string title;
};

/// Uniform scale mapping the bounding box of the figure's points onto the
/// padded canvas, centered, with the y axis pointing up.
class CanvasTransform {
 public:
  CanvasTransform(double min_x, double max_x, double min_y, double max_y, double canvas, double padding);

  std::pair<double, double> operator()(double x, double y) const;
  std::pair<double, double> operator()(const Vec2& p) const;
  /// Canvas point back to plane coordinates.
  std::pair<double, double> inverse(double u, double v) const;
  double scale() const noexcept { return scale_; }

 private:
  double center_x_;
  double center_y_;
  double half_canvas_;
  double scale_;
};

CanvasTransform fit_canvas(const FigureSpec& spec);

/// SVG 1.1 document: S solid with a light gray fill, A~S dashed, B~S
/// dash-dotted, labeled vertices and all 24 image points. Coordinates are
/// printed with six decimals, so equal inputs give equal bytes.
std::string render_svg(const FigureSpec& spec);

/// Writes render_svg(spec) to `path`. Throws Error on I/O failure.
void render(const FigureSpec& spec, const std::filesystem::path& path);

}  // namespace smpcert
