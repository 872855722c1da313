#include "smpcert/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "smpcert/errors.hpp"

namespace smpcert {

namespace {

std::string fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string out(buf);
  if (out == "-0.000000") out = "0.000000";
  return out;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

template <class Points>
std::string points_attr(const CanvasTransform& tf, const Points& points) {
  std::string out;
  for (const auto& p : points) {
    const auto [u, v] = tf(p);
    if (!out.empty()) out += ' ';
    out += fixed(u) + ',' + fixed(v);
  }
  return out;
}

}  // namespace

CanvasTransform::CanvasTransform(double min_x, double max_x, double min_y, double max_y, double canvas,
                                 double padding)
    : center_x_(0.5 * (min_x + max_x)), center_y_(0.5 * (min_y + max_y)), half_canvas_(0.5 * canvas) {
  const double extent = std::max({max_x - min_x, max_y - min_y, std::numeric_limits<double>::min()});
  scale_ = canvas * (1.0 - 2.0 * padding) / extent;
}

std::pair<double, double> CanvasTransform::operator()(double x, double y) const {
  return {half_canvas_ + (x - center_x_) * scale_, half_canvas_ - (y - center_y_) * scale_};
}

std::pair<double, double> CanvasTransform::operator()(const Vec2& p) const {
  return (*this)(p.x1().to_double(), p.x2().to_double());
}

std::pair<double, double> CanvasTransform::inverse(double u, double v) const {
  return {center_x_ + (u - half_canvas_) / scale_, center_y_ - (v - half_canvas_) / scale_};
}

CanvasTransform fit_canvas(const FigureSpec& spec) {
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  const auto include = [&](const Vec2& p) {
    const double x = p.x1().to_double();
    const double y = p.x2().to_double();
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  };
  for (const auto& p : spec.polygon.vertices()) include(p);
  for (const auto& p : spec.images.a_images) include(p);
  for (const auto& p : spec.images.b_images) include(p);
  return CanvasTransform(min_x, max_x, min_y, max_y, spec.canvas, spec.padding);
}

std::string render_svg(const FigureSpec& spec) {
  const CanvasTransform tf = fit_canvas(spec);
  const std::string size = fixed(spec.canvas);
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  if (!spec.title.empty()) svg << "  <title>" << escape(spec.title) << "</title>\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";

  const auto [ox, oy] = tf(0.0, 0.0);
  svg << "  <g id=\"axes\" stroke=\"#bbbbbb\" stroke-width=\"0.5\">\n";
  svg << "    <line x1=\"0.000000\" y1=\"" << fixed(oy) << "\" x2=\"" << size << "\" y2=\"" << fixed(oy) << "\"/>\n";
  svg << "    <line x1=\"" << fixed(ox) << "\" y1=\"0.000000\" x2=\"" << fixed(ox) << "\" y2=\"" << size << "\"/>\n";
  svg << "  </g>\n";

  svg << "  <polygon id=\"S\" points=\"" << points_attr(tf, spec.polygon.vertices())
      << "\" fill=\"gray\" fill-opacity=\"0.2\" stroke=\"black\" stroke-width=\"2\"/>\n";
  svg << "  <polygon id=\"AS\" points=\"" << points_attr(tf, spec.images.a_images)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6 3\"/>\n";
  svg << "  <polygon id=\"BS\" points=\"" << points_attr(tf, spec.images.b_images)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6 3 1 3\"/>\n";

  svg << "  <g id=\"images\">\n";
  for (char letter : {'a', 'b'}) {
    const auto& points = letter == 'a' ? spec.images.a_images : spec.images.b_images;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto [u, v] = tf(points[i]);
      svg << "    <circle class=\"image\" id=\"" << letter << i + 1 << "\" cx=\"" << fixed(u) << "\" cy=\"" << fixed(v)
          << "\" r=\"2.5\" fill=\"" << (letter == 'a' ? "white" : "black") << "\" stroke=\"black\"/>\n";
    }
  }
  svg << "  </g>\n";

  svg << "  <g id=\"vertices\" font-family=\"serif\" font-size=\"14\">\n";
  for (int i = 1; i <= 12; ++i) {
    const Vec2& p = spec.polygon.vertex(i);
    const auto [u, v] = tf(p);
    // Labels sit just outside the vertex, along the ray from the origin.
    const double dx = u - ox;
    const double dy = v - oy;
    const double len = std::max(std::hypot(dx, dy), 1e-9);
    svg << "    <circle class=\"vertex\" id=\"v" << i << "\" cx=\"" << fixed(u) << "\" cy=\"" << fixed(v)
        << "\" r=\"3.5\" fill=\"black\"/>\n";
    svg << "    <text x=\"" << fixed(u + 16.0 * dx / len) << "\" y=\"" << fixed(v + 16.0 * dy / len + 5.0)
        << "\" text-anchor=\"middle\">v" << i << "</text>\n";
  }
  svg << "  </g>\n";
  svg << "</svg>\n";
  return svg.str();
}

void render(const FigureSpec& spec, const std::filesystem::path& path) {
  const std::string text = render_svg(spec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.close();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace smpcert
