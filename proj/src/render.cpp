#include "csf/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "csf/error.hpp"

namespace csf {
namespace {

std::string fixed(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<SvgLayer>& layers, const SvgStyle& style) {
  if (layers.empty()) throw InvalidInput("render_svg: nothing to draw");
  BBox box;
  for (const auto& l : layers) {
    if (l.points.size() < 2) throw InvalidInput("render_svg: layer '" + l.label + "' has fewer than 2 points");
    for (auto p : l.points) box.expand(p);
  }
  const double w = std::max(box.width(), 1e-12), h = std::max(box.height(), 1e-12);
  const double inner = style.width - 2.0 * style.margin;
  // cap the aspect ratio so a long thin slingshot stays visible
  const double scale = inner / w;
  const double height = std::min(h * scale, 4.0 * inner) + 2.0 * style.margin;
  const double yscale = std::min(scale, 4.0 * inner / h);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(style.width) << "\" height=\""
     << fixed(height) << "\" viewBox=\"0 0 " << fixed(style.width) << ' ' << fixed(height) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"" << escape(style.background) << "\"/>\n";
  std::size_t colour = 0;
  for (const auto& l : layers) {
    std::string stroke;
    if (l.dashed) {
      stroke = style.reference_color;
    } else {
      stroke = style.palette.empty() ? "black" : style.palette[colour % style.palette.size()];
      ++colour;
    }
    os << "<path";
    if (!l.label.empty()) os << " id=\"" << escape(l.label) << "\"";
    os << " fill=\"none\" stroke=\"" << escape(stroke) << "\" stroke-width=\"" << fixed(style.stroke_width) << "\"";
    if (l.dashed) os << " stroke-dasharray=\"" << escape(style.dash) << "\"";
    os << " d=\"";
    for (std::size_t k = 0; k < l.points.size(); ++k) {
      const double x = style.margin + (l.points[k].x - box.lo.x) * scale;
      const double y = height - style.margin - (l.points[k].y - box.lo.y) * yscale;
      os << (k == 0 ? "M" : " L") << fixed(x) << ',' << fixed(y);
    }
    if (l.closed) os << " Z";
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace csf
