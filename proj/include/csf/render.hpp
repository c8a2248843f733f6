#pragma once

#include <string>
#include <vector>

#include "csf/curve.hpp"

namespace csf {

struct SvgStyle {
  double width = 800.0;  // pixels; height follows the aspect ratio
  double margin = 20.0;
  double stroke_width = 1.5;
  std::string background = "white";
  std::vector<std::string> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::string reference_color = "#555555";
  std::string dash = "6,4";
};

struct SvgLayer {
  std::vector<Point2> points;
  bool closed = true;
  bool dashed = false;
  std::string label;
};

/// One path per layer in a common viewport fitted to all layers. Dashed
/// layers use the reference colour, the others cycle through the palette.
/// Coordinates are printed with 4 decimals, so equal inputs give equal
/// bytes. Throws InvalidInput for an empty layer list.
std::string render_svg(const std::vector<SvgLayer>& layers, const SvgStyle& style = {});

}  // namespace csf
