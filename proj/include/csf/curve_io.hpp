#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "csf/curve.hpp"

namespace csf {

/// Contents of a curve text file: header `closed <n>` (or `open <n>`)
/// followed by n lines `x y`.
struct CurveText {
  bool closed = true;
  std::vector<Point2> points;
};

/// Writes with 17 significant digits, so reading back is exact.
void write_curve(std::ostream& os, PolylineView curve);
std::string format_curve(PolylineView curve);

/// Throws InvalidInput with the offending line number.
CurveText read_curve(std::istream& is);
CurveText load_curve(const std::filesystem::path& path);
void save_curve(const std::filesystem::path& path, PolylineView curve);

/// load_curve + ClosedCurve construction (orientation normalized).
ClosedCurve load_closed_curve(const std::filesystem::path& path);

/// Fixed 17-significant-digit formatting used by every text writer.
std::string format_real(double v);

}  // namespace csf
