#include "csf/curve_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "csf/error.hpp"

namespace csf {
namespace {

bool parse_real(std::string_view tok, double& out) {
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t j = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > j) toks.push_back(line.substr(j, i - j));
  }
  return toks;
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write_curve(std::ostream& os, PolylineView curve) {
  os << (curve.closed ? "closed " : "open ") << curve.size() << '\n';
  for (const auto& p : curve.points) os << format_real(p.x) << ' ' << format_real(p.y) << '\n';
}

std::string format_curve(PolylineView curve) {
  std::ostringstream os;
  write_curve(os, curve);
  return os.str();
}

CurveText read_curve(std::istream& is) {
  CurveText out;
  std::string line;
  std::size_t lineno = 0;
  std::size_t expected = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    const auto toks = split(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    if (!have_header) {
      std::size_t n = 0;
      if (toks.size() != 2 || (toks[0] != "closed" && toks[0] != "open") ||
          std::from_chars(toks[1].data(), toks[1].data() + toks[1].size(), n).ec != std::errc()) {
        throw InvalidInput("line " + std::to_string(lineno) + ": expected header 'closed <n>' or 'open <n>'");
      }
      out.closed = toks[0] == "closed";
      expected = n;
      out.points.reserve(n);
      have_header = true;
      continue;
    }
    Point2 p;
    if (toks.size() != 2 || !parse_real(toks[0], p.x) || !parse_real(toks[1], p.y)) {
      throw InvalidInput("line " + std::to_string(lineno) + ": expected two reals 'x y'");
    }
    if (out.points.size() == expected) {
      throw InvalidInput("line " + std::to_string(lineno) + ": more vertices than the header declares");
    }
    out.points.push_back(p);
  }
  if (!have_header) throw InvalidInput("empty curve file");
  if (out.points.size() != expected) {
    throw InvalidInput("header declares " + std::to_string(expected) + " vertices, found " +
                       std::to_string(out.points.size()));
  }
  return out;
}

CurveText load_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open curve file " + path.string());
  try {
    return read_curve(in);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

void save_curve(const std::filesystem::path& path, PolylineView curve) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  write_curve(out, curve);
}

ClosedCurve load_closed_curve(const std::filesystem::path& path) {
  auto text = load_curve(path);
  if (!text.closed) throw InvalidInput(path.string() + ": expected a closed curve");
  return ClosedCurve(std::move(text.points));
}

}  // namespace csf
