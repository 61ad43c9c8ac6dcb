#include "heronwaist/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "heronwaist/errors.hpp"
#include "heronwaist/io.hpp"

namespace heronwaist {

namespace {

constexpr double kCanvas = 640.0;
constexpr double kMargin = 24.0;

std::string fixed(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

struct Frame {
  double xmin, xmax, ymin, ymax, scale;

  double sx(double x) const { return kMargin + (x - xmin) * scale; }
  double sy(double y) const { return kMargin + (ymax - y) * scale; }
  double width() const { return 2 * kMargin + (xmax - xmin) * scale; }
  double height() const { return 2 * kMargin + (ymax - ymin) * scale; }
};

struct Extent {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void add(double x, double y, double pad = 0.0) {
    xmin = std::min(xmin, x - pad);
    xmax = std::max(xmax, x + pad);
    ymin = std::min(ymin, y - pad);
    ymax = std::max(ymax, y + pad);
  }
};

void add_set(Extent& e, const ConvexSet& s) {
  if (const auto* b = std::get_if<Ball>(&s.shape())) e.add(b->center[0], b->center[1], b->radius);
  if (const auto* b = std::get_if<Box>(&s.shape())) {
    e.add(b->center[0] - b->half_widths[0], b->center[1] - b->half_widths[1]);
    e.add(b->center[0] + b->half_widths[0], b->center[1] + b->half_widths[1]);
  }
  if (const auto* p = std::get_if<Singleton>(&s.shape())) e.add(p->point[0], p->point[1]);
}

Frame make_frame(const Problem& p, const Configuration& u) {
  Extent e;
  for (const auto& s : p.chain_sets()) add_set(e, s);
  add_set(e, p.hub_set());
  for (std::size_t i = 0; i < u.chain_length(); ++i) e.add(u.chain(i)[0], u.chain(i)[1]);
  e.add(u.hub()[0], u.hub()[1]);
  const double span = std::max({e.xmax - e.xmin, e.ymax - e.ymin, 1.0});
  const double pad = 0.08 * span;
  Frame f{e.xmin - pad, e.xmax + pad, e.ymin - pad, e.ymax + pad, 0.0};
  f.scale = (kCanvas - 2 * kMargin) / std::max(f.xmax - f.xmin, f.ymax - f.ymin);
  return f;
}

// Segment of the line {y : <normal, y> = offset} inside the frame, if any.
bool clip_boundary(const HalfSpace& h, const Frame& f, double out[4]) {
  const double nn = h.normal.squaredNorm();
  const double px = h.offset * h.normal[0] / nn, py = h.offset * h.normal[1] / nn;
  const double dx = -h.normal[1], dy = h.normal[0];
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  auto clip = [&](double origin, double dir, double min, double max) {
    if (dir == 0.0) return origin >= min && origin <= max;
    double t0 = (min - origin) / dir, t1 = (max - origin) / dir;
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
    return true;
  };
  if (!clip(px, dx, f.xmin, f.xmax) || !clip(py, dy, f.ymin, f.ymax) || lo > hi) return false;
  out[0] = px + lo * dx;
  out[1] = py + lo * dy;
  out[2] = px + hi * dx;
  out[3] = py + hi * dy;
  return true;
}

void draw_set(std::string& svg, const ConvexSet& s, const Frame& f, const char* role) {
  const std::string cls = std::string("set ") + role + " " + to_string(s.kind());
  if (const auto* b = std::get_if<Ball>(&s.shape())) {
    svg += "  <circle class=\"" + cls + "\" cx=\"" + fixed(f.sx(b->center[0])) + "\" cy=\"" +
           fixed(f.sy(b->center[1])) + "\" r=\"" + fixed(b->radius * f.scale) + "\"/>\n";
  } else if (const auto* b = std::get_if<Box>(&s.shape())) {
    svg += "  <rect class=\"" + cls + "\" x=\"" + fixed(f.sx(b->center[0] - b->half_widths[0])) + "\" y=\"" +
           fixed(f.sy(b->center[1] + b->half_widths[1])) + "\" width=\"" +
           fixed(2 * b->half_widths[0] * f.scale) + "\" height=\"" + fixed(2 * b->half_widths[1] * f.scale) +
           "\"/>\n";
  } else if (const auto* h = std::get_if<HalfSpace>(&s.shape())) {
    double seg[4];
    if (clip_boundary(*h, f, seg)) {
      svg += "  <line class=\"" + cls + "\" x1=\"" + fixed(f.sx(seg[0])) + "\" y1=\"" + fixed(f.sy(seg[1])) +
             "\" x2=\"" + fixed(f.sx(seg[2])) + "\" y2=\"" + fixed(f.sy(seg[3])) + "\"/>\n";
    }
  } else if (const auto* p = std::get_if<Singleton>(&s.shape())) {
    svg += "  <circle class=\"" + cls + "\" cx=\"" + fixed(f.sx(p->point[0])) + "\" cy=\"" +
           fixed(f.sy(p->point[1])) + "\" r=\"6.000\"/>\n";
  }
}

void draw_point(std::string& svg, double x, double y, const std::string& label, const Frame& f, const char* cls) {
  svg += "  <circle class=\"" + std::string(cls) + "\" cx=\"" + fixed(f.sx(x)) + "\" cy=\"" + fixed(f.sy(y)) +
         "\" r=\"3.500\"/>\n";
  svg += "  <text x=\"" + fixed(f.sx(x) + 6) + "\" y=\"" + fixed(f.sy(y) - 6) + "\">" + label + "</text>\n";
}

}  // namespace

std::string render_svg(const Problem& p, const Configuration& u) {
  if (p.dimension() != 2) {
    throw UnsupportedDimension("SVG rendering needs n = 2, problem has n = " + std::to_string(p.dimension()));
  }
  check_shape(p, u);
  if (!u.flat().allFinite()) throw InvalidInput("configuration has non-finite coordinates");

  const Frame f = make_frame(p, u);
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(f.width()) + "\" height=\"" +
         fixed(f.height()) + "\" viewBox=\"0 0 " + fixed(f.width()) + " " + fixed(f.height()) + "\">\n";
  svg +=
      "  <style>\n"
      "    .set { fill: none; stroke: #4a6fa5; stroke-width: 1.5; }\n"
      "    .hub-set { stroke: #b5651d; }\n"
      "    .chain { fill: none; stroke: #222; stroke-width: 2; }\n"
      "    .hub-ray { stroke: #b5651d; stroke-width: 1; stroke-dasharray: 5 3; }\n"
      "    .point { fill: #222; } .hub { fill: #b5651d; }\n"
      "    text { font-family: sans-serif; font-size: 12px; }\n"
      "  </style>\n";

  for (const auto& s : p.chain_sets()) draw_set(svg, s, f, "chain-set");
  draw_set(svg, p.hub_set(), f, "hub-set");

  svg += "  <polygon class=\"chain\" points=\"";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) svg += ' ';
    svg += fixed(f.sx(u.chain(i)[0])) + "," + fixed(f.sy(u.chain(i)[1]));
  }
  svg += "\"/>\n";

  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.omega()[i] <= 0.0) continue;
    svg += "  <line class=\"hub-ray\" x1=\"" + fixed(f.sx(u.hub()[0])) + "\" y1=\"" + fixed(f.sy(u.hub()[1])) +
           "\" x2=\"" + fixed(f.sx(u.chain(i)[0])) + "\" y2=\"" + fixed(f.sy(u.chain(i)[1])) + "\"/>\n";
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    draw_point(svg, u.chain(i)[0], u.chain(i)[1], "a" + std::to_string(i + 1), f, "point");
  }
  draw_point(svg, u.hub()[0], u.hub()[1], "x", f, "point hub");
  svg += "</svg>\n";
  return svg;
}

std::string configuration_table(const Problem& p, const Configuration& u) {
  check_shape(p, u);
  std::string out = "type,a,b,values\n";
  auto coords = [](const auto& v) {
    std::string s;
    for (Eigen::Index j = 0; j < v.size(); ++j) s += (j ? " " : "") + format_number(v[j]);
    return s;
  };
  for (std::size_t i = 0; i < p.size(); ++i) {
    out += "point,a" + std::to_string(i + 1) + ",," + coords(u.chain(i)) + "\n";
  }
  out += "point,x,," + coords(u.hub()) + "\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    out += "edge,a" + std::to_string(i + 1) + ",a" + std::to_string(p.next(i) + 1) + "," +
           format_number(p.rho()[i]) + "\n";
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    out += "edge,a" + std::to_string(i + 1) + ",x," + format_number(p.omega()[i]) + "\n";
  }
  return out;
}

void write_svg(const Problem& p, const Configuration& u, const std::filesystem::path& path) {
  if (p.dimension() != 2) {
    std::filesystem::path table = path;
    table.replace_extension(".csv");
    write_file_atomic(table, configuration_table(p, u));
    throw UnsupportedDimension("SVG rendering needs n = 2, problem has n = " + std::to_string(p.dimension()) +
                               "; wrote point/edge table to " + table.string());
  }
  write_file_atomic(path, render_svg(p, u));
}

}  // namespace heronwaist
