#include "rbsect/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>


namespace rbsect {
namespace {

constexpr int kEdgeSamples = 24;

struct View {
  double x0, y1, scale;
  double sx(double x) const { return (x - x0) * scale; }
  double sy(double y) const { return (y1 - y) * scale; }
};

void line(std::ostream& out, const View& v, Point a, Point b, const char* cls) {
  out << "<line class=\"" << cls << "\" x1=\"" << v.sx(a.x) << "\" y1=\"" << v.sy(a.y) << "\" x2=\"" << v.sx(b.x)
      << "\" y2=\"" << v.sy(b.y) << "\"/>\n";
}

void dot(std::ostream& out, const View& v, Point p, double r, const char* cls) {
  out << "<circle class=\"" << cls << "\" cx=\"" << v.sx(p.x) << "\" cy=\"" << v.sy(p.y) << "\" r=\"" << r
      << "\"/>\n";
}

}  // namespace

void write_svg(std::ostream& out, const SvgScene& scene, double width) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  double xl = inf, yl = inf, xh = -inf, yh = -inf;
  for (const auto* set : {&scene.p, &scene.q})
    for (const Segment& s : *set)
      for (Point p : {s.a, s.b}) {
        xl = std::min(xl, p.x);
        yl = std::min(yl, p.y);
        xh = std::max(xh, p.x);
        yh = std::max(yh, p.y);
      }
  if (xl > xh) xl = yl = 0, xh = yh = 1;
  const double pad = 0.08 * std::max({xh - xl, yh - yl, 1e-9});
  xl -= pad, yl -= pad, xh += pad, yh += pad;
  const View v{xl, yh, width / (xh - xl)};
  const double height = (yh - yl) * v.scale;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<style>line{stroke-width:2}.p{stroke:#1f5fbf}.q{stroke:#c0392b}"
         ".vd{fill:none;stroke:#888;stroke-width:1}.cp{fill:#2e8b57}.w{fill:#000}"
         ".wr{fill:none;stroke:#000;stroke-dasharray:4 3}</style>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";

  if (scene.diagram) {
    const VoronoiDiagram& d = *scene.diagram;
    for (const VoronoiEdge& e : d.edges) {
      out << "<polyline class=\"vd\" points=\"";
      const double a = e.curve.x_min(), b = e.curve.x_max();
      for (int k = 0; k <= kEdgeSamples; ++k) {
        const double x = a + (b - a) * k / kEdgeSamples;
        const Point p = d.from_frame({x, e.curve.eval_y(x)});
        out << (k ? " " : "") << v.sx(p.x) << ',' << v.sy(p.y);
      }
      out << "\"/>\n";
    }
  }
  for (const Segment& s : scene.q) line(out, v, s.a, s.b, "q");
  for (const Segment& s : scene.p) line(out, v, s.a, s.b, "p");
  for (Point c : scene.critical) dot(out, v, c, 3, "cp");
  if (scene.witness) {
    dot(out, v, *scene.witness, scene.radius * v.scale, "wr");
    dot(out, v, *scene.witness, 4, "w");
  }
  out << "</svg>\n";
}

}  // namespace rbsect
