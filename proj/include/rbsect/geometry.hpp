#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbsect/polynomial.hpp"

namespace rbsect {

/// Absolute coordinate tolerance. Inputs are expected inside a box of
/// diameter at most 1e6.
inline constexpr double kEps = 1e-9;

using CurveId = std::uint32_t;

/// Raised when an input violates a structural precondition (vertical
/// segment, same-set crossing, more than two red/blue intersections, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  double x = 0;
  double y = 0;

  friend bool operator==(const Point&, const Point&) = default;
  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline Point perp(Point a) { return {-a.y, a.x}; }
inline Point unit(Point a) {
  const double n = norm(a);
  return {a.x / n, a.y / n};
}
inline Point rotate(Point p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

struct Box {
  double x_lo = 0, y_lo = 0, x_hi = 0, y_hi = 0;

  bool contains(Point p, double tol = kEps) const {
    return p.x >= x_lo - tol && p.x <= x_hi + tol && p.y >= y_lo - tol && p.y <= y_hi + tol;
  }
};

/// Quadratic parametric path a + b t + c t^2 over [t0, t1].
struct QuadPath {
  Point a, b, c;
  double t0 = 0, t1 = 1;

  Point at(double t) const { return a + t * b + (t * t) * c; }
  Point tangent(double t) const { return b + (2 * t) * c; }
  Poly x_poly() const { return {a.x, b.x, c.x}; }
  Poly y_poly() const { return {a.y, b.y, c.y}; }
};

/// Parabola given by focus and directrix plus a parameter range.
///
/// The parameter t is arc length along the directrix measured from
/// directrix_point in direction `direction`; the curve point for t lies on
/// the directrix normal through that foot point, on the focus side.
struct ParabolaArc {
  Point focus;
  Point directrix_point;
  Point direction{1, 0};
  double t_lo = 0;
  double t_hi = 0;

  Point normal() const;            // unit normal of the directrix towards the focus
  double focal_offset() const;     // distance from the focus to the directrix
  double focus_foot() const;       // directrix parameter of the focus projection
  QuadPath path() const;
};

enum class CurveKind : std::uint8_t { line, parabola };

/// An x-monotone line segment or parabola arc with a strict x-range.
///
/// Instances are immutable; the factories validate and throw
/// ValidationError for vertical or non-monotone input.
class Curve {
 public:
  static Curve line(Point a, Point b, CurveId id = 0);
  static Curve parabola(const ParabolaArc& arc, CurveId id = 0);

  CurveKind kind() const { return kind_; }
  bool is_line() const { return kind_ == CurveKind::line; }
  CurveId id() const { return id_; }
  Curve with_id(CurveId id) const {
    Curve c = *this;
    c.id_ = id;
    return c;
  }

  double x_min() const { return left_.x; }
  double x_max() const { return right_.x; }
  double y_min() const { return y_lo_; }
  double y_max() const { return y_hi_; }
  Point left() const { return left_; }
  Point right() const { return right_; }

  /// Parabola data; only valid for parabola curves.
  const ParabolaArc& parabola() const { return arc_; }
  /// Parametric form: t in [0,1] from left to right for lines, the
  /// directrix parameter for parabolas.
  const QuadPath& path() const { return path_; }

  bool spans_x(double x, double tol = kEps) const {
    return x >= left_.x - tol && x <= right_.x + tol;
  }

  /// y on the curve at abscissa x; throws std::domain_error outside the
  /// x-range (tolerance kEps, values within it are clamped).
  double eval_y(double x) const;

  /// Parameter of the curve point with abscissa x (x clamped to range).
  double param_at_x(double x) const;

  /// The curve's implicit equation evaluated along another path, plus the
  /// |residual| that corresponds to a kEps geometric offset at parameter t.
  Poly implicit_along(const QuadPath& p) const;
  double implicit_tol(Point at) const;

  /// Whether a point already on the supporting curve lies on this arc.
  bool on_arc(Point p, double tol = kEps) const;

  friend bool operator==(const Curve& a, const Curve& b) {
    return a.same_geometry(b) && a.id_ == b.id_;
  }
  bool same_geometry(const Curve& o) const;

 private:
  Curve() = default;
  void finish_parabola();

  CurveKind kind_ = CurveKind::line;
  CurveId id_ = 0;
  Point left_, right_;
  ParabolaArc arc_{};
  QuadPath path_{};
  Point normal_{};   // line: unit normal; parabola: directrix normal
  double y_lo_ = 0, y_hi_ = 0;
};

/// Up to four intersection points sorted by x.
struct Intersections {
  std::array<Point, 4> p{};
  std::size_t n = 0;
  bool overlap = false;  // collinear or coincident pieces: the extremes of the overlap

  const Point* begin() const { return p.data(); }
  const Point* end() const { return p.data() + n; }
  std::size_t size() const { return n; }
  bool empty() const { return n == 0; }
  const Point& operator[](std::size_t i) const { return p[i]; }
};

Intersections intersect(const Curve& a, const Curve& b);

/// eval_y as a free function.
inline double eval_y(const Curve& c, double x) { return c.eval_y(x); }

/// Reflection x -> -x; involution.
Curve mirror_x(const Curve& c);
std::vector<Curve> mirror_x(std::span<const Curve> cs);

/// Rigid rotation about the origin. Throws ValidationError if the result
/// is not x-monotone.
Curve rotate(const Curve& c, double angle);

/// A line or parabola piece with no monotonicity requirement. Produced by
/// bisector construction and turned into Curves by split_x_monotone.
struct Arc {
  CurveKind kind = CurveKind::line;
  Point p, q;          // line piece endpoints
  ParabolaArc parabola{};

  QuadPath path() const;
  Point start() const { return path().at(path().t0); }
  Point finish() const { return path().at(path().t1); }
  /// Sub-arc over [t0, t1] of path() parameters.
  Arc sub(double t0, double t1) const;
  double length_estimate() const;
};

/// Splits a parabola arc at its vertical-tangent point when that point is
/// interior. Pieces shorter than kEps are dropped. Lines are returned as is
/// (a vertical line throws ValidationError).
std::vector<Curve> split_x_monotone(const Arc& arc, CurveId id = 0);

enum class SiteKind : std::uint8_t { point, segment };

/// Elementary Voronoi site: an endpoint or the open interior of a segment.
struct Site {
  SiteKind kind = SiteKind::point;
  Point a, b;  // point site uses a only

  static Site point(Point p) { return {SiteKind::point, p, p}; }
  static Site segment(Point a, Point b);

  friend bool operator==(const Site&, const Site&) = default;
};

/// A plain line segment of an input set for the distance pipeline.
struct Segment {
  Point a, b;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Euclidean distance from p to the closure of s.
double point_site_distance(Point p, const Site& s);

/// Bisector of two elementary sites clipped to `box`: point/point gives the
/// perpendicular bisector, point/segment a parabola restricted to feet on
/// the open segment, segment/segment the angular bisector pieces whose feet
/// lie on both segments. Throws std::invalid_argument for identical sites.
std::vector<Arc> bisector(const Site& s1, const Site& s2, const Box& box);
std::vector<Arc> bisector(const Site& s1, const Site& s2);

/// Parameter sub-intervals of [t0, t1] on which every polynomial is >= 0.
std::vector<std::pair<double, double>> feasible_intervals(std::span<const Poly> constraints,
                                                          double t0, double t1);

}  // namespace rbsect
