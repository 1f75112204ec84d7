#include "rbsect/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rbsect {
namespace {

// Raw-bit uniform draws so the output does not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(g_() >> 11) * 0x1.0p-53;
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(g_() % n); }
  bool chance(double p) { return uniform(0, 1) < p; }

 private:
  std::mt19937_64 g_;
};

struct Rect {
  double x0, y0, x1, y1;
  double w() const { return x1 - x0; }
  double h() const { return y1 - y0; }
  Rect shrink(double f) const {
    return {x0 + f * w(), y0 + f * h(), x1 - f * w(), y1 - f * h()};
  }
  bool contains(const Curve& c) const {
    return c.x_min() >= x0 && c.x_max() <= x1 && c.y_min() >= y0 && c.y_max() <= y1;
  }
};

Curve random_line_in(Rng& r, const Rect& b, bool wide) {
  if (wide) {
    return Curve::line({b.x0 + r.uniform(0, 0.3) * b.w(), r.uniform(b.y0, b.y1)},
                       {b.x1 - r.uniform(0, 0.3) * b.w(), r.uniform(b.y0, b.y1)});
  }
  return Curve::line({r.uniform(b.x0, b.x1), b.y0 + r.uniform(0, 0.3) * b.h()},
                     {r.uniform(b.x0, b.x1), b.y1 - r.uniform(0, 0.3) * b.h()});
}

// A cap or cup over (a sub-range of) the rectangle, possibly tilted.
std::optional<Curve> random_parabola_in(Rng& r, const Rect& b) {
  const double lo = b.x0 + r.uniform(0, 0.2) * b.w(), hi = b.x1 - r.uniform(0, 0.2) * b.w();
  const double hv = lo + (hi - lo) * r.uniform(0.2, 0.8);
  const double reach = std::max(hv - lo, hi - hv);
  const double p = reach * reach / (1.6 * b.h()) * r.uniform(1, 3);
  ParabolaArc a;
  a.direction = {1, 0};
  a.t_lo = lo;
  a.t_hi = hi;
  if (r.chance(0.5)) {
    const double yv = b.y0 + 0.1 * b.h();
    a.focus = {hv, yv + p / 2};
    a.directrix_point = {0, yv - p / 2};
  } else {
    const double yv = b.y1 - 0.1 * b.h();
    a.focus = {hv, yv - p / 2};
    a.directrix_point = {0, yv + p / 2};
  }
  if (r.chance(0.5)) {
    const Point c{0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1)};
    const double th = r.uniform(-0.3, 0.3);
    a.focus = c + rotate(a.focus - c, th);
    a.directrix_point = c + rotate(a.directrix_point - c, th);
    a.direction = rotate(a.direction, th);
  }
  try {
    Curve cv = Curve::parabola(a);
    if (b.contains(cv)) return cv;
  } catch (const ValidationError&) {
  }
  return std::nullopt;
}

Instance random_disjoint(std::size_t n, Rng& r) {
  Instance inst;
  const std::size_t nr = (n + 1) / 2, nb = n / 2;
  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * static_cast<double>(std::max<std::size_t>(nr, 1)))));
  std::size_t row = 0;
  while (inst.red.size() < nr) {
    for (std::size_t c = 0; c < cols && inst.red.size() < nr;) {
      const std::size_t k = std::min(cols - c, 1 + r.below(3));
      const Rect cell = Rect{double(c), double(row), double(c + k), double(row + 1)}.shrink(0.05);
      std::optional<Curve> cv;
      if (r.chance(1.0 / 3)) cv = random_parabola_in(r, cell);
      inst.red.push_back(cv ? *cv : random_line_in(r, cell, true));
      c += k;
    }
    ++row;
  }
  const double ox = 0.37, oy = 0.53;
  const std::size_t rows = std::max<std::size_t>(row, 1);
  for (std::size_t c = 0; inst.blue.size() < nb; ++c) {
    for (std::size_t y = 0; y < rows && inst.blue.size() < nb;) {
      const std::size_t k = std::min(rows - y, 1 + r.below(3));
      const Rect cell =
          Rect{c + ox, y + oy - 0.5, c + ox + 1, y + oy - 0.5 + double(k)}.shrink(0.05);
      for (;;) {
        try {
          inst.blue.push_back(random_line_in(r, cell, false));
          break;
        } catch (const ValidationError&) {
        }
      }
      y += k;
    }
  }
  return inst;
}

Instance grid_crossing(std::size_t n, Rng& r) {
  Instance inst;
  const std::size_t nr = (n + 1) / 2, nb = n / 2;
  for (std::size_t k = 0; k < nr; ++k) {
    const double y = k + r.uniform(-0.2, 0.2);
    inst.red.push_back(Curve::line({-r.uniform(0.1, 0.5), y},
                                   {nb + r.uniform(0.1, 0.5), y + r.uniform(-0.2, 0.2)}));
  }
  if (nb == 1 && nr * nb < n) {
    // too few rows for n crossings: one cap that cuts every row twice
    const double top = nr + 0.5, k = (nr + 1.5) / 0.2;
    ParabolaArc a;
    a.focus = {0.5, top - 1 / (4 * k)};
    a.directrix_point = {0, top + 1 / (4 * k)};
    a.direction = {1, 0};
    a.t_lo = 0.05;
    a.t_hi = 0.95;
    inst.blue.push_back(Curve::parabola(a));
    return inst;
  }
  for (std::size_t j = 0; j < nb; ++j) {
    const double x = j + 0.5 + r.uniform(-0.15, 0.15);
    const double shift = r.uniform(0.05, 0.3) * (r.chance(0.5) ? -1 : 1);
    inst.blue.push_back(Curve::line({x, -1.0}, {x + shift, double(nr)}));
  }
  return inst;
}

// Red horizontal lines under blue bumps that are vertical translates of
// one another, so they never cross.
void bump_region(Instance& inst, Rng& r, double ox, double oy) {
  const std::size_t lines = 3 + r.below(4), bumps = 2 + r.below(3);
  for (std::size_t j = 0; j < lines; ++j)
    inst.red.push_back(Curve::line({ox, oy + 0.25 * j}, {ox + 6, oy + 0.25 * j}));
  const double s = 0.48;
  const double p = 1 / (2 * s);
  for (std::size_t i = 0; i < bumps; ++i) {
    const double peak = oy + 1.0 + 0.2 * i + r.uniform(0, 0.05);
    ParabolaArc a;
    a.focus = {ox + 3, peak - p / 2};
    a.directrix_point = {0, peak + p / 2};
    a.direction = {1, 0};
    a.t_lo = ox + 3 - r.uniform(0.5, 2.5);
    a.t_hi = ox + 3 + r.uniform(0.5, 2.5);
    inst.blue.push_back(Curve::parabola(a));
  }
}

// A cap and a cup that never meet, the line between them, and blue lines
// that cut the cap and the cup twice each in disjoint x-ranges.
void disjoint_region(Instance& inst, double ox, double oy) {
  ParabolaArc cap;  // y = 0.2 (1 - (x - 1)^2)
  const double p = 2.5;
  cap.focus = {ox + 1, oy + 0.2 - p / 2};
  cap.directrix_point = {0, oy + 0.2 + p / 2};
  cap.direction = {1, 0};
  cap.t_lo = ox;
  cap.t_hi = ox + 4.5;
  ParabolaArc cup;  // y = 0.2 ((x - 3)^2 - 0.5)
  cup.focus = {ox + 3, oy - 0.1 + p / 2};
  cup.directrix_point = {0, oy - 0.1 - p / 2};
  cup.direction = {1, 0};
  cup.t_lo = ox;
  cup.t_hi = ox + 4.5;
  inst.red.push_back(Curve::parabola(cap));
  inst.red.push_back(Curve::line({ox, oy + 0.85}, {ox + 4.5, oy + 0.85 - 0.4 * 4.5}));
  inst.red.push_back(Curve::parabola(cup));
  for (const double y : {0.1, 0.12, 0.14})
    inst.blue.push_back(Curve::line({ox + 0.2, oy + y}, {ox + 4.3, oy + y}));
}

Instance nested_parabola(std::size_t n, Rng& r) {
  Instance inst;
  for (std::size_t k = 0; inst.red.size() + inst.blue.size() < n; ++k) {
    const double ox = r.chance(0.5) ? 0.0 : r.uniform(0, 0.3);
    const double oy = 5.0 * k;
    if (r.chance(0.5))
      bump_region(inst, r, ox, oy);
    else
      disjoint_region(inst, ox, oy);
  }
  while (inst.red.size() + inst.blue.size() > n) {
    if (inst.blue.size() >= inst.red.size())
      inst.blue.pop_back();
    else
      inst.red.pop_back();
  }
  return inst;
}

std::vector<Segment> segment_set(std::size_t n, Rng& r) {
  const auto g = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))) + 1;
  const double cell = 10.0 / static_cast<double>(g);
  std::vector<std::size_t> cells(g * g);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = i;
  for (std::size_t i = cells.size(); i > 1; --i) std::swap(cells[i - 1], cells[r.below(i)]);
  std::vector<Segment> out;
  for (std::size_t k = 0; out.size() < n; ++k) {
    const std::size_t c = cells[k];
    const double x0 = (c % g) * cell, y0 = (c / g) * cell;
    auto pt = [&] {
      return Point{x0 + cell * r.uniform(0.1, 0.9), y0 + cell * r.uniform(0.1, 0.9)};
    };
    Point a = pt(), b = pt();
    if (r.chance(0.05)) b.x = a.x;
    if (dist(a, b) < 0.05 * cell) continue;
    out.push_back({a, b});
    if (out.size() < n && r.chance(0.2)) {
      const Point e = pt();
      // skip a second leg that would fold back onto the first
      if (std::abs(cross(b - a, e - b)) > 0.05 * cell * cell) out.push_back({b, e});
    }
  }
  return out;
}

}  // namespace

std::optional<GenKind> parse_gen_kind(std::string_view s) {
  if (s == "random-disjoint") return GenKind::random_disjoint;
  if (s == "grid-crossing") return GenKind::grid_crossing;
  if (s == "nested-parabola") return GenKind::nested_parabola;
  if (s == "segments") return GenKind::segments;
  return std::nullopt;
}

std::string_view gen_kind_name(GenKind k) {
  switch (k) {
    case GenKind::random_disjoint: return "random-disjoint";
    case GenKind::grid_crossing: return "grid-crossing";
    case GenKind::nested_parabola: return "nested-parabola";
    case GenKind::segments: return "segments";
  }
  return "?";
}

Instance generate(GenKind kind, std::size_t n, std::uint64_t seed) {
  Rng r(seed);
  switch (kind) {
    case GenKind::random_disjoint: return random_disjoint(n, r);
    case GenKind::grid_crossing: return grid_crossing(n, r);
    case GenKind::nested_parabola: return nested_parabola(n, r);
    case GenKind::segments: {
      Instance inst;
      for (const Segment& s : segment_set((n + 1) / 2, r))
        if (s.a.x != s.b.x) inst.red.push_back(Curve::line(s.a, s.b));
      for (const Segment& s : segment_set(n / 2, r))
        if (s.a.x != s.b.x) inst.blue.push_back(Curve::line(s.a, s.b));
      return inst;
    }
  }
  return {};
}

SegmentSets generate_segments(std::size_t n, std::uint64_t seed) {
  Rng r(seed);
  SegmentSets s;
  s.p = segment_set(n, r);
  s.q = segment_set(n, r);
  return s;
}

}  // namespace rbsect
