#include "rbsect/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace rbsect {

std::vector<std::vector<CandidatePoint>> oracle_report(std::span<const Curve> red,
                                                       std::span<const Curve> blue) {
  std::vector<std::vector<CandidatePoint>> rep(red.size());
  for (std::size_t i = 0; i < red.size(); ++i) {
    for (std::size_t j = 0; j < blue.size(); ++j)
      for (const Point& p : intersect(red[i], blue[j]))
        rep[i].push_back({static_cast<std::uint32_t>(i), p, static_cast<std::uint32_t>(j),
                          Source::step2_cover});
    std::sort(rep[i].begin(), rep[i].end(), [](const CandidatePoint& a, const CandidatePoint& b) {
      return std::tie(a.point.x, a.blue, a.point.y) < std::tie(b.point.x, b.blue, b.point.y);
    });
  }
  return rep;
}

FirstLastResult brute_first_last(std::span<const Curve> red, std::span<const Curve> blue) {
  FirstLastResult res(red.size());
  for (std::size_t i = 0; i < red.size(); ++i) {
    auto& e = res[i];
    for (std::size_t j = 0; j < blue.size(); ++j) {
      const Intersections h = intersect(red[i], blue[j]);
      if (h.empty()) continue;
      const CandidatePoint lo{static_cast<std::uint32_t>(i), h[0], static_cast<std::uint32_t>(j),
                              Source::step2_cover};
      const CandidatePoint hi{static_cast<std::uint32_t>(i), h[h.size() - 1],
                              static_cast<std::uint32_t>(j), Source::step2_cover};
      if (!e.first || lo.point.x < e.first->point.x) e.first = lo;
      if (!e.last || hi.point.x > e.last->point.x) e.last = hi;
    }
  }
  return res;
}

Nearest brute_nearest(Point p, std::span<const Site> sites) {
  if (sites.empty()) throw std::invalid_argument("brute_nearest: no sites");
  Nearest best{0, point_site_distance(p, sites[0])};
  for (std::size_t i = 1; i < sites.size(); ++i) {
    const double d = point_site_distance(p, sites[i]);
    if (d < best.distance) best = {i, d};
  }
  return best;
}

double distance_to_segments(Point p, std::span<const Segment> segs) {
  double best = std::numeric_limits<double>::infinity();
  for (const Segment& s : segs) {
    const Point d = s.b - s.a;
    const double len2 = dot(d, d);
    const double t = len2 > 0 ? std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, dist(p, s.a + t * d));
  }
  return best;
}

double sampled_directed_hausdorff(std::span<const Segment> P, std::span<const Segment> Q,
                                  double delta) {
  if (!(delta > 0)) throw std::invalid_argument("sampled_directed_hausdorff: delta must be positive");
  if (P.empty() || Q.empty()) throw std::invalid_argument("sampled_directed_hausdorff: empty set");
  double best = 0;
  for (const Segment& s : P) {
    const double len = dist(s.a, s.b);
    const auto last = static_cast<std::size_t>(std::ceil(len / delta));
    auto pos = [&](std::size_t k) { return std::min(len, static_cast<double>(k) * delta); };
    auto at = [&](std::size_t k) {
      const double t = len > 0 ? pos(k) / len : 0.0;
      return distance_to_segments(s.a + t * (s.b - s.a), Q);
    };
    best = std::max({best, at(0), at(last)});
    // The distance to Q is 1-Lipschitz along the segment, so a run of
    // samples around a probe cannot beat the probe by more than its reach.
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    if (last >= 2) stack.push_back({1, last - 1});
    while (!stack.empty()) {
      const auto [i, j] = stack.back();
      stack.pop_back();
      const std::size_t m = i + (j - i) / 2;
      const double fm = at(m);
      best = std::max(best, fm);
      const double reach = std::max(pos(m) - pos(i), pos(j) - pos(m));
      if (fm + reach <= best) continue;
      if (m > i) stack.push_back({i, m - 1});
      if (m < j) stack.push_back({m + 1, j});
    }
  }
  return best;
}

}  // namespace rbsect
