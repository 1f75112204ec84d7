#include "rbsect/segment_tree.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <limits>
#include <sstream>

#include "rbsect/counters.hpp"
#include "rbsect/parallel.hpp"

namespace rbsect {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CoverEntry {
  std::uint32_t node;
  std::uint32_t curve;
  double key;
  std::uint32_t orig;
};

struct EndEntry {
  std::uint32_t node;
  std::uint32_t curve;
};

// Leaf range [i, j] (0-based leaf indices) of the elementary intervals
// inside the curve's x-projection.
std::pair<std::size_t, std::size_t> leaf_range(const std::vector<double>& xs, const Curve& c) {
  const auto i0 = std::lower_bound(xs.begin(), xs.end(), c.x_min()) - xs.begin();
  const auto j0 = std::lower_bound(xs.begin(), xs.end(), c.x_max()) - xs.begin();
  return {static_cast<std::size_t>(i0) + 1, static_cast<std::size_t>(j0)};
}

template <class Emit>
void for_each_cover_node(std::size_t leaves, std::size_t i, std::size_t j, Emit&& emit) {
  std::size_t l = i + leaves, r = j + leaves + 1;
  while (l < r) {
    if (l & 1) emit(static_cast<std::uint32_t>(l++));
    if (r & 1) emit(static_cast<std::uint32_t>(--r));
    l >>= 1;
    r >>= 1;
  }
}

// Proper ancestors of leaves i and j whose leaf range is not inside [i, j].
template <class Emit>
void for_each_end_node(std::size_t leaves, int depth, std::size_t i, std::size_t j, Emit&& emit) {
  for (int h = 1; h < depth; ++h) {
    const std::size_t a = (i + leaves) >> h;
    const std::size_t b = (j + leaves) >> h;
    auto outside = [&](std::size_t v) {
      const std::size_t first = (v << h) - leaves;
      const std::size_t last = ((v + 1) << h) - leaves - 1;
      return first < i || last > j;
    };
    if (outside(a)) emit(static_cast<std::uint32_t>(a));
    if (b != a && outside(b)) emit(static_cast<std::uint32_t>(b));
  }
}

struct Violation {
  std::uint32_t a, b;
  Point at;
  bool overlap;
};

bool near_endpoint(const Curve& c, Point p, double tol) {
  return dist(c.left(), p) <= tol || dist(c.right(), p) <= tol;
}

void check_pair(const Curve& ca, std::uint32_t a, const Curve& cb, std::uint32_t b, double tol,
                std::vector<Violation>& out) {
  const Intersections hits = intersect(ca, cb);
  if (hits.overlap) {
    // halves of one split arc share only their end
    const bool touch = hits.size() > 0 && dist(hits[0], hits[hits.size() - 1]) <= tol &&
                       near_endpoint(ca, hits[0], tol) && near_endpoint(cb, hits[0], tol);
    if (!touch) out.push_back({std::min(a, b), std::max(a, b), hits.size() ? hits[0] : Point{}, true});
    return;
  }
  for (const Point& p : hits) {
    if (near_endpoint(ca, p, tol) || near_endpoint(cb, p, tol)) continue;
    out.push_back({std::min(a, b), std::max(a, b), p, false});
    return;
  }
}

}  // namespace

SegTree SegTree::build(std::span<const Curve> red, std::span<const Curve> blue,
                       const SegTreeOptions& opts) {
  SegTree t;
  t.red_.assign(red.begin(), red.end());
  t.blue_.assign(blue.begin(), blue.end());

  t.xs_.reserve(2 * (red.size() + blue.size()));
  for (const auto* set : {&t.red_, &t.blue_})
    for (const Curve& c : *set) {
      t.xs_.push_back(c.x_min());
      t.xs_.push_back(c.x_max());
    }
  counters::add(Op::sort_item, t.xs_.size());
  parallel::parallel_sort(t.xs_.begin(), t.xs_.end(), std::less<>());
  t.xs_.erase(std::unique(t.xs_.begin(), t.xs_.end()), t.xs_.end());

  const std::size_t m = t.xs_.size();
  t.leaves_ = std::bit_ceil(m + 1);
  t.depth_ = std::countr_zero(t.leaves_) + 1;
  const std::size_t L = t.leaves_;
  t.lo_.assign(2 * L, kInf);
  t.hi_.assign(2 * L, kInf);
  for (std::size_t k = 0; k <= m; ++k) {
    t.lo_[L + k] = k == 0 ? -kInf : t.xs_[k - 1];
    t.hi_[L + k] = k < m ? t.xs_[k] : kInf;
  }
  for (std::size_t v = L - 1; v >= 1; --v) {
    t.lo_[v] = t.lo_[2 * v];
    t.hi_[v] = t.hi_[2 * v + 1];
  }

  for (int color = 0; color < 2; ++color) {
    const std::vector<Curve>& cs = color == 0 ? t.red_ : t.blue_;
    Lists& out = t.lists_[color];
    const std::size_t n = cs.size();

    std::vector<std::size_t> ncover(n), nend(n);
    parallel::parallel_for(n, [&](std::size_t c) {
      const auto [i, j] = leaf_range(t.xs_, cs[c]);
      std::size_t k = 0;
      for_each_cover_node(L, i, j, [&](std::uint32_t) { ++k; });
      ncover[c] = k;
      k = 0;
      for_each_end_node(L, t.depth_, i, j, [&](std::uint32_t) { ++k; });
      nend[c] = k;
    });
    out.slot_off = parallel::offsets_from_counts(ncover);
    const auto end_off = parallel::offsets_from_counts(nend);

    std::vector<CoverEntry> cover(out.slot_off[n]);
    std::vector<EndEntry> ends(end_off[n]);
    parallel::parallel_for(n, [&](std::size_t c) {
      const auto [i, j] = leaf_range(t.xs_, cs[c]);
      const auto id = static_cast<std::uint32_t>(c);
      std::size_t k = out.slot_off[c];
      for_each_cover_node(L, i, j, [&](std::uint32_t v) {
        const double mid = 0.5 * (t.lo_[v] + t.hi_[v]);
        cover[k] = {v, id, cs[c].eval_y(mid), static_cast<std::uint32_t>(k)};
        ++k;
      });
      k = end_off[c];
      for_each_end_node(L, t.depth_, i, j, [&](std::uint32_t v) { ends[k++] = {v, id}; });
    });
    counters::add(Op::tree_entry, cover.size() + ends.size());
    counters::add(Op::sort_item, cover.size() + ends.size());

    parallel::parallel_sort(cover.begin(), cover.end(), [](const CoverEntry& a, const CoverEntry& b) {
      if (a.node != b.node) return a.node < b.node;
      if (a.key != b.key) return a.key < b.key;
      return a.curve < b.curve;
    });
    parallel::parallel_sort(ends.begin(), ends.end(), [](const EndEntry& a, const EndEntry& b) {
      return a.node != b.node ? a.node < b.node : a.curve < b.curve;
    });

    std::vector<std::size_t> per_node(2 * L, 0), per_node_end(2 * L, 0);
    for (const auto& e : cover) ++per_node[e.node];
    for (const auto& e : ends) ++per_node_end[e.node];
    out.cover_off = parallel::offsets_from_counts(per_node);
    out.end_off = parallel::offsets_from_counts(per_node_end);

    out.cover.resize(cover.size());
    out.slots.resize(cover.size());
    parallel::parallel_for(cover.size(), [&](std::size_t p) {
      const CoverEntry& e = cover[p];
      out.cover[p] = e.curve;
      out.slots[e.orig] = {e.node, static_cast<std::uint32_t>(p - out.cover_off[e.node])};
    });
    out.ends.resize(ends.size());
    for (std::size_t p = 0; p < ends.size(); ++p) out.ends[p] = ends[p].curve;
  }

  if (opts.validate) {
    t.validate(Color::red, opts.endpoint_tol);
    t.validate(Color::blue, opts.endpoint_tol);
  }
  return t;
}

std::span<const std::uint32_t> SegTree::cover(std::uint32_t v, Color c) const {
  const Lists& l = lists_[static_cast<int>(c)];
  return {l.cover.data() + l.cover_off[v], l.cover_off[v + 1] - l.cover_off[v]};
}

std::span<const std::uint32_t> SegTree::ends(std::uint32_t v, Color c) const {
  const Lists& l = lists_[static_cast<int>(c)];
  return {l.ends.data() + l.end_off[v], l.end_off[v + 1] - l.end_off[v]};
}

std::span<const CoverSlot> SegTree::cover_slots(Color c, std::uint32_t curve) const {
  const Lists& l = lists_[static_cast<int>(c)];
  return {l.slots.data() + l.slot_off[curve], l.slot_off[curve + 1] - l.slot_off[curve]};
}

RankRange SegTree::y_rank(std::uint32_t v, Color c, double x, double y, double tol) const {
  const auto list = cover(v, c);
  const auto cs = curves(c);
  auto first_where = [&](auto&& pred) {
    std::size_t lo = 0, hi = list.size();
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      counters::bump(Op::search_probe);
      if (pred(cs[list[mid]].eval_y(x)))
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  };
  const std::size_t lower = first_where([&](double ye) { return ye >= y - tol; });
  const std::size_t upper = first_where([&](double ye) { return ye > y + tol; });
  RankRange r;
  r.pred = static_cast<std::ptrdiff_t>(lower) - 1;
  r.succ = upper < list.size() ? static_cast<std::ptrdiff_t>(upper) : -1;
  return r;
}

std::size_t SegTree::total_entries() const {
  std::size_t s = 0;
  for (const auto& l : lists_) s += l.cover.size() + l.ends.size();
  return s;
}

void SegTree::validate(Color c, double tol) const {
  const auto cs = curves(c);
  const std::size_t nodes = node_end();
  auto found = parallel::parallel_collect<Violation>(
      nodes,
      [&](std::size_t vi, std::vector<Violation>& out) {
        if (vi == 0) return;
        const auto v = static_cast<std::uint32_t>(vi);
        const auto list = cover(v, c);
        for (std::size_t k = 0; k + 1 < list.size(); ++k)
          check_pair(cs[list[k]], list[k], cs[list[k + 1]], list[k + 1], tol, out);
        if (list.empty()) return;
        for (std::uint32_t e : ends(v, c)) {
          const Curve& ce = cs[e];
          const double x0 = std::max(ce.x_min(), lo_[v]);
          const RankRange rr = y_rank(v, c, x0, ce.eval_y(x0), kEps);
          const std::ptrdiff_t first = std::max<std::ptrdiff_t>(rr.pred, 0);
          const std::ptrdiff_t last =
              rr.succ < 0 ? static_cast<std::ptrdiff_t>(list.size()) - 1 : rr.succ;
          for (std::ptrdiff_t k = first; k <= last; ++k)
            check_pair(ce, e, cs[list[k]], list[k], tol, out);
        }
      },
      16);
  if (found.empty()) return;
  std::sort(found.begin(), found.end(), [](const Violation& a, const Violation& b) {
    return a.a != b.a ? a.a < b.a : a.b < b.b;
  });
  const Violation& w = found.front();
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s curves %u and %u %s at (%.17g, %.17g)",
                c == Color::red ? "red" : "blue", w.a, w.b, w.overlap ? "overlap" : "cross",
                w.at.x, w.at.y);
  throw ValidationError(buf);
}

std::string SegTree::dump() const {
  std::ostringstream os;
  os.precision(17);
  for (std::uint32_t v = 1; v < node_end(); ++v) {
    const std::size_t ca = cover(v, Color::red).size(), cb = cover(v, Color::blue).size();
    const std::size_t ea = ends(v, Color::red).size(), eb = ends(v, Color::blue).size();
    if (ca + cb + ea + eb == 0) continue;
    os << v << ' ' << lo_[v] << ' ' << hi_[v] << " CA=" << ca << " CB=" << cb << " EA=" << ea
       << " EB=" << eb << '\n';
  }
  return os.str();
}

}  // namespace rbsect
