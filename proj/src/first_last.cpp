#include "rbsect/first_last.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdio>
#include <numeric>
#include <tuple>

#include "rbsect/counters.hpp"
#include "rbsect/parallel.hpp"

namespace rbsect {
namespace {

constexpr int kMaxSplitDepth = 4;

// Intersections of a and b with abscissa in [lo, hi], up to kEps.
Intersections clipped(const Curve& a, const Curve& b, double lo, double hi) {
  const Intersections all = intersect(a, b);
  Intersections out;
  out.overlap = all.overlap;
  for (const Point& p : all)
    if (p.x >= lo - kEps && p.x <= hi + kEps) out.p[out.n++] = p;
  return out;
}

bool before(const CandidatePoint& a, const CandidatePoint& b) {
  return std::tie(a.point.x, a.blue, a.point.y) < std::tie(b.point.x, b.blue, b.point.y);
}

void keep_min(std::optional<CandidatePoint>& best, const CandidatePoint& c) {
  if (!best || before(c, *best)) best = c;
}

// Rank intervals of one blue curve at one node.
class RankSplitter {
 public:
  RankSplitter(const SegTree& t, std::uint32_t v, std::uint32_t b)
      : t_(t), v_(v), b_(b), blue_(t.curve(Color::blue, b)), reds_(t.cover(v, Color::red)) {}

  void run(std::vector<BlueSubsegment>& out) {
    const double wl = std::max(blue_.x_min(), t_.lo(v_));
    const double wr = std::min(blue_.x_max(), t_.hi(v_));
    if (!(wl < wr) || reds_.empty()) return;
    const auto [a1, a2] = rank_interval(wl, wr);
    if (a1 > a2) return;
    resolve(wl, wr, a1, a2, false, std::nullopt, 0, out);
  }

 private:
  const Curve& red(std::int32_t r) const { return t_.curve(Color::red, reds_[r]); }

  Intersections hits(std::int32_t r, double lo, double hi) const {
    return clipped(red(r), blue_, lo, hi);
  }

  // -1: red r lies below the blue piece over [lo, hi] without meeting it,
  // +1: above, 0: they meet.
  int side(std::int32_t r, double lo, double hi) const {
    counters::bump(Op::search_probe);
    if (!hits(r, lo, hi).empty()) return 0;
    const double xm = 0.5 * (lo + hi);
    return red(r).eval_y(xm) < blue_.eval_y(xm) ? -1 : 1;
  }

  std::pair<std::int32_t, std::int32_t> rank_interval(double lo, double hi) const {
    auto first_where = [&](auto&& pred) {
      std::int32_t a = 0, b = static_cast<std::int32_t>(reds_.size());
      while (a < b) {
        const std::int32_t mid = a + (b - a) / 2;
        if (pred(side(mid, lo, hi)))
          b = mid;
        else
          a = mid + 1;
      }
      return a;
    };
    const std::int32_t a1 = first_where([](int s) { return s != -1; });
    const std::int32_t a2 = first_where([](int s) { return s == 1; }) - 1;
    return {a1, a2};
  }

  void emit(double lo, double hi, std::int32_t a1, std::int32_t a2, bool kept, CaseTag tag,
            std::vector<BlueSubsegment>& out) const {
    out.push_back({b_, v_, lo, hi, a1, a2, tag, kept});
  }

  void recompute(double lo, double hi, CaseTag tag, int depth, std::vector<BlueSubsegment>& out) {
    const auto [a1, a2] = rank_interval(lo, hi);
    if (a1 <= a2) resolve(lo, hi, a1, a2, false, tag, depth, out);
  }

  void resolve(double lo, double hi, std::int32_t a1, std::int32_t a2, bool kept,
               std::optional<CaseTag> tag, int depth, std::vector<BlueSubsegment>& out) {
    const Intersections h1 = hits(a1, lo, hi);
    const Intersections h2 = a1 == a2 ? h1 : hits(a2, lo, hi);
    const std::size_t c1 = h1.size(), c2 = h2.size();
    if (c1 > 2 || c2 > 2) fail("meets a red curve more than twice");
    if (kept && (c1 == 0 || c2 == 0)) return recompute(lo, hi, tag.value(), depth, out);
    if (a1 == a2 || (c1 == 1 && c2 == 1)) {
      emit(lo, hi, a1, a2, kept, tag.value_or(a1 == a2 ? CaseTag::single : CaseTag::once_once), out);
      return;
    }
    if (depth >= kMaxSplitDepth) fail("crossings could not be separated");
    auto mid = [](const Intersections& h) { return 0.5 * (h[0].x + h[1].x); };

    if (c1 != c2) {
      const CaseTag t = tag.value_or(CaseTag::once_twice);
      const double s = c1 == 2 ? mid(h1) : mid(h2);
      const double once = c1 == 1 ? h1[0].x : h2[0].x;
      if (once < s) {
        resolve(lo, s, a1, a2, true, t, depth + 1, out);
        recompute(s, hi, t, depth + 1, out);
      } else {
        recompute(lo, s, t, depth + 1, out);
        resolve(s, hi, a1, a2, true, t, depth + 1, out);
      }
      return;
    }

    const double p1 = h1[0].x, q1 = h1[1].x, p2 = h2[0].x, q2 = h2[1].x;
    if ((p1 <= p2 && q2 <= q1) || (p2 <= p1 && q1 <= q2)) {
      const CaseTag t = tag.value_or(CaseTag::twice_nested);
      const double s = q2 - p2 < q1 - p1 ? mid(h2) : mid(h1);
      resolve(lo, s, a1, a2, true, t, depth + 1, out);
      resolve(s, hi, a1, a2, true, t, depth + 1, out);
      return;
    }
    const bool disjoint = q1 < p2 || q2 < p1;
    const CaseTag t = tag.value_or(disjoint ? CaseTag::twice_disjoint : CaseTag::interleaved);
    const double s1 = std::min(mid(h1), mid(h2)), s2 = std::max(mid(h1), mid(h2));
    recompute(lo, s1, t, depth + 1, out);
    if (disjoint)
      resolve(s1, s2, a1, a2, true, t, depth + 1, out);
    else
      recompute(s1, s2, t, depth + 1, out);
    recompute(s2, hi, t, depth + 1, out);
  }

  [[noreturn]] void fail(const char* what) const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "blue curve %u %s in slab [%.17g, %.17g]", b_, what, t_.lo(v_),
                  t_.hi(v_));
    throw ValidationError(buf);
  }

  const SegTree& t_;
  std::uint32_t v_, b_;
  const Curve& blue_;
  std::span<const std::uint32_t> reds_;
};

struct Task {
  std::uint32_t node;
  std::uint32_t curve;
  Source source;
};

// (node, curve) pairs for the neighbour search (reds against a non-empty C_B) or rank intervals
// (blues in E_B against a non-empty C_A), in node order.
std::vector<Task> node_tasks(const SegTree& t, bool step2) {
  const std::size_t nodes = t.node_end();
  std::vector<std::size_t> count(nodes, 0);
  parallel::parallel_for(nodes, [&](std::size_t v) {
    if (v == 0) return;
    const auto u = static_cast<std::uint32_t>(v);
    if (step2) {
      if (!t.cover(u, Color::blue).empty())
        count[v] = t.cover(u, Color::red).size() + t.ends(u, Color::red).size();
    } else if (!t.cover(u, Color::red).empty()) {
      count[v] = t.ends(u, Color::blue).size();
    }
  });
  const auto off = parallel::offsets_from_counts(count);
  std::vector<Task> tasks(off.back());
  parallel::parallel_for(nodes, [&](std::size_t v) {
    if (count[v] == 0) return;
    const auto u = static_cast<std::uint32_t>(v);
    std::size_t k = off[v];
    if (step2) {
      for (std::uint32_t a : t.cover(u, Color::red)) tasks[k++] = {u, a, Source::step2_cover};
      for (std::uint32_t a : t.ends(u, Color::red)) tasks[k++] = {u, a, Source::step2_end};
    } else {
      for (std::uint32_t b : t.ends(u, Color::blue)) tasks[k++] = {u, b, Source::step3};
    }
  });
  return tasks;
}

void step2_task(const SegTree& t, const Task& task, std::vector<CandidatePoint>& out) {
  const Curve& a = t.curve(Color::red, task.curve);
  const auto list = t.cover(task.node, Color::blue);
  const double x0 = std::max(a.x_min(), t.lo(task.node));
  const double x1 = std::min(a.x_max(), t.hi(task.node));
  const RankRange rr = t.y_rank(task.node, Color::blue, x0, a.eval_y(x0), kEps);
  const std::ptrdiff_t first = std::max<std::ptrdiff_t>(rr.pred, 0);
  const std::ptrdiff_t last = rr.succ < 0 ? static_cast<std::ptrdiff_t>(list.size()) - 1 : rr.succ;
  std::optional<CandidatePoint> best;
  for (std::ptrdiff_t k = first; k <= last; ++k) {
    const std::uint32_t b = list[k];
    const Intersections h = clipped(a, t.curve(Color::blue, b), x0, x1);
    if (!h.empty()) keep_min(best, {task.curve, h[0], b, task.source});
  }
  if (best) out.push_back(*best);
}

struct Group {
  std::uint32_t node;
  std::size_t begin, end;
};

}  // namespace

std::vector<CandidatePoint> step2_cover_candidates(const SegTree& t) {
  const auto tasks = node_tasks(t, true);
  return parallel::parallel_collect<CandidatePoint>(
      tasks.size(), [&](std::size_t i, std::vector<CandidatePoint>& out) { step2_task(t, tasks[i], out); });
}

std::vector<CandidatePoint> endpoint_contact_candidates(std::span<const Curve> red,
                                                        std::span<const Curve> blue) {
  std::vector<std::uint32_t> by_min(blue.size()), by_max(blue.size());
  std::iota(by_min.begin(), by_min.end(), 0u);
  std::iota(by_max.begin(), by_max.end(), 0u);
  counters::add(Op::sort_item, 2 * blue.size());
  parallel::parallel_sort(by_min.begin(), by_min.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::pair(blue[a].x_min(), a) < std::pair(blue[b].x_min(), b);
  });
  parallel::parallel_sort(by_max.begin(), by_max.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::pair(blue[a].x_max(), a) < std::pair(blue[b].x_max(), b);
  });
  auto near = [&](const std::vector<std::uint32_t>& order, bool use_min, double x) {
    auto key = [&](std::uint32_t i) { return use_min ? blue[i].x_min() : blue[i].x_max(); };
    auto lo = std::partition_point(order.begin(), order.end(),
                                   [&](std::uint32_t i) { return key(i) < x - kEps; });
    auto hi = std::partition_point(lo, order.end(), [&](std::uint32_t i) { return key(i) <= x + kEps; });
    return std::span<const std::uint32_t>(order.data() + (lo - order.begin()), hi - lo);
  };
  return parallel::parallel_collect<CandidatePoint>(
      red.size(), [&](std::size_t i, std::vector<CandidatePoint>& out) {
        const Curve& a = red[i];
        std::optional<CandidatePoint> best;
        auto scan = [&](std::span<const std::uint32_t> bs) {
          for (std::uint32_t b : bs) {
            const Intersections h = intersect(a, blue[b]);
            if (!h.empty())
              keep_min(best, {static_cast<std::uint32_t>(i), h[0], b, Source::endpoint_contact});
          }
        };
        if (!blue.empty()) {
          scan(near(by_min, true, a.x_max()));
          scan(near(by_max, false, a.x_min()));
        }
        if (best) out.push_back(*best);
      });
}

std::vector<BlueSubsegment> step31_rank_intervals(const SegTree& t, std::uint32_t v) {
  std::vector<BlueSubsegment> out;
  for (std::uint32_t b : t.ends(v, Color::blue)) RankSplitter(t, v, b).run(out);
  return out;
}

std::vector<RankInterval> step33_shrink(std::span<const ShrinkInput> entries, ShrinkRecord* record) {
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const ShrinkInput &x = entries[a], &y = entries[b];
    return std::tie(x.xkey, x.interval.owner, x.interval.lo, x.interval.hi) <
           std::tie(y.xkey, y.interval.owner, y.interval.lo, y.interval.hi);
  });
  std::vector<RankInterval> out;
  std::int32_t mn = INT_MAX, mx = INT_MIN;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const RankInterval& iv = entries[order[k]].interval;
    if (record) record->ordered.push_back({iv, entries[order[k]].xkey});
    auto push = [&](std::int32_t lo, std::int32_t hi) {
      if (lo > hi) return;
      RankInterval piece = iv;
      piece.lo = lo;
      piece.hi = hi;
      out.push_back(piece);
      if (record) record->pieces.push_back({k, piece});
    };
    if (k == 0) {
      push(iv.lo, iv.hi);
    } else {
      push(iv.lo, std::min(iv.hi, mn - 1));
      push(std::max(iv.lo, mx + 1), iv.hi);
    }
    mn = std::min(mn, iv.lo);
    mx = std::max(mx, iv.hi);
  }
  return out;
}

std::vector<std::optional<CandidatePoint>> step4_reduce(std::vector<CandidatePoint> cands,
                                                        std::size_t red_count) {
  counters::add(Op::sort_item, cands.size());
  parallel::parallel_sort(cands.begin(), cands.end(), [](const CandidatePoint& a, const CandidatePoint& b) {
    return std::tie(a.red, a.point.x, a.blue, a.point.y, a.source) <
           std::tie(b.red, b.point.x, b.blue, b.point.y, b.source);
  });
  std::vector<std::optional<CandidatePoint>> best(red_count);
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (i == 0 || cands[i].red != cands[i - 1].red) best.at(cands[i].red) = cands[i];
  return best;
}

std::vector<std::optional<CandidatePoint>> min_x_run(std::span<const Curve> red,
                                                     std::span<const Curve> blue,
                                                     const FirstLastOptions& opts) {
  FirstLastTrace* trace = opts.trace;
  const SegTree t = SegTree::build(red, blue, {opts.validate, opts.endpoint_tol});

  // Cover-list neighbours and the single-abscissa contacts the tree cannot see.
  std::vector<CandidatePoint> cands = step2_cover_candidates(t);
  {
    const auto extra = endpoint_contact_candidates(red, blue);
    cands.insert(cands.end(), extra.begin(), extra.end());
  }

  // Rank intervals
  const auto tasks = node_tasks(t, false);
  const auto subs = parallel::parallel_collect<BlueSubsegment>(
      tasks.size(),
      [&](std::size_t i, std::vector<BlueSubsegment>& out) {
        RankSplitter(t, tasks[i].node, tasks[i].curve).run(out);
      },
      16);
  std::vector<Group> groups;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (groups.empty() || groups.back().node != subs[i].node) groups.push_back({subs[i].node, i, i});
    groups.back().end = i + 1;
  }
  std::vector<std::int32_t> group_of(t.node_end(), -1);
  for (std::size_t g = 0; g < groups.size(); ++g) group_of[groups[g].node] = static_cast<std::int32_t>(g);

  // Interval trees
  std::vector<IntervalTree> before(groups.size()), after(groups.size());
  parallel::parallel_for(
      groups.size(),
      [&](std::size_t g) {
        std::vector<RankInterval> ivs;
        ivs.reserve(groups[g].end - groups[g].begin);
        for (std::size_t i = groups[g].begin; i < groups[g].end; ++i)
          ivs.push_back({subs[i].lo, subs[i].hi, static_cast<std::uint32_t>(i - groups[g].begin),
                         static_cast<std::uint8_t>(subs[i].tag)});
        before[g] = IntervalTree::build(std::move(ivs));
      },
      1);

  // Shrink, then rebuild
  std::atomic<std::size_t> fallbacks{0};
  std::vector<std::vector<ShrinkRecord>> records(trace ? groups.size() : 0);
  parallel::parallel_for(
      groups.size(),
      [&](std::size_t g) {
        const Group& gr = groups[g];
        const IntervalTree& it = before[g];
        const double l = t.lo(gr.node), r = t.hi(gr.node);
        std::vector<RankInterval> shrunk;
        std::vector<ShrinkInput> entries;
        for (std::size_t u = 0; u < it.node_count(); ++u) {
          const auto held = it.by_lo(static_cast<std::int32_t>(u));
          if (held.empty()) continue;
          const std::int32_t ref = it.node(static_cast<std::int32_t>(u)).ref;
          const Curve& a = t.curve(Color::red, t.cover(gr.node, Color::red)[ref]);
          entries.clear();
          for (const RankInterval& iv : held) {
            const BlueSubsegment& s = subs[gr.begin + iv.owner];
            const Intersections h =
                clipped(a, t.curve(Color::blue, s.blue), std::max(s.x_lo, l), std::min(s.x_hi, r));
            double key = s.x_lo;
            if (h.empty())
              fallbacks.fetch_add(1, std::memory_order_relaxed);
            else
              key = h[0].x;
            entries.push_back({iv, key});
          }
          ShrinkRecord* rec = nullptr;
          if (trace) {
            records[g].push_back({gr.node, ref, {}, {}});
            rec = &records[g].back();
          }
          const auto pieces = step33_shrink(entries, rec);
          shrunk.insert(shrunk.end(), pieces.begin(), pieces.end());
        }
        after[g] = IntervalTree::build(std::move(shrunk));
      },
      1);

  // Stabbing queries
  auto stab_candidate = [&](std::uint32_t ai, std::uint32_t* hits_out) {
    const Curve& a = t.curve(Color::red, ai);
    std::optional<CandidatePoint> best;
    for (const CoverSlot& slot : t.cover_slots(Color::red, ai)) {
      const std::int32_t g = group_of[slot.node];
      if (g < 0) continue;
      const Group& gr = groups[g];
      const double l = t.lo(gr.node), r = t.hi(gr.node);
      std::uint32_t hits = 0;
      after[g].stab(static_cast<std::int32_t>(slot.rank), [&](const RankInterval& iv) {
        ++hits;
        const BlueSubsegment& s = subs[gr.begin + iv.owner];
        const Intersections h =
            clipped(a, t.curve(Color::blue, s.blue), std::max(s.x_lo, l), std::min(s.x_hi, r));
        if (!h.empty()) keep_min(best, {ai, h[0], s.blue, Source::step3});
      });
      if (hits_out) hits_out[g] = std::max(hits_out[g], hits);
    }
    return best;
  };
  {
    const auto step3 = parallel::parallel_collect<CandidatePoint>(
        red.size(), [&](std::size_t i, std::vector<CandidatePoint>& out) {
          if (auto c = stab_candidate(static_cast<std::uint32_t>(i), nullptr)) out.push_back(*c);
        });
    cands.insert(cands.end(), step3.begin(), step3.end());
  }

  if (trace) {
    std::vector<std::uint32_t> hits(groups.size(), 0);
    for (std::uint32_t i = 0; i < red.size(); ++i) stab_candidate(i, hits.data());
    trace->subsegments = subs;
    trace->trees_before.clear();
    trace->trees_after.clear();
    trace->shrinks.clear();
    trace->stab_hits.clear();
    for (std::size_t g = 0; g < groups.size(); ++g) {
      trace->trees_before.emplace_back(groups[g].node, std::move(before[g]));
      trace->trees_after.emplace_back(groups[g].node, std::move(after[g]));
      trace->stab_hits.emplace_back(groups[g].node, hits[g]);
      for (auto& rec : records[g]) trace->shrinks.push_back(std::move(rec));
    }
    trace->xkey_fallbacks = fallbacks.load();
    trace->candidates = cands;
  }

  // Reduction
  return step4_reduce(std::move(cands), red.size());
}

FirstLastResult first_last(std::span<const Curve> red, std::span<const Curve> blue,
                           const FirstLastOptions& opts) {
  const auto mins = min_x_run(red, blue, opts);
  const std::vector<Curve> mred = mirror_x(red), mblue = mirror_x(blue);
  FirstLastOptions mopts = opts;
  mopts.validate = false;
  mopts.trace = nullptr;
  const auto maxs = min_x_run(mred, mblue, mopts);

  FirstLastResult res(red.size());
  parallel::parallel_for(red.size(), [&](std::size_t i) {
    res[i].first = mins[i];
    if (!maxs[i]) return;
    CandidatePoint c = *maxs[i];
    // Report the point as computed on the original curves.
    const Intersections h = intersect(red[i], blue[c.blue]);
    c.point = h.empty() ? Point{-c.point.x, c.point.y} : h[h.size() - 1];
    res[i].last = c;
  });
  return res;
}

}  // namespace rbsect
