#include "limset/torus_geom.hpp"

#include <algorithm>
#include <utility>

#include "limset/errors.hpp"

namespace limset {

TorusBall make_ball(std::vector<Rat> center, Rat radius) {
  if (center.empty()) throw DomainError("ball: empty center");
  if (radius < 0) throw DomainError("ball: negative radius");
  for (Rat& c : center) c = rat_frac(c);
  return TorusBall{std::move(center), std::move(radius)};
}

TorusRegion make_region(int dim, std::vector<TorusBall> balls) {
  if (dim < 1) throw DomainError("region: dim must be >= 1");
  for (const TorusBall& b : balls) {
    if (static_cast<int>(b.center.size()) != dim)
      throw DomainError("region: ball dimension mismatch");
  }
  return TorusRegion{dim, std::move(balls)};
}

namespace {

const Rat kHalf(1, 2);

// closed intervals [lo,hi] within [0,1]; input need not be sorted
std::vector<Segment> merge_segments(std::vector<Segment> segs) {
  std::sort(segs.begin(), segs.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  std::vector<Segment> out;
  for (Segment& s : segs) {
    if (!out.empty() && s.lo <= out.back().hi) {
      if (s.hi > out.back().hi) out.back().hi = std::move(s.hi);
    } else {
      out.push_back(std::move(s));
    }
  }
  return out;
}

void append_arc_pieces(const Rat& center, const Rat& radius, std::vector<Segment>& out) {
  if (radius >= kHalf) {
    out.push_back({Rat(0), Rat(1)});
    return;
  }
  Rat lo = center - radius, hi = center + radius;
  if (lo < 0) {
    out.push_back({lo + 1, Rat(1)});
    out.push_back({Rat(0), hi});
  } else if (hi > 1) {
    out.push_back({lo, Rat(1)});
    out.push_back({Rat(0), hi - 1});
  } else {
    out.push_back({lo, hi});
  }
}

struct Box {
  Rat xlo, xhi, ylo, yhi;
};

// cut wrap-around balls at the 0 boundary into plain boxes in [0,1]^2
std::vector<Box> split_boxes(const TorusRegion& r) {
  std::vector<Box> boxes;
  for (const TorusBall& b : r.balls) {
    if (b.radius == 0) continue;
    std::vector<Segment> xs, ys;
    append_arc_pieces(b.center[0], b.radius, xs);
    append_arc_pieces(b.center[1], b.radius, ys);
    for (const Segment& x : xs)
      for (const Segment& y : ys) boxes.push_back({x.lo, x.hi, y.lo, y.hi});
  }
  return boxes;
}

std::vector<Rat> x_breakpoints(const std::vector<Box>& boxes) {
  std::vector<Rat> xs;
  xs.reserve(boxes.size() * 2);
  for (const Box& b : boxes) {
    xs.push_back(b.xlo);
    xs.push_back(b.xhi);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Sweep over vertical slabs. visit(slab_lo, slab_hi, active) is called once
// per slab of positive width with the boxes spanning it.
template <typename Visit>
void slab_sweep(const std::vector<Rat>& xs, std::vector<Box> boxes, Visit&& visit) {
  std::sort(boxes.begin(), boxes.end(),
            [](const Box& a, const Box& b) { return a.xlo < b.xlo; });
  std::vector<const Box*> active;
  std::size_t next = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Rat& lo = xs[i];
    const Rat& hi = xs[i + 1];
    while (next < boxes.size() && boxes[next].xlo <= lo) {
      active.push_back(&boxes[next]);
      ++next;
    }
    std::erase_if(active, [&lo](const Box* b) { return b->xhi <= lo; });
    if (lo == hi) continue;
    visit(lo, hi, active);
  }
}

std::vector<Segment> y_union(const std::vector<const Box*>& active) {
  std::vector<Segment> ys;
  ys.reserve(active.size());
  for (const Box* b : active) ys.push_back({b->ylo, b->yhi});
  return merge_segments(std::move(ys));
}

Rat measure_2d(const TorusRegion& r) {
  std::vector<Box> boxes = split_boxes(r);
  std::vector<Rat> xs = x_breakpoints(boxes);
  Rat total = 0;
  slab_sweep(xs, std::move(boxes),
             [&total](const Rat& lo, const Rat& hi, const std::vector<const Box*>& active) {
               total += (hi - lo) * segments_measure(y_union(active));
             });
  return total;
}

Rat intersect_2d(const TorusRegion& a, const TorusRegion& b) {
  std::vector<Box> ba = split_boxes(a), bb = split_boxes(b);
  std::vector<Box> all = ba;
  all.insert(all.end(), bb.begin(), bb.end());
  std::vector<Rat> xs = x_breakpoints(all);

  // run both sweeps against the shared breakpoint list
  std::vector<std::vector<Segment>> ya, yb;
  slab_sweep(xs, std::move(ba),
             [&ya](const Rat&, const Rat&, const std::vector<const Box*>& act) {
               ya.push_back(y_union(act));
             });
  slab_sweep(xs, std::move(bb),
             [&yb](const Rat&, const Rat&, const std::vector<const Box*>& act) {
               yb.push_back(y_union(act));
             });

  Rat total = 0;
  std::size_t slab = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (xs[i] == xs[i + 1]) continue;
    total += (xs[i + 1] - xs[i]) * segments_intersect_measure(ya[slab], yb[slab]);
    ++slab;
  }
  return total;
}

bool lex_less(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

std::vector<Segment> canonical_segments(const TorusRegion& r) {
  if (r.dim != 1) throw DomainError("canonical_segments: dim must be 1");
  std::vector<Segment> pieces;
  for (const TorusBall& b : r.balls) {
    if (b.radius == 0) continue;
    append_arc_pieces(b.center[0], b.radius, pieces);
  }
  return merge_segments(std::move(pieces));
}

Rat segments_measure(const std::vector<Segment>& segs) {
  Rat total = 0;
  for (const Segment& s : segs) total += s.hi - s.lo;
  return total;
}

Rat segments_intersect_measure(const std::vector<Segment>& a, const std::vector<Segment>& b) {
  Rat total = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Rat& lo = rat_max(a[i].lo, b[j].lo);
    const Rat& hi = rat_min(a[i].hi, b[j].hi);
    if (lo < hi) total += hi - lo;
    if (a[i].hi < b[j].hi) ++i; else ++j;
  }
  return total;
}

Rat region_measure(const TorusRegion& r) {
  if (r.dim == 1) return segments_measure(canonical_segments(r));
  if (r.dim == 2) return measure_2d(r);
  throw UnsupportedExact("region_measure: exact path requires dim <= 2");
}

Rat region_intersect_measure(const TorusRegion& a, const TorusRegion& b) {
  if (a.dim != b.dim) throw DomainError("region_intersect_measure: dimension mismatch");
  if (a.dim == 1)
    return segments_intersect_measure(canonical_segments(a), canonical_segments(b));
  if (a.dim == 2) return intersect_2d(a, b);
  throw UnsupportedExact("region_intersect_measure: exact path requires dim <= 2");
}

bool balls_intersect(const TorusBall& a, const TorusBall& b) {
  Rat reach = a.radius + b.radius;
  for (std::size_t i = 0; i < a.center.size(); ++i) {
    if (torus_dist(a.center[i], b.center[i], Rat(1)) > reach) return false;
  }
  return true;
}

bool ball_in_dilation(const TorusBall& b, const TorusBall& s, unsigned k) {
  Rat big = Rat(k) * s.radius;
  for (std::size_t i = 0; i < b.center.size(); ++i) {
    if (big >= kHalf) continue;  // dilated arc already covers this axis
    if (torus_dist(b.center[i], s.center[i], Rat(1)) + b.radius > big) return false;
  }
  return true;
}

TorusRegion vitali_refine(const TorusRegion& r) {
  std::vector<const TorusBall*> order;
  order.reserve(r.balls.size());
  for (const TorusBall& b : r.balls) order.push_back(&b);
  std::sort(order.begin(), order.end(), [](const TorusBall* a, const TorusBall* b) {
    if (a->radius != b->radius) return a->radius > b->radius;
    return lex_less(a->center, b->center);
  });

  std::vector<TorusBall> chosen;
  for (const TorusBall* b : order) {
    bool clear = true;
    for (const TorusBall& c : chosen) {
      if (balls_intersect(*b, c)) {
        clear = false;
        break;
      }
    }
    if (clear) chosen.push_back(*b);
  }
  return TorusRegion{r.dim, std::move(chosen)};
}

TorusRegion scale_region(const TorusRegion& r, const Rat& factor) {
  if (factor <= 0 || factor > 1) throw DomainError("scale_region: factor must be in (0,1]");
  TorusRegion out = r;
  for (TorusBall& b : out.balls) b.radius *= factor;
  return out;
}

bool region_contains(const TorusRegion& r, const std::vector<Rat>& point) {
  if (static_cast<int>(point.size()) != r.dim)
    throw DomainError("region_contains: point dimension mismatch");
  for (const TorusBall& b : r.balls) {
    bool inside = true;
    for (std::size_t i = 0; i < point.size(); ++i) {
      if (torus_dist(point[i], b.center[i], Rat(1)) > b.radius) {
        inside = false;
        break;
      }
    }
    if (inside) return true;
  }
  return false;
}

}  // namespace limset
