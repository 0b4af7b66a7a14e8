#include "limset/approx_sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "limset/arith.hpp"
#include "limset/errors.hpp"
#include "limset/rng.hpp"

namespace limset {

long long ApproxSet::d() const { return gcd_vec(q); }

IntVec ApproxSet::primitive() const {
  long long g = gcd_vec(q);
  IntVec p(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) p[i] = q[i] / g;
  return p;
}

ApproxSet make_approx_set(IntVec q, Rat radius, TargetFamily family, int n, int m) {
  if (static_cast<int>(q.size()) != n) throw DomainError("approx_set: |q| != n");
  if (family.m != m) throw DomainError("approx_set: family dimension != m");
  if (radius < 0) throw DomainError("approx_set: negative radius");
  ApproxSet a{std::move(q), std::move(radius), std::move(family), n, m};
  a.d();  // rejects the zero vector
  return a;
}

bool contains(const ApproxSet& a, const std::vector<Rat>& X) {
  if (static_cast<int>(X.size()) != a.n * a.m)
    throw DomainError("contains: point dimension != n*m");
  const long long d = a.d();
  const Rat period(d);
  std::vector<Rat> y(static_cast<std::size_t>(a.m), Rat(0));
  for (int j = 0; j < a.m; ++j) {
    for (int i = 0; i < a.n; ++i) {
      y[static_cast<std::size_t>(j)] += Rat(a.q[static_cast<std::size_t>(i)]) *
                                        X[static_cast<std::size_t>(i * a.m + j)];
    }
  }
  for (const Point& p : enumerate_targets(a.family, d)) {
    bool hit = true;
    for (int j = 0; j < a.m; ++j) {
      if (torus_dist(y[static_cast<std::size_t>(j)], p[static_cast<std::size_t>(j)],
                     period) > a.radius) {
        hit = false;
        break;
      }
    }
    if (hit) return true;
  }
  return false;
}

TorusRegion to_one_by_m(const ApproxSet& a) {
  const long long d = a.d();
  const Rat dd(d);
  std::vector<TorusBall> balls;
  for (const Point& p : enumerate_targets(a.family, d)) {
    std::vector<Rat> center(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) center[j] = p[j] / dd;
    balls.push_back(make_ball(std::move(center), a.radius / dd));
  }
  return make_region(a.m, std::move(balls));
}

Rat set_measure(const ApproxSet& a) { return region_measure(to_one_by_m(a)); }

bool reduction_balls_disjoint(const ApproxSet& a) {
  const long long d = a.d();
  if (2 * a.radius > Rat(d)) return false;  // self-wrapping ball
  std::optional<Rat> gap = min_target_gap(a.family, d);
  if (!gap) return true;  // singleton
  return 2 * a.radius <= *gap;
}

PairMeasure pair_intersection_measure(const ApproxSet& a, const ApproxSet& b) {
  if (a.n != b.n || a.m != b.m) throw DomainError("pair: dimension mismatch");
  if (!(a.family == b.family)) throw DomainError("pair: families differ");

  if (a.primitive() == b.primitive()) {
    // common projection X -> q'X pulls both back from T^m
    Rat meas = region_intersect_measure(to_one_by_m(a), to_one_by_m(b));
    return PairMeasure{meas, PairKind::Parallel};
  }
  if (reduction_balls_disjoint(a) && reduction_balls_disjoint(b)) {
    return PairMeasure{set_measure(a) * set_measure(b), PairKind::Independent};
  }
  return PairMeasure{std::nullopt, PairKind::OverlappingFallback};
}

// --- fast membership ---------------------------------------------------------

namespace {

double frac(double x) { return x - std::floor(x); }

double circle_dist(double a, double b) {
  double w = std::fabs(a - b);
  return std::min(w, 1.0 - w);
}

}  // namespace

SetMembership::SetMembership(const ApproxSet& a) : n_(a.n), m_(a.m) {
  if (m_ > 8) throw UnsupportedError("SetMembership supports m <= 8");
  q_ = a.q;
  const long long d = a.d();
  inv_d_ = 1.0 / static_cast<double>(d);
  rr_ = to_double(a.radius) * inv_d_;

  const TargetFamily& f = a.family;
  using K = TargetFamily::Kind;
  product_ = f.kind != K::Custom;
  if (!product_) {
    for (const Point& p : enumerate_targets(f, d)) {
      std::vector<double> pd(p.size());
      for (std::size_t j = 0; j < p.size(); ++j) pd[j] = to_double(p[j]) * inv_d_;
      points_.push_back(std::move(pd));
    }
    return;
  }

  axes_.resize(static_cast<std::size_t>(m_));
  for (int j = 0; j < m_; ++j) {
    Axis& ax = axes_[static_cast<std::size_t>(j)];
    switch (f.kind) {
      case K::FullLattice:
        ax.grid = true;
        ax.g = {0.0, inv_d_};
        break;
      case K::Inhomogeneous:
        ax.grid = true;
        ax.g = {to_double(f.shift[static_cast<std::size_t>(j)]) * inv_d_, inv_d_};
        break;
      case K::Congruence: {
        long long g = std::gcd(f.modulus, d);
        ax.grid = true;
        ax.g = {static_cast<double>(f.residues[static_cast<std::size_t>(j)] % g) * inv_d_,
                static_cast<double>(g) * inv_d_};
        break;
      }
      case K::Reduced: {
        for (long long k = 0; k < d; ++k) {
          if (std::gcd(k, d) == 1) ax.centers.push_back(static_cast<double>(k) * inv_d_);
        }
        break;
      }
      case K::HalfCube: {
        for (long long k = 0; 2 * k <= d; ++k)
          ax.centers.push_back(static_cast<double>(k) * inv_d_);
        break;
      }
      case K::AlternatingHalf: {
        std::vector<Point> pts = enumerate_targets(f, d);
        for (const Point& p : pts) ax.centers.push_back(to_double(p[0]) * inv_d_);
        std::sort(ax.centers.begin(), ax.centers.end());
        break;
      }
      case K::Custom:
        break;  // handled above
    }
  }
}

double SetMembership::nearest_axis_dist(const Axis& axis, double z) const {
  if (axis.grid) {
    double w = (z - axis.g.offset) / axis.g.spacing;
    return std::fabs(w - std::round(w)) * axis.g.spacing;
  }
  const std::vector<double>& c = axis.centers;
  auto it = std::lower_bound(c.begin(), c.end(), z);
  double best = 1.0;
  if (it != c.end()) best = std::min(best, *it - z);
  if (it != c.begin()) best = std::min(best, z - *(it - 1));
  // wrap candidates
  best = std::min(best, circle_dist(z, c.front()));
  best = std::min(best, circle_dist(z, c.back()));
  return best;
}

bool SetMembership::contains(const double* X) const {
  double z[8];  // m <= 2 in practice; generous static bound
  for (int j = 0; j < m_; ++j) {
    double y = 0.0;
    for (int i = 0; i < n_; ++i) {
      y += static_cast<double>(q_[static_cast<std::size_t>(i)]) * X[i * m_ + j];
    }
    z[j] = frac(y * inv_d_);
  }
  if (product_) {
    for (int j = 0; j < m_; ++j) {
      if (nearest_axis_dist(axes_[static_cast<std::size_t>(j)], z[j]) > rr_) return false;
    }
    return true;
  }
  for (const std::vector<double>& p : points_) {
    double worst = 0.0;
    for (int j = 0; j < m_; ++j) worst = std::max(worst, circle_dist(z[j], p[j]));
    if (worst <= rr_) return true;
  }
  return false;
}

// --- equidistribution --------------------------------------------------------

Rat equidist_discrepancy(long long q, int m, const Rat& side,
                         const std::vector<std::vector<Rat>>& shifts) {
  if (q < 1) throw DomainError("equidist: q must be positive");
  if (side <= 0 || side > 1) throw DomainError("equidist: side must be in (0,1]");
  const Rat target = rat_pow(side, static_cast<unsigned>(m));
  const Rat qm = rat_pow(Rat(q), static_cast<unsigned>(m));
  Rat worst = 0;
  for (const std::vector<Rat>& v : shifts) {
    if (static_cast<int>(v.size()) != m) throw DomainError("equidist: shift dimension");
    // per-axis count of grid points j/q in [v, v + side) mod 1
    Rat count = 1;
    for (int j = 0; j < m; ++j) {
      const Rat& lo = v[static_cast<std::size_t>(j)];
      count *= Rat(rat_ceil(Rat(q) * (lo + side)) - rat_ceil(Rat(q) * lo));
    }
    worst = rat_max(worst, rat_abs(count / qm - target));
  }
  return worst;
}

// --- regularity --------------------------------------------------------------

Rat ProductBox::volume() const {
  Rat v = 1;
  for (const auto& [lo, hi] : sides) v *= hi - lo;
  return v;
}

bool ProductBox::full() const {
  for (const auto& [lo, hi] : sides) {
    if (hi - lo != 1) return false;
  }
  return true;
}

ProductBox full_box(int dims) {
  ProductBox u;
  u.sides.assign(static_cast<std::size_t>(dims), {Rat(0), Rat(1)});
  return u;
}

RatioEstimate regularity_probe(const ApproxSet& a, const ProductBox& U, long long samples,
                               std::uint64_t seed) {
  if (static_cast<int>(U.sides.size()) != a.n * a.m)
    throw DomainError("regularity_probe: box dimension != n*m");
  for (const auto& [lo, hi] : U.sides) {
    if (!(lo < hi) || hi - lo > 1) throw DomainError("regularity_probe: bad box side");
  }
  Rat vol = U.volume();
  if (vol == 0) throw DomainError("regularity_probe: zero-volume box");
  Rat mu = set_measure(a);
  if (mu == 0) throw DomainError("regularity_probe: zero-measure set");

  RatioEstimate out;
  out.samples = samples;
  out.seed = seed;
  if (U.full()) {
    out.ratio = 1.0;
    out.exact = true;
    return out;
  }

  const int dims = a.n * a.m;
  std::vector<double> lo(static_cast<std::size_t>(dims)), w(static_cast<std::size_t>(dims));
  for (int i = 0; i < dims; ++i) {
    lo[static_cast<std::size_t>(i)] = to_double(U.sides[static_cast<std::size_t>(i)].first);
    w[static_cast<std::size_t>(i)] =
        to_double(U.sides[static_cast<std::size_t>(i)].second -
                  U.sides[static_cast<std::size_t>(i)].first);
  }
  SetMembership member(a);
  std::vector<double> X(static_cast<std::size_t>(dims));
  long long hits = 0;
  for (long long s = 0; s < samples; ++s) {
    CounterRng rng(seed, 0, static_cast<std::uint64_t>(s));
    for (int i = 0; i < dims; ++i) {
      double u = lo[static_cast<std::size_t>(i)] +
                 rng.next_unit() * w[static_cast<std::size_t>(i)];
      X[static_cast<std::size_t>(i)] = u - std::floor(u);
    }
    if (member.contains(X.data())) ++hits;
  }
  double mu_d = to_double(mu);
  out.ratio = (static_cast<double>(hits) / static_cast<double>(samples)) / mu_d;
  out.half_width = hoeffding_half_width(samples) / mu_d;
  return out;
}

std::optional<long long> regularity_threshold_search(const TargetFamily& family, int n,
                                                     int m, const ProductBox& U,
                                                     const Rat& radius, long long cap,
                                                     long long samples,
                                                     std::uint64_t seed) {
  for (long long Q = 2; Q <= cap; Q *= 2) {
    IntVec q(static_cast<std::size_t>(n), 0);
    q[0] = Q;
    if (n > 1) q[1] = 1;  // keeps the vector primitive
    ApproxSet a = make_approx_set(q, radius, family, n, m);
    RatioEstimate est = regularity_probe(a, U, samples, seed);
    if (est.ratio >= 1.0 / 3.0) return Q;
  }
  return std::nullopt;
}

}  // namespace limset
