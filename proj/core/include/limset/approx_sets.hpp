#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "limset/rational.hpp"
#include "limset/targets.hpp"
#include "limset/torus_geom.hpp"

namespace limset {

// A_{n,m}^P(q, r): the n-by-m systems X in T^{nm} with qX within r of the
// lifted target set P(q). Membership reduces qX modulo d = gcd(q), the
// period of the lift.
struct ApproxSet {
  IntVec q;
  Rat radius;
  TargetFamily family;
  int n = 1;
  int m = 1;

  long long d() const;       // gcd(q)
  IntVec primitive() const;  // q / gcd(q)
};

ApproxSet make_approx_set(IntVec q, Rat radius, TargetFamily family, int n, int m);

// exact membership; X is row-major (X[i*m + j]), entries in [0,1]
bool contains(const ApproxSet& a, const std::vector<Rat>& X);

// The measure-preserving reduction to 1-by-m: balls of radius r/d at the
// points of P(d)/d.
TorusRegion to_one_by_m(const ApproxSet& a);

Rat set_measure(const ApproxSet& a);  // exact, m <= 2

enum class PairKind { Parallel, Independent, OverlappingFallback };

struct PairMeasure {
  std::optional<Rat> measure;  // empty for OverlappingFallback
  PairKind kind = PairKind::Parallel;
};

// Parallel pairs (equal primitive parts) intersect exactly through the
// common projection; linearly independent pairs multiply when both
// reductions are unions of disjoint wrap-free balls; anything else is
// flagged for the Monte Carlo path.
PairMeasure pair_intersection_measure(const ApproxSet& a, const ApproxSet& b);

// true when the 1-by-m reduction is a union of pairwise disjoint,
// wrap-free balls (the independence hypothesis)
bool reduction_balls_disjoint(const ApproxSet& a);

// Fast double-precision membership for sampling loops. Product-structured
// families get per-axis nearest-center lookups; custom point sets fall
// back to a scan.
class SetMembership {
 public:
  explicit SetMembership(const ApproxSet& a);

  // X: row-major n*m doubles in [0,1)
  bool contains(const double* X) const;

  int n() const { return n_; }
  int m() const { return m_; }

 private:
  struct GridAxis {
    double offset = 0.0;
    double spacing = 1.0;
  };
  struct Axis {
    bool grid = false;
    GridAxis g;
    std::vector<double> centers;  // sorted, in [0,1)
  };

  double nearest_axis_dist(const Axis& axis, double z) const;

  std::vector<long long> q_;
  double inv_d_ = 1.0;
  double rr_ = 0.0;  // radius / d
  int n_ = 1, m_ = 1;
  bool product_ = true;
  std::vector<Axis> axes_;
  std::vector<std::vector<double>> points_;  // non-product fallback, P(d)/d
};

// --- equidistribution of the (1/q)-grid ------------------------------------

// Max over the shifts of |mu_q(V + v) - side^m| where V is the half-open
// box [0,side)^m and mu_q the uniform measure on the (1/q)-grid. Exact.
Rat equidist_discrepancy(long long q, int m, const Rat& side,
                         const std::vector<std::vector<Rat>>& shifts);

// --- small-scale regularity -------------------------------------------------

// Product box in T^{nm}: per-coordinate [lo, hi] with lo < hi <= lo + 1.
struct ProductBox {
  std::vector<std::pair<Rat, Rat>> sides;
  Rat volume() const;
  bool full() const;
};

ProductBox full_box(int dims);

struct RatioEstimate {
  double ratio = 0.0;
  double half_width = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
  bool exact = false;  // true for the full-torus shortcut
};

// Monte Carlo estimate of Leb(A n U) / (Leb(A) Leb(U)).
RatioEstimate regularity_probe(const ApproxSet& a, const ProductBox& U, long long samples,
                               std::uint64_t seed);

// Doubling search for the first primitive norm at which the probe clears
// ratio >= 1/3; nullopt if the cap is reached first.
std::optional<long long> regularity_threshold_search(const TargetFamily& family, int n,
                                                     int m, const ProductBox& U,
                                                     const Rat& radius, long long cap,
                                                     long long samples, std::uint64_t seed);

}  // namespace limset
