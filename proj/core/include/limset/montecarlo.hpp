#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "limset/approx_sets.hpp"
#include "limset/independence.hpp"
#include "limset/psi.hpp"
#include "limset/rng.hpp"
#include "limset/targets.hpp"

namespace limset {

struct McEstimate {
  double estimate = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
  double half_width = 0.0;  // 99% Hoeffding
};

// Fraction of uniform X in T^{nm} lying in the union of A_{n,m}^P(q, psi(q))
// over the window Q0 <= |q| <= Q1. Bit-identical for any thread count.
McEstimate tail_union_estimate(const ApproxFunction& f, const TargetFamily& family, int n,
                               int m, long long Q0, long long Q1, long long samples,
                               std::uint64_t seed, int threads = 0);

McEstimate set_measure_estimate(const ApproxSet& a, long long samples, std::uint64_t seed,
                                int threads = 0);

McEstimate pair_intersection_estimate(const ApproxSet& a, const ApproxSet& b,
                                      long long samples, std::uint64_t seed,
                                      int threads = 0);

McEstimate region_measure_estimate(const TorusRegion& r, long long samples,
                                   std::uint64_t seed, int threads = 0);

struct TailWindow {
  long long q0 = 1, q1 = 1;
};

struct TailStage {
  TailWindow window;
  McEstimate estimate;
};

// Nested tail estimates; the plateau is read as the limsup-measure proxy.
// Estimates are finite-window upper-bound proxies, never limit claims.
struct TailProfile {
  std::vector<TailStage> stages;
  double plateau() const;  // last stage estimate, 0 if empty
};

TailProfile limsup_profile(const ApproxFunction& f, const TargetFamily& family, int n,
                           int m, const std::vector<TailWindow>& windows, long long samples,
                           std::uint64_t seed, int threads = 0);

// Profiles of c*psi for each factor, plus the largest plateau difference.
// Equality of the limsup measures holds only in the limit; the gap is a
// qualitative report.
struct CasselsReport {
  std::vector<std::pair<Rat, TailProfile>> profiles;
  double max_plateau_gap = 0.0;
};

CasselsReport cassels_scaling_probe(const ApproxFunction& f, const TargetFamily& family,
                                    int n, int m, const std::vector<Rat>& factors,
                                    const std::vector<TailWindow>& windows,
                                    long long samples, std::uint64_t seed, int threads = 0);

// End-to-end pipeline: Psi_Q tables, 1-by-m tail profiles at each Q, the
// n-by-m profile, and the pair-sum scan, side by side.
struct BootstrapReport {
  std::vector<long long> Q_list;
  std::map<long long, TransformResult> transforms;
  // radii used by the 1-by-m stage (truncated partial sums when the
  // transform is not exact; flagged per entry in `transforms`)
  std::map<long long, TailProfile> one_by_m;
  TailProfile n_by_m;
  QiaReport qia;
  bool truncated_radii = false;
};

struct BootstrapOptions {
  long long d_max = 20;
  long long shell_cap = 24;
  std::vector<TailWindow> one_by_m_windows;
  std::vector<TailWindow> n_by_m_windows;
  long long samples = 20000;
  std::uint64_t seed = 1;
  int threads = 0;
  long long qia_D = 6;
  long long qia_H = 24;
};

BootstrapReport bootstrap_demo(const ApproxFunction& f, const TargetFamily& family, int n,
                               int m, const std::vector<long long>& Q_list,
                               const BootstrapOptions& opts);

}  // namespace limset
