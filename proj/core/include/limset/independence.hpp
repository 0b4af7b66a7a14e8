#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "limset/approx_sets.hpp"
#include "limset/psi.hpp"
#include "limset/rational.hpp"
#include "limset/targets.hpp"

namespace limset {

// (sum mu)^2 / sum_{k,l} mu(A_k n A_l), the union lower bound.
// The matrix must be symmetric with the measures on its diagonal.
Rat chung_erdos_bound(const std::vector<Rat>& measures,
                      const std::vector<std::vector<Rat>>& intersections);

struct ErdosRenyiReport {
  std::vector<std::pair<std::size_t, Rat>> ratios;  // cutoff D -> pair-sum ratio
  Rat c_min = 0;
  // reported conclusion: the limsup measure is at least 1/C for C = c_min
  Rat limsup_lower_bound() const { return 1 / c_min; }
};

ErdosRenyiReport erdos_renyi_constant(const std::vector<Rat>& measures,
                                      const std::vector<std::vector<Rat>>& intersections,
                                      const std::vector<std::size_t>& d_grid);

// One row of the pair-sum decomposition at cutoff D (gcd(q) <= D).
// Self-pairs are included; exact parts are rational, fallback pairs are
// Monte Carlo estimated and tracked separately.
struct QiaRow {
  long long D = 0;
  Rat sum_measures = 0;       // S
  Rat parallel = 0;           // exact parallel pair sum
  Rat non_parallel = 0;       // exact independent pair sum
  long long fallback_pairs = 0;
  double fallback_sum = 0.0;  // MC contribution of flagged pairs
  Rat pair_total_exact = 0;   // parallel + non_parallel
  std::optional<Rat> ratio_exact;  // pair_total / S^2 when no fallback and S > 0
  double ratio = 0.0;              // always populated when S > 0
};

struct QiaReport {
  long long H = 0;  // enumeration cap on |q|; the true sums are infinite
  bool truncated = true;
  std::vector<QiaRow> rows;
  std::optional<double> c_min;
};

struct QiaOptions {
  long long mc_samples = 200000;  // budget per fallback pair
  std::uint64_t seed = 1;
  int threads = 1;
};

QiaReport qia_scan(const ApproxFunction& f, const TargetFamily& family, int n, int m,
                   long long D, long long H, const QiaOptions& opts = {});

// Chung-Erdos bound for the union within one gcd class, using pairwise
// independence of distinct members. Output >= M/(M+1) where M is the
// class measure sum.
Rat gcd_class_bound(const ApproxFunction& f, const TargetFamily& family, int n, int m,
                    long long d, long long H);

}  // namespace limset
