#include "limset/independence.hpp"

#include <algorithm>

#include "limset/arith.hpp"
#include "limset/errors.hpp"
#include "limset/montecarlo.hpp"

namespace limset {

namespace {

void check_matrix(const std::vector<Rat>& measures,
                  const std::vector<std::vector<Rat>>& intersections) {
  const std::size_t k = measures.size();
  if (intersections.size() != k) throw DomainError("intersection matrix: wrong size");
  for (std::size_t i = 0; i < k; ++i) {
    if (intersections[i].size() != k) throw DomainError("intersection matrix: not square");
    if (intersections[i][i] != measures[i])
      throw DomainError("intersection matrix: diagonal must equal the measures");
    for (std::size_t j = 0; j < k; ++j) {
      if (intersections[i][j] < 0) throw DomainError("intersection matrix: negative entry");
      if (intersections[i][j] != intersections[j][i])
        throw DomainError("intersection matrix: not symmetric");
    }
  }
}

}  // namespace

Rat chung_erdos_bound(const std::vector<Rat>& measures,
                      const std::vector<std::vector<Rat>>& intersections) {
  check_matrix(measures, intersections);
  Rat sum = 0;
  for (const Rat& mu : measures) sum += mu;
  if (sum <= 0) throw DomainError("chung_erdos_bound: zero measure sum");
  Rat pair_sum = 0;
  for (const auto& row : intersections)
    for (const Rat& e : row) pair_sum += e;
  if (pair_sum == 0) throw DomainError("chung_erdos_bound: zero denominator");
  return sum * sum / pair_sum;
}

ErdosRenyiReport erdos_renyi_constant(const std::vector<Rat>& measures,
                                      const std::vector<std::vector<Rat>>& intersections,
                                      const std::vector<std::size_t>& d_grid) {
  check_matrix(measures, intersections);
  ErdosRenyiReport report;
  for (std::size_t D : d_grid) {
    if (D < 1 || D > measures.size())
      throw DomainError("erdos_renyi_constant: cutoff out of range");
    Rat s = 0, pairs = 0;
    for (std::size_t i = 0; i < D; ++i) {
      s += measures[i];
      for (std::size_t j = 0; j < D; ++j) pairs += intersections[i][j];
    }
    if (s == 0) throw DomainError("erdos_renyi_constant: zero measure sum at cutoff");
    report.ratios.emplace_back(D, pairs / (s * s));
  }
  report.c_min = report.ratios.front().second;
  for (const auto& [D, r] : report.ratios) report.c_min = rat_min(report.c_min, r);
  return report;
}

namespace {

struct Atom {
  ApproxSet set;
  long long d;
  Rat measure;
  bool disjoint_balls;
  IntVec primitive;
};

}  // namespace

QiaReport qia_scan(const ApproxFunction& f, const TargetFamily& family, int n, int m,
                   long long D, long long H, const QiaOptions& opts) {
  if (D < 1 || H < 1) throw DomainError("qia_scan: need D, H >= 1");
  if (f.dim() != n) throw DomainError("qia_scan: psi dimension != n");

  std::vector<Atom> atoms;
  f.for_support(1, H, [&](const IntVec& q, const Rat& v) {
    long long d = gcd_vec(q);
    if (d > D) return;
    ApproxSet set = make_approx_set(q, v, family, n, m);
    Atom a{set, d, set_measure(set), reduction_balls_disjoint(set), set.primitive()};
    atoms.push_back(std::move(a));
  });
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.d < b.d; });

  QiaReport report;
  report.H = H;
  report.truncated = true;

  Rat S = 0, parallel = 0, non_parallel = 0;
  long long fallback_pairs = 0;
  double fallback_sum = 0.0;
  std::uint64_t pair_counter = 0;

  std::size_t next = 0;
  for (long long cutoff = 1; cutoff <= D; ++cutoff) {
    while (next < atoms.size() && atoms[next].d <= cutoff) {
      const Atom& a = atoms[next];
      // self pair
      parallel += a.measure;
      // ordered pairs with every earlier atom, both orders
      for (std::size_t i = 0; i < next; ++i) {
        const Atom& b = atoms[i];
        if (a.primitive == b.primitive) {
          Rat meas = region_intersect_measure(to_one_by_m(a.set), to_one_by_m(b.set));
          parallel += 2 * meas;
        } else if (a.disjoint_balls && b.disjoint_balls) {
          non_parallel += 2 * a.measure * b.measure;
        } else {
          fallback_pairs += 2;
          McEstimate est = pair_intersection_estimate(
              a.set, b.set, opts.mc_samples,
              CounterRng::mix(opts.seed ^ ++pair_counter), opts.threads);
          fallback_sum += 2 * est.estimate;
        }
      }
      S += a.measure;
      ++next;
    }

    QiaRow row;
    row.D = cutoff;
    row.sum_measures = S;
    row.parallel = parallel;
    row.non_parallel = non_parallel;
    row.fallback_pairs = fallback_pairs;
    row.fallback_sum = fallback_sum;
    row.pair_total_exact = parallel + non_parallel;
    if (S > 0) {
      if (fallback_pairs == 0) {
        row.ratio_exact = row.pair_total_exact / (S * S);
        row.ratio = to_double(*row.ratio_exact);
      } else {
        double s2 = to_double(S) * to_double(S);
        row.ratio = (to_double(row.pair_total_exact) + fallback_sum) / s2;
      }
    }
    report.rows.push_back(std::move(row));
  }

  for (const QiaRow& row : report.rows) {
    if (row.sum_measures > 0) {
      if (!report.c_min || row.ratio < *report.c_min) report.c_min = row.ratio;
    }
  }
  return report;
}

Rat gcd_class_bound(const ApproxFunction& f, const TargetFamily& family, int n, int m,
                    long long d, long long H) {
  if (d < 1 || H < 1) throw DomainError("gcd_class_bound: need d, H >= 1");
  std::vector<Rat> measures;
  f.for_support(1, H, [&](const IntVec& q, const Rat& v) {
    if (gcd_vec(q) != d) return;
    ApproxSet set = make_approx_set(q, v, family, n, m);
    if (!reduction_balls_disjoint(set))
      throw UnsupportedError("gcd_class_bound: reduction balls overlap; "
                             "independence hypothesis fails");
    measures.push_back(set_measure(set));
  });
  Rat M = 0, sum_sq = 0;
  for (const Rat& mu : measures) {
    M += mu;
    sum_sq += mu * mu;
  }
  if (M == 0) throw DomainError("gcd_class_bound: empty class (M = 0)");
  // denominator = M + sum_{q != r} mu(q) mu(r)
  Rat denom = M + M * M - sum_sq;
  return M * M / denom;
}

}  // namespace limset
