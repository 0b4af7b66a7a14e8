#include <doctest.h>

#include "limset/arith.hpp"
#include "limset/errors.hpp"
#include "limset/independence.hpp"
#include "limset/montecarlo.hpp"
#include "oracles.hpp"

using namespace limset;
using namespace limset::testing;

TEST_CASE("chung_erdos_bound: worked instances") {
  // two independent sets of measure 1/2
  std::vector<Rat> mu{Rat(1, 2), Rat(1, 2)};
  std::vector<std::vector<Rat>> I{{Rat(1, 2), Rat(1, 4)}, {Rat(1, 4), Rat(1, 2)}};
  CHECK(chung_erdos_bound(mu, I) == Rat(2, 3));

  // pairwise disjoint sets: the bound is tight at the total
  std::vector<Rat> mu2{Rat(1, 5), Rat(3, 10)};
  std::vector<std::vector<Rat>> I2{{Rat(1, 5), Rat(0)}, {Rat(0), Rat(3, 10)}};
  CHECK(chung_erdos_bound(mu2, I2) == Rat(1, 2));

  // a single set gives its own measure back
  CHECK(chung_erdos_bound({Rat(2, 7)}, {{Rat(2, 7)}}) == Rat(2, 7));

  CHECK_THROWS_AS(chung_erdos_bound({Rat(0)}, {{Rat(0)}}), DomainError);
  CHECK_THROWS_AS(chung_erdos_bound(mu, {{Rat(1, 2), Rat(1, 4)}}), DomainError);
  // asymmetric matrix rejected
  std::vector<std::vector<Rat>> bad{{Rat(1, 2), Rat(1, 4)}, {Rat(1, 5), Rat(1, 2)}};
  CHECK_THROWS_AS(chung_erdos_bound(mu, bad), DomainError);
}

TEST_CASE("erdos_renyi_constant: ratios at cutoffs") {
  // single set at D = 1: ratio is 1/mu
  CHECK(erdos_renyi_constant({Rat(1, 4)}, {{Rat(1, 4)}}, {1}).c_min == 4);

  // disjoint sets: only the diagonal survives, ratio = 1/S
  std::vector<Rat> mu{Rat(1, 3), Rat(1, 3), Rat(1, 3)};
  std::vector<std::vector<Rat>> I(3, std::vector<Rat>(3, Rat(0)));
  for (int i = 0; i < 3; ++i) I[i][i] = Rat(1, 3);
  ErdosRenyiReport disjoint = erdos_renyi_constant(mu, I, {1, 2, 3});
  CHECK(disjoint.ratios.back().second == 1);  // S = 1 at D = 3

  // K pairwise independent sets with S = 4: exact ratio is
  // (S + S^2 - sum mu^2) / S^2, approaching 5/4 as the pieces shrink
  const int K = 400;
  std::vector<Rat> mus(K, Rat(1, 100));
  std::vector<std::vector<Rat>> prod(K, std::vector<Rat>(K));
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j)
      prod[i][j] = i == j ? mus[i] : mus[i] * mus[j];
  ErdosRenyiReport rep = erdos_renyi_constant(mus, prod, {K});
  Rat S(4), sum_sq = Rat(K) * Rat(1, 10000);
  CHECK(rep.ratios[0].second == (S + S * S - sum_sq) / (S * S));
  CHECK(rat_abs(rep.ratios[0].second - Rat(5, 4)) <= sum_sq / (S * S));
}

namespace {

ApproxFunction two_axis_table() {
  return ApproxFunction::finite_support(
      2, {{{1, 0}, Rat(1, 10)}, {{0, 1}, Rat(1, 10)}});
}

}  // namespace

TEST_CASE("qia_scan: cross-axis example") {
  QiaReport rep = qia_scan(two_axis_table(), TargetFamily::full_lattice(1), 2, 1, 1, 4);
  REQUIRE(rep.rows.size() == 1);
  const QiaRow& row = rep.rows[0];
  CHECK(row.sum_measures == Rat(2, 5));
  CHECK(row.parallel == Rat(2, 5));         // the two self-pairs
  CHECK(row.non_parallel == Rat(2, 25));    // ordered cross pairs
  CHECK(row.pair_total_exact == Rat(12, 25));
  REQUIRE(row.ratio_exact.has_value());
  CHECK(*row.ratio_exact == 3);
  CHECK(row.fallback_pairs == 0);
}

TEST_CASE("qia_scan: a single ray has no non-parallel pairs") {
  ApproxFunction ray = ApproxFunction::ray({1, 0}, PowerLaw{Rat(1, 20), 0});
  QiaReport rep = qia_scan(ray, TargetFamily::full_lattice(1), 2, 1, 5, 20);
  for (const QiaRow& row : rep.rows) CHECK(row.non_parallel == 0);
  CHECK(rep.rows.back().sum_measures > 0);
}

TEST_CASE("qia_scan: empty support reports empty rows") {
  ApproxFunction empty = ApproxFunction::finite_support(2, {});
  QiaReport rep = qia_scan(empty, TargetFamily::full_lattice(1), 2, 1, 3, 10);
  for (const QiaRow& row : rep.rows) {
    CHECK(row.sum_measures == 0);
    CHECK_FALSE(row.ratio_exact.has_value());
  }
  CHECK_FALSE(rep.c_min.has_value());
}

TEST_CASE("qia_scan: decomposition identity and the independent-pair bound") {
  for (int c = 0; c < 30; ++c) {
    CounterRng rng(59, 13, static_cast<std::uint64_t>(c));
    std::map<IntVec, Rat> t;
    long long entries = rand_int(rng, 2, 7);
    while (static_cast<long long>(t.size()) < entries) {
      IntVec q{rand_int(rng, 0, 6), rand_int(rng, 0, 6)};
      if (q[0] == 0 && q[1] == 0) continue;
      t[q] = Rat(rand_int(rng, 1, 12), 36);  // small radii keep reductions disjoint
    }
    ApproxFunction f = ApproxFunction::finite_support(2, std::move(t));
    TargetFamily fam = TargetFamily::full_lattice(1);
    const long long D = 6, H = 6;
    QiaReport rep = qia_scan(f, fam, 2, 1, D, H);

    // recompute the full pair sum pair-by-pair, independently of the scan
    std::vector<ApproxSet> atoms;
    f.for_support(1, H, [&](const IntVec& q, const Rat& v) {
      if (gcd_vec(q) <= D) atoms.push_back(make_approx_set(q, v, fam, 2, 1));
    });
    Rat total = 0, S = 0;
    for (const ApproxSet& a : atoms) {
      S += set_measure(a);
      for (const ApproxSet& b : atoms) {
        PairMeasure pm = pair_intersection_measure(a, b);
        REQUIRE(pm.measure.has_value());
        total += *pm.measure;
      }
    }
    const QiaRow& last = rep.rows.back();
    REQUIRE(last.fallback_pairs == 0);
    REQUIRE(last.sum_measures == S);
    REQUIRE(last.parallel + last.non_parallel == total);      // buckets partition
    REQUIRE(last.pair_total_exact == total);
    REQUIRE(last.non_parallel <= S * S);                      // independent part cap
  }
}

TEST_CASE("qia_scan: parallel part bounded by twice the reduced pair sum") {
  for (int c = 0; c < 10; ++c) {
    CounterRng rng(61, 14, static_cast<std::uint64_t>(c));
    std::map<IntVec, Rat> t;
    long long entries = rand_int(rng, 2, 6);
    while (static_cast<long long>(t.size()) < entries) {
      IntVec q{rand_int(rng, 0, 8), rand_int(rng, 0, 8)};
      if (q[0] == 0 && q[1] == 0) continue;
      t[q] = Rat(rand_int(rng, 1, 5), 64);
    }
    ApproxFunction f = ApproxFunction::finite_support(2, std::move(t));
    TargetFamily fam = TargetFamily::full_lattice(1);
    const long long D = 8, H = 8;

    // radii for the reduced comparison: Psi(d) per class
    TransformResult tr = psi_transform(f, 1, 1, D);
    bool disjoint_classes = true;
    for (long long d = 1; d <= D; ++d) {
      if (2 * tr.at(d).sum_pow_m > rat_min(Rat(1), Rat(d))) disjoint_classes = false;
    }
    if (!disjoint_classes) continue;

    QiaReport rep = qia_scan(f, fam, 2, 1, D, H);
    Rat reduced_pair_sum = 0;
    for (long long k = 1; k <= D; ++k) {
      if (tr.at(k).sum_pow_m == 0) continue;
      ApproxSet ak = make_approx_set({k, 0}, tr.at(k).sum_pow_m, fam, 2, 1);
      for (long long l = 1; l <= D; ++l) {
        if (tr.at(l).sum_pow_m == 0) continue;
        ApproxSet al = make_approx_set({l, 0}, tr.at(l).sum_pow_m, fam, 2, 1);
        reduced_pair_sum += region_intersect_measure(to_one_by_m(ak), to_one_by_m(al));
      }
    }
    REQUIRE(rep.rows.back().parallel <= 2 * reduced_pair_sum);
  }
}

TEST_CASE("qia_scan: overlapping reductions fall back to sampling") {
  // radius 3/5 wraps the single reduction ball, so cross pairs cannot use
  // the product rule and are Monte Carlo estimated
  ApproxFunction f = ApproxFunction::finite_support(
      2, {{{1, 0}, Rat(3, 5)}, {{0, 1}, Rat(3, 5)}});
  QiaOptions opts;
  opts.mc_samples = 20000;
  opts.seed = 3;
  QiaReport rep = qia_scan(f, TargetFamily::full_lattice(1), 2, 1, 1, 2, opts);
  const QiaRow& row = rep.rows.back();
  CHECK(row.fallback_pairs == 2);
  CHECK_FALSE(row.ratio_exact.has_value());
  CHECK(row.sum_measures == 2);     // both wrapped sets have measure 1
  CHECK(row.parallel == 2);         // the two self-pairs
  // both sets are the full torus, so the flagged pairs estimate near 1 each
  CHECK(row.fallback_sum > 1.9);
  CHECK(row.fallback_sum < 2.1);
  CHECK(row.ratio > 0.9);
  CHECK(row.ratio < 1.1);
}

TEST_CASE("gcd_class_bound: class-wise floor M/(M+1)") {
  // three independent members with measure 1/3 each: M = 1
  ApproxFunction f = ApproxFunction::finite_support(
      2, {{{1, 0}, Rat(1, 6)}, {{0, 1}, Rat(1, 6)}, {{1, 1}, Rat(1, 6)}});
  TargetFamily fam = TargetFamily::full_lattice(1);
  Rat bound = gcd_class_bound(f, fam, 2, 1, 1, 4);
  CHECK(bound >= Rat(1, 2));
  CHECK(bound == Rat(3, 5));  // 1 / (1 + 1 - 3*(1/9))

  // singleton class: the exact measure comes back
  ApproxFunction single = ApproxFunction::finite_support(2, {{{2, 4}, Rat(1, 5)}});
  CHECK(gcd_class_bound(single, fam, 2, 1, 2, 8) == Rat(2, 5));

  // M = 3 with six independent members of measure 1/2
  std::map<IntVec, Rat> t6;
  t6[{1, 0}] = Rat(1, 4);
  t6[{0, 1}] = Rat(1, 4);
  t6[{1, 1}] = Rat(1, 4);
  t6[{1, 2}] = Rat(1, 4);
  t6[{2, 1}] = Rat(1, 4);
  t6[{1, 3}] = Rat(1, 4);
  Rat b6 = gcd_class_bound(ApproxFunction::finite_support(2, std::move(t6)), fam, 2, 1,
                           1, 8);
  CHECK(b6 >= Rat(3, 4));

  CHECK_THROWS_AS(gcd_class_bound(single, fam, 2, 1, 3, 8), DomainError);  // M = 0
}

TEST_CASE("chung_erdos_bound is dominated by the exact union measure") {
  // 1-by-1 sets A(d, psi(d)) for psi(q) = 1/(2q): unit-scale slice of the
  // acceptance criterion
  TargetFamily fam = TargetFamily::full_lattice(1);
  const long long D = 50;
  std::vector<ApproxSet> sets;
  for (long long d = 1; d <= D; ++d)
    sets.push_back(make_approx_set({d}, Rat(1, 2 * d), fam, 1, 1));

  std::vector<Rat> mu;
  std::vector<TorusBall> all_balls;
  for (const ApproxSet& s : sets) {
    mu.push_back(set_measure(s));
    for (const TorusBall& b : to_one_by_m(s).balls) all_balls.push_back(b);
  }
  std::vector<std::vector<Rat>> I(sets.size(), std::vector<Rat>(sets.size()));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i; j < sets.size(); ++j) {
      Rat v = region_intersect_measure(to_one_by_m(sets[i]), to_one_by_m(sets[j]));
      I[i][j] = v;
      I[j][i] = v;
    }
  }
  Rat bound = chung_erdos_bound(mu, I);
  Rat union_measure = region_measure(make_region(1, std::move(all_balls)));
  CHECK(bound > 0);
  CHECK(bound <= union_measure);
  // at radii 1/(2d) neighbouring balls always bridge the gaps between
  // order-D rationals, so this union is the whole circle
  CHECK(union_measure == 1);

  // radii 1/(4d) leave gaps around badly approximable points: the union is
  // strictly partial and the comparison has teeth
  std::vector<Rat> mu4;
  std::vector<ApproxSet> sets4;
  std::vector<TorusBall> balls4;
  for (long long d = 1; d <= D; ++d) {
    sets4.push_back(make_approx_set({d}, Rat(1, 4 * d), fam, 1, 1));
    mu4.push_back(set_measure(sets4.back()));
    for (const TorusBall& b : to_one_by_m(sets4.back()).balls) balls4.push_back(b);
  }
  std::vector<std::vector<Rat>> I4(sets4.size(), std::vector<Rat>(sets4.size()));
  for (std::size_t i = 0; i < sets4.size(); ++i) {
    for (std::size_t j = i; j < sets4.size(); ++j) {
      Rat v = region_intersect_measure(to_one_by_m(sets4[i]), to_one_by_m(sets4[j]));
      I4[i][j] = v;
      I4[j][i] = v;
    }
  }
  Rat bound4 = chung_erdos_bound(mu4, I4);
  Rat union4 = region_measure(make_region(1, std::move(balls4)));
  CHECK(union4 < 1);
  CHECK(bound4 > 0);
  CHECK(bound4 <= union4);
}
