#include <doctest.h>

#include "limset/arith.hpp"
#include "limset/errors.hpp"
#include "limset/psi.hpp"
#include "limset/serialize.hpp"
#include "oracles.hpp"

using namespace limset;
using namespace limset::testing;

namespace {

ApproxFunction table_psi(int n, std::map<IntVec, Rat> t) {
  return ApproxFunction::finite_support(n, std::move(t));
}

// random finite-support function on Z_+^n
ApproxFunction random_table(CounterRng& rng, int n, long long norm_cap, int entries,
                            long long value_den) {
  std::map<IntVec, Rat> t;
  while (static_cast<int>(t.size()) < entries) {
    IntVec q(static_cast<std::size_t>(n));
    long long mx = 0;
    for (auto& e : q) {
      e = rand_int(rng, 0, norm_cap);
      mx = std::max(mx, e);
    }
    if (mx == 0) continue;
    t[q] = Rat(rand_int(rng, 1, value_den), value_den);
  }
  return ApproxFunction::finite_support(n, std::move(t));
}

}  // namespace

TEST_CASE("eval_psi: table lookups and masks") {
  ApproxFunction f = table_psi(2, {{{2, 4}, Rat(3, 10)}});
  CHECK(eval_psi(f, {2, 4}) == Rat(3, 10));
  CHECK(eval_psi(f, {1, 2}) == 0);
  CHECK_THROWS_AS(eval_psi(f, {0, 0}), DomainError);

  ApproxFunction ray = ApproxFunction::ray({1, 0}, PowerLaw{Rat(1, 20), 0});
  CHECK(eval_psi(ray, {5, 0}) == Rat(1, 20));
  CHECK(eval_psi(ray, {5, 1}) == 0);

  // a zero in a coordinate where the direction is nonzero breaks the ray
  ApproxFunction diag = ApproxFunction::ray({1, 1}, PowerLaw{Rat(1), 0});
  CHECK(eval_psi(diag, {0, 2}) == 0);
  CHECK(eval_psi(diag, {2, 0}) == 0);
  CHECK(eval_psi(diag, {2, 2}) == Rat(1));
  CHECK(eval_psi(diag, {2, 3}) == 0);

  ApproxFunction off_ray_table =
      ApproxFunction::finite_support(2, {{{0, 4}, Rat(1)}, {{4, 4}, Rat(1, 3)}});
  CHECK(catlin_sup_term(off_ray_table, {2, 2}) == Rat(1, 12));  // only (4,4) counts

  ApproxFunction alt = ApproxFunction::alternating_axes(PowerLaw{Rat(1), 1});
  CHECK(eval_psi(alt, {3, 0}) == Rat(1, 3));
  CHECK(eval_psi(alt, {0, 4}) == Rat(1, 4));
  CHECK(eval_psi(alt, {4, 0}) == 0);
  CHECK(eval_psi(alt, {0, 3}) == 0);

  ApproxFunction masked = ApproxFunction::gcd_class_mask(
      ApproxFunction::univariate(1, PowerLaw{Rat(1), 1}), 3, 2);
  CHECK(eval_psi(masked, {2}) == Rat(1, 2));
  CHECK(eval_psi(masked, {3}) == 0);
}

TEST_CASE("eval_psi: resonance quotient family") {
  ApproxFunction f =
      ApproxFunction::chow_technau(1, {Rat(7, 10)}, {Rat(0)}, PowerLaw{Rat(1), 1});
  CHECK(eval_psi(f, {3}) == Rat(10, 3));  // ||21/10|| = 1/10

  ApproxFunction sing =
      ApproxFunction::chow_technau(1, {Rat(1, 2)}, {Rat(0)}, PowerLaw{Rat(1), 1});
  CHECK_THROWS_AS(eval_psi(sing, {2}), SingularityError);
}

TEST_CASE("psi_transform: finite support example") {
  ApproxFunction f = table_psi(2, {{{1, 2}, Rat(1, 10)}, {{2, 4}, Rat(3, 10)}});
  TransformResult t1 = psi_transform(f, 1, 1, 4);
  CHECK(t1.at(1).sum_pow_m == Rat(1, 10));
  CHECK(t1.at(2).sum_pow_m == Rat(3, 10));
  CHECK(t1.at(3).sum_pow_m == 0);
  CHECK(t1.at(1).status == TransformStatus::Exact);

  // both vectors have primitive norm 2 < 3
  TransformResult t3 = psi_transform(f, 1, 3, 4);
  for (long long d = 1; d <= 4; ++d) CHECK(t3.at(d).sum_pow_m == 0);
}

TEST_CASE("psi_transform: n = 1 collapses to psi itself") {
  ApproxFunction f = ApproxFunction::univariate(1, PowerLaw{Rat(1, 2), 1});
  TransformResult t = psi_transform(f, 1, 1, 10);
  for (long long d = 1; d <= 10; ++d) {
    CHECK(t.at(d).sum_pow_m == Rat(1, 2 * d));
    CHECK(t.at(d).status == TransformStatus::Exact);
  }
  // empty sum as soon as Q >= 2
  TransformResult t2 = psi_transform(f, 1, 2, 10);
  for (long long d = 1; d <= 10; ++d) CHECK(t2.at(d).sum_pow_m == 0);

  ApproxFunction g = table_psi(1, {{{3}, Rat(2, 7)}, {{5}, Rat(1, 9)}});
  TransformResult tg = psi_transform(g, 2, 1, 6);
  CHECK(tg.at(3).sum_pow_m == Rat(4, 49));
  CHECK(tg.at(5).sum_pow_m == Rat(1, 81));
  CHECK(psi_transform(g, 2, 2, 6).at(3).sum_pow_m == 0);
}

TEST_CASE("psi_transform: grouping by gcd equals summing over primitive vectors") {
  // Psi(d)^m = sum over primitive q' of psi(d q')^m, checked by a second
  // independent enumeration
  for (int c = 0; c < 20; ++c) {
    CounterRng rng(23, 5, static_cast<std::uint64_t>(c));
    int n = c % 2 + 2;
    int m = c % 3 == 0 ? 2 : 1;
    ApproxFunction f = random_table(rng, n, 12, 6, 40);
    TransformResult t = psi_transform(f, m, 1, 12);
    for (long long d = 1; d <= 12; ++d) {
      Rat expected = 0;
      // enumerate primitive q' with |q'| <= 12 (support norms are <= 12,
      // so d|q'| beyond that cannot contribute)
      IntVec qp(static_cast<std::size_t>(n), 0);
      auto rec = [&](auto&& self, int pos) -> void {
        if (pos == n) {
          long long g = 0, mx = 0;
          for (long long e : qp) {
            g = std::gcd(g, e);
            mx = std::max(mx, e);
          }
          if (g != 1 || mx == 0) return;
          IntVec q(qp.size());
          for (std::size_t i = 0; i < q.size(); ++i) q[i] = d * qp[i];
          expected += rat_pow(f.value(q), static_cast<unsigned>(m));
          return;
        }
        for (long long v = 0; v <= 12; ++v) {
          qp[static_cast<std::size_t>(pos)] = v;
          self(self, pos + 1);
        }
      };
      rec(rec, 0);
      REQUIRE(t.at(d).sum_pow_m == expected);
    }
  }
}

TEST_CASE("psi_transform: monotone in Q and partitioned by excluded shells") {
  for (int c = 0; c < 10; ++c) {
    CounterRng rng(29, 6, static_cast<std::uint64_t>(c));
    ApproxFunction f = random_table(rng, 2, 10, 8, 30);
    TransformResult prev = psi_transform(f, 1, 1, 10);
    for (long long Q = 2; Q <= 6; ++Q) {
      TransformResult cur = psi_transform(f, 1, Q, 10);
      for (long long d = 1; d <= 10; ++d) {
        REQUIRE(cur.at(d).sum_pow_m <= prev.at(d).sum_pow_m);
        // partition: Psi_1^m = Psi_Q^m + contribution of shells below Q
        Rat below = 0;
        f.for_support(1, 10 * Q, [&](const IntVec& q, const Rat& v) {
          long long g = gcd_vec(q);
          long long mx = 0;
          for (long long e : q) mx = std::max(mx, e);
          if (g == d && mx / g < Q) below += v;
        });
        REQUIRE(psi_transform(f, 1, 1, 10).at(d).sum_pow_m ==
                cur.at(d).sum_pow_m + below);
      }
      prev = std::move(cur);
    }
  }
}

TEST_CASE("psi_transform: dense power-law statuses") {
  // m*tau > n: certified tail bound
  ApproxFunction fast = ApproxFunction::univariate(2, PowerLaw{Rat(1), 3});
  TransformResult t = psi_transform(fast, 1, 1, 3, {16});
  CHECK(t.at(1).status == TransformStatus::TailBounded);
  CHECK(t.at(1).tail_bound > 0);
  // the partial sum plus its bound stays sane: tail shrinks with d
  CHECK(t.at(3).tail_bound < t.at(1).tail_bound);

  // m*tau <= 1 with n >= 2: certified divergence
  ApproxFunction harmonic = ApproxFunction::univariate(2, PowerLaw{Rat(1, 2), 1});
  CHECK(psi_transform(harmonic, 1, 1, 2).at(1).status == TransformStatus::Infinite);
  ApproxFunction constant = ApproxFunction::univariate(2, PowerLaw{Rat(1, 20), 0});
  CHECK(psi_transform(constant, 1, 1, 2).at(1).status == TransformStatus::Infinite);

  // 1 < m*tau <= n: no certificate either way
  ApproxFunction mid = ApproxFunction::univariate(2, PowerLaw{Rat(1), 2});
  CHECK(psi_transform(mid, 1, 1, 2).at(1).status == TransformStatus::LowerBoundOnly);

  // a deeper partial sum never escapes the certified bound of a shallow one
  for (long long d : {1, 2, 5}) {
    TransformResult shallow = psi_transform(fast, 1, 1, 5, {8});
    TransformResult deep = psi_transform(fast, 1, 1, 5, {96});
    REQUIRE(deep.at(d).sum_pow_m <=
            shallow.at(d).sum_pow_m + shallow.at(d).tail_bound);
    REQUIRE(deep.at(d).sum_pow_m >= shallow.at(d).sum_pow_m);
  }

  // ray and alternating-axes transforms are exact
  ApproxFunction ray = ApproxFunction::ray({1, 0}, PowerLaw{Rat(1, 20), 0});
  TransformResult tr = psi_transform(ray, 1, 1, 5);
  CHECK(tr.at(4).sum_pow_m == Rat(1, 20));
  CHECK(tr.at(4).status == TransformStatus::Exact);
  CHECK(psi_transform(ray, 1, 2, 5).at(4).sum_pow_m == 0);  // |dir| = 1 < 2
}

TEST_CASE("series: Khintchine-Groshev partial sums") {
  ApproxFunction f = ApproxFunction::univariate(1, PowerLaw{Rat(1), 1});
  SeriesResult r = series_partial_sum(SeriesKind::KhintchineGroshev, f, 1, 1, 3);
  CHECK(r.partial == Rat(11, 6));
  CHECK(r.tag == ConvergenceTag::Divergent);

  // monotone in the limit
  Rat prev = 0;
  for (long long limit = 1; limit <= 12; ++limit) {
    Rat cur = series_partial_sum(SeriesKind::KhintchineGroshev, f, 2, 1, limit).partial;
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("series: totient-weighted and orthant sums") {
  ApproxFunction f = ApproxFunction::univariate(1, PowerLaw{Rat(1), 1});
  SeriesResult ds = series_partial_sum(SeriesKind::DuffinSchaeffer, f, 1, 1, 3);
  CHECK(ds.partial == Rat(53, 36));  // 1 + 1/4 + 2/9

  ApproxFunction g = ApproxFunction::univariate(2, PowerLaw{Rat(1), 2});
  SeriesResult ortho = series_partial_sum(SeriesKind::Orthant, g, 2, 1, 2);
  CHECK(ortho.partial == Rat(17, 4));  // 3*1 + 5*(1/4)
  CHECK(ortho.tag == ConvergenceTag::Divergent);  // m*tau = 2 <= n = 2

  ApproxFunction conv = ApproxFunction::univariate(2, PowerLaw{Rat(1), 3});
  CHECK(series_partial_sum(SeriesKind::Orthant, conv, 2, 1, 2).tag ==
        ConvergenceTag::Convergent);
}

TEST_CASE("series: totient factor drops out on primitive support") {
  // on gcd = 1 vectors the totient weight is 1, so the totient-weighted sum
  // equals the plain orthant sum
  for (int c = 0; c < 20; ++c) {
    CounterRng rng(31, 7, static_cast<std::uint64_t>(c));
    std::map<IntVec, Rat> t;
    while (t.size() < 6) {
      IntVec q{rand_int(rng, 0, 9), rand_int(rng, 0, 9)};
      if (q[0] == 0 && q[1] == 0) continue;
      if (std::gcd(q[0], q[1]) != 1) continue;
      t[q] = Rat(rand_int(rng, 1, 25), 25);
    }
    ApproxFunction f = ApproxFunction::finite_support(2, std::move(t));
    CHECK(series_partial_sum(SeriesKind::DuffinSchaeffer, f, 2, 1, 9).partial ==
          series_partial_sum(SeriesKind::Orthant, f, 2, 1, 9).partial);
  }
}

TEST_CASE("series: univariate n=1 sums agree across evaluators") {
  // with n = 1 the orthant sum is the Khintchine-Groshev sum (q^0 weights)
  for (int c = 0; c < 20; ++c) {
    CounterRng rng(37, 8, static_cast<std::uint64_t>(c));
    ApproxFunction f = random_table(rng, 1, 30, 5, 50);
    CHECK(series_partial_sum(SeriesKind::Orthant, f, 1, 1, 30).partial ==
          series_partial_sum(SeriesKind::KhintchineGroshev, f, 1, 1, 30).partial);
  }
}

TEST_CASE("catlin_phi: joint coprimality counts") {
  CHECK(catlin_phi({2, 4}, 1) == 4);  // odd p in [-4,4]
  CHECK(catlin_phi({1, 0}, 1) == 3);  // all of {-1,0,1}
  CHECK(catlin_phi({1}, 1) == 3);
  CHECK(catlin_phi({2}, 2) == 16);  // 25 points minus the 9 with both entries even

  // m = 1 fast path agrees with the generic enumeration shape: primitive q
  // counts everything in the window
  CHECK(catlin_phi({3, 5}, 1) == 11);  // |q| = 5, all 11 points coprime to 1
}

TEST_CASE("catlin_sup_term: ratio suprema with certificates") {
  ApproxFunction dec = ApproxFunction::univariate(2, PowerLaw{Rat(1), 2});
  CHECK(catlin_sup_term(dec, {1, 1}) == 1);  // t = 1

  ApproxFunction spike = table_psi(2, {{{4, 4}, Rat(1)}});
  CHECK(catlin_sup_term(spike, {2, 2}) == Rat(1, 4));  // t = 2

  ApproxFunction zero = table_psi(2, {});
  CHECK(catlin_sup_term(zero, {1, 2}) == 0);

  ApproxFunction ct =
      ApproxFunction::chow_technau(1, {Rat(7, 10)}, {Rat(0)}, PowerLaw{Rat(1), 1});
  CHECK_THROWS_AS(catlin_sup_term(ct, {1}), UnsupportedError);

  // masked power law: the first admissible multiple realizes the sup
  ApproxFunction masked = ApproxFunction::gcd_class_mask(
      ApproxFunction::univariate(1, PowerLaw{Rat(1), 1}), 2, 0);
  CHECK(catlin_sup_term(masked, {3}) == Rat(1, 36));  // t = 2: (1/6) / (2*3)

  SeriesResult cat = series_partial_sum(SeriesKind::Catlin, dec, 2, 1, 2);
  CHECK(cat.partial > 0);
}

TEST_CASE("congruence reduction: shift, mask, scale") {
  NrsReduction red = nrs_reduce({2}, {3}, {1}, {2}, PowerLaw{Rat(1), 1});
  CHECK(red.a == 2);
  CHECK(red.b == 3);
  CHECK(red.family.kind == TargetFamily::Kind::Inhomogeneous);
  CHECK(red.family.shift[0] == Rat(1, 2));

  CHECK(eval_psi(red.combined, {2}) == Rat(1, 4));  // psi(2)/2
  CHECK(eval_psi(red.combined, {3}) == 0);          // 3 != 2 mod 3

  // class decomposition sums back pointwise
  REQUIRE(red.classes.size() == 3);
  for (long long q = 1; q <= 30; ++q) {
    Rat total = 0;
    for (const ApproxFunction& cls : red.classes) total += eval_psi(cls, {q});
    CHECK(total == eval_psi(red.combined, {q}));
  }

  // a = 1 leaves the values unscaled
  NrsReduction plain = nrs_reduce({1}, {2}, {0}, {1}, PowerLaw{Rat(1), 1});
  CHECK(eval_psi(plain.combined, {3}) == Rat(1, 3));
  CHECK(eval_psi(plain.combined, {2}) == 0);
}

TEST_CASE("psi_transform: masked enumerable supports stay exact") {
  // entrywise mask over a ray: support t*(1,0) for even t
  ApproxFunction masked_ray = ApproxFunction::entrywise_mask(
      ApproxFunction::ray({1, 0}, PowerLaw{Rat(1, 4), 0}), {0, 0}, {2, 3}, Rat(1));
  TransformResult t = psi_transform(masked_ray, 1, 1, 6);
  CHECK(t.at(2).sum_pow_m == Rat(1, 4));
  CHECK(t.at(3).sum_pow_m == 0);
  CHECK(t.at(4).sum_pow_m == Rat(1, 4));
  CHECK(t.at(2).status == TransformStatus::Exact);

  // mask over a dense univariate rule at n = 1: the single primitive shell
  // makes the windowed enumeration complete
  NrsReduction red = nrs_reduce({2}, {3}, {1}, {2}, PowerLaw{Rat(1), 1});
  TransformResult tc = psi_transform(red.combined, 1, 1, 9);
  for (long long d = 1; d <= 9; ++d) {
    Rat expected = (d % 3 == 2) ? Rat(1, 2 * d) : Rat(0);
    CHECK(tc.at(d).sum_pow_m == expected);
    CHECK(tc.at(d).status == TransformStatus::Exact);
  }
  // the per-class masks partition the transform
  TransformResult t2 = psi_transform(red.classes[2], 1, 1, 9);
  CHECK(t2.at(2).sum_pow_m == Rat(1, 4));
  CHECK(t2.at(5).sum_pow_m == Rat(1, 10));
  CHECK(t2.at(3).sum_pow_m == 0);
}

TEST_CASE("psi JSON schema round trips") {
  ApproxFunction f = psi_from_json_text(
      R"({"n":2,"entries":[{"q":[1,2],"value":"1/10"},{"q":[2,4],"value":"3/10"}]})");
  CHECK(f.kind() == ApproxFunction::Kind::FiniteSupport);
  CHECK(eval_psi(f, {2, 4}) == Rat(3, 10));

  Json j = psi_to_json(f);
  ApproxFunction g = psi_from_json(j);
  CHECK(g == f);

  ApproxFunction ray = ApproxFunction::ray({1, 0}, PowerLaw{Rat(1, 20), 0});
  CHECK(psi_from_json(psi_to_json(ray)) == ray);
  ApproxFunction nested = ApproxFunction::gcd_class_mask(
      ApproxFunction::entrywise_mask(ApproxFunction::univariate(2, PowerLaw{Rat(1), 1}),
                                     {1, 0}, {2, 3}, Rat(1, 5)),
      4, 1);
  CHECK(psi_from_json(psi_to_json(nested)) == nested);
}
