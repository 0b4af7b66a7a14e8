#include "limset/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "limset/arith.hpp"
#include "limset/errors.hpp"

namespace limset {

namespace {

constexpr long long kBlock = 8192;  // fixed shard size; independent of threads

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs `body(sample_rng, sample_index)` over all samples and returns the hit
// count. Hits are integers, so the merged total is the same for every
// thread count and schedule.
template <typename Body>
long long count_hits(long long samples, std::uint64_t seed, int threads, Body&& body) {
  if (samples <= 0) return 0;
  const long long blocks = (samples + kBlock - 1) / kBlock;
  std::atomic<long long> next_block{0};
  std::atomic<long long> total{0};
  auto worker = [&]() {
    long long local = 0;
    for (;;) {
      long long b = next_block.fetch_add(1);
      if (b >= blocks) break;
      const long long begin = b * kBlock;
      const long long end = std::min(samples, begin + kBlock);
      for (long long s = begin; s < end; ++s) {
        CounterRng rng(seed, static_cast<std::uint64_t>(b),
                       static_cast<std::uint64_t>(s - begin));
        if (body(rng, s)) ++local;
      }
    }
    total.fetch_add(local);
  };
  int nthreads = std::min<long long>(resolve_threads(threads), blocks);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return total.load();
}

McEstimate finish(long long hits, long long samples, std::uint64_t seed) {
  McEstimate e;
  e.samples = samples;
  e.seed = seed;
  if (samples > 0) {
    e.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    e.half_width = hoeffding_half_width(samples);
  }
  return e;
}

void check_dims(int dims) {
  if (dims < 1 || dims > 16)
    throw UnsupportedError("sampler supports 1 <= n*m <= 16 dimensions");
}

std::vector<SetMembership> build_members(const ApproxFunction& f,
                                         const TargetFamily& family, int n, int m,
                                         long long Q0, long long Q1) {
  std::vector<SetMembership> members;
  f.for_support(Q0, Q1, [&](const IntVec& q, const Rat& v) {
    members.emplace_back(make_approx_set(q, v, family, n, m));
  });
  return members;
}

}  // namespace

McEstimate tail_union_estimate(const ApproxFunction& f, const TargetFamily& family, int n,
                               int m, long long Q0, long long Q1, long long samples,
                               std::uint64_t seed, int threads) {
  if (samples < 1) throw DomainError("tail_union_estimate: samples must be >= 1");
  if (Q0 > Q1) throw DomainError("tail_union_estimate: Q0 must be <= Q1");
  if (f.dim() != n) throw DomainError("tail_union_estimate: psi dimension != n");
  std::vector<SetMembership> members = build_members(f, family, n, m, Q0, Q1);
  if (members.empty()) {
    // empty q-range: the union is empty, no sampling uncertainty
    McEstimate e;
    e.samples = samples;
    e.seed = seed;
    return e;
  }

  const int dims = n * m;
  check_dims(dims);
  long long hits = count_hits(samples, seed, threads, [&](CounterRng& rng, long long) {
    double X[16];
    for (int i = 0; i < dims; ++i) X[i] = rng.next_unit();
    for (const SetMembership& s : members) {
      if (s.contains(X)) return true;
    }
    return false;
  });
  return finish(hits, samples, seed);
}

McEstimate set_measure_estimate(const ApproxSet& a, long long samples, std::uint64_t seed,
                                int threads) {
  if (samples < 1) throw DomainError("set_measure_estimate: samples must be >= 1");
  SetMembership member(a);
  const int dims = a.n * a.m;
  check_dims(dims);
  long long hits = count_hits(samples, seed, threads, [&](CounterRng& rng, long long) {
    double X[16];
    for (int i = 0; i < dims; ++i) X[i] = rng.next_unit();
    return member.contains(X);
  });
  return finish(hits, samples, seed);
}

McEstimate pair_intersection_estimate(const ApproxSet& a, const ApproxSet& b,
                                      long long samples, std::uint64_t seed, int threads) {
  if (a.n != b.n || a.m != b.m) throw DomainError("pair estimate: dimension mismatch");
  if (samples < 1) throw DomainError("pair estimate: samples must be >= 1");
  SetMembership ma(a), mb(b);
  const int dims = a.n * a.m;
  check_dims(dims);
  long long hits = count_hits(samples, seed, threads, [&](CounterRng& rng, long long) {
    double X[16];
    for (int i = 0; i < dims; ++i) X[i] = rng.next_unit();
    return ma.contains(X) && mb.contains(X);
  });
  return finish(hits, samples, seed);
}

McEstimate region_measure_estimate(const TorusRegion& r, long long samples,
                                   std::uint64_t seed, int threads) {
  if (samples < 1) throw DomainError("region estimate: samples must be >= 1");
  struct Ball {
    std::vector<double> c;
    double rad;
  };
  std::vector<Ball> balls;
  for (const TorusBall& b : r.balls) {
    Ball d;
    d.rad = to_double(b.radius);
    for (const Rat& x : b.center) d.c.push_back(to_double(x));
    balls.push_back(std::move(d));
  }
  const int dims = r.dim;
  check_dims(dims);
  long long hits = count_hits(samples, seed, threads, [&](CounterRng& rng, long long) {
    double X[16];
    for (int i = 0; i < dims; ++i) X[i] = rng.next_unit();
    for (const Ball& b : balls) {
      bool inside = true;
      for (int i = 0; i < dims; ++i) {
        double w = std::fabs(X[i] - b.c[static_cast<std::size_t>(i)]);
        if (std::min(w, 1.0 - w) > b.rad) {
          inside = false;
          break;
        }
      }
      if (inside) return true;
    }
    return false;
  });
  return finish(hits, samples, seed);
}

double TailProfile::plateau() const {
  return stages.empty() ? 0.0 : stages.back().estimate.estimate;
}

TailProfile limsup_profile(const ApproxFunction& f, const TargetFamily& family, int n,
                           int m, const std::vector<TailWindow>& windows, long long samples,
                           std::uint64_t seed, int threads) {
  TailProfile profile;
  for (const TailWindow& w : windows) {
    profile.stages.push_back(
        {w, tail_union_estimate(f, family, n, m, w.q0, w.q1, samples, seed, threads)});
  }
  return profile;
}

CasselsReport cassels_scaling_probe(const ApproxFunction& f, const TargetFamily& family,
                                    int n, int m, const std::vector<Rat>& factors,
                                    const std::vector<TailWindow>& windows,
                                    long long samples, std::uint64_t seed, int threads) {
  CasselsReport report;
  for (const Rat& c : factors) {
    if (c <= 0) throw DomainError("cassels probe: factors must be positive");
    ApproxFunction scaled = (c == 1) ? f : ApproxFunction::scaled(f, c);
    report.profiles.emplace_back(
        c, limsup_profile(scaled, family, n, m, windows, samples, seed, threads));
  }
  for (std::size_t i = 0; i < report.profiles.size(); ++i) {
    for (std::size_t j = i + 1; j < report.profiles.size(); ++j) {
      report.max_plateau_gap =
          std::max(report.max_plateau_gap, std::fabs(report.profiles[i].second.plateau() -
                                                     report.profiles[j].second.plateau()));
    }
  }
  return report;
}

namespace {

// best rational approximation with bounded denominator (continued fractions)
Rat rational_approx(double x, long long max_den) {
  if (x <= 0) return Rat(0);
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double y = x;
  for (int iter = 0; iter < 64; ++iter) {
    long long a = static_cast<long long>(std::floor(y));
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = y - static_cast<double>(a);
    if (frac < 1e-15) break;
    y = 1.0 / frac;
  }
  if (q1 == 0) return Rat(0);
  return Rat(p1, q1);
}

// radius for the 1-by-m stage from a transform entry
Rat stage_radius(const TransformEntry& e, int m) {
  if (m == 1) return e.sum_pow_m;
  return rational_approx(std::pow(to_double(e.sum_pow_m), 1.0 / m), 1000000);
}

}  // namespace

BootstrapReport bootstrap_demo(const ApproxFunction& f, const TargetFamily& family, int n,
                               int m, const std::vector<long long>& Q_list,
                               const BootstrapOptions& opts) {
  BootstrapReport report;
  report.Q_list = Q_list;

  TransformOptions topts;
  topts.shell_cap = opts.shell_cap;
  for (long long Q : Q_list) {
    TransformResult tr = psi_transform(f, m, Q, opts.d_max, topts);
    for (const auto& [d, e] : tr.values) {
      if (e.status != TransformStatus::Exact) report.truncated_radii = true;
    }
    report.transforms.emplace(Q, std::move(tr));
  }

  // 1-by-m stage: W_{1,m}^P(Psi_Q) with the (possibly truncated) radii
  for (long long Q : Q_list) {
    const TransformResult& tr = report.transforms.at(Q);
    std::map<IntVec, Rat> table;
    for (const auto& [d, e] : tr.values) {
      Rat radius = stage_radius(e, m);
      if (radius > 0) table[IntVec{d}] = radius;
    }
    if (table.empty()) {
      report.one_by_m.emplace(Q, TailProfile{});
      // still record the empty stages for each window
      TailProfile& p = report.one_by_m.at(Q);
      for (const TailWindow& w : opts.one_by_m_windows) {
        McEstimate e;
        e.samples = opts.samples;
        e.seed = opts.seed;
        p.stages.push_back({w, e});
      }
      continue;
    }
    ApproxFunction psi1 = ApproxFunction::finite_support(1, std::move(table));
    report.one_by_m.emplace(
        Q, limsup_profile(psi1, family, 1, m, opts.one_by_m_windows, opts.samples,
                          opts.seed, opts.threads));
  }

  report.n_by_m = limsup_profile(f, family, n, m, opts.n_by_m_windows, opts.samples,
                                 opts.seed, opts.threads);

  QiaOptions qopts;
  qopts.seed = opts.seed;
  qopts.threads = opts.threads;
  report.qia = qia_scan(f, family, n, m, opts.qia_D, opts.qia_H, qopts);
  return report;
}

}  // namespace limset
