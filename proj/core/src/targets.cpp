#include "limset/targets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "limset/arith.hpp"
#include "limset/errors.hpp"

namespace limset {

TargetFamily TargetFamily::full_lattice(int m) {
  TargetFamily f;
  f.kind = Kind::FullLattice;
  f.m = m;
  return f;
}

TargetFamily TargetFamily::inhomogeneous(std::vector<Rat> y) {
  if (y.empty()) throw DomainError("inhomogeneous: empty shift");
  TargetFamily f;
  f.kind = Kind::Inhomogeneous;
  f.m = static_cast<int>(y.size());
  f.shift = std::move(y);
  return f;
}

TargetFamily TargetFamily::reduced(int m) {
  TargetFamily f;
  f.kind = Kind::Reduced;
  f.m = m;
  return f;
}

TargetFamily TargetFamily::congruence(IntVec residues, long long modulus) {
  if (residues.empty()) throw DomainError("congruence: empty residue vector");
  if (modulus < 1) throw DomainError("congruence: modulus must be positive");
  for (long long r : residues) {
    if (r < 0 || r >= modulus) throw DomainError("congruence: residue out of range");
  }
  TargetFamily f;
  f.kind = Kind::Congruence;
  f.m = static_cast<int>(residues.size());
  f.residues = std::move(residues);
  f.modulus = modulus;
  return f;
}

TargetFamily TargetFamily::half_cube(int m) {
  TargetFamily f;
  f.kind = Kind::HalfCube;
  f.m = m;
  return f;
}

TargetFamily TargetFamily::alternating_half() {
  TargetFamily f;
  f.kind = Kind::AlternatingHalf;
  f.m = 1;
  return f;
}

TargetFamily TargetFamily::custom(int m, std::map<long long, std::vector<Point>> table) {
  TargetFamily f;
  f.kind = Kind::Custom;
  f.m = m;
  f.table = std::move(table);
  return f;
}

bool TargetFamily::operator==(const TargetFamily& o) const {
  return kind == o.kind && m == o.m && shift == o.shift && residues == o.residues &&
         modulus == o.modulus && table == o.table;
}

std::string TargetFamily::kind_name() const {
  switch (kind) {
    case Kind::FullLattice: return "full_lattice";
    case Kind::Inhomogeneous: return "inhomogeneous";
    case Kind::Reduced: return "reduced";
    case Kind::Congruence: return "congruence";
    case Kind::HalfCube: return "half_cube";
    case Kind::AlternatingHalf: return "alternating_half";
    case Kind::Custom: return "custom";
  }
  return "?";
}

namespace {

// all vectors over the given per-axis value lists
std::vector<Point> product_points(const std::vector<std::vector<Rat>>& axes) {
  std::vector<Point> out;
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.size();
  out.reserve(total);
  Point cur(axes.size());
  std::vector<std::size_t> idx(axes.size(), 0);
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t rem = t;
    for (std::size_t i = axes.size(); i-- > 0;) {
      cur[i] = axes[i][rem % axes[i].size()];
      rem /= axes[i].size();
    }
    out.push_back(cur);
  }
  return out;
}

std::vector<Rat> axis_residues(long long d) {
  std::vector<Rat> v;
  v.reserve(static_cast<std::size_t>(d));
  for (long long k = 0; k < d; ++k) v.emplace_back(k);
  return v;
}

std::vector<Rat> axis_reduced(long long d) {
  std::vector<Rat> v;
  for (long long k = 0; k < d; ++k) {
    if (std::gcd(k, d) == 1) v.emplace_back(k);
  }
  return v;
}

std::vector<Rat> axis_half(long long d) {
  std::vector<Rat> v;
  for (long long k = 0; 2 * k <= d; ++k) v.emplace_back(k);
  return v;
}

std::vector<Rat> axis_congruence(long long d, long long res, long long modulus) {
  // The progression res + modulus*Z projects onto d-residues as
  // res + gcd(modulus, d)*Z, which is the d-periodic closure.
  long long g = std::gcd(modulus, d);
  std::vector<Rat> v;
  for (long long k = res % g; k < d; k += g) v.emplace_back(k);
  return v;
}

// upper half {d/2 <= p <= d} reduced mod d (the endpoint d lands on 0)
std::vector<Rat> axis_upper_half(long long d) {
  std::vector<Rat> v;
  v.emplace_back(0);
  for (long long k = (d + 1) / 2; k < d; ++k) v.emplace_back(k);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<Point> enumerate_targets(const TargetFamily& f, long long d) {
  if (d < 1) throw DomainError("enumerate_targets: d must be positive");
  std::vector<std::vector<Rat>> axes(static_cast<std::size_t>(f.m));
  switch (f.kind) {
    case TargetFamily::Kind::FullLattice:
      for (auto& a : axes) a = axis_residues(d);
      return product_points(axes);
    case TargetFamily::Kind::Inhomogeneous: {
      for (int i = 0; i < f.m; ++i) {
        axes[i] = axis_residues(d);
        for (Rat& x : axes[i]) x = mod_period(x + f.shift[i], Rat(d));
        std::sort(axes[i].begin(), axes[i].end());
      }
      return product_points(axes);
    }
    case TargetFamily::Kind::Reduced:
      for (auto& a : axes) a = axis_reduced(d);
      return product_points(axes);
    case TargetFamily::Kind::Congruence:
      for (int i = 0; i < f.m; ++i) axes[i] = axis_congruence(d, f.residues[i], f.modulus);
      return product_points(axes);
    case TargetFamily::Kind::HalfCube:
      for (auto& a : axes) a = axis_half(d);
      return product_points(axes);
    case TargetFamily::Kind::AlternatingHalf:
      axes[0] = (d % 2 == 1) ? axis_half(d) : axis_upper_half(d);
      return product_points(axes);
    case TargetFamily::Kind::Custom: {
      auto it = f.table.find(d);
      if (it == f.table.end())
        throw DomainError("custom family: no table entry for d=" + std::to_string(d));
      std::vector<Point> pts = it->second;
      for (Point& p : pts) {
        if (static_cast<int>(p.size()) != f.m)
          throw DomainError("custom family: point dimension mismatch");
        for (Rat& c : p) c = mod_period(c, Rat(d));
      }
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      return pts;
    }
  }
  throw DomainError("enumerate_targets: unknown kind");
}

std::size_t target_count(const TargetFamily& f, long long d) {
  return enumerate_targets(f, d).size();
}

std::optional<Rat> min_point_gap(const std::vector<Point>& points, long long d) {
  if (points.size() < 2) return std::nullopt;
  const Rat period(d);
  std::optional<Rat> best;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      Rat gap = 0;
      for (std::size_t k = 0; k < points[i].size(); ++k) {
        gap = rat_max(gap, torus_dist(points[i][k], points[j][k], period));
      }
      if (!best || gap < *best) best = gap;
    }
  }
  return best;
}

std::optional<Rat> min_target_gap(const TargetFamily& f, long long d) {
  return min_point_gap(enumerate_targets(f, d), d);
}

Rat disjointness_bound(const TargetFamily& f, long long d) {
  // Distinct lifts of the same point are d apart, so the lifted pair
  // minimum is min(d, torus gap); singletons get d.
  std::optional<Rat> gap = min_target_gap(f, d);
  Rat lifted = gap ? rat_min(*gap, Rat(d)) : Rat(d);
  return lifted / 2;
}

double SpreadReport::a_max_approx() const {
  if (!a_max_pow_m) return 0.0;
  return std::pow(to_double(*a_max_pow_m), 1.0 / m);
}

SpreadReport spread_constants(const TargetFamily& f, const std::vector<long long>& d_range) {
  if (d_range.empty()) throw DomainError("spread_constants: empty range");
  SpreadReport report;
  report.m = f.m;
  report.range = d_range;
  for (long long d : d_range) {
    std::vector<Point> pts = enumerate_targets(f, d);
    SpreadVerdict v;
    v.d = d;
    v.count = pts.size();
    v.gap = min_point_gap(pts, d);
    v.uniformly_discrete = !v.gap || *v.gap > 0;
    if (v.gap) {
      if (!report.b_min || *v.gap < *report.b_min) report.b_min = v.gap;
      Rat a_pow = rat_pow(*v.gap, static_cast<unsigned>(f.m)) * Rat(pts.size()) /
                  rat_pow(Rat(d), static_cast<unsigned>(f.m));
      if (!report.a_max_pow_m || a_pow < *report.a_max_pow_m) report.a_max_pow_m = a_pow;
    }
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

}  // namespace limset
