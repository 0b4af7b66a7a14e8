#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "limset/rational.hpp"

namespace limset {

using Point = std::vector<Rat>;  // point in [0,d)^m

// Rule producing the finite target set P(d) in (R/dZ)^m for each modulus d.
struct TargetFamily {
  enum class Kind {
    FullLattice,      // all residues {0..d-1}^m
    Inhomogeneous,    // shift + {0..d-1}^m
    Reduced,          // residues with every entry coprime to d
    Congruence,       // residues entrywise congruent to `residues` mod gcd(modulus, d)
    HalfCube,         // integer points with 0 <= p_i <= d/2
    AlternatingHalf,  // m=1: lower half for odd d, upper half for even d
    Custom,           // explicit table d -> points
  };

  Kind kind = Kind::FullLattice;
  int m = 1;
  std::vector<Rat> shift;                       // Inhomogeneous
  IntVec residues;                              // Congruence
  long long modulus = 1;                        // Congruence
  std::map<long long, std::vector<Point>> table;  // Custom

  static TargetFamily full_lattice(int m);
  static TargetFamily inhomogeneous(std::vector<Rat> y);
  static TargetFamily reduced(int m);
  static TargetFamily congruence(IntVec residues, long long modulus);
  static TargetFamily half_cube(int m);
  static TargetFamily alternating_half();
  static TargetFamily custom(int m, std::map<long long, std::vector<Point>> table);

  bool operator==(const TargetFamily& o) const;
  std::string kind_name() const;
};

// Exact point set P(d), lexicographically sorted, entries in [0,d).
std::vector<Point> enumerate_targets(const TargetFamily& f, long long d);

std::size_t target_count(const TargetFamily& f, long long d);

// Minimum pairwise torus gap (period d, sup-norm) among the points of P(d);
// nullopt for singletons (no pairs).
std::optional<Rat> min_target_gap(const TargetFamily& f, long long d);
std::optional<Rat> min_point_gap(const std::vector<Point>& points, long long d);

// Largest radius for which the lifted balls around P(q) are disjoint and
// wrap-free: half of min(d, torus gap).
Rat disjointness_bound(const TargetFamily& f, long long d);

struct SpreadVerdict {
  long long d = 1;
  std::size_t count = 0;
  std::optional<Rat> gap;  // nullopt = singleton, no pairs
  bool uniformly_discrete = true;
};

// Constants are certified with c = 1 (no refinement search) over the finite
// range only. a_max is recorded through its m-th power so the report stays
// in exact rationals when m > 1.
struct SpreadReport {
  int m = 1;
  std::vector<long long> range;
  std::optional<Rat> b_min;        // min gap over the range; nullopt if no pairs at all
  std::optional<Rat> a_max_pow_m;  // min over d of gap^m * #P(d) / d^m
  Rat c_used = 1;
  std::vector<SpreadVerdict> verdicts;
  double a_max_approx() const;  // m-th root of a_max_pow_m
};

SpreadReport spread_constants(const TargetFamily& f, const std::vector<long long>& d_range);

}  // namespace limset
