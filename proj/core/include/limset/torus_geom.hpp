#pragma once

#include <vector>

#include "limset/rational.hpp"

namespace limset {

// Closed sup-norm ball on T^m. Boundaries carry no measure, so every
// measure below is unaffected by the closed/open choice; membership
// tests use the closed convention.
struct TorusBall {
  std::vector<Rat> center;  // entries reduced into [0,1)
  Rat radius;               // >= 0
};

TorusBall make_ball(std::vector<Rat> center, Rat radius);

struct TorusRegion {
  int dim = 1;
  std::vector<TorusBall> balls;
};

TorusRegion make_region(int dim, std::vector<TorusBall> balls);

// Exact Lebesgue measure of the union, with wrap-around.
// dim <= 2 only; larger dims throw UnsupportedExact.
Rat region_measure(const TorusRegion& r);

// Exact measure of the intersection of two unions on the same torus.
Rat region_intersect_measure(const TorusRegion& a, const TorusRegion& b);

// Greedy disjoint subcollection whose threefold concentric dilations
// cover the input union. Selection order: radius descending, ties by
// lexicographic center, so the output is deterministic.
TorusRegion vitali_refine(const TorusRegion& r);

// Concentric contraction: radii scaled by factor in (0,1], centers kept.
TorusRegion scale_region(const TorusRegion& r, const Rat& factor);

bool region_contains(const TorusRegion& r, const std::vector<Rat>& point);

bool balls_intersect(const TorusBall& a, const TorusBall& b);

// b contained in the k-fold concentric dilation of s
bool ball_in_dilation(const TorusBall& b, const TorusBall& s, unsigned k);

// Canonical 1-D form: disjoint closed segments within [0,1], sorted.
// Wrapping balls are cut at 0; zero-radius balls are dropped.
struct Segment {
  Rat lo, hi;
};
std::vector<Segment> canonical_segments(const TorusRegion& r);

Rat segments_measure(const std::vector<Segment>& segs);
Rat segments_intersect_measure(const std::vector<Segment>& a, const std::vector<Segment>& b);

}  // namespace limset
