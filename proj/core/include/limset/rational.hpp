#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace limset {

// Exact arithmetic substrate. cpp_rational keeps values normalized
// (lowest terms, positive denominator), so equality is structural.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<long long>;

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

BigInt rat_floor(const Rat& x);
BigInt rat_ceil(const Rat& x);

// x - floor(x), in [0,1)
Rat rat_frac(const Rat& x);

// reduce into [0, period)
Rat mod_period(const Rat& x, const Rat& period);

// distance between a and b on the circle of circumference `period`
Rat torus_dist(const Rat& a, const Rat& b, const Rat& period);

Rat rat_pow(const Rat& x, unsigned k);

Rat rat_min(const Rat& a, const Rat& b);
Rat rat_max(const Rat& a, const Rat& b);
Rat rat_abs(const Rat& x);

// "num/den" (always slash form, canonical sign on the numerator)
std::string rat_str(const Rat& x);

// accepts "num/den", "num", and optional surrounding whitespace
Rat parse_rat(const std::string& s);

}  // namespace limset
