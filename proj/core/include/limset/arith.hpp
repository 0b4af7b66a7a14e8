#pragma once

#include "limset/rational.hpp"

namespace limset {

// gcd over the nonzero entries of q; throws DomainError if all entries vanish
long long gcd_vec(const IntVec& q);

long long totient(long long d);

// -1, 0, or 1
int mobius(long long d);

// #{q in Z_+^n : |q| = k}  =  (k+1)^n - k^n
unsigned long long shell_count(int n, long long k);

// #{q in Z_+^n : gcd(q) = 1, |q| = k}, via Moebius inversion of shell_count
unsigned long long primitive_count(int n, long long k);

// distance from x to the nearest integer, in [0, 1/2]
double nearest_int_dist(double x);
Rat nearest_int_dist(const Rat& x);

long long int_pow(long long base, int exp);
long long lcm_vec(const IntVec& v);

}  // namespace limset
