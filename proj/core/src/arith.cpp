#include "limset/arith.hpp"

#include <cmath>
#include <numeric>

#include "limset/errors.hpp"

namespace limset {

long long gcd_vec(const IntVec& q) {
  long long g = 0;
  for (long long e : q) {
    if (e < 0) throw DomainError("gcd_vec: negative entry");
    g = std::gcd(g, e);
  }
  if (g == 0) throw DomainError("gcd_vec: all-zero vector");
  return g;
}

long long totient(long long d) {
  if (d < 1) throw DomainError("totient: d must be positive");
  long long result = d;
  long long n = d;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      result -= result / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

int mobius(long long d) {
  if (d < 1) throw DomainError("mobius: d must be positive");
  int factors = 0;
  long long n = d;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      ++factors;
    }
  }
  if (n > 1) ++factors;
  return (factors % 2 == 0) ? 1 : -1;
}

long long int_pow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

long long lcm_vec(const IntVec& v) {
  long long l = 1;
  for (long long e : v) {
    if (e < 1) throw DomainError("lcm_vec: entries must be positive");
    l = std::lcm(l, e);
  }
  return l;
}

unsigned long long shell_count(int n, long long k) {
  if (n < 1 || k < 0) throw DomainError("shell_count: need n >= 1, k >= 0");
  if (k == 0) return 1;  // only the zero vector
  unsigned long long hi = 1, lo = 1;
  for (int i = 0; i < n; ++i) {
    hi *= static_cast<unsigned long long>(k + 1);
    lo *= static_cast<unsigned long long>(k);
  }
  return hi - lo;
}

unsigned long long primitive_count(int n, long long k) {
  if (n < 1 || k < 1) throw DomainError("primitive_count: need n >= 1, k >= 1");
  long long acc = 0;
  for (long long e = 1; e * e <= k; ++e) {
    if (k % e != 0) continue;
    acc += mobius(e) * static_cast<long long>(shell_count(n, k / e));
    long long f = k / e;
    if (f != e) acc += mobius(f) * static_cast<long long>(shell_count(n, k / f));
  }
  return static_cast<unsigned long long>(acc);
}

double nearest_int_dist(double x) {
  if (!std::isfinite(x)) throw DomainError("nearest_int_dist: non-finite input");
  double f = x - std::floor(x);
  return std::min(f, 1.0 - f);
}

Rat nearest_int_dist(const Rat& x) {
  Rat f = rat_frac(x);
  return rat_min(f, Rat(1) - f);
}

}  // namespace limset
