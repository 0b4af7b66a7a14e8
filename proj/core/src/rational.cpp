#include "limset/rational.hpp"

#include <cstddef>
#include <stdexcept>

namespace limset {

BigInt rat_floor(const Rat& x) {
  BigInt n = numerator(x), d = denominator(x);
  BigInt q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) --q;
  return q;
}

BigInt rat_ceil(const Rat& x) {
  return -rat_floor(-x);
}

Rat rat_frac(const Rat& x) {
  return x - Rat(rat_floor(x));
}

Rat mod_period(const Rat& x, const Rat& period) {
  Rat y = x / period;
  return (y - Rat(rat_floor(y))) * period;
}

Rat torus_dist(const Rat& a, const Rat& b, const Rat& period) {
  Rat w = mod_period(a - b, period);
  return rat_min(w, period - w);
}

Rat rat_pow(const Rat& x, unsigned k) {
  Rat r = 1;
  Rat base = x;
  while (k > 0) {
    if (k & 1u) r *= base;
    base *= base;
    k >>= 1u;
  }
  return r;
}

Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }
Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

std::string rat_str(const Rat& x) {
  return numerator(x).str() + "/" + denominator(x).str();
}

Rat parse_rat(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t");
  std::size_t end = s.find_last_not_of(" \t");
  if (begin == std::string::npos) throw std::invalid_argument("empty rational literal");
  std::string body = s.substr(begin, end - begin + 1);
  std::size_t slash = body.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(body));
    BigInt num(body.substr(0, slash));
    BigInt den(body.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

}  // namespace limset
