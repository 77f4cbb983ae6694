#include "cuspsum/modarith.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <string>

#include "cuspsum/errors.hpp"

namespace cuspsum {

long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

ReducedRational reduce_alpha(long long a, long long c) {
  if (c == 0) throw usage_error("invalid twist: denominator is zero");
  if (c < 0) {
    a = -a;
    c = -c;
  }
  a %= c;
  if (a < 0) a += c;
  long long g = gcd_ll(a, c);
  if (g > 1) {
    a /= g;
    c /= g;
  }
  if (a == 0) c = 1;
  return {a, c};
}

// Extended Euclid: a x + c y = 1, inverse normalized into [0, c).
long long mod_inverse(long long a, long long c) {
  long long r0 = a % c, r1 = c, x0 = 1, x1 = 0;
  if (r0 < 0) r0 += c;
  while (r1) {
    long long q = r0 / r1;
    long long t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  if (r0 != 1) throw usage_error("mod_inverse: arguments not coprime");
  x0 %= c;
  if (x0 < 0) x0 += c;
  return x0;
}

Companion companion(const ReducedRational& r) {
  if (r.c == 1) return {-1, 0};
  long long d = mod_inverse(r.a, r.c);
  long long b = (r.a * d - 1) / r.c;
  return {b, d};
}

ReducedRational parse_alpha(const char* text) {
  std::string s(text ? text : "");
  if (s.empty()) throw usage_error("invalid twist: empty");
  size_t slash = s.find('/');
  char* end = nullptr;
  if (slash == std::string::npos) {
    long long a = std::strtoll(s.c_str(), &end, 10);
    if (end == s.c_str() || *end) throw usage_error("invalid twist '" + s + "'");
    return reduce_alpha(a, 1);
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  long long a = std::strtoll(num.c_str(), &end, 10);
  if (num.empty() || end == num.c_str() || *end) throw usage_error("invalid twist '" + s + "'");
  long long c = std::strtoll(den.c_str(), &end, 10);
  if (den.empty() || end == den.c_str() || *end) throw usage_error("invalid twist '" + s + "'");
  if (c == 0) throw usage_error("invalid twist '" + s + "': zero denominator");
  return reduce_alpha(a, c);
}

long long euler_phi(long long n) {
  long long r = n;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

int moebius(long long n) {
  int r = 1;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    r = -r;
  }
  if (n > 1) r = -r;
  return r;
}

double kloosterman(long long m, long long n, long long c) {
  if (c < 1) throw usage_error("kloosterman: modulus must be >= 1");
  if (c == 1) return 1.0;
  long long mm = ((m % c) + c) % c, nn = ((n % c) + c) % c;
  double re = 0.0, im = 0.0;
  double w = 2.0 * std::numbers::pi / static_cast<double>(c);
  for (long long x = 1; x < c; ++x) {
    if (gcd_ll(x, c) != 1) continue;
    long long xi = mod_inverse(x, c);
    double ph = w * static_cast<double>((mm * x + nn * xi) % c);
    re += std::cos(ph);
    im += std::sin(ph);
  }
  double mag = std::max(1.0, std::fabs(re));
  if (std::fabs(im) > 1e-9 * mag)
    throw std::logic_error("kloosterman: imaginary defect " + std::to_string(std::fabs(im)));
  return re;
}

double ramanujan_sum(long long c, long long h) { return kloosterman(h, 0, c); }

double ramanujan_sum_formula(long long c, long long h) {
  long long g = gcd_ll(h, c);  // gcd(0, c) = c covers h = 0
  long long cg = c / g;
  return static_cast<double>(moebius(cg)) * static_cast<double>(euler_phi(c)) /
         static_cast<double>(euler_phi(cg));
}

}  // namespace cuspsum
