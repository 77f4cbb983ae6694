#ifndef CUSPSUM_MODARITH_HPP
#define CUSPSUM_MODARITH_HPP

#include <cstdint>

namespace cuspsum {

/*
 * Rational twist alpha = a/c mod 1, stored fully reduced with c >= 1,
 * 0 <= a < c, gcd(a,c) = 1.  The companion (b,d) completes (a,c) to a
 * unimodular matrix (a, b; c, d), ad - bc = 1; canonical choice
 * d = a^{-1} mod c in [0,c) for c > 1 and (b,d) = (-1,0) at c = 1.
 */
struct ReducedRational {
  long long a = 0;
  long long c = 1;
};

struct Companion {
  long long b = 0;
  long long d = 0;
};

ReducedRational reduce_alpha(long long a, long long c);
Companion companion(const ReducedRational& r);

// Parse "a/c" or a plain integer; throws usage_error on malformed input.
ReducedRational parse_alpha(const char* text);

long long gcd_ll(long long a, long long b);
long long mod_inverse(long long a, long long c);  // in [0,c), gcd(a,c)=1
long long euler_phi(long long n);
int moebius(long long n);

// Classical Kloosterman sum sum_{(a,c)=1} e^{2 pi i (m a + n a^{-1})/c};
// checks the imaginary defect < 1e-9 * max(1,|K|) and returns the real part.
double kloosterman(long long m, long long n, long long c);

// Ramanujan sum R_c(h) = K(h, 0; c), cross-checkable against
// mu(c/g) phi(c)/phi(c/g) with g = gcd(h, c).
double ramanujan_sum(long long c, long long h);
double ramanujan_sum_formula(long long c, long long h);

}  // namespace cuspsum

#endif
