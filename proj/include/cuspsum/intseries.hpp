#ifndef CUSPSUM_INTSERIES_HPP
#define CUSPSUM_INTSERIES_HPP

#include <gmpxx.h>

#include <vector>

namespace cuspsum {

/*
 * Truncated power series with exact integer coefficients:
 *
 *   f(q) = c[0] + c[1] q + ... + c[order] q^order   (mod q^{order+1})
 *
 * All arithmetic truncates at the smaller order of the operands.  The
 * multiply picks between a sparse pair loop, plain schoolbook, and a
 * Kronecker-substitution product (pack both factors into big integers,
 * one GMP multiply, unpack), whichever bound is cheapest.
 */
struct IntSeries {
  long order = 0;
  std::vector<mpz_class> c;  // size order+1

  IntSeries() : c(1) {}
  explicit IntSeries(long n) : order(n), c(static_cast<size_t>(n) + 1) {}

  mpz_class& operator[](long i) { return c[static_cast<size_t>(i)]; }
  const mpz_class& operator[](long i) const { return c[static_cast<size_t>(i)]; }
};

IntSeries series_one(long order);

IntSeries series_add(const IntSeries& a, const IntSeries& b);
IntSeries series_sub(const IntSeries& a, const IntSeries& b);
IntSeries series_scale(const IntSeries& a, const mpz_class& s);

// Multiply by q^e, dropping terms past the truncation order.
IntSeries series_shift(const IntSeries& a, long e);

IntSeries series_mul(const IntSeries& a, const IntSeries& b);

// Left-to-right binary powering on top of series_mul, e >= 1.
IntSeries series_pow(const IntSeries& a, unsigned e);

long series_nnz(const IntSeries& a);

// Serial reference implementations used by the tests and the benchmark.
namespace reference {
IntSeries mul_schoolbook(const IntSeries& a, const IntSeries& b);
}

}  // namespace cuspsum

#endif
