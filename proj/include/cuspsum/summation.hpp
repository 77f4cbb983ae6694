#ifndef CUSPSUM_SUMMATION_HPP
#define CUSPSUM_SUMMATION_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace cuspsum {

/*
 * Neumaier compensated accumulator.  Works for any float type with
 * fabs/abs semantics (double, __float128 via boost, mpfr numbers).
 */
template <class T>
struct Neumaier {
  T s{0};
  T comp{0};

  void add(const T& x) {
    using std::abs;
    T t = s + x;
    if (abs(s) >= abs(x))
      comp += (s - t) + x;
    else
      comp += (x - t) + s;
    s = t;
  }
  T total() const { return s + comp; }
};

template <class T>
struct NeumaierC {
  Neumaier<T> re, im;

  void add(const std::complex<T>& z) {
    re.add(z.real());
    im.add(z.imag());
  }
  void add(const T& x, const T& y) {
    re.add(x);
    im.add(y);
  }
  std::complex<T> total() const { return {re.total(), im.total()}; }
};

/*
 * Fixed-shape chunked reduction: [lo, hi] is cut into chunks of a fixed
 * width, each chunk is summed serially with Neumaier compensation, and
 * the chunk partials are combined by a pairwise tree.  The shape depends
 * only on the range, never on the thread count, so the result is
 * bit-identical for any parallel schedule.
 */
inline constexpr long kChunkWidth = 8192;

std::complex<double> pairwise_combine(std::vector<std::complex<double>>& parts);

template <class TermFn>
std::complex<double> chunked_sum(long lo, long hi, TermFn&& term) {
  if (hi < lo) return {0.0, 0.0};
  long nchunk = (hi - lo) / kChunkWidth + 1;
  std::vector<std::complex<double>> parts(static_cast<size_t>(nchunk));
#pragma omp parallel for schedule(dynamic, 1)
  for (long ci = 0; ci < nchunk; ++ci) {
    long b = lo + ci * kChunkWidth;
    long e = std::min(hi, b + kChunkWidth - 1);
    NeumaierC<double> acc;
    for (long n = b; n <= e; ++n) acc.add(term(n));
    parts[static_cast<size_t>(ci)] = acc.total();
  }
  return pairwise_combine(parts);
}

}  // namespace cuspsum

#endif
