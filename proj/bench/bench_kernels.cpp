// Timing comparison: serial reference kernels vs the OpenMP-parallel
// production kernels.  On a single core the parallel paths should sit
// within a small constant factor of the references; with more cores the
// multiply and the chunked sums scale with the thread count.

#include <omp.h>

#include <cstdio>

#include "cuspsum/forms.hpp"
#include "cuspsum/intseries.hpp"
#include "cuspsum/modarith.hpp"
#include "cuspsum/sums.hpp"

using namespace cuspsum;

namespace {

template <class Fn>
double time_best(Fn&& fn, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    double t0 = omp_get_wtime();
    fn();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-34s %10.4fs %10.4fs %7.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-34s %11s %11s %8s\n", "kernel", "serial", "parallel", "ratio");

  // dense series multiply: eta^8 * eta^8 at a few orders
  for (long n : {2000L, 8000L, 32000L}) {
    IntSeries eta = eta_coeffs(n);
    IntSeries f = series_pow(eta, 8);
    IntSeries ref, par;
    double ts = time_best([&] { ref = reference::mul_schoolbook(f, f); }, 2);
    double tp = time_best([&] { par = series_mul(f, f); }, 2);
    for (long i = 0; i <= n; ++i)
      if (ref[i] != par[i]) {
        std::printf("MISMATCH at order %ld index %ld\n", n, i);
        return 1;
      }
    char name[64];
    std::snprintf(name, sizeof name, "series_mul order %ld", n);
    row(name, ts, tp);
  }

  // chunked twisted sums over a large coefficient table
  FormTable tab = make_table(form_by_name("delta"), 400000);
  ReducedRational third = reduce_alpha(1, 3);
  std::complex<double> a, b;
  double ts = time_best([&] { a = reference::twisted_sum_serial(tab, 4e5, third); }, 3);
  double tp = time_best([&] { b = twisted_sum(tab, 4e5, third); }, 3);
  row("twisted_sum x=4e5", ts, tp);
  std::printf("  serial-vs-chunked rel diff: %.3e\n",
              std::abs(a - b) / std::max(1.0, std::abs(a)));

  mpz_class pa, pb;
  ts = time_best([&] { pa = reference::progression_sum_serial(tab, 4e5, 7, 3); }, 3);
  tp = time_best([&] { pb = progression_sum_exact(tab, 4e5, 7, 3); }, 3);
  row("progression_sum x=4e5 q=7", ts, tp);
  if (pa != pb) {
    std::printf("MISMATCH in progression sums\n");
    return 1;
  }
  return 0;
}
