#ifndef CUSPSUM_PROGRESSIONS_HPP
#define CUSPSUM_PROGRESSIONS_HPP

#include <complex>
#include <optional>
#include <vector>

#include "cuspsum/forms.hpp"
#include "cuspsum/genseries.hpp"
#include "cuspsum/modarith.hpp"
#include "cuspsum/sums.hpp"

namespace cuspsum {

/*
 * Arithmetic-progression machinery: the additive-character decomposition
 *
 *   S(x; q, h) = (1/q) sum_{m=1..q} e^{-2 pi i h m / q} S(x, m/q),
 *
 * the restricted generating series F(s; q, h), Kloosterman aggregates,
 * and the resonance structure of F(s; q, h) near s = i 4 pi sqrt(n).
 */

struct ProgressionSpec {
  long long q = 1;
  long long h = 1;  // 1 <= h <= q
};

double dft_decomposition_check(const FormTable& tab, double x, const ProgressionSpec& spec);

struct ProgressionEval {
  SeriesEval closed;          // route (ii): divisor sum of closed forms
  SeriesEval direct;          // route (i): restricted direct series
  double route_defect = 0;    // |i - ii| / |ii|
  bool direct_evaluated = false;
};
ProgressionEval F_progression(const FormTable& tab, cplx s, const ProgressionSpec& spec,
                              double tol, bool closed_only = false);

// sum_{c|q} K(-h, -n; c) / c^k.
double kloosterman_aggregate(long long q, long long h, long n, unsigned k);

struct ResonanceEntry {
  long long c = 1;      // divisor of q
  long m = 0;           // resonant index n c^2 of the inner series
  mpz_class a_m;        // coefficient at the resonant index
  double ramanujan = 0; // R_c(-h)
  double kloosterman = 0; // K(-h, -n; c)
};

struct ResonanceTable {
  long n = 1;
  double t = 0;  // 4 pi sqrt(n)
  std::vector<ResonanceEntry> entries;
  cplx oracle{0.0, 0.0};     // (Lambda+(n)/q) sum_c a_{nc^2} R_c(-h) c^{-k}
  cplx kloosterman_form{0.0, 0.0}; // (Lambda+(n) a_n/q) sum_c K(-h,-n;c) c^{-k}
  cplx measured{0.0, 0.0};   // sigma^{k+1/2} F(sigma + i t; q, h) at sigma
  double sigma = 0;
};
ResonanceTable resonance_analysis(const FormTable& tab, const ProgressionSpec& spec, long n,
                                  double sigma = 0.01);

struct OmegaReport {
  std::optional<long> witness;     // first n <= n_max with Re[a_n e^{-2 pi i n d/c}] != 0
  double witness_value = 0;        // that real part
  bool corollary_condition = false; // c odd, or some n <= n_max has n a != +-c/2 mod c
  std::optional<long> corollary_witness;
};
OmegaReport omega_condition(const FormTable& tab, const ReducedRational& r, long n_max);

// sum_{h=1..q} |normalized progression sum|^2 / (x log x); requires x > 1.
double lu_ratio(const FormTable& tab, double x, long long q);

}  // namespace cuspsum

#endif
