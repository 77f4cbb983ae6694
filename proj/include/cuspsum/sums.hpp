#ifndef CUSPSUM_SUMS_HPP
#define CUSPSUM_SUMS_HPP

#include <complex>
#include <string>
#include <vector>

#include "cuspsum/forms.hpp"
#include "cuspsum/modarith.hpp"

namespace cuspsum {

/*
 * Partial sums of twisted coefficients:
 *
 *   S(x, alpha) = sum_{n <= x} a_n e^{2 pi i n alpha},  alpha = a/c,
 *
 * their restrictions to arithmetic progressions, and oscillation scans
 * of the normalized real part Re S(x, alpha) / x^theta.
 */

// e^{2 pi i a r / c} for r = 0..c-1, built by repeated multiplication
// with renormalization against sin/cos every max(1, c/16) steps.
struct TwistTable {
  long long c = 1;
  std::vector<double> re, im;
};
TwistTable make_twist_table(const ReducedRational& r);

std::complex<double> twisted_sum(const FormTable& tab, double x, const ReducedRational& r);
mpz_class twisted_sum_exact(const FormTable& tab, double x);  // alpha = 0

mpz_class progression_sum_exact(const FormTable& tab, double x, long long q, long long h);
double progression_sum(const FormTable& tab, double x, long long q, long long h);
double normalized_progression_sum(const FormTable& tab, double x, long long q, long long h);

struct SumRecord {
  double x = 0;
  std::complex<double> value;
  double normalized = 0;  // Re(value) / x^theta
  double theta = 0;
};
SumRecord sum_record(const FormTable& tab, double x, const ReducedRational& r, double theta);

struct ScanReport {
  long X = 0;
  ReducedRational alpha;
  double theta = 0;
  double max_value = 0;
  long argmax = 0;
  double min_value = 0;
  long argmin = 0;
  long sign_changes = 0;
  std::complex<double> final_sum;
};

// Sequential single pass over x = 1..X; optional CSV trace (x, re, im,
// normalized) written to trace_path when non-empty.
ScanReport scan_extrema(const FormTable& tab, const ReducedRational& r, long X, double theta,
                        const std::string& trace_path = "");

// Deterministic serialization (no timing fields); used by the
// byte-identity regression checks and the text report.
std::string scan_report_line(const ScanReport& rep);

// Serial reference implementations for the determinism/benchmark suite.
namespace reference {
std::complex<double> twisted_sum_serial(const FormTable& tab, double x, const ReducedRational& r);
mpz_class progression_sum_serial(const FormTable& tab, double x, long long q, long long h);
}

}  // namespace cuspsum

#endif
