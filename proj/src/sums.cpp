#include "cuspsum/sums.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "cuspsum/errors.hpp"
#include "cuspsum/report.hpp"
#include "cuspsum/summation.hpp"

namespace cuspsum {

std::complex<double> pairwise_combine(std::vector<std::complex<double>>& parts) {
  size_t n = parts.size();
  if (n == 0) return {0.0, 0.0};
  while (n > 1) {
    size_t half = (n + 1) / 2;
    for (size_t i = 0; i + half < n; ++i) parts[i] += parts[i + half];
    n = half;
  }
  return parts[0];
}

// ----------------------------------------------------------------------
// twist tables

TwistTable make_twist_table(const ReducedRational& r) {
  TwistTable t;
  t.c = r.c;
  size_t c = static_cast<size_t>(r.c);
  t.re.assign(c, 0.0);
  t.im.assign(c, 0.0);
  double w = 2.0 * std::numbers::pi * static_cast<double>(r.a) / static_cast<double>(r.c);
  // Repeated multiplication, renormalized against sin/cos every c/16
  // steps to keep drift below a few ulps.
  long renorm = std::max<long>(1, r.c / 16);
  double cre = 1.0, cim = 0.0;
  double sre = std::cos(w), sim = std::sin(w);
  for (long j = 0; j < r.c; ++j) {
    if (j % renorm == 0) {
      cre = std::cos(w * static_cast<double>(j));
      cim = std::sin(w * static_cast<double>(j));
    }
    t.re[static_cast<size_t>(j)] = cre;
    t.im[static_cast<size_t>(j)] = cim;
    double nre = cre * sre - cim * sim;
    double nim = cre * sim + cim * sre;
    cre = nre;
    cim = nim;
  }
  return t;
}

// ----------------------------------------------------------------------
// partial sums

static long cutoff_index(const FormTable& tab, double x, const char* what) {
  if (x < 0) throw usage_error(std::string(what) + ": x must be >= 0");
  long xi = static_cast<long>(std::floor(x));
  if (xi > tab.N)
    throw coverage_error(std::string(what) + ": need coefficients to " + std::to_string(xi) +
                         ", cached " + std::to_string(tab.N));
  return xi;
}

std::complex<double> twisted_sum(const FormTable& tab, double x, const ReducedRational& r) {
  long xi = cutoff_index(tab, x, "twisted_sum");
  if (xi < 1) return {0.0, 0.0};
  TwistTable tw = make_twist_table(r);
  const double* ad = tab.ad.data();
  long long c = tw.c;
  return chunked_sum(1, xi, [&](long n) -> std::complex<double> {
    double a = ad[n];
    size_t j = static_cast<size_t>(n % c);
    return {a * tw.re[j], a * tw.im[j]};
  });
}

mpz_class twisted_sum_exact(const FormTable& tab, double x) {
  long xi = cutoff_index(tab, x, "twisted_sum_exact");
  mpz_class s = 0;
  for (long n = 1; n <= xi; ++n) s += tab.a[static_cast<size_t>(n)];
  return s;
}

static void check_progression(long long q, long long h) {
  if (q < 1) throw usage_error("progression modulus must be >= 1");
  if (h < 1 || h > q)
    throw usage_error("progression residue must satisfy 1 <= h <= q, got h=" +
                      std::to_string(h) + ", q=" + std::to_string(q));
}

mpz_class progression_sum_exact(const FormTable& tab, double x, long long q, long long h) {
  check_progression(q, h);
  long xi = cutoff_index(tab, x, "progression_sum");
  long long r = h % q;
  long nchunk = xi >= 1 ? (xi - 1) / kChunkWidth + 1 : 0;
  std::vector<mpz_class> parts(static_cast<size_t>(nchunk));
#pragma omp parallel for schedule(dynamic, 1)
  for (long ci = 0; ci < nchunk; ++ci) {
    long b = 1 + ci * kChunkWidth;
    long e = std::min(xi, b + kChunkWidth - 1);
    mpz_class acc = 0;
    long n0 = b + static_cast<long>(((r - b) % q + q) % q);
    for (long n = n0; n <= e; n += q) acc += tab.a[static_cast<size_t>(n)];
    parts[static_cast<size_t>(ci)] = acc;
  }
  mpz_class total = 0;
  for (auto& p : parts) total += p;
  return total;
}

double progression_sum(const FormTable& tab, double x, long long q, long long h) {
  return progression_sum_exact(tab, x, q, h).get_d();
}

double normalized_progression_sum(const FormTable& tab, double x, long long q, long long h) {
  check_progression(q, h);
  long xi = cutoff_index(tab, x, "normalized_progression_sum");
  if (xi < 1) return 0.0;
  double ex = (static_cast<double>(tab.form.weight) - 1.0) / 2.0;
  long long r = h % q;
  const double* ad = tab.ad.data();
  std::complex<double> s = chunked_sum(1, xi, [&](long n) -> std::complex<double> {
    if (n % q != r) return {0.0, 0.0};
    return {ad[n] / std::pow(static_cast<double>(n), ex), 0.0};
  });
  return s.real();
}

SumRecord sum_record(const FormTable& tab, double x, const ReducedRational& r, double theta) {
  SumRecord rec;
  rec.x = x;
  rec.theta = theta;
  rec.value = twisted_sum(tab, x, r);
  rec.normalized = x > 0 ? rec.value.real() / std::pow(x, theta) : 0.0;
  return rec;
}

// ----------------------------------------------------------------------
// oscillation scan: sequential prefix-sum pass, deterministic by design

ScanReport scan_extrema(const FormTable& tab, const ReducedRational& r, long X, double theta,
                        const std::string& trace_path) {
  if (X < 1) throw usage_error("scan_extrema: X must be >= 1");
  if (!(theta > 0)) throw usage_error("scan_extrema: theta must be > 0");
  if (X > tab.N)
    throw coverage_error("scan_extrema: need coefficients to " + std::to_string(X) +
                         ", cached " + std::to_string(tab.N));
  TwistTable tw = make_twist_table(r);
  std::FILE* trace = nullptr;
  if (!trace_path.empty()) {
    trace = std::fopen(trace_path.c_str(), "w");
    if (!trace) throw usage_error("cannot open trace file " + trace_path);
    std::fputs("x,re,im,normalized\n", trace);
  }

  ScanReport rep;
  rep.X = X;
  rep.alpha = r;
  rep.theta = theta;
  NeumaierC<double> acc;
  const double* ad = tab.ad.data();
  long long c = tw.c;
  int prev_sign = 0;
  for (long n = 1; n <= X; ++n) {
    double a = ad[n];
    size_t j = static_cast<size_t>(n % c);
    acc.add(a * tw.re[j], a * tw.im[j]);
    double re = acc.re.total();
    double norm = re / std::pow(static_cast<double>(n), theta);
    if (n == 1 || norm > rep.max_value) {
      rep.max_value = norm;
      rep.argmax = n;
    }
    if (n == 1 || norm < rep.min_value) {
      rep.min_value = norm;
      rep.argmin = n;
    }
    int s = re > 0 ? 1 : (re < 0 ? -1 : 0);
    if (s != 0) {
      if (prev_sign != 0 && s != prev_sign) ++rep.sign_changes;
      prev_sign = s;
    }
    if (trace)
      std::fprintf(trace, "%ld,%s,%s,%s\n", n, fmt_double(re).c_str(),
                   fmt_double(acc.im.total()).c_str(), fmt_double(norm).c_str());
  }
  rep.final_sum = acc.total();
  if (trace) std::fclose(trace);
  return rep;
}

std::string scan_report_line(const ScanReport& rep) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "X=%ld alpha=%lld/%lld theta=%s max=%s@%ld min=%s@%ld signflips=%ld "
                "S=(%s,%s)",
                rep.X, rep.alpha.a, rep.alpha.c, fmt_double(rep.theta).c_str(),
                fmt_double(rep.max_value).c_str(), rep.argmax, fmt_double(rep.min_value).c_str(),
                rep.argmin, rep.sign_changes, fmt_double(rep.final_sum.real()).c_str(),
                fmt_double(rep.final_sum.imag()).c_str());
  return buf;
}

// ----------------------------------------------------------------------
// serial references

namespace reference {

std::complex<double> twisted_sum_serial(const FormTable& tab, double x,
                                        const ReducedRational& r) {
  long xi = cutoff_index(tab, x, "twisted_sum");
  if (xi < 1) return {0.0, 0.0};
  TwistTable tw = make_twist_table(r);
  NeumaierC<double> acc;
  for (long n = 1; n <= xi; ++n) {
    double a = tab.ad[static_cast<size_t>(n)];
    size_t j = static_cast<size_t>(n % tw.c);
    acc.add(a * tw.re[j], a * tw.im[j]);
  }
  return acc.total();
}

mpz_class progression_sum_serial(const FormTable& tab, double x, long long q, long long h) {
  check_progression(q, h);
  long xi = cutoff_index(tab, x, "progression_sum");
  mpz_class acc = 0;
  for (long n = h > xi ? xi + 1 : static_cast<long>(h); n <= xi; n += q)
    acc += tab.a[static_cast<size_t>(n)];
  return acc;
}

}  // namespace reference

}  // namespace cuspsum
