#include "cuspsum/forms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "cuspsum/errors.hpp"

namespace cuspsum {

// ----------------------------------------------------------------------
// built-in recipes

CuspForm form_by_name(const std::string& name) {
  CuspForm f;
  f.name = name;
  if (name == "delta") {
    f.weight = 12;
    f.terms = {{mpz_class(1), 1, 0, 0}};
  } else if (name == "delta_e4") {
    f.weight = 16;
    f.terms = {{mpz_class(1), 1, 1, 0}};
  } else if (name == "delta_e6") {
    f.weight = 18;
    f.terms = {{mpz_class(1), 1, 0, 1}};
  } else if (name == "w24_zero2") {
    // Delta*E4^3 - 696*Delta^2: the unique (up to scale) weight-24
    // combination with a_1 = 1 and a_2 = 0.
    f.weight = 24;
    f.terms = {{mpz_class(1), 1, 3, 0}, {mpz_class(-696), 2, 0, 0}};
  } else if (name == "w24_generic") {
    f.weight = 24;
    f.terms = {{mpz_class(1), 1, 3, 0}};
  } else {
    throw usage_error("unknown form '" + name +
                      "'; available: delta, delta_e4, delta_e6, w24_zero2, w24_generic");
  }
  return f;
}

std::vector<std::string> form_names() {
  return {"delta", "delta_e4", "delta_e6", "w24_zero2", "w24_generic"};
}

// ----------------------------------------------------------------------
// generator expansions

IntSeries eta_coeffs(long order) {
  IntSeries r(order);
  r[0] = 1;
  for (long j = 1;; ++j) {
    long e1 = j * (3 * j - 1) / 2;
    long e2 = j * (3 * j + 1) / 2;
    if (e1 > order) break;
    int s = (j % 2 == 0) ? 1 : -1;
    r[e1] += s;
    if (e2 <= order) r[e2] += s;
  }
  return r;
}

IntSeries eisenstein_coeffs(unsigned weight, long order) {
  if (weight != 4 && weight != 6) throw usage_error("eisenstein weight must be 4 or 6");
  IntSeries r(order);
  r[0] = 1;
  if (weight == 4) {
    // sigma_3 fits unsigned 64-bit through order 10^6 with slack.
    std::vector<unsigned long long> s(static_cast<size_t>(order) + 1, 0);
    for (long d = 1; d <= order; ++d) {
      unsigned long long d3 =
          static_cast<unsigned long long>(d) * static_cast<unsigned long long>(d) *
          static_cast<unsigned long long>(d);
      for (long m = d; m <= order; m += d) s[static_cast<size_t>(m)] += d3;
    }
    for (long n = 1; n <= order; ++n)
      r[n] = 240 * mpz_class(static_cast<unsigned long>(s[static_cast<size_t>(n)]));
  } else {
    std::vector<unsigned __int128> s(static_cast<size_t>(order) + 1, 0);
    for (long d = 1; d <= order; ++d) {
      unsigned __int128 d5 = static_cast<unsigned __int128>(d) * d;
      d5 = d5 * d5 * static_cast<unsigned __int128>(d);
      for (long m = d; m <= order; m += d) s[static_cast<size_t>(m)] += d5;
    }
    for (long n = 1; n <= order; ++n) {
      unsigned __int128 v = s[static_cast<size_t>(n)];
      mpz_class z(static_cast<unsigned long>(v >> 64));
      z <<= 64;
      z += static_cast<unsigned long>(v);
      r[n] = -504 * z;
    }
  }
  return r;
}

IntSeries form_coeffs(const CuspForm& f, long N) {
  if (f.terms.empty()) throw usage_error("empty recipe");
  if (f.weight < 12 || f.weight % 2 != 0)
    throw usage_error("form weight must be even and >= 12");
  for (const auto& t : f.terms) {
    if (t.dpow < 1)
      throw usage_error("recipe term " + t.coeff.get_str() + "*D^" + std::to_string(t.dpow) +
                        "*E4^" + std::to_string(t.e4pow) + "*E6^" + std::to_string(t.e6pow) +
                        ": every term needs at least one Delta factor");
    if (12 * t.dpow + 4 * t.e4pow + 6 * t.e6pow != f.weight)
      throw usage_error("recipe term " + t.coeff.get_str() + "*D^" + std::to_string(t.dpow) +
                        "*E4^" + std::to_string(t.e4pow) + "*E6^" + std::to_string(t.e6pow) +
                        " has weight " +
                        std::to_string(12 * t.dpow + 4 * t.e4pow + 6 * t.e6pow) +
                        ", form declares " + std::to_string(f.weight));
  }

  IntSeries delta = series_shift(series_pow(eta_coeffs(N), 24), 1);
  bool need_e4 = false, need_e6 = false;
  for (const auto& t : f.terms) {
    need_e4 |= t.e4pow > 0;
    need_e6 |= t.e6pow > 0;
  }
  IntSeries e4 = need_e4 ? eisenstein_coeffs(4, N) : IntSeries(0);
  IntSeries e6 = need_e6 ? eisenstein_coeffs(6, N) : IntSeries(0);

  IntSeries acc(N);
  for (const auto& t : f.terms) {
    IntSeries p = delta;
    if (t.dpow > 1) p = series_pow(delta, t.dpow);
    if (t.e4pow > 0) p = series_mul(p, t.e4pow == 1 ? e4 : series_pow(e4, t.e4pow));
    if (t.e6pow > 0) p = series_mul(p, t.e6pow == 1 ? e6 : series_pow(e6, t.e6pow));
    if (t.coeff != 1) p = series_scale(p, t.coeff);
    acc = series_add(acc, p);
  }
  if (series_nnz(acc) == 0) throw usage_error("recipe expands to the zero series");
  return acc;
}

// ----------------------------------------------------------------------
// independent tau oracle

static std::vector<long> sigma1_table(long n) {
  std::vector<long> s(static_cast<size_t>(n) + 1, 0);
  for (long d = 1; d <= n; ++d)
    for (long m = d; m <= n; m += d) s[static_cast<size_t>(m)] += d;
  return s;
}

mpz_class niebur_tau(long n) {
  if (n < 1) throw usage_error("niebur_tau: n must be >= 1");
  std::vector<long> sig = sigma1_table(n);
  mpz_class n4 = mpz_class(n) * n * n * n;
  mpz_class acc = n4 * sig[static_cast<size_t>(n)];
  mpz_class corr = 0;
  for (long m = 1; m < n; ++m) {
    long m2 = m * m;
    long inner = 35 * m2 - 52 * m * n + 18 * n * n;
    corr += (mpz_class(m2) * inner) * (sig[static_cast<size_t>(m)] * sig[static_cast<size_t>(n - m)]);
  }
  acc -= 24 * corr;
  return acc;
}

// ----------------------------------------------------------------------
// tables

// Coefficients are stored exactly and as a triple-double split
// a = ad + ad1 + ad2 (exact for |a| < 2^159), so higher-precision
// evaluation levels can reload them without double-rounding loss.
FormTable table_from_coeffs(const CuspForm& f, IntSeries&& s) {
  FormTable tab;
  tab.form = f;
  tab.N = s.order;
  size_t len = static_cast<size_t>(tab.N) + 1;
  tab.a.resize(len);
  tab.ad.assign(len, 0.0);
  tab.ad1.assign(len, 0.0);
  tab.ad2.assign(len, 0.0);
  double cmax = 0.0;
  double kh = f.weight / 2.0;
  mpz_class rem;
  for (long n = 1; n <= tab.N; ++n) {
    size_t i = static_cast<size_t>(n);
    tab.a[i] = std::move(s.c[i]);
    double v0 = tab.a[i].get_d();
    tab.ad[i] = v0;
    rem = tab.a[i] - mpz_class(v0);
    double v1 = rem.get_d();
    tab.ad1[i] = v1;
    rem -= mpz_class(v1);
    tab.ad2[i] = rem.get_d();
    cmax = std::max(cmax, std::fabs(v0) / std::pow(static_cast<double>(n), kh));
  }
  tab.hecke_c = 2.0 * cmax;
  return tab;
}

FormTable make_table(const CuspForm& f, long N) {
  IntSeries s = form_coeffs(f, N);
  return table_from_coeffs(f, std::move(s));
}

double rankin_ratio(const FormTable& tab, double x) {
  if (x < 1) throw usage_error("rankin_ratio: x must be >= 1");
  long xi = static_cast<long>(std::floor(x));
  if (xi > tab.N)
    throw coverage_error("rankin_ratio: need coefficients to " + std::to_string(xi) +
                         ", cached " + std::to_string(tab.N));
  mpz_class num = 0;
  for (long n = 1; n <= xi; ++n) {
    const mpz_class& a = tab.a[static_cast<size_t>(n)];
    num += a * a;
  }
  return num.get_d() / std::pow(x, static_cast<double>(tab.form.weight));
}

}  // namespace cuspsum
