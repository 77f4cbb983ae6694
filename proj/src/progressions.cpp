#include "cuspsum/progressions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cuspsum/errors.hpp"
#include "cuspsum/summation.hpp"

namespace cuspsum {

static constexpr double kPi = std::numbers::pi;

static void check_spec(const ProgressionSpec& spec) {
  if (spec.q < 1) throw usage_error("progression modulus must be >= 1");
  if (spec.h < 1 || spec.h > spec.q)
    throw usage_error("progression residue must satisfy 1 <= h <= q, got h=" +
                      std::to_string(spec.h) + ", q=" + std::to_string(spec.q));
}

static std::vector<long long> divisors(long long q) {
  std::vector<long long> d;
  for (long long c = 1; c * c <= q; ++c)
    if (q % c == 0) {
      d.push_back(c);
      if (c != q / c) d.push_back(q / c);
    }
  std::sort(d.begin(), d.end());
  return d;
}

// e^{-2 pi i num/den} with the angle reduced in integer arithmetic, so
// den = 1 (and num = 0 mod den) gives exactly 1 + 0i.
static cplx unit_phase(long long num, long long den) {
  long long j = ((num % den) + den) % den;
  if (j == 0) return {1.0, 0.0};
  return std::polar(1.0, -2.0 * kPi * static_cast<double>(j) / static_cast<double>(den));
}

// ----------------------------------------------------------------------
// additive-character decomposition
//
//   S(x; q, h) = (1/q) sum_{m=1..q} e^{-2 pi i h m / q} S(x, m/q)

double dft_decomposition_check(const FormTable& tab, double x, const ProgressionSpec& spec) {
  check_spec(spec);
  double ref = progression_sum(tab, x, spec.q, spec.h);
  NeumaierC<double> acc;
  for (long long m = 1; m <= spec.q; ++m) {
    ReducedRational r = reduce_alpha(m, spec.q);
    std::complex<double> sm = twisted_sum(tab, x, r);
    acc.add(unit_phase(spec.h * m, spec.q) * sm);
  }
  std::complex<double> dft = acc.total() / static_cast<double>(spec.q);
  return std::abs(dft - ref) / std::max(1.0, std::fabs(ref));
}

// ----------------------------------------------------------------------
// restricted generating series
//
// Grouping the same decomposition by reduced denominator c | q turns the
// q-fold character average into a divisor sum over closed forms:
//
//   F(s; q, h) = (1/q) sum_{c|q} sum_{(a,c)=1} e^{-2 pi i h a / c} F(s, a/c).

ProgressionEval F_progression(const FormTable& tab, cplx s, const ProgressionSpec& spec,
                              double tol, bool closed_only) {
  check_spec(spec);
  if (!(tol > 0)) throw usage_error("F_progression: tol must be > 0");
  ProgressionEval pe;
  NeumaierC<double> acc;
  double inner_tol = tol / (4.0 * static_cast<double>(spec.q));
  for (long long c : divisors(spec.q)) {
    for (long long a = 1; a <= c; ++a) {
      if (gcd_ll(a, c) != 1) continue;
      ReducedRational r = reduce_alpha(a, c);
      SeriesEval ev = F_closed(tab, s, r, inner_tol);
      acc.add(unit_phase(spec.h * a, c) * ev.value);
      pe.closed.tail_bound += ev.tail_bound;
      pe.closed.rounding_bound += ev.rounding_bound;
      pe.closed.terms_used = std::max(pe.closed.terms_used, ev.terms_used);
      pe.closed.precision_level = std::max(pe.closed.precision_level, ev.precision_level);
      for (auto& w : ev.warnings) pe.closed.warnings.push_back(std::move(w));
    }
  }
  double qd = static_cast<double>(spec.q);
  pe.closed.value = acc.total() / qd;
  pe.closed.tail_bound /= qd;
  pe.closed.rounding_bound /= qd;
  if (!closed_only) {
    pe.direct = F_restricted_direct(tab, s, spec.q, spec.h, tol);
    pe.route_defect = std::abs(pe.direct.value - pe.closed.value) / std::abs(pe.closed.value);
    pe.direct_evaluated = true;
  }
  return pe;
}

// ----------------------------------------------------------------------
// resonance structure at s = sigma + i 4 pi sqrt(n)

double kloosterman_aggregate(long long q, long long h, long n, unsigned k) {
  if (q < 1) throw usage_error("kloosterman_aggregate: q must be >= 1");
  double s = 0.0;
  for (long long c : divisors(q))
    s += kloosterman(-h, -n, c) *
         std::exp(-static_cast<double>(k) * std::log(static_cast<double>(c)));
  return s;
}

/*
 * At s = sigma + i t with t = 4 pi sqrt(n), each inner series F(s, a/c)
 * resonates at its own index m = n c^2 (t_value(m, c) = t exactly), so
 * the sigma^{-(k+1/2)} coefficient of F(s; q, h) aggregates over c | q.
 * The unit-group sum of the twists e^{-2 pi i (h + m d)/c}-type phases
 * collapses to the Ramanujan sum R_c(-h), giving the oracle
 *
 *   (Lambda+(n)/q) sum_{c|q} a_{n c^2} R_c(-h) / c^k,
 *
 * reported next to the claimed Kloosterman form
 *
 *   (Lambda+(n) a_n/q) sum_{c|q} K(-h, -n; c) / c^k,
 *
 * which is gated only against the oracle, not assumed.
 */
ResonanceTable resonance_analysis(const FormTable& tab, const ProgressionSpec& spec, long n,
                                  double sigma) {
  check_spec(spec);
  if (n < 1) throw usage_error("resonance_analysis: n must be >= 1");
  if (!(sigma > 0)) throw half_plane_error("resonance_analysis: sigma must be > 0");
  unsigned k = tab.form.weight;
  ResonanceTable rt;
  rt.n = n;
  rt.t = t_value(n, 1);
  rt.sigma = sigma;
  cplx lam = leading_scale(k, n, 1, +1);
  double osum = 0.0, psum = 0.0;
  for (long long c : divisors(spec.q)) {
    if (n > tab.N / (c * c))
      throw coverage_error("resonance_analysis: coefficient index " + std::to_string(n) + "*" +
                           std::to_string(c) + "^2 beyond cache");
    ResonanceEntry e;
    e.c = c;
    e.m = n * static_cast<long>(c * c);
    e.a_m = tab.a[static_cast<size_t>(e.m)];
    e.ramanujan = ramanujan_sum(c, -spec.h);
    e.kloosterman = kloosterman(-spec.h, -n, c);
    double ck = std::exp(-static_cast<double>(k) * std::log(static_cast<double>(c)));
    osum += tab.ad[static_cast<size_t>(e.m)] * e.ramanujan * ck;
    psum += e.kloosterman * ck;
    rt.entries.push_back(std::move(e));
  }
  double qd = static_cast<double>(spec.q);
  rt.oracle = lam * (osum / qd);
  rt.kloosterman_form = lam * (tab.ad[static_cast<size_t>(n)] * psum / qd);
  ProgressionEval pe = F_progression(tab, {sigma, rt.t}, spec, 1e-9, /*closed_only=*/true);
  rt.measured = pe.closed.value * std::pow(sigma, static_cast<double>(k) + 0.5);
  return rt;
}

// ----------------------------------------------------------------------
// nonvanishing witnesses

OmegaReport omega_condition(const FormTable& tab, const ReducedRational& r, long n_max) {
  if (n_max < 1) throw usage_error("omega_condition: n_max must be >= 1");
  if (n_max > tab.N)
    throw coverage_error("omega_condition: n_max beyond cached coefficients");
  Companion bd = companion(r);
  long long c = r.c, d = ((bd.d % c) + c) % c;
  OmegaReport rep;
  for (long n = 1; n <= n_max; ++n) {
    if (sgn(tab.a[static_cast<size_t>(n)]) == 0) continue;
    long long j = ((n % c) * d) % c;
    // cos(2 pi j / c) vanishes exactly iff j/c is 1/4 or 3/4
    if (4 * j == c || 4 * j == 3 * c) continue;
    double v = tab.ad[static_cast<size_t>(n)] *
               std::cos(2.0 * kPi * static_cast<double>(j) / static_cast<double>(c));
    if (std::fabs(v) > 1e-9 * std::fabs(tab.ad[static_cast<size_t>(n)])) {
      rep.witness = n;
      rep.witness_value = v;
      break;
    }
  }
  // excluded-case check: c odd, or some n with a_n != 0 and n a != c/2 mod c
  // (the residues +c/2 and -c/2 coincide mod c)
  if (c % 2 == 1) {
    rep.corollary_condition = true;
  } else {
    for (long n = 1; n <= n_max; ++n) {
      if (sgn(tab.a[static_cast<size_t>(n)]) == 0) continue;
      long long j = ((n % c) * (r.a % c)) % c;
      if (2 * j != c) {
        rep.corollary_condition = true;
        rep.corollary_witness = n;
        break;
      }
    }
  }
  return rep;
}

double lu_ratio(const FormTable& tab, double x, long long q) {
  if (q < 1) throw usage_error("lu_ratio: q must be >= 1");
  if (!(x > 1)) throw usage_error("lu_ratio: x must exceed 1");
  double s = 0.0;
  for (long long h = 1; h <= q; ++h) {
    double v = normalized_progression_sum(tab, x, q, h);
    s += v * v;
  }
  return s / (x * std::log(x));
}

}  // namespace cuspsum
