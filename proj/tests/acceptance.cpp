/*
 * Acceptance gate: one pass/fail line per criterion, tolerances pinned
 * below.  The whole battery runs twice, single-threaded and at the
 * default thread count; criterion 16 compares the two runs value by
 * value.  Exit code = number of failed criteria.
 */
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "cuspsum/cache.hpp"
#include "cuspsum/errors.hpp"
#include "cuspsum/forms.hpp"
#include "cuspsum/genseries.hpp"
#include "cuspsum/modarith.hpp"
#include "cuspsum/progressions.hpp"
#include "cuspsum/sums.hpp"

using namespace cuspsum;

static const double kPi = 3.14159265358979323846;

// ----------------------------------------------------------------------
// pinned tolerances and regression constants
//
// The two scan pins are byte-exact report lines recorded from the first
// verified run; an empty pin means "record mode" (shape checks only).

static const double kTolRoute = 1e-9;        // 02: route agreement
static const double kTolRouteTails = 1e-10;  // 02: combined certified tails
static const double kTolSlope = 0.1;         // 03: blow-up exponent window
static const double kTolRatioMod = 0.02;     // 04: |ratio| window
static const double kTolRatioArg = 0.03;     // 04: phase window
static const double kZeroSpreadMax = 10.0;   // 05: max/min of |F| on the grid
static const double kGenericSpreadMin = 1e10;  // 05
static const double kTolModular = 1e-10;     // 07
static const double kTolEsn = 1e-8;          // 08
static const double kTolLaplace = 1e-6;      // 09
static const double kTolF1 = 1e-10;          // 10
static const double kTolDft = 1e-10;         // 11
static const double kTolKloosterman = 1e-9;  // 12
static const double kTolResonance1 = 0.02;   // 13, q = 1
static const double kTolResonance2 = 0.03;   // 13, q = 2
static const double kLuBound = 0.02;         // 15
static const double kRankinLo = 0.029;       // 15
static const double kRankinHi = 0.033;       // 15
static const double kTolThreads = 1e-12;     // 16

static const char* kScanPin0 =
    "X=1000000 alpha=0/1 theta=5.75 max=1@1 min=-0.67085123007376568@477897 "
    "signflips=30988 S=(7.7815311584077014e+33,0)";
static const char* kScanPin13 =
    "X=1000000 alpha=1/3 theta=5.75 max=0.75546130878253825@926084 "
    "min=-0.66065771405446649@100261 signflips=22609 "
    "S=(5.2662157348431344e+31,1.0638343537960349e+34)";

// ----------------------------------------------------------------------

struct CriterionLine {
  int id = 0;
  bool pass = false;
  std::string text;
  std::vector<std::string> notes;
};

struct RunResult {
  std::vector<CriterionLine> lines;
  std::vector<double> fp;          // numeric fingerprint, order-sensitive
  std::vector<std::string> spins;  // string fingerprint (scan lines)
};

static std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Tables {
  FormTable delta;  // N = 1e6
  FormTable de4;    // N = 1e6
  FormTable w0;     // w24_zero2, N = 4000
  FormTable wg;     // w24_generic, N = 4000
};

static Tables& tables() {
  static Tables t = [] {
    Tables tt;
    tt.delta = load_or_build(form_by_name("delta"), 1000000, std::nullopt);
    tt.de4 = load_or_build(form_by_name("delta_e4"), 1000000, std::nullopt);
    tt.w0 = make_table(form_by_name("w24_zero2"), 4000);
    tt.wg = make_table(form_by_name("w24_generic"), 4000);
    return tt;
  }();
  return t;
}

static ReducedRational ra(long long a, long long c) { return reduce_alpha(a, c); }

// ----------------------------------------------------------------------
// criteria

static void crit01_coefficient_oracle(RunResult& R) {
  double t0 = omp_get_wtime();
  FormTable tab = make_table(form_by_name("delta"), 2000);
  long mismatch = 0;
  for (long n = 1; n <= 2000 && mismatch == 0; ++n)
    if (tab.a[static_cast<size_t>(n)] != niebur_tau(n)) mismatch = n;
  double dt = omp_get_wtime() - t0;
  bool pass = mismatch == 0 && dt < 30.0;
  R.lines.push_back({1, pass,
                     fmt("coefficient oracle: eta-product tau vs Niebur, n <= 2000, %s, %.2f s",
                         mismatch == 0 ? "all equal" : fmt("MISMATCH at n=%ld", mismatch).c_str(),
                         dt),
                     {}});
  R.fp.push_back(tab.ad[2000]);
}

static void crit02_route_identity(RunResult& R) {
  const Tables& T = tables();
  const FormTable* forms[2] = {&T.delta, &T.de4};
  double worst_defect = 0.0, worst_tail = 0.0;
  int points = 0;
  for (const FormTable* tab : forms) {
    for (auto r : {ra(0, 1), ra(1, 2), ra(1, 3), ra(2, 5)}) {
      double tgrid[4] = {0.0, t_value(1, r.c), t_value(2, r.c), 7.3};
      for (double sigma : {0.3, 0.5, 1.0}) {
        for (double t : tgrid) {
          cplx s(sigma, t);
          SeriesEval d = F_direct(*tab, s, r, 1e-10);
          SeriesEval c = F_closed(*tab, s, r, 1e-10);
          double mag = std::abs(c.value);
          worst_defect = std::max(worst_defect, std::abs(d.value - c.value) / mag);
          worst_tail = std::max(worst_tail, (d.tail_bound + c.tail_bound) / mag);
          R.fp.push_back(c.value.real());
          R.fp.push_back(c.value.imag());
          ++points;
        }
      }
    }
  }
  bool pass = worst_defect < kTolRoute && worst_tail < kTolRouteTails;
  R.lines.push_back({2, pass,
                     fmt("direct vs closed route: %d points, worst defect %.3e (tol %.0e), "
                         "worst tails %.3e (tol %.0e)",
                         points, worst_defect, kTolRoute, worst_tail, kTolRouteTails),
                     {}});
}

static void crit03_blowup_exponent(RunResult& R) {
  const Tables& T = tables();
  std::vector<double> grid = {0.2, 0.1, 0.05, 0.02, 0.01};
  AsymptoticReport a12 = asym_ratio(T.delta, 1, ra(0, 1), grid);
  AsymptoticReport a16 = asym_ratio(T.de4, 1, ra(0, 1), grid);
  bool pass =
      std::fabs(a12.fitted_slope + 12.5) < kTolSlope && std::fabs(a16.fitted_slope + 16.5) < kTolSlope;
  R.lines.push_back({3, pass,
                     fmt("blow-up exponent: slope %.4f (want -12.5+-%.1f), %.4f (want "
                         "-16.5+-%.1f)",
                         a12.fitted_slope, kTolSlope, a16.fitted_slope, kTolSlope),
                     {}});
  R.fp.push_back(a12.fitted_slope);
  R.fp.push_back(a16.fitted_slope);
}

static void crit04_leading_constant(RunResult& R) {
  const Tables& T = tables();
  struct Pair {
    long n;
    long long a, c;
  };
  const Pair pairs[5] = {{1, 0, 1}, {2, 0, 1}, {1, 1, 2}, {1, 1, 3}, {1, 2, 5}};
  bool pass = true;
  double worst_lit = 0.0;
  std::vector<std::string> notes;
  for (const Pair& p : pairs) {
    ReducedRational r = ra(p.a, p.c);
    double sigma = 0.01;
    cplx s(sigma, t_value(p.n, r.c));
    cplx val = F_closed(T.delta, s, r, 1e-11).value;
    cplx ratio = val / predicted_leading(T.delta, p.n, r, sigma, +1);
    double dmod = std::fabs(std::abs(ratio) - 1.0);
    double darg = std::fabs(std::arg(ratio));
    double lit = std::abs(ratio - cplx(1.0, 0.0));
    worst_lit = std::max(worst_lit, lit);
    bool ok = dmod < kTolRatioMod && darg < kTolRatioArg;
    pass = pass && ok;
    notes.push_back(fmt("(n=%ld, alpha=%lld/%lld): |ratio|-1 = %+.4e, arg = %+.4e, "
                        "|ratio-1| = %.4e %s",
                        p.n, r.a, r.c, std::abs(ratio) - 1.0, std::arg(ratio), lit,
                        ok ? "ok" : "OUT"));
    R.fp.push_back(ratio.real());
    R.fp.push_back(ratio.imag());
  }
  R.lines.push_back({4, pass,
                     fmt("boundary constant at sigma = 0.01: 5 pairs, gate ||ratio|-1| < %.2f "
                         "and |arg ratio| < %.2f, worst |ratio-1| = %.4f",
                         kTolRatioMod, kTolRatioArg, worst_lit),
                     notes});
}

static void crit05_vanishing_branch(RunResult& R) {
  const Tables& T = tables();
  double t2 = t_value(2, 1);
  double zmin = 0.0, zmax = 0.0, gmin = 0.0, gmax = 0.0;
  bool first = true;
  for (double sigma : {0.2, 0.1, 0.05, 0.02, 0.01}) {
    cplx s(sigma, t2);
    double z = std::abs(F_closed(T.w0, s, ra(0, 1), 1e-11).value);
    double g = std::abs(F_closed(T.wg, s, ra(0, 1), 1e-11).value);
    zmax = first ? z : std::max(zmax, z);
    zmin = first ? z : std::min(zmin, z);
    gmax = first ? g : std::max(gmax, g);
    gmin = first ? g : std::min(gmin, g);
    first = false;
    R.fp.push_back(z);
    R.fp.push_back(g);
  }
  // max/min spread across two decades of sigma: finite limit vs
  // sigma^{-24.5} blow-up
  bool pass = zmax / zmin < kZeroSpreadMax && gmax / gmin > kGenericSpreadMin;
  R.lines.push_back({5, pass,
                     fmt("a_2 = 0 branch stays flat at t_2: max/min |F| = %.4f (< %.0f) vs "
                         "generic %.3e (> %.0e)",
                         zmax / zmin, kZeroSpreadMax, gmax / gmin, kGenericSpreadMin),
                     {}});
}

static void crit06_real_axis_bound(RunResult& R) {
  const Tables& T = tables();
  ReducedRational r = ra(1, 3);
  double C = real_axis_constant(T.delta, r);
  bool pass = true;
  double worst = 0.0;
  for (double sigma : {1.0, 0.1, 0.01, 0.001}) {
    double v = std::abs(F_closed(T.delta, cplx(sigma, 0.0), r, 1e-11).value);
    worst = std::max(worst, v / (C * sigma));
    pass = pass && v <= C * sigma;
    R.fp.push_back(v);
  }
  R.fp.push_back(C);
  R.lines.push_back({6, pass,
                     fmt("real-axis bound |F(sigma, 1/3)| <= C sigma with C = %.6e: worst "
                         "|F|/(C sigma) = %.4f",
                         C, worst),
                     {}});
}

static void crit07_modular_relation(RunResult& R) {
  const Tables& T = tables();
  double worst = 0.0;
  for (double u : {0.5, 1.0, 1.5, 2.0})
    for (auto r : {ra(0, 1), ra(1, 2), ra(1, 3)}) {
      double d = modular_check(T.delta, u, r, 1e-12);
      worst = std::max(worst, d);
      R.fp.push_back(d);
    }
  bool pass = worst < kTolModular;
  R.lines.push_back(
      {7, pass, fmt("modular relation: 12 points, worst defect %.3e (tol %.0e)", worst, kTolModular), {}});
}

static void crit08_quadrature(RunResult& R) {
  double d1 = esn_quadrature_check(cplx(1.0, 0.0), 1, 1);
  double d2 = esn_quadrature_check(cplx(2.0, 0.0), 3, 2);
  double d3 = esn_quadrature_check(cplx(0.5, 1.0), 2, 1);
  double worst = std::max(d1, std::max(d2, d3));
  bool pass = worst < kTolEsn;
  R.lines.push_back(
      {8, pass, fmt("kernel quadrature: defects %.2e, %.2e, %.2e (tol %.0e)", d1, d2, d3, kTolEsn), {}});
  R.fp.push_back(d1);
  R.fp.push_back(d2);
  R.fp.push_back(d3);
}

static void crit09_laplace(RunResult& R) {
  const Tables& T = tables();
  ReducedRational r0 = ra(0, 1);
  std::vector<std::string> notes;
  double defects[2] = {0.0, 0.0};
  double budgets[2] = {0.0, 0.0};
  cplx spts[2] = {cplx(1.0, 0.0), cplx(1.0, 4.0 * kPi)};
  for (int i = 0; i < 2; ++i) {
    bool gated = false;
    try {
      laplace_check(T.delta, spts[i], r0, 40.0, kTolLaplace);
    } catch (const tail_budget_error&) {
      gated = true;
    }
    LaplaceResult d = laplace_check(T.delta, spts[i], r0, 40.0, kTolLaplace, false);
    defects[i] = d.defect;
    budgets[i] = d.tail_budget;
    notes.push_back(fmt("s = %g%+gi, Y = 40: defect %.4e, certified budget %.3e (%.1e x "
                        "target), budget gate %s",
                        spts[i].real(), spts[i].imag(), d.defect, d.tail_budget,
                        d.tail_budget / (kTolLaplace * std::abs(d.reference)),
                        gated ? "throws" : "silent"));
    R.fp.push_back(d.defect);
  }
  // attainable cut for the real point, for contrast
  LaplaceResult y80 = laplace_check(T.delta, spts[0], r0, 80.0, kTolLaplace, false);
  notes.push_back(fmt("s = 1, Y = 80 (attainable cut): defect %.4e", y80.defect));
  R.fp.push_back(y80.defect);
  bool pass = defects[0] < kTolLaplace && defects[1] < kTolLaplace;
  R.lines.push_back({9, pass,
                     fmt("laplace identity at Y = 40: defects %.3e and %.3e (tol %.0e)",
                         defects[0], defects[1], kTolLaplace),
                     notes});
}

static void crit10_symmetrized(RunResult& R) {
  const Tables& T = tables();
  cplx s(1.0, 1.0);
  ReducedRational r = ra(1, 3);
  cplx f1 = F1_eval(T.delta, s, r, 1e-10).value;
  cplx manual = 0.5 * (F_direct(T.delta, s, r, 1e-10).value +
                       std::conj(F_direct(T.delta, std::conj(s), r, 1e-10).value));
  double defect = std::abs(f1 - manual) / std::abs(manual);
  bool pass = defect < kTolF1;
  R.lines.push_back(
      {10, pass,
       fmt("symmetrized series F1 vs (F + conj F conj)/2: defect %.3e (tol %.0e)", defect, kTolF1),
       {}});
  R.fp.push_back(f1.real());
  R.fp.push_back(f1.imag());
}

static void crit11_dft(RunResult& R) {
  const Tables& T = tables();
  double worst = 0.0;
  int checks = 0;
  for (long long q = 1; q <= 12; ++q)
    for (long long h = 1; h <= q; ++h)
      for (double x : {1e2, 1e3, 1e4}) {
        worst = std::max(worst, dft_decomposition_check(T.delta, x, {q, h}));
        ++checks;
      }
  bool pass = worst < kTolDft;
  R.lines.push_back(
      {11, pass,
       fmt("character decomposition: %d (q,h,x) checks, worst defect %.3e (tol %.0e)", checks,
           worst, kTolDft),
       {}});
  R.fp.push_back(worst);
}

static void crit12_kloosterman(RunResult& R) {
  std::mt19937_64 rng(987654321);
  std::uniform_int_distribution<long long> cv(1, 100), mv(-300, 300);
  double worst_sym = 0.0;
  bool ok = true;
  double witness = 0.0;
  try {
    for (int it = 0; it < 200; ++it) {
      long long c = cv(rng), m = mv(rng), n = mv(rng);
      double a = kloosterman(m, n, c);
      double b = kloosterman(n, m, c);
      worst_sym = std::max(worst_sym, std::fabs(a - b) / std::max(1.0, std::fabs(a)));
      witness += a;
    }
    for (long long c = 1; c <= 50; ++c) {
      double d = std::fabs(kloosterman(0, 0, c) - static_cast<double>(euler_phi(c)));
      worst_sym = std::max(worst_sym, d);
    }
    for (long long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
                        71, 73, 79, 83, 89, 97}) {
      double k = kloosterman(1, 1, p);
      if (std::fabs(k) > 2.0 * std::sqrt(static_cast<double>(p)) + 1e-9) ok = false;
      witness += k;
    }
  } catch (const std::exception& e) {
    ok = false;  // realness guard tripped
  }
  bool pass = ok && worst_sym < kTolKloosterman;
  R.lines.push_back({12, pass,
                     fmt("kloosterman sums: symmetry/phi worst defect %.3e (tol %.0e), Weil "
                         "bound at 25 primes %s",
                         worst_sym, kTolKloosterman, ok ? "holds" : "VIOLATED"),
                     {}});
  R.fp.push_back(witness);
}

static void crit13_resonance(RunResult& R) {
  const Tables& T = tables();
  ResonanceTable r1 = resonance_analysis(T.delta, {1, 1}, 1, 0.01);
  double d1o = std::abs(r1.measured / r1.oracle - cplx(1.0, 0.0));
  double d1p = std::abs(r1.measured / r1.kloosterman_form - cplx(1.0, 0.0));
  ResonanceTable r2 = resonance_analysis(T.delta, {2, 1}, 1, 0.01);
  double d2o = std::abs(r2.measured / r2.oracle - cplx(1.0, 0.0));
  double p2 = std::abs(r2.measured / r2.kloosterman_form);
  bool pass = d1o < kTolResonance1 && d1p < kTolResonance1 && d2o < kTolResonance2;
  std::vector<std::string> notes;
  notes.push_back(fmt("q = 2 bare-coefficient form is off by |measured/kloosterman-form| = "
                      "%.4f (reported, not gated: the aggregate weights are a_{n c^2}, not a_n)",
                      p2));
  R.lines.push_back({13, pass,
                     fmt("resonance aggregates: q=1 vs oracle %.2e, vs kloosterman form %.2e "
                         "(tol %.2f); q=2 vs oracle %.2e (tol %.2f)",
                         d1o, d1p, kTolResonance1, d2o, kTolResonance2),
                     notes});
  R.fp.push_back(r1.measured.real());
  R.fp.push_back(r1.measured.imag());
  R.fp.push_back(r2.measured.real());
  R.fp.push_back(r2.measured.imag());
}

static void crit14_scan(RunResult& R) {
  const Tables& T = tables();
  bool pass = true;
  std::vector<std::string> notes;
  const char* pins[2] = {kScanPin0, kScanPin13};
  ReducedRational rs[2] = {ra(0, 1), ra(1, 3)};
  for (int i = 0; i < 2; ++i) {
    ScanReport rep = scan_extrema(T.delta, rs[i], 1000000, 5.75);
    ScanReport rep2 = scan_extrema(T.delta, rs[i], 1000000, 5.75);
    std::string line = scan_report_line(rep);
    bool rerun_ok = line == scan_report_line(rep2);
    bool shape_ok = rep.max_value > 0.0 && rep.min_value < 0.0;
    bool pin_ok = pins[i][0] == '\0' || line == pins[i];
    pass = pass && rerun_ok && shape_ok && pin_ok;
    notes.push_back(fmt("pin: %s%s", line.c_str(),
                        pins[i][0] == '\0' ? "  [record mode]" : (pin_ok ? "" : "  PIN MISMATCH")));
    R.fp.push_back(rep.max_value);
    R.fp.push_back(rep.min_value);
    R.spins.push_back(line);
  }
  R.lines.push_back({14, pass,
                     "oscillation scan to x = 1e6: sign changes both directions, rerun "
                     "byte-identical, pins match",
                     notes});
}

static void crit15_second_moments(RunResult& R) {
  const Tables& T = tables();
  double lu[4] = {lu_ratio(T.delta, 1e3, 8), lu_ratio(T.delta, 1e4, 8),
                  lu_ratio(T.delta, 1e3, 12), lu_ratio(T.delta, 1e4, 12)};
  bool lu_ok = true;
  double lu_max = 0.0;
  for (double v : lu) {
    lu_ok = lu_ok && v < kLuBound;
    lu_max = std::max(lu_max, v);
    R.fp.push_back(v);
  }
  double rk[3] = {rankin_ratio(T.delta, 1e3), rankin_ratio(T.delta, 1e4),
                  rankin_ratio(T.delta, 1e5)};
  bool rk_ok = true;
  double rk_lo = rk[0], rk_hi = rk[0];
  for (double v : rk) {
    rk_ok = rk_ok && v >= kRankinLo && v <= kRankinHi;
    rk_lo = std::min(rk_lo, v);
    rk_hi = std::max(rk_hi, v);
    R.fp.push_back(v);
  }
  rk_ok = rk_ok && rk_hi / rk_lo < 10.0;
  bool pass = lu_ok && rk_ok;
  R.lines.push_back({15, pass,
                     fmt("second moments: residue-class ratio max %.3e (< %.2f); Rankin ratio "
                         "in [%.4e, %.4e] against pinned [%.3f, %.3f], spread %.3f",
                         lu_max, kLuBound, rk_lo, rk_hi, kRankinLo, kRankinHi, rk_hi / rk_lo),
                     {}});
}

// ----------------------------------------------------------------------

static RunResult run_all(int threads) {
  omp_set_num_threads(threads);
  RunResult R;
  crit01_coefficient_oracle(R);
  crit02_route_identity(R);
  crit03_blowup_exponent(R);
  crit04_leading_constant(R);
  crit05_vanishing_branch(R);
  crit06_real_axis_bound(R);
  crit07_modular_relation(R);
  crit08_quadrature(R);
  crit09_laplace(R);
  crit10_symmetrized(R);
  crit11_dft(R);
  crit12_kloosterman(R);
  crit13_resonance(R);
  crit14_scan(R);
  crit15_second_moments(R);
  return R;
}

int main() {
  // Pass 2 uses the host default, but at least 4 threads so the chunked
  // reductions are exercised even on a single-core machine.
  int default_threads = std::max(4, omp_get_max_threads());
  std::printf("acceptance battery: pass 1 (threads = 1), pass 2 (threads = %d)\n",
              default_threads);
  std::fflush(stdout);

  RunResult r1 = run_all(1);
  RunResult rd = run_all(default_threads);

  // criterion 16: identical verdicts and values across thread counts
  bool t_pass = r1.fp.size() == rd.fp.size() && r1.spins == rd.spins &&
                r1.lines.size() == rd.lines.size();
  double worst_dev = 0.0;
  if (t_pass) {
    for (size_t i = 0; i < r1.fp.size(); ++i) {
      double dev = std::fabs(r1.fp[i] - rd.fp[i]) /
                   std::max(1.0, std::max(std::fabs(r1.fp[i]), std::fabs(rd.fp[i])));
      worst_dev = std::max(worst_dev, dev);
    }
    for (size_t i = 0; i < r1.lines.size(); ++i)
      if (r1.lines[i].pass != rd.lines[i].pass) t_pass = false;
  }
  t_pass = t_pass && worst_dev <= kTolThreads;

  int failures = 0;
  for (const CriterionLine& l : r1.lines) {
    std::printf("[%s] %02d %s\n", l.pass ? "PASS" : "FAIL", l.id, l.text.c_str());
    for (const std::string& n : l.notes) std::printf("           %s\n", n.c_str());
    if (!l.pass) ++failures;
  }
  std::printf("[%s] 16 thread invariance: %zu values, worst relative deviation %.3e (tol "
              "%.0e), verdicts %s\n",
              t_pass ? "PASS" : "FAIL", r1.fp.size(), worst_dev, kTolThreads,
              t_pass ? "identical" : "DIVERGED");
  if (!t_pass) ++failures;

  std::printf("acceptance: %d/16 criteria passed\n", 16 - failures);
  return failures;
}
