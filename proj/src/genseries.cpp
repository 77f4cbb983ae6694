#include "cuspsum/genseries.hpp"

#include <boost/multiprecision/float128.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cuspsum/errors.hpp"
#include "cuspsum/summation.hpp"

namespace cuspsum {

namespace mp = boost::multiprecision;
using f128 = mp::float128;
using mpfr70 = mp::number<mp::mpfr_float_backend<70>>;

static constexpr double kPi = std::numbers::pi;

double t_value(long n, long long c) {
  if (n < 1 || c < 1) throw usage_error("t_value: need n >= 1, c >= 1");
  return 4.0 * kPi * std::sqrt(static_cast<double>(n)) / static_cast<double>(c);
}

// Gamma(k + 1/2) by the half-integer recurrence: Gamma(1/2) = sqrt(pi),
// Gamma(m + 1/2) = (m - 1/2) Gamma(m - 1/2).
double gamma_half_integer(unsigned k) {
  double g = std::sqrt(kPi);
  for (unsigned m = 1; m <= k; ++m) g *= (static_cast<double>(m) - 0.5);
  return g;
}

std::pair<cplx, cplx> B_constants(unsigned k) {
  double mod = std::pow(4.0 * kPi, static_cast<double>(k)) * gamma_half_integer(k) /
               std::sqrt(2.0 * kPi);
  double ang = (0.5 - static_cast<double>(k)) * kPi / 2.0;
  // reduce the phase mod 2 pi before exponentiating (k pi/2 is large)
  ang = std::remainder(ang, 2.0 * kPi);
  return {std::polar(mod, ang), std::polar(mod, -ang)};
}

cplx leading_scale(unsigned k, long n, long long c, int sign) {
  auto [bp, bm] = B_constants(k);
  double t = t_value(n, c);
  double scale = std::exp(-(static_cast<double>(k) - 0.5) * std::log(t));
  return (sign >= 0 ? bp : bm) * scale;
}

cplx predicted_leading(const FormTable& tab, long n, const ReducedRational& r, double sigma,
                       int sign) {
  if (!(sigma > 0)) throw half_plane_error("predicted_leading: sigma must be > 0");
  if (n > tab.N)
    throw coverage_error("predicted_leading: coefficient " + std::to_string(n) + " not cached");
  if (sgn(tab.a[static_cast<size_t>(n)]) == 0) return {0.0, 0.0};
  unsigned k = tab.form.weight;
  Companion bd = companion(r);
  double ph = -2.0 * kPi * static_cast<double>(((static_cast<long long>(n) % r.c) * (bd.d % r.c)) % r.c) /
              static_cast<double>(r.c);
  cplx twist = std::polar(1.0, ph);
  double ck = std::exp(-static_cast<double>(k) * std::log(static_cast<double>(r.c)));
  double sg = std::exp(-(static_cast<double>(k) + 0.5) * std::log(sigma));
  return leading_scale(k, n, r.c, sign) * tab.ad[static_cast<size_t>(n)] * twist * ck * sg;
}

// ----------------------------------------------------------------------
// certified tails
//
// Direct series:  sum_{n>N} n^{k/2} e^{-sigma sqrt n}
//                   <= 2 sigma^{-(k+2)} Gamma(k+2, sigma sqrt N)
// valid once sqrt N >= k/sigma (integrand decreasing); substitution
// n = v^2 and integral comparison.  Gamma(m, z) for integer m is the
// exact finite sum (m-1)! e^{-z} sum_{j<m} z^j/j!, evaluated in log
// space to survive large z.

static double log_upper_gamma_int(long m, double z) {
  // log Gamma(m, z), m >= 1 integer, z > 0
  double lgm = std::lgamma(static_cast<double>(m));
  double best = -1e300;
  std::vector<double> ls(static_cast<size_t>(m));
  for (long j = 0; j < m; ++j) {
    double v = -z + static_cast<double>(j) * std::log(z) - std::lgamma(static_cast<double>(j) + 1.0);
    ls[static_cast<size_t>(j)] = v;
    best = std::max(best, v);
  }
  double acc = 0.0;
  for (double v : ls) acc += std::exp(v - best);
  return lgm + best + std::log(acc);
}

static double direct_tail(double hecke_c, unsigned k, double sigma, double N) {
  double rtN = std::sqrt(N);
  if (rtN * sigma < static_cast<double>(k)) return 1e300;  // monotonicity not yet valid
  double lg = log_upper_gamma_int(static_cast<long>(k) + 2, sigma * rtN);
  double lt = std::log(2.0 * hecke_c) - (static_cast<double>(k) + 2.0) * std::log(sigma) + lg;
  return lt > 690.0 ? 1e300 : std::exp(lt);
}

// Closed form:  sum_{m>M} m^{k/2} |s^2 + t_m^2|^{-(k+1/2)} with
// t_M >= 2|s| gives |s^2+t_m^2| >= (3/4) t_m^2, so the tail is below
// (c^2/(12 pi^2))^{k+1/2} (2/(k-1)) M^{-(k-1)/2}.
static double closed_tail(double hecke_c, unsigned k, long long c, double M) {
  double kk = static_cast<double>(k);
  double lt = std::log(hecke_c) +
              (kk + 0.5) * std::log(static_cast<double>(c) * static_cast<double>(c) /
                                    (12.0 * kPi * kPi)) +
              std::log(2.0 / (kk - 1.0)) - (kk - 1.0) / 2.0 * std::log(M);
  return lt > 690.0 ? 1e300 : std::exp(lt);
}

// ----------------------------------------------------------------------
// level arithmetic helpers

template <class R>
struct level_traits;

template <>
struct level_traits<double> {
  static constexpr int id = 0;
  static double eps() { return 2.3e-16; }
  static double coef(const FormTable& t, long n) { return t.ad[static_cast<size_t>(n)]; }
  static double from_long(long n) { return static_cast<double>(n); }
  static double to_double(const double& x) { return x; }
  static double pi() { return kPi; }
};

template <>
struct level_traits<f128> {
  static constexpr int id = 1;
  static double eps() { return 2.0e-34; }
  static f128 coef(const FormTable& t, long n) {
    size_t i = static_cast<size_t>(n);
    return f128(t.ad[i]) + f128(t.ad1[i]) + f128(t.ad2[i]);
  }
  static f128 from_long(long n) { return f128(n); }
  static double to_double(const f128& x) { return static_cast<double>(x); }
  static f128 pi() { return 4 * atan(f128(1)); }
};

template <>
struct level_traits<mpfr70> {
  static constexpr int id = 2;
  static double eps() { return 1.0e-70; }
  static mpfr70 coef(const FormTable& t, long n) {
    mpfr70 v;
    mpfr_set_z(v.backend().data(), t.a[static_cast<size_t>(n)].get_mpz_t(), MPFR_RNDN);
    return v;
  }
  static mpfr70 from_long(long n) { return mpfr70(n); }
  static double to_double(const mpfr70& x) { return static_cast<double>(x); }
  static mpfr70 pi() { return 4 * atan(mpfr70(1)); }
};

enum class TwistMode { full, real_part, indicator };

struct LevelOut {
  cplx value{0.0, 0.0};
  double absmass = 0;
  double rounding = 0;
};

/*
 * One pass of the direct series at a fixed precision: terms are grouped
 * by residue class mod c and the twist is applied once per class at the
 * end, in working precision, so the huge intermediate masses never meet
 * the unit-modulus weights in low precision.  Per-class accumulation is
 * Neumaier-compensated; the rounding bound 8 eps mass covers term
 * products, compensation residue, coefficient loading, and the final
 * class combination (whose operands total at most mass).
 *
 * Modes: full twist e^{2 pi i a n / c}, its real part (cosine series),
 * or the indicator of the class n = a mod c (restricted series, no twist).
 */
template <class R>
static LevelOut direct_pass(const FormTable& tab, cplx s, long long c, long long a, long nmax,
                            TwistMode mode) {
  using LT = level_traits<R>;
  using std::cos;
  using std::exp;
  using std::sin;
  using std::sqrt;
  std::vector<Neumaier<R>> pre(static_cast<size_t>(c)), pim(static_cast<size_t>(c));
  R sig = R(s.real());
  R tim = R(s.imag());
  bool has_t = s.imag() != 0.0;
  bool restrict_class = mode == TwistMode::indicator;
  double mass = 0.0;
  for (long n = 1; n <= nmax; ++n) {
    size_t j = static_cast<size_t>(n % c);
    if (restrict_class && j != static_cast<size_t>(a)) continue;
    double adn = tab.ad[static_cast<size_t>(n)];
    if (adn == 0.0) continue;
    R rn = sqrt(LT::from_long(n));
    R ex = exp(-sig * rn);
    R av = LT::coef(tab, n);
    if (has_t) {
      R ph = tim * rn;
      R cs = cos(ph), sn = sin(ph);
      pre[j].add(av * ex * cs);
      pim[j].add(-(av * ex * sn));
    } else {
      pre[j].add(av * ex);
    }
    mass += std::fabs(adn) * LT::to_double(ex);
  }
  R vre{0}, vim{0};
  if (restrict_class) {
    vre = pre[static_cast<size_t>(a)].total();
    vim = pim[static_cast<size_t>(a)].total();
  } else {
    R twopi = 2 * LT::pi();
    for (long long j = 0; j < c; ++j) {
      R prj = pre[static_cast<size_t>(j)].total();
      R pij = pim[static_cast<size_t>(j)].total();
      R ang =
          twopi * LT::from_long(static_cast<long>((a * j) % c)) / LT::from_long(static_cast<long>(c));
      R cw = cos(ang), sw = sin(ang);
      if (mode == TwistMode::full) {
        vre += prj * cw - pij * sw;
        vim += prj * sw + pij * cw;
      } else {
        vre += prj * cw;
        vim += pij * cw;
      }
    }
  }
  LevelOut out;
  out.value = {LT::to_double(vre), LT::to_double(vim)};
  out.absmass = mass;
  out.rounding = 8.0 * LT::eps() * mass;
  return out;
}

/*
 * Adaptive truncation + precision ladder.  The truncation point grows
 * until the certified tail clears tol |value| / 2; the precision level
 * escalates (double, then quad, then 70-digit MPFR) while the certified
 * rounding bound exceeds tol |value| / 4.
 */
static SeriesEval direct_ladder(const FormTable& tab, cplx s, long long c, long long a,
                                double tol, TwistMode mode) {
  if (!(s.real() > 0)) throw half_plane_error("F eval: Re s must be > 0");
  if (!(tol > 0)) throw usage_error("F eval: tol must be > 0");
  unsigned k = tab.form.weight;
  double sigma = s.real();
  double nmin = std::pow((static_cast<double>(k) + 2.0) / sigma, 2.0);
  if (nmin > static_cast<double>(tab.N))
    throw coverage_error("F eval: certified tail needs more than " + std::to_string(tab.N) +
                         " coefficients at sigma = " + std::to_string(sigma));
  long n = std::max<long>(64, static_cast<long>(nmin) + 1);
  int level = 0;
  LevelOut out;
  double tail = 0.0;
  for (;;) {
    switch (level) {
      case 0: out = direct_pass<double>(tab, s, c, a, n, mode); break;
      case 1: out = direct_pass<f128>(tab, s, c, a, n, mode); break;
      default: out = direct_pass<mpfr70>(tab, s, c, a, n, mode); break;
    }
    tail = direct_tail(tab.hecke_c, k, sigma, static_cast<double>(n));
    double mag = std::abs(out.value);
    if (tail > 0.5 * tol * mag) {
      if (n >= tab.N)
        throw coverage_error("F eval: tail budget " + std::to_string(tail) +
                             " uncertifiable with " + std::to_string(tab.N) +
                             " coefficients at sigma = " + std::to_string(sigma));
      n = std::min<long>(tab.N, 2 * n);
      continue;
    }
    if (out.rounding > 0.25 * tol * mag && level < 2) {
      ++level;
      continue;
    }
    break;
  }
  SeriesEval ev;
  ev.value = out.value;
  ev.terms_used = n;
  ev.tail_bound = tail;
  ev.rounding_bound = out.rounding;
  ev.precision_level = level;
  if (out.rounding > 0.25 * tol * std::abs(out.value))
    ev.warnings.push_back("rounding bound above budget at maximum precision");
  return ev;
}

SeriesEval F_direct(const FormTable& tab, cplx s, const ReducedRational& r, double tol) {
  return direct_ladder(tab, s, r.c, r.a, tol, TwistMode::full);
}

SeriesEval F1_eval(const FormTable& tab, cplx s, const ReducedRational& r, double tol) {
  return direct_ladder(tab, s, r.c, r.a, tol, TwistMode::real_part);
}

SeriesEval F_restricted_direct(const FormTable& tab, cplx s, long long q, long long h,
                               double tol) {
  if (q < 1 || h < 1 || h > q)
    throw usage_error("F_restricted_direct: need q >= 1 and 1 <= h <= q");
  return direct_ladder(tab, s, q, h % q, tol, TwistMode::indicator);
}

// ----------------------------------------------------------------------
// closed form

SeriesEval F_closed(const FormTable& tab, cplx s, const ReducedRational& r, double tol) {
  if (!(s.real() > 0)) throw half_plane_error("F_closed: Re s must be > 0");
  if (!(tol > 0)) throw usage_error("F_closed: tol must be > 0");
  unsigned k = tab.form.weight;
  long long c = r.c;
  Companion bd = companion(r);
  double kk = static_cast<double>(k);
  cplx pref = s * std::pow(8.0 * kPi / static_cast<double>(c), kk) * gamma_half_integer(k) /
              std::sqrt(kPi);

  // e^{-2 pi i m d / c} per residue class
  std::vector<cplx> tw(static_cast<size_t>(c));
  for (long long j = 0; j < c; ++j)
    tw[static_cast<size_t>(j)] =
        std::polar(1.0, -2.0 * kPi * static_cast<double>((j * (bd.d % c)) % c) /
                            static_cast<double>(c));

  double snorm = std::abs(s);
  double mvalid = std::pow(snorm * static_cast<double>(c) / (2.0 * kPi), 2.0);
  SeriesEval ev;
  NeumaierC<double> acc;
  double mass = 0.0;
  long m = 0;
  long target = std::max<long>(64, static_cast<long>(mvalid) + 1);
  if (target > tab.N)
    throw coverage_error("F_closed: validity threshold " + std::to_string(target) +
                         " beyond cached coefficients");
  for (;;) {
    while (m < target) {
      ++m;
      double ad = tab.ad[static_cast<size_t>(m)];
      double tm = t_value(m, c);
      // cancellation-free factoring: s^2 + t_m^2 = (s + i t_m)(s - i t_m),
      // both factors in the right half plane, so the principal branches
      // compose without crossing the cut.
      cplx w1(s.real(), s.imag() + tm);
      cplx w2(s.real(), s.imag() - tm);
      double d2 = std::norm(w2);
      if (d2 < 1e-12 && std::fabs(ad) > 0)
        ev.warnings.push_back("resonance proximity at m = " + std::to_string(m));
      if (ad == 0.0 && tab.ad1[static_cast<size_t>(m)] == 0.0) continue;
      cplx lg = std::log(w1) + std::log(w2);
      cplx pw = std::exp(-(kk + 0.5) * lg);
      cplx term = ad * tw[static_cast<size_t>(m % c)] * pw;
      acc.add(term);
      mass += std::abs(term);
    }
    double tail = closed_tail(tab.hecke_c, k, c, static_cast<double>(m)) * std::abs(pref);
    cplx val = pref * acc.total();
    if (tail <= 0.5 * tol * std::abs(val)) {
      ev.value = val;
      ev.terms_used = m;
      ev.tail_bound = tail;
      ev.rounding_bound = 8.0 * 2.3e-16 * mass * std::abs(pref);
      ev.precision_level = 0;
      return ev;
    }
    if (m >= tab.N)
      throw coverage_error("F_closed: tail budget " + std::to_string(tail) +
                           " uncertifiable with " + std::to_string(tab.N) + " coefficients");
    target = std::min<long>(tab.N, 2 * m);
  }
}

// ----------------------------------------------------------------------
// asymptotics

AsymptoticReport asym_ratio(const FormTable& tab, long n, const ReducedRational& r,
                            const std::vector<double>& sigma_grid) {
  if (sigma_grid.empty()) throw usage_error("asym_ratio: empty sigma grid");
  for (size_t i = 1; i < sigma_grid.size(); ++i)
    if (!(sigma_grid[i] < sigma_grid[i - 1]))
      throw usage_error("asym_ratio: sigma grid must be strictly decreasing");
  if (n > tab.N) throw coverage_error("asym_ratio: index beyond cache");

  AsymptoticReport rep;
  rep.sigma_grid = sigma_grid;
  rep.zero_branch = sgn(tab.a[static_cast<size_t>(n)]) == 0;
  double t = t_value(n, r.c);
  unsigned k = tab.form.weight;
  Companion bd = companion(r);
  double ph = -2.0 * kPi *
              static_cast<double>(((static_cast<long long>(n) % r.c) * (bd.d % r.c)) % r.c) /
              static_cast<double>(r.c);
  rep.predicted_constant = rep.zero_branch
                               ? cplx{0.0, 0.0}
                               : leading_scale(k, n, r.c, +1) * tab.ad[static_cast<size_t>(n)] *
                                     std::polar(1.0, ph) *
                                     std::exp(-static_cast<double>(k) *
                                              std::log(static_cast<double>(r.c)));

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double sig : sigma_grid) {
    SeriesEval ev = F_closed(tab, {sig, t}, r, 1e-11);
    rep.values.push_back(ev.value);
    rep.abs_values.push_back(std::abs(ev.value));
    if (!rep.zero_branch) {
      cplx pred = predicted_leading(tab, n, r, sig, +1);
      rep.ratios.push_back(ev.value / pred);
    }
    double x = std::log(sig), y = std::log(std::abs(ev.value));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double m = static_cast<double>(sigma_grid.size());
  rep.fitted_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return rep;
}

// ----------------------------------------------------------------------
// kernel-identity quadrature
//
//   e^{-s sqrt n} = s/sqrt(pi) (c/8pi)^{1/2}
//                     int_0^inf u^{-1/2} e^{-(c/8pi) s^2 u} e^{-(2 pi n/c)/u} du
//
// After u = e^{v - i psi} with psi = arg s the exponent is
// -(c/8pi)|s|^2 e^{i psi} e^v - (2 pi n/c) e^{i psi} e^{-v}; both real
// parts decay like cos(psi) e^{|v|}, so the integrand is integrable on
// the whole rotated ray for every s in the open right half plane.

namespace {
struct EsnIntegrand {
  double A;    // (c/8pi)|s|^2
  double B;    // 2 pi n / c
  double psi;  // arg s

  cplx operator()(double v) const {
    double ev = std::exp(v);
    double evm = std::exp(-v);
    // exponent: -(A e^v + B e^{-v}) e^{i psi}, plus v/2 from u^{1/2} du
    double re = -(A * ev + B * evm) * std::cos(psi) + 0.5 * v;
    double im = -(A * ev + B * evm) * std::sin(psi) - 0.5 * psi;
    return std::polar(std::exp(re), im);
  }
  double log_decay(double v) const {
    double ev = std::exp(v);
    double evm = std::exp(-v);
    return -(A * ev + B * evm) * std::cos(psi) + 0.5 * v;
  }
};

cplx simpson(double a, double b, cplx fa, cplx fm, cplx fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

cplx adaptive_simpson(const EsnIntegrand& f, double a, double b, cplx fa, cplx fm, cplx fb,
                      cplx whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  cplx fl = f(0.5 * (a + m)), fr = f(0.5 * (m + b));
  cplx left = simpson(a, m, fa, fl, fm);
  cplx right = simpson(m, b, fm, fr, fb);
  cplx delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace

double esn_quadrature_check(cplx s, long n, long long c) {
  if (!(s.real() > 0)) throw half_plane_error("esn_quadrature_check: Re s must be > 0");
  if (n < 1 || c < 1) throw usage_error("esn_quadrature_check: need n >= 1, c >= 1");
  EsnIntegrand f;
  f.A = static_cast<double>(c) / (8.0 * kPi) * std::norm(s);
  f.B = 2.0 * kPi * static_cast<double>(n) / static_cast<double>(c);
  f.psi = std::arg(s);

  // locate the decay window
  double vpeak = 0.0, epeak = -1e300;
  for (double v = -60.0; v <= 60.0; v += 0.25) {
    double e = f.log_decay(v);
    if (e > epeak) {
      epeak = e;
      vpeak = v;
    }
  }
  double lo = vpeak, hi = vpeak;
  while (f.log_decay(lo) > epeak - 70.0) lo -= 0.5;
  while (f.log_decay(hi) > epeak - 70.0) hi += 0.5;

  cplx target = std::exp(-s * std::sqrt(static_cast<double>(n)));
  double tol = 1e-12 * std::abs(target);
  cplx fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
  cplx whole = simpson(lo, hi, fa, fm, fb);
  cplx integral = adaptive_simpson(f, lo, hi, fa, fm, fb, whole, tol, 42);
  cplx pref = s / std::sqrt(kPi) * std::sqrt(static_cast<double>(c) / (8.0 * kPi));
  cplx lhs = pref * integral;
  double defect = std::abs(lhs - target) / std::abs(target);
  if (defect > 1e-6)
    throw accuracy_error("esn quadrature did not converge, defect " + std::to_string(defect),
                         defect);
  return defect;
}

// ----------------------------------------------------------------------
// Laplace transform representation
//
//   F(s, alpha) = s int_0^inf S(y^2, alpha) e^{-s y} dy,
//
// integrated piecewise exactly over [0, Y]: S(y^2) is constant between
// consecutive sqrt n, so each segment contributes S_n (E_n - E_{n+1})
// with E = e^{-s y} evaluated at the segment ends.

static double laplace_tail_budget(const FormTable& tab, cplx s, double Y) {
  unsigned k = tab.form.weight;
  double kk = static_cast<double>(k);
  double sigma = s.real();
  // |S(y^2)| <= C_H (y^2+1)^{k/2+1}/(k/2+1) <= C_H 2^{k/2+1} y^{k+2}/(k/2+1) for y >= 1
  double lg = log_upper_gamma_int(static_cast<long>(k) + 3, sigma * Y);
  double lt = std::log(std::abs(s)) + std::log(tab.hecke_c) +
              (kk / 2.0 + 1.0) * std::log(2.0) - std::log(kk / 2.0 + 1.0) -
              (kk + 3.0) * std::log(sigma) + lg;
  return lt > 690.0 ? 1e300 : std::exp(lt);
}

LaplaceResult laplace_check(const FormTable& tab, cplx s, const ReducedRational& r, double Y,
                            double tol, bool check_budget) {
  if (!(s.real() > 0)) throw half_plane_error("laplace_check: Re s must be > 0");
  if (!(Y > 0)) throw usage_error("laplace_check: Y must be > 0");
  long NY = static_cast<long>(std::floor(Y * Y));
  if (NY > tab.N)
    throw coverage_error("laplace_check: Y^2 = " + std::to_string(NY) + " beyond cache");

  SeriesEval fref = F_direct(tab, s, r, std::min(tol, 1e-10));
  double budget = laplace_tail_budget(tab, s, Y);
  if (check_budget && budget > tol * std::abs(fref.value))
    throw tail_budget_error("laplace_check: certified tail budget " + std::to_string(budget) +
                                " exceeds tol*|F| = " +
                                std::to_string(tol * std::abs(fref.value)) + " at Y = " +
                                std::to_string(Y),
                            budget, tol * std::abs(fref.value));

  // running twisted partial sum and the piecewise-exact integral, quad precision
  f128 sigq = f128(s.real()), timq = f128(s.imag());
  long long c = r.c;
  std::vector<f128> wre(static_cast<size_t>(c)), wim(static_cast<size_t>(c));
  f128 twopi = 8 * atan(f128(1));
  for (long long j = 0; j < c; ++j) {
    f128 ang = twopi * f128(static_cast<long>((r.a * j) % c)) / f128(static_cast<long>(c));
    wre[static_cast<size_t>(j)] = cos(ang);
    wim[static_cast<size_t>(j)] = sin(ang);
  }
  auto expz = [&](f128 y, f128& exr, f128& exi) {
    f128 mod = exp(-sigq * y);
    f128 ph = timq * y;
    exr = mod * cos(ph);
    exi = -mod * sin(ph);
  };
  Neumaier<f128> ire, iim;
  f128 sre{0}, sim{0};
  f128 enr, eni, e1r, e1i;
  expz(f128(1), enr, eni);
  for (long n = 1; n <= NY; ++n) {
    size_t i = static_cast<size_t>(n);
    f128 av = f128(tab.ad[i]) + f128(tab.ad1[i]) + f128(tab.ad2[i]);
    size_t j = static_cast<size_t>(n % c);
    sre += av * wre[j];
    sim += av * wim[j];
    f128 ynext = n < NY ? sqrt(f128(n + 1)) : f128(Y);
    expz(ynext, e1r, e1i);
    ire.add(sre * (enr - e1r) - sim * (eni - e1i));
    iim.add(sre * (eni - e1i) + sim * (enr - e1r));
    enr = e1r;
    eni = e1i;
  }
  LaplaceResult res;
  res.integral = {static_cast<double>(ire.total()), static_cast<double>(iim.total())};
  res.reference = fref.value;
  res.tail_budget = budget;
  res.defect = std::abs(res.integral - res.reference) / std::abs(res.reference);
  return res;
}

// ----------------------------------------------------------------------
// modular relation

double modular_check(const FormTable& tab, double u, const ReducedRational& r, double tol) {
  if (!(u > 0)) throw usage_error("modular_check: u must be > 0");
  if (!(tol > 0)) throw usage_error("modular_check: tol must be > 0");
  unsigned k = tab.form.weight;
  long long c = r.c;
  Companion bd = companion(r);
  double cd = static_cast<double>(c);

  // geometric-decay truncation: sum_{n>N} |a_n| e^{-beta n} <= C_H
  // beta^{-(k/2+1)} Gamma(k/2+1, beta N) once N > k/(2 beta)
  auto cutoff = [&](double beta) -> long {
    long n = std::max<long>(32, static_cast<long>(static_cast<double>(k) / beta) + 1);
    for (;;) {
      double lg = log_upper_gamma_int(static_cast<long>(k) / 2 + 1, beta * static_cast<double>(n));
      double lt = std::log(2.0 * tab.hecke_c) -
                  (static_cast<double>(k) / 2.0 + 1.0) * std::log(beta) + lg;
      if (lt < std::log(tol) - 8.0 * std::log(10.0)) return n;
      if (n >= tab.N)
        throw coverage_error("modular_check: cannot certify truncation at u = " +
                             std::to_string(u));
      n = std::min<long>(tab.N, 2 * n);
    }
  };

  f128 twopi = 8 * atan(f128(1));
  auto series = [&](double beta, long long twist_num, long N) -> std::complex<double> {
    // sum a_n e^{2 pi i n twist_num / c} e^{-beta n}
    std::vector<f128> wre(static_cast<size_t>(c)), wim(static_cast<size_t>(c));
    for (long long j = 0; j < c; ++j) {
      long long jj = ((twist_num * j) % c + c) % c;
      f128 ang = twopi * f128(static_cast<long>(jj)) / f128(static_cast<long>(c));
      wre[static_cast<size_t>(j)] = cos(ang);
      wim[static_cast<size_t>(j)] = sin(ang);
    }
    f128 bq = f128(beta);
    Neumaier<f128> re, im;
    for (long n = 1; n <= N; ++n) {
      size_t i = static_cast<size_t>(n);
      f128 av = f128(tab.ad[i]) + f128(tab.ad1[i]) + f128(tab.ad2[i]);
      f128 ex = exp(-bq * f128(n));
      size_t j = static_cast<size_t>(n % c);
      re.add(av * ex * wre[j]);
      im.add(av * ex * wim[j]);
    }
    return {static_cast<double>(re.total()), static_cast<double>(im.total())};
  };

  double beta_l = 2.0 * kPi / (cd * u);
  double beta_r = 2.0 * kPi * u / cd;
  long Nl = cutoff(beta_l), Nr = cutoff(beta_r);
  if (Nl > tab.N || Nr > tab.N) throw coverage_error("modular_check: cache too small");
  std::complex<double> lhs = series(beta_l, r.a, Nl);
  std::complex<double> rhs = series(beta_r, -bd.d, Nr);
  rhs *= std::pow(u, static_cast<double>(k));
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
}

// ----------------------------------------------------------------------
// real-axis bound constant

double real_axis_constant(const FormTable& tab, const ReducedRational& r) {
  unsigned k = tab.form.weight;
  double kk = static_cast<double>(k);
  long long c = r.c;
  long M = std::min<long>(tab.N, 200000);
  double sum = 0.0;
  for (long m = 1; m <= M; ++m) {
    double tm = t_value(m, c);
    sum += std::fabs(tab.ad[static_cast<size_t>(m)]) *
           std::exp(-(2.0 * kk + 1.0) * std::log(tm));
  }
  // tail: C_H (c/4pi)^{2k+1} (2/(k-1)) M^{-(k-1)/2}
  double lt = std::log(tab.hecke_c) +
              (2.0 * kk + 1.0) * std::log(static_cast<double>(c) / (4.0 * kPi)) +
              std::log(2.0 / (kk - 1.0)) - (kk - 1.0) / 2.0 * std::log(static_cast<double>(M));
  sum += std::exp(lt);
  return std::pow(8.0 * kPi / static_cast<double>(c), kk) * gamma_half_integer(k) /
         std::sqrt(kPi) * sum;
}

}  // namespace cuspsum
