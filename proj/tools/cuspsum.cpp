// cuspsum: construct level-1 cusp form coefficients and verify the
// twisted generating series identities, asymptotics, and progression
// machinery from the command line.

#include <omp.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cuspsum/cache.hpp"
#include "cuspsum/errors.hpp"
#include "cuspsum/forms.hpp"
#include "cuspsum/genseries.hpp"
#include "cuspsum/modarith.hpp"
#include "cuspsum/progressions.hpp"
#include "cuspsum/report.hpp"
#include "cuspsum/sums.hpp"

using namespace cuspsum;

namespace {

constexpr double kPi = std::numbers::pi;

struct Opts {
  std::string form = "delta";
  long N = 100000;
  std::string alpha = "0/1";
  long long q = 1;
  long long h = 1;
  double x = 1000;
  long X = 100000;
  double theta = -1;  // < 0: k/2 - 1/4 from the form weight
  double sigma = 1.0;
  double t = 0.0;
  long t_index = 0;  // > 0: t = t_value(t_index, c(alpha))
  double tol = 1e-9;
  double Y = 90.0;
  double u = 1.0;
  long long km = 0, kn = 0, kc = 1;
  bool aggregate = false;
  bool closed_only = false;
  bool fprog = false;
  bool lu = false;
  long omega = 0;
  long resonance = 0;
  std::string route = "both";
  int threads = 0;
  std::string format = "text";
  std::string trace;
  std::string output;
  std::string cache_dir_flag;
  std::string suite = "all";
  double sigma_min = 0.01;
  double sigma_max = 0.2;
  int grid_points = 5;
};

void emit(const Report& rep, const std::string& format) {
  if (format == "json") {
    std::fputs(report_json(rep).c_str(), stdout);
    std::fputc('\n', stdout);
  } else if (format == "csv") {
    std::fputs("section,key,value\n", stdout);
    auto rows = [](const char* sec, const std::vector<std::pair<std::string, std::string>>& kv) {
      for (auto& [k, v] : kv) std::printf("%s,%s,%s\n", sec, k.c_str(), v.c_str());
    };
    std::printf("command,,%s\n", rep.command.c_str());
    rows("param", rep.params);
    rows("value", rep.values);
    rows("defect", rep.defects);
    rows("pin", rep.regression);
  } else {
    std::fputs(report_text(rep).c_str(), stdout);
  }
}

std::optional<std::string> dir_flag(const Opts& o) {
  if (o.cache_dir_flag.empty()) return std::nullopt;
  return o.cache_dir_flag;
}

FormTable load_table(const Opts& o, long N) {
  return load_or_build(form_by_name(o.form), N, dir_flag(o));
}

double theta_for(const Opts& o, const FormTable& tab) {
  if (o.theta > 0) return o.theta;
  return static_cast<double>(tab.form.weight) / 2.0 - 0.25;
}

cplx eval_point(const Opts& o, const ReducedRational& r) {
  double t = o.t;
  if (o.t_index > 0) t = t_value(o.t_index, r.c);
  return {o.sigma, t};
}

// ----------------------------------------------------------------------
// subcommands

int cmd_coeffs(const Opts& o) {
  FormTable tab = load_table(o, o.N);
  std::string out = o.output.empty() ? o.form + "_coeffs.csv" : o.output;
  write_coeffs_csv(tab, out);
  Report rep;
  rep.command = "coeffs";
  rep.param("form", o.form);
  rep.param("N", fmt_int(o.N));
  rep.value("weight", fmt_int(tab.form.weight));
  rep.value("cached", fmt_int(tab.N));
  rep.value("output", out);
  rep.value("digest", recipe_digest(tab.form));
  emit(rep, o.format);
  return 0;
}

int cmd_sum(const Opts& o) {
  FormTable tab = load_table(o, o.N);
  ReducedRational r = parse_alpha(o.alpha.c_str());
  double theta = theta_for(o, tab);
  SumRecord rec = sum_record(tab, o.x, r, theta);
  Report rep;
  rep.command = "sum";
  rep.param("form", o.form);
  rep.param("alpha", fmt_int(r.a) + "/" + fmt_int(r.c));
  rep.param("x", fmt_double(o.x));
  rep.param("theta", fmt_double(theta));
  rep.value("S", fmt_complex(rec.value));
  rep.value("normalized", fmt_double(rec.normalized));
  if (r.c == 1) rep.value("S_exact", twisted_sum_exact(tab, o.x).get_str());
  emit(rep, o.format);
  return 0;
}

int cmd_scan(const Opts& o) {
  FormTable tab = load_table(o, std::max(o.N, o.X));
  ReducedRational r = parse_alpha(o.alpha.c_str());
  double theta = theta_for(o, tab);
  ScanReport sr = scan_extrema(tab, r, o.X, theta, o.trace);
  Report rep;
  rep.command = "scan";
  rep.param("form", o.form);
  rep.param("alpha", fmt_int(r.a) + "/" + fmt_int(r.c));
  rep.param("X", fmt_int(o.X));
  rep.param("theta", fmt_double(theta));
  rep.value("line", scan_report_line(sr));
  rep.pin("max", fmt_double(sr.max_value));
  rep.pin("argmax", fmt_int(sr.argmax));
  rep.pin("min", fmt_double(sr.min_value));
  rep.pin("argmin", fmt_int(sr.argmin));
  rep.pin("sign_changes", fmt_int(sr.sign_changes));
  rep.pin("final", fmt_complex(sr.final_sum));
  if (!o.trace.empty()) rep.value("trace", o.trace);
  emit(rep, o.format);
  return 0;
}

int cmd_fvalue(const Opts& o) {
  FormTable tab = load_table(o, o.N);
  ReducedRational r = parse_alpha(o.alpha.c_str());
  cplx s = eval_point(o, r);
  Report rep;
  rep.command = "fvalue";
  rep.param("form", o.form);
  rep.param("alpha", fmt_int(r.a) + "/" + fmt_int(r.c));
  rep.param("s", fmt_complex(s));
  rep.param("tol", fmt_double(o.tol));
  rep.param("route", o.route);
  auto put = [&](const char* tag, const SeriesEval& ev) {
    rep.value(std::string(tag) + ".value", fmt_complex(ev.value));
    rep.value(std::string(tag) + ".terms", fmt_int(ev.terms_used));
    rep.value(std::string(tag) + ".tail", fmt_double(ev.tail_bound));
    rep.value(std::string(tag) + ".rounding", fmt_double(ev.rounding_bound));
    rep.value(std::string(tag) + ".precision_level", fmt_int(ev.precision_level));
    for (auto& w : ev.warnings) rep.value(std::string(tag) + ".warning", w);
  };
  if (o.route == "f1") {
    put("f1", F1_eval(tab, s, r, o.tol));
  } else if (o.route == "direct") {
    put("direct", F_direct(tab, s, r, o.tol));
  } else if (o.route == "closed") {
    put("closed", F_closed(tab, s, r, o.tol));
  } else {
    SeriesEval c = F_closed(tab, s, r, o.tol);
    SeriesEval d = F_direct(tab, s, r, o.tol);
    put("closed", c);
    put("direct", d);
    rep.defect("route", fmt_double(std::abs(d.value - c.value) / std::abs(c.value)));
  }
  emit(rep, o.format);
  return 0;
}

std::vector<double> sigma_grid(const Opts& o) {
  // log-spaced, strictly decreasing from sigma_max to sigma_min
  std::vector<double> g;
  int m = std::max(2, o.grid_points);
  for (int i = 0; i < m; ++i) {
    double f = static_cast<double>(i) / static_cast<double>(m - 1);
    g.push_back(o.sigma_max * std::pow(o.sigma_min / o.sigma_max, f));
  }
  return g;
}

int cmd_asymfit(const Opts& o) {
  FormTable tab = load_table(o, o.N);
  ReducedRational r = parse_alpha(o.alpha.c_str());
  long n = o.t_index > 0 ? o.t_index : 1;
  AsymptoticReport ar = asym_ratio(tab, n, r, sigma_grid(o));
  Report rep;
  rep.command = "asymfit";
  rep.param("form", o.form);
  rep.param("alpha", fmt_int(r.a) + "/" + fmt_int(r.c));
  rep.param("n", fmt_int(n));
  rep.param("sigma_max", fmt_double(o.sigma_max));
  rep.param("sigma_min", fmt_double(o.sigma_min));
  rep.value("t", fmt_double(t_value(n, r.c)));
  rep.value("zero_branch", ar.zero_branch ? "true" : "false");
  rep.value("fitted_slope", fmt_double(ar.fitted_slope));
  rep.value("predicted_slope", fmt_double(-(static_cast<double>(tab.form.weight) + 0.5)));
  rep.value("predicted_constant", fmt_complex(ar.predicted_constant));
  for (size_t i = 0; i < ar.sigma_grid.size(); ++i) {
    std::string key = "sigma=" + fmt_double(ar.sigma_grid[i]);
    rep.value(key + " |F|", fmt_double(ar.abs_values[i]));
    if (!ar.zero_branch) rep.value(key + " ratio", fmt_complex(ar.ratios[i]));
  }
  if (!ar.zero_branch && !ar.ratios.empty()) {
    cplx last = ar.ratios.back();
    rep.defect("modulus", fmt_double(std::fabs(std::abs(last) - 1.0)));
    rep.defect("phase", fmt_double(std::fabs(std::arg(last))));
  }
  emit(rep, o.format);
  return 0;
}

int cmd_kloosterman(const Opts& o) {
  Report rep;
  rep.command = "kloosterman";
  if (o.aggregate) {
    unsigned k = form_by_name(o.form).weight;
    long n = o.t_index > 0 ? o.t_index : 1;
    rep.param("q", fmt_int(o.q));
    rep.param("h", fmt_int(o.h));
    rep.param("n", fmt_int(n));
    rep.param("k", fmt_int(k));
    rep.value("aggregate", fmt_double(kloosterman_aggregate(o.q, o.h, n, k)));
  } else {
    rep.param("m", fmt_int(o.km));
    rep.param("n", fmt_int(o.kn));
    rep.param("c", fmt_int(o.kc));
    rep.value("K", fmt_double(kloosterman(o.km, o.kn, o.kc)));
    if (o.kn == 0) {
      rep.value("ramanujan_formula", fmt_double(ramanujan_sum_formula(o.kc, o.km)));
    }
  }
  emit(rep, o.format);
  return 0;
}

int cmd_progression(const Opts& o) {
  FormTable tab = load_table(o, o.N);
  ProgressionSpec spec{o.q, o.h};
  Report rep;
  rep.command = "progression";
  rep.param("form", o.form);
  rep.param("q", fmt_int(o.q));
  rep.param("h", fmt_int(o.h));
  if (o.lu) {
    rep.param("x", fmt_double(o.x));
    rep.value("lu_ratio", fmt_double(lu_ratio(tab, o.x, o.q)));
  } else if (o.omega > 0) {
    ReducedRational r = parse_alpha(o.alpha.c_str());
    OmegaReport om = omega_condition(tab, r, o.omega);
    rep.param("alpha", fmt_int(r.a) + "/" + fmt_int(r.c));
    rep.param("n_max", fmt_int(o.omega));
    rep.value("witness", om.witness ? fmt_int(*om.witness) : "none");
    if (om.witness) rep.value("witness_value", fmt_double(om.witness_value));
    rep.value("corollary_condition", om.corollary_condition ? "true" : "false");
    if (om.corollary_witness) rep.value("corollary_witness", fmt_int(*om.corollary_witness));
  } else if (o.resonance > 0) {
    ResonanceTable rt = resonance_analysis(tab, spec, o.resonance, o.sigma);
    rep.param("n", fmt_int(o.resonance));
    rep.param("sigma", fmt_double(rt.sigma));
    rep.value("t", fmt_double(rt.t));
    for (auto& e : rt.entries) {
      std::string key = "c=" + fmt_int(e.c);
      rep.value(key + " m", fmt_int(e.m));
      rep.value(key + " a_m", e.a_m.get_str());
      rep.value(key + " ramanujan", fmt_double(e.ramanujan));
      rep.value(key + " kloosterman", fmt_double(e.kloosterman));
    }
    rep.value("oracle", fmt_complex(rt.oracle));
    rep.value("kloosterman_form", fmt_complex(rt.kloosterman_form));
    rep.value("measured", fmt_complex(rt.measured));
    rep.defect("measured_vs_oracle", fmt_double(std::abs(rt.measured / rt.oracle - 1.0)));
    rep.defect("measured_vs_kloosterman_form",
               fmt_double(std::abs(rt.measured / rt.kloosterman_form - 1.0)));
  } else if (o.fprog) {
    cplx s{o.sigma, o.t_index > 0 ? t_value(o.t_index, 1) : o.t};
    ProgressionEval pe = F_progression(tab, s, spec, o.tol, o.closed_only);
    rep.param("s", fmt_complex(s));
    rep.param("tol", fmt_double(o.tol));
    rep.value("closed.value", fmt_complex(pe.closed.value));
    rep.value("closed.tail", fmt_double(pe.closed.tail_bound));
    if (pe.direct_evaluated) {
      rep.value("direct.value", fmt_complex(pe.direct.value));
      rep.value("direct.tail", fmt_double(pe.direct.tail_bound));
      rep.defect("route", fmt_double(pe.route_defect));
    }
  } else {
    rep.param("x", fmt_double(o.x));
    rep.value("S_exact", progression_sum_exact(tab, o.x, o.q, o.h).get_str());
    rep.value("normalized", fmt_double(normalized_progression_sum(tab, o.x, o.q, o.h)));
  }
  emit(rep, o.format);
  return 0;
}

// ----------------------------------------------------------------------
// verify suites

struct CheckList {
  std::vector<std::string> lines;
  int failures = 0;

  void gate(const std::string& name, double defect, double tol) {
    bool ok = defect < tol;
    if (!ok) ++failures;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s %s defect=%.3e tol=%.0e", ok ? "PASS" : "FAIL",
                  name.c_str(), defect, tol);
    lines.push_back(buf);
  }
  void fail(const std::string& name, const std::string& why) {
    ++failures;
    lines.push_back("FAIL " + name + " " + why);
  }
  void info(const std::string& name, const std::string& what) {
    lines.push_back("INFO " + name + " " + what);
  }
};

void suite_identity(CheckList& cl, const FormTable& delta) {
  const double sig[] = {0.3, 0.5, 1.0};
  const char* alphas[] = {"0/1", "1/2", "1/3"};
  for (const char* al : alphas) {
    ReducedRational r = parse_alpha(al);
    for (double s : sig) {
      for (int ti = 0; ti <= 1; ++ti) {
        cplx pt{s, ti == 0 ? 0.0 : t_value(1, r.c)};
        SeriesEval c = F_closed(delta, pt, r, 1e-10);
        SeriesEval d = F_direct(delta, pt, r, 1e-10);
        double defect = std::abs(d.value - c.value) / std::abs(c.value);
        char name[96];
        std::snprintf(name, sizeof name, "identity alpha=%s sigma=%g t%c", al, s,
                      ti == 0 ? '0' : '1');
        cl.gate(name, defect, 1e-9);
        cl.gate(std::string(name) + " tail",
                (c.tail_bound + d.tail_bound) / std::abs(c.value), 1e-10);
      }
    }
  }
}

void suite_asymptotic(CheckList& cl, const FormTable& delta, double sigma_min) {
  std::vector<double> grid{0.2, 0.1, 0.05, 0.02, 0.01};
  if (sigma_min < 0.01) grid.push_back(sigma_min);
  AsymptoticReport ar = asym_ratio(delta, 1, parse_alpha("0/1"), grid);
  cl.gate("asymptotic slope+12.5", std::fabs(ar.fitted_slope + 12.5), 0.1);
  cplx last = ar.ratios.back();
  cl.gate("asymptotic |ratio|-1", std::fabs(std::abs(last) - 1.0), 0.02);
  cl.gate("asymptotic arg ratio", std::fabs(std::arg(last)), 0.03);
}

void suite_modular(CheckList& cl, const FormTable& delta) {
  const double us[] = {0.5, 1.0, 1.5, 2.0};
  const char* alphas[] = {"0/1", "1/2", "1/3"};
  for (const char* al : alphas)
    for (double u : us) {
      double defect = modular_check(delta, u, parse_alpha(al), 1e-10);
      char name[64];
      std::snprintf(name, sizeof name, "modular u=%g alpha=%s", u, al);
      cl.gate(name, defect, 1e-10);
    }
}

void suite_quadrature(CheckList& cl) {
  cl.gate("esn s=1 n=1 c=1", esn_quadrature_check({1, 0}, 1, 1), 1e-8);
  cl.gate("esn s=2 n=3 c=2", esn_quadrature_check({2, 0}, 3, 2), 1e-8);
  cl.gate("esn s=0.5+i n=2 c=1", esn_quadrature_check({0.5, 1}, 2, 1), 1e-8);
}

void suite_laplace(CheckList& cl, const FormTable& delta) {
  ReducedRational r0 = parse_alpha("0/1");
  try {
    LaplaceResult a = laplace_check(delta, {1, 0}, r0, 90, 1e-6);
    cl.gate("laplace s=1 Y=90", a.defect, 1e-6);
  } catch (const tail_budget_error& e) {
    cl.fail("laplace s=1 Y=90", e.what());
  }
  try {
    LaplaceResult b = laplace_check(delta, {1, 4 * kPi}, r0, 90, 1e-6);
    cl.gate("laplace s=1+4pi*i Y=90", b.defect, 1e-6);
  } catch (const tail_budget_error& e) {
    cl.fail("laplace s=1+4pi*i Y=90", e.what());
  }
}

void suite_progression(CheckList& cl, const FormTable& delta) {
  cl.gate("dft q=6 h=5 x=1e3", dft_decomposition_check(delta, 1e3, {6, 5}), 1e-10);
  cl.gate("dft q=12 h=7 x=1e4", dft_decomposition_check(delta, 1e4, {12, 7}), 1e-10);
  ProgressionEval p1 = F_progression(delta, {1, 0}, {2, 1}, 1e-10);
  cl.gate("routes s=1 q=2 h=1", p1.route_defect, 1e-9);
  ProgressionEval p2 = F_progression(delta, {0.5, 2}, {4, 3}, 1e-10);
  cl.gate("routes s=0.5+2i q=4 h=3", p2.route_defect, 1e-9);
  cl.gate("aggregate q=2 h=1 n=1",
          std::fabs(kloosterman_aggregate(2, 1, 1, 12) - (1.0 + 1.0 / 4096.0)), 1e-12);
  ResonanceTable r1 = resonance_analysis(delta, {1, 1}, 1, 0.01);
  cl.gate("resonance q=1 vs oracle", std::abs(r1.measured / r1.oracle - 1.0), 0.02);
  cl.gate("resonance q=1 vs kloosterman form", std::abs(r1.measured / r1.kloosterman_form - 1.0), 0.02);
  ResonanceTable r2 = resonance_analysis(delta, {2, 1}, 1, 0.01);
  cl.gate("resonance q=2 vs oracle", std::abs(r2.measured / r2.oracle - 1.0), 0.03);
  cl.info("resonance q=2 vs kloosterman form",
          "ratio=" + fmt_complex(r2.measured / r2.kloosterman_form) + " (reported, not gated)");
}

int cmd_verify(const Opts& o) {
  const std::vector<std::string> suites = {"identity", "asymptotic", "modular",
                                           "quadrature", "laplace",   "progression",
                                           "all"};
  bool known = false;
  for (auto& s : suites) known = known || s == o.suite;
  if (!known) {
    std::fprintf(stderr, "error: unknown suite '%s'; valid suites:", o.suite.c_str());
    for (auto& s : suites) std::fprintf(stderr, " %s", s.c_str());
    std::fprintf(stderr, "\n");
    return 2;
  }
  bool all = o.suite == "all";
  CheckList cl;
  long need = std::max(o.N, 400000L);
  FormTable delta = load_or_build(form_by_name("delta"), need, dir_flag(o));
  if (all || o.suite == "identity") suite_identity(cl, delta);
  if (all || o.suite == "asymptotic") suite_asymptotic(cl, delta, o.sigma_min);
  if (all || o.suite == "modular") suite_modular(cl, delta);
  if (all || o.suite == "quadrature") suite_quadrature(cl);
  if (all || o.suite == "laplace") suite_laplace(cl, delta);
  if (all || o.suite == "progression") suite_progression(cl, delta);
  for (auto& line : cl.lines) std::printf("%s\n", line.c_str());
  std::printf("%s: %zu checks, %d failures\n", o.suite.c_str(), cl.lines.size(), cl.failures);
  return cl.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Opts o;
  CLI::App app{"cusp form coefficient and generating series toolkit"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--form", o.form, "built-in form name");
    sub->add_option("-N,--order", o.N, "coefficient cache order");
    sub->add_option("--threads", o.threads, "OpenMP thread count (0 = default)");
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--cache-dir", o.cache_dir_flag, "coefficient cache directory");
  };

  CLI::App* coeffs = app.add_subcommand("coeffs", "materialize coefficients, write CSV");
  add_common(coeffs);
  coeffs->add_option("-o,--output", o.output, "CSV output path");

  CLI::App* sum = app.add_subcommand("sum", "twisted partial sum S(x, alpha)");
  add_common(sum);
  sum->add_option("--alpha", o.alpha, "rational twist a/c");
  sum->add_option("-x", o.x, "upper limit");
  sum->add_option("--theta", o.theta, "normalization exponent");

  CLI::App* scan = app.add_subcommand("scan", "oscillation scan of Re S(x, alpha)/x^theta");
  add_common(scan);
  scan->add_option("--alpha", o.alpha, "rational twist a/c");
  scan->add_option("-X", o.X, "scan upper limit");
  scan->add_option("--theta", o.theta, "normalization exponent");
  scan->add_option("--trace", o.trace, "CSV trace output path");

  CLI::App* fvalue = app.add_subcommand("fvalue", "evaluate F(s, alpha) by either route");
  add_common(fvalue);
  fvalue->add_option("--alpha", o.alpha, "rational twist a/c");
  fvalue->add_option("--sigma", o.sigma, "Re s");
  fvalue->add_option("--t", o.t, "Im s");
  fvalue->add_option("--t-index", o.t_index, "set Im s = 4 pi sqrt(n)/c");
  fvalue->add_option("--tol", o.tol, "relative tolerance");
  fvalue->add_option("--route", o.route, "evaluation route")
      ->check(CLI::IsMember({"both", "direct", "closed", "f1"}));

  CLI::App* asymfit = app.add_subcommand("asymfit", "boundary blow-up fit at t_n");
  add_common(asymfit);
  asymfit->add_option("--alpha", o.alpha, "rational twist a/c");
  asymfit->add_option("--t-index", o.t_index, "resonant index n");
  asymfit->add_option("--sigma-min", o.sigma_min, "smallest sigma");
  asymfit->add_option("--sigma-max", o.sigma_max, "largest sigma");
  asymfit->add_option("--points", o.grid_points, "grid size");

  CLI::App* kloo = app.add_subcommand("kloosterman", "Kloosterman/Ramanujan sums");
  add_common(kloo);
  kloo->add_option("-m", o.km, "first argument");
  kloo->add_option("-n", o.kn, "second argument");
  kloo->add_option("-c", o.kc, "modulus");
  kloo->add_flag("--aggregate", o.aggregate, "divisor aggregate over c | q");
  kloo->add_option("--mod", o.q, "aggregate modulus q");
  kloo->add_option("--res", o.h, "aggregate residue h");
  kloo->add_option("--t-index", o.t_index, "aggregate index n");

  CLI::App* prog = app.add_subcommand("progression", "arithmetic-progression machinery");
  add_common(prog);
  prog->add_option("--mod", o.q, "modulus q");
  prog->add_option("--res", o.h, "residue h in [1, q]");
  prog->add_option("-x", o.x, "partial-sum upper limit");
  prog->add_option("--alpha", o.alpha, "twist for --omega");
  prog->add_option("--sigma", o.sigma, "Re s for F(s; q, h)");
  prog->add_option("--t", o.t, "Im s for F(s; q, h)");
  prog->add_option("--t-index", o.t_index, "set Im s = 4 pi sqrt(n)");
  prog->add_option("--tol", o.tol, "relative tolerance");
  prog->add_flag("--fvalue", o.fprog, "evaluate F(s; q, h) by both routes");
  prog->add_flag("--closed-only", o.closed_only, "skip the restricted direct route");
  prog->add_flag("--lu", o.lu, "mean-square ratio over residues");
  prog->add_option("--omega", o.omega, "nonvanishing witness scan bound");
  prog->add_option("--resonance", o.resonance, "resonance table at index n");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify);
  verify->add_option("suite", o.suite, "identity|asymptotic|modular|quadrature|laplace|progression|all");
  verify->add_option("--sigma-min", o.sigma_min, "extend the asymptotic grid");
  verify->add_option("--tol", o.tol, "tolerance override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (o.threads > 0) omp_set_num_threads(o.threads);

  try {
    if (app.got_subcommand(coeffs)) return cmd_coeffs(o);
    if (app.got_subcommand(sum)) return cmd_sum(o);
    if (app.got_subcommand(scan)) return cmd_scan(o);
    if (app.got_subcommand(fvalue)) return cmd_fvalue(o);
    if (app.got_subcommand(asymfit)) return cmd_asymfit(o);
    if (app.got_subcommand(kloo)) return cmd_kloosterman(o);
    if (app.got_subcommand(prog)) return cmd_progression(o);
    if (app.got_subcommand(verify)) return cmd_verify(o);
  } catch (const coverage_error& e) {
    std::fprintf(stderr, "coverage error: %s\n", e.what());
    return 3;
  } catch (const tail_budget_error& e) {
    std::fprintf(stderr, "tail budget error: %s\n", e.what());
    return 3;
  } catch (const accuracy_error& e) {
    std::fprintf(stderr, "accuracy error: %s\n", e.what());
    return 1;
  } catch (const usage_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
