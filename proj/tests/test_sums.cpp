#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <omp.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cuspsum/errors.hpp"
#include "cuspsum/sums.hpp"

using namespace cuspsum;

static const FormTable& delta_tab() {
  static FormTable t = make_table(form_by_name("delta"), 100000);
  return t;
}

static ReducedRational alpha(long long a, long long c) { return reduce_alpha(a, c); }

// ----------------------------------------------------------------------

TEST_CASE("twist tables track sin/cos") {
  for (long long c : {1LL, 4LL, 5LL, 97LL, 1000LL}) {
    ReducedRational r = alpha(1, c);
    TwistTable tw = make_twist_table(r);
    REQUIRE(tw.re.size() == static_cast<size_t>(r.c));
    for (long long j = 0; j < r.c; ++j) {
      double w = 2.0 * M_PI * static_cast<double>(r.a) * static_cast<double>(j) /
                 static_cast<double>(r.c);
      CHECK(std::fabs(tw.re[static_cast<size_t>(j)] - std::cos(w)) < 1e-13);
      CHECK(std::fabs(tw.im[static_cast<size_t>(j)] - std::sin(w)) < 1e-13);
    }
  }
}

TEST_CASE("twisted partial sums at small x") {
  const FormTable& tab = delta_tab();
  // empty sum below the first index
  CHECK(std::abs(twisted_sum(tab, 0.5, alpha(0, 1))) == 0.0);
  // S(3, 0) = 1 - 24 + 252
  std::complex<double> s3 = twisted_sum(tab, 3.0, alpha(0, 1));
  CHECK(s3.real() == doctest::Approx(229.0).epsilon(1e-14));
  CHECK(s3.imag() == 0.0);
  // S(2, 1/2) = -tau(1) + tau(2)
  std::complex<double> s2 = twisted_sum(tab, 2.0, alpha(1, 2));
  CHECK(s2.real() == doctest::Approx(-25.0).epsilon(1e-12));
  CHECK(std::fabs(s2.imag()) < 1e-12);
  // non-integer cutoffs floor
  CHECK(twisted_sum(tab, 3.99, alpha(0, 1)).real() == doctest::Approx(229.0));
  CHECK_THROWS_AS(twisted_sum(tab, -1.0, alpha(0, 1)), usage_error);
  CHECK_THROWS_AS(twisted_sum(tab, 2e5, alpha(0, 1)), coverage_error);
}

TEST_CASE("exact untwisted sum") {
  const FormTable& tab = delta_tab();
  CHECK(twisted_sum_exact(tab, 3.0) == 229);
  CHECK(twisted_sum_exact(tab, 1600.0) == mpz_class("94482000064782930"));
  // double route tracks the exact route
  std::complex<double> s = twisted_sum(tab, 1600.0, alpha(0, 1));
  double rel = std::fabs(s.real() - 94482000064782930.0) / 94482000064782930.0;
  CHECK(rel < 1e-12);
  CHECK(std::fabs(s.imag()) < 1e-9);
}

TEST_CASE("progression sums") {
  const FormTable& tab = delta_tab();
  // tau(1) + tau(3) + tau(5)
  CHECK(progression_sum_exact(tab, 5.0, 2, 1) == 5083);
  CHECK(progression_sum(tab, 5.0, 2, 1) == doctest::Approx(5083.0));
  // residue h = q picks the 0 class
  CHECK(progression_sum_exact(tab, 6.0, 3, 3) == niebur_tau(3) + niebur_tau(6));
  CHECK_THROWS_AS(progression_sum_exact(tab, 10.0, 2, 3), usage_error);
  CHECK_THROWS_AS(progression_sum_exact(tab, 10.0, 2, 0), usage_error);
  CHECK_THROWS_AS(progression_sum_exact(tab, 10.0, 0, 1), usage_error);

  SUBCASE("classes partition the full sum") {
    mpz_class total = 0;
    for (long long h = 1; h <= 6; ++h) total += progression_sum_exact(tab, 1000.0, 6, h);
    CHECK(total == twisted_sum_exact(tab, 1000.0));
  }
  SUBCASE("chunked equals serial exactly") {
    CHECK(progression_sum_exact(tab, 12345.7, 7, 3) ==
          reference::progression_sum_serial(tab, 12345.7, 7, 3));
    CHECK(progression_sum_exact(tab, 99999.0, 12, 12) ==
          reference::progression_sum_serial(tab, 99999.0, 12, 12));
  }
}

TEST_CASE("normalized progression sum") {
  const FormTable& tab = delta_tab();
  // x=2, q=1, h=1: 1/1^5.5 + tau(2)/2^5.5
  double expect = 1.0 - 24.0 / std::pow(2.0, 5.5);
  CHECK(normalized_progression_sum(tab, 2.0, 1, 1) == doctest::Approx(expect).epsilon(1e-14));
  double v53 = normalized_progression_sum(tab, 9.0, 5, 3);
  double manual = niebur_tau(3).get_d() / std::pow(3.0, 5.5) +
                  niebur_tau(8).get_d() / std::pow(8.0, 5.5);
  CHECK(v53 == doctest::Approx(manual).epsilon(1e-13));
}

TEST_CASE("sum records normalize the real part") {
  const FormTable& tab = delta_tab();
  SumRecord rec = sum_record(tab, 2.0, alpha(0, 1), 5.75);
  CHECK(rec.value.real() == doctest::Approx(-23.0));
  CHECK(rec.normalized == doctest::Approx(-23.0 / std::pow(2.0, 5.75)).epsilon(1e-14));
  CHECK(rec.theta == 5.75);
}

TEST_CASE("parallel and serial twisted sums agree") {
  const FormTable& tab = delta_tab();
  for (auto r : {alpha(0, 1), alpha(1, 3), alpha(2, 5)}) {
    std::complex<double> par = twisted_sum(tab, 1e5, r);
    std::complex<double> ser = reference::twisted_sum_serial(tab, 1e5, r);
    double scale = std::max(1.0, std::abs(ser));
    CHECK(std::abs(par - ser) / scale < 1e-12);
  }
}

TEST_CASE("twisted sums are invariant under the thread count") {
  const FormTable& tab = delta_tab();
  ReducedRational r = alpha(1, 3);
  omp_set_num_threads(1);
  std::complex<double> s1 = twisted_sum(tab, 1e5, r);
  mpz_class p1 = progression_sum_exact(tab, 1e5, 7, 3);
  omp_set_num_threads(4);
  std::complex<double> s4 = twisted_sum(tab, 1e5, r);
  mpz_class p4 = progression_sum_exact(tab, 1e5, 7, 3);
  omp_set_num_threads(omp_get_num_procs());
  // fixed chunk shapes and a deterministic combine: bitwise equal
  CHECK(s1.real() == s4.real());
  CHECK(s1.imag() == s4.imag());
  CHECK(p1 == p4);
}

TEST_CASE("oscillation scan at X = 1") {
  const FormTable& tab = delta_tab();
  ScanReport rep = scan_extrema(tab, alpha(0, 1), 1, 5.75);
  CHECK(rep.max_value == 1.0);
  CHECK(rep.min_value == 1.0);
  CHECK(rep.argmax == 1);
  CHECK(rep.sign_changes == 0);
  ScanReport rep3 = scan_extrema(tab, alpha(1, 3), 1, 5.75);
  CHECK(rep3.max_value == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("oscillation scan reproduces the X = 1e5 landscape") {
  const FormTable& tab = delta_tab();
  ScanReport r0 = scan_extrema(tab, alpha(0, 1), 100000, 5.75);
  CHECK(r0.max_value == 1.0);
  CHECK(r0.argmax == 1);
  CHECK(r0.min_value == doctest::Approx(-0.66718315).epsilon(1e-5));
  CHECK(r0.argmin == 24901);
  CHECK(r0.sign_changes == 5593);

  ScanReport r3 = scan_extrema(tab, alpha(1, 3), 100000, 5.75);
  CHECK(r3.max_value == doctest::Approx(0.66592136).epsilon(1e-5));
  CHECK(r3.argmax == 94139);
  CHECK(r3.min_value == doctest::Approx(-0.62201024).epsilon(1e-5));
  CHECK(r3.argmin == 10727);
  CHECK(r3.sign_changes == 3987);

  CHECK_THROWS_AS(scan_extrema(tab, alpha(0, 1), 200000, 5.75), coverage_error);
  CHECK_THROWS_AS(scan_extrema(tab, alpha(0, 1), 0, 5.75), usage_error);
  CHECK_THROWS_AS(scan_extrema(tab, alpha(0, 1), 10, 0.0), usage_error);
}

TEST_CASE("scan reruns are byte-identical") {
  const FormTable& tab = delta_tab();
  ScanReport a = scan_extrema(tab, alpha(1, 3), 20000, 5.75);
  ScanReport b = scan_extrema(tab, alpha(1, 3), 20000, 5.75);
  CHECK(scan_report_line(a) == scan_report_line(b));
  CHECK(scan_report_line(a).find("X=20000 alpha=1/3") == 0);

  std::string p1 = "scan_trace_a.csv", p2 = "scan_trace_b.csv";
  scan_extrema(tab, alpha(1, 3), 500, 5.75, p1);
  scan_extrema(tab, alpha(1, 3), 500, 5.75, p2);
  std::ifstream f1(p1), f2(p2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(s1.str().substr(0, 20) == "x,re,im,normalized\n1");
  // 500 rows + header
  long lines = 0;
  for (char ch : s1.str())
    if (ch == '\n') ++lines;
  CHECK(lines == 501);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}
