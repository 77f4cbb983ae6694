#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "cuspsum/errors.hpp"
#include "cuspsum/modarith.hpp"

using namespace cuspsum;

static bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

// ----------------------------------------------------------------------

TEST_CASE("twist reduction") {
  auto r = reduce_alpha(2, 4);
  CHECK(r.a == 1);
  CHECK(r.c == 2);
  r = reduce_alpha(7, 3);
  CHECK(r.a == 1);
  CHECK(r.c == 3);
  r = reduce_alpha(0, 1);
  CHECK(r.a == 0);
  CHECK(r.c == 1);
  r = reduce_alpha(-1, 3);
  CHECK(r.a == 2);
  CHECK(r.c == 3);
  r = reduce_alpha(5, -10);
  CHECK(r.a == 1);
  CHECK(r.c == 2);
  r = reduce_alpha(6, 3);  // integer twist collapses to 0/1
  CHECK(r.a == 0);
  CHECK(r.c == 1);
  CHECK_THROWS_AS(reduce_alpha(1, 0), usage_error);
}

TEST_CASE("companion completes a unimodular matrix") {
  Companion co = companion(ReducedRational{0, 1});
  CHECK(co.b == -1);
  CHECK(co.d == 0);
  co = companion(ReducedRational{1, 2});
  CHECK(co.b == 0);
  CHECK(co.d == 1);
  co = companion(ReducedRational{2, 5});
  CHECK(co.b == 1);
  CHECK(co.d == 3);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> cv(2, 400), av(1, 1000);
  for (int it = 0; it < 200; ++it) {
    ReducedRational r = reduce_alpha(av(rng), cv(rng));
    Companion k = companion(r);
    CHECK(r.a * k.d - k.b * r.c == 1);
    if (r.c > 1) {
      CHECK(k.d >= 0);
      CHECK(k.d < r.c);
    }
  }
}

TEST_CASE("alpha parsing") {
  ReducedRational r = parse_alpha("1/3");
  CHECK(r.a == 1);
  CHECK(r.c == 3);
  r = parse_alpha("0");
  CHECK(r.c == 1);
  r = parse_alpha("2");  // integer reduces to 0/1
  CHECK(r.a == 0);
  CHECK(r.c == 1);
  r = parse_alpha("-1/3");
  CHECK(r.a == 2);
  CHECK(r.c == 3);
  r = parse_alpha("10/12");
  CHECK(r.a == 5);
  CHECK(r.c == 6);
  CHECK_THROWS_AS(parse_alpha("1/0"), usage_error);
  CHECK_THROWS_AS(parse_alpha("x"), usage_error);
  CHECK_THROWS_AS(parse_alpha("1/"), usage_error);
  CHECK_THROWS_AS(parse_alpha(""), usage_error);
  CHECK_THROWS_AS(parse_alpha("1/3/5"), usage_error);
}

TEST_CASE("gcd, inverse, phi, moebius") {
  CHECK(gcd_ll(12, 18) == 6);
  CHECK(gcd_ll(-12, 18) == 6);
  CHECK(gcd_ll(0, 7) == 7);
  CHECK(mod_inverse(3, 7) == 5);
  CHECK(mod_inverse(1, 2) == 1);
  CHECK_THROWS_AS(mod_inverse(2, 4), usage_error);
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(97) == 96);
  CHECK(moebius(1) == 1);
  CHECK(moebius(2) == -1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(6) == 1);
  CHECK(moebius(30) == -1);
}

TEST_CASE("kloosterman special values") {
  CHECK(kloosterman(0, 0, 4) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(kloosterman(1, 0, 3) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(kloosterman(1, 1, 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kloosterman(5, 3, 1) == 1.0);
  for (long long c = 1; c <= 50; ++c)
    CHECK(kloosterman(0, 0, c) ==
          doctest::Approx(static_cast<double>(euler_phi(c))).epsilon(1e-12));
  CHECK_THROWS_AS(kloosterman(1, 1, 0), usage_error);
}

TEST_CASE("kloosterman symmetry and periodicity") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long long> cv(1, 100), mv(-200, 200);
  for (int it = 0; it < 200; ++it) {
    long long c = cv(rng), m = mv(rng), n = mv(rng);
    double kmn = kloosterman(m, n, c);
    double knm = kloosterman(n, m, c);
    CHECK(std::fabs(kmn - knm) <= 1e-8 * std::max(1.0, std::fabs(kmn)));
    double kper = kloosterman(m + c, n - 3 * c, c);
    CHECK(std::fabs(kmn - kper) <= 1e-8 * std::max(1.0, std::fabs(kmn)));
  }
}

TEST_CASE("kloosterman Weil bound at primes") {
  for (long long p = 2; p <= 97; ++p) {
    if (!is_prime(p)) continue;
    double k = kloosterman(1, 1, p);
    CHECK(std::fabs(k) <= 2.0 * std::sqrt(static_cast<double>(p)) + 1e-9);
  }
}

TEST_CASE("ramanujan sum against the moebius-phi formula") {
  for (long long c = 1; c <= 60; ++c)
    for (long long h = 0; h <= 12; ++h)
      CHECK(ramanujan_sum(c, h) ==
            doctest::Approx(ramanujan_sum_formula(c, h)).epsilon(1e-10));
  // R_c(0) = phi(c)
  CHECK(ramanujan_sum(36, 0) == doctest::Approx(12.0).epsilon(1e-12));
}
