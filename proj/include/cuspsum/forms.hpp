#ifndef CUSPSUM_FORMS_HPP
#define CUSPSUM_FORMS_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cuspsum/intseries.hpp"

namespace cuspsum {

/*
 * Level-1 cusp forms assembled from the standard generators
 *
 *   Delta = q prod (1-q^n)^24,   E4 = 1 + 240 sum sigma_3(n) q^n,
 *   E6 = 1 - 504 sum sigma_5(n) q^n,
 *
 * as integer combinations  sum_i  coeff_i Delta^{j_i} E4^{a_i} E6^{b_i}
 * with 12 j + 4 a + 6 b = k and j >= 1 in every term, so the q^0
 * coefficient vanishes and the expansion has integer coefficients.
 */
struct RecipeTerm {
  mpz_class coeff;
  unsigned dpow = 1;   // exponent of Delta
  unsigned e4pow = 0;  // exponent of E4
  unsigned e6pow = 0;  // exponent of E6
};

struct CuspForm {
  std::string name;
  unsigned weight = 12;
  std::vector<RecipeTerm> terms;
};

// Built-in forms: "delta" (k=12), "delta_e4" (k=16, Delta*E4),
// "w24_zero2" (k=24, Delta*E4^3 - 696 Delta^2, second coefficient zero).
CuspForm form_by_name(const std::string& name);
std::vector<std::string> form_names();

// eta(q) / q^{1/24}: pentagonal-number expansion, coefficients in {-1,0,1}.
IntSeries eta_coeffs(long order);

// E4 or E6 by divisor-power sieve; weight must be 4 or 6.
IntSeries eisenstein_coeffs(unsigned weight, long order);

// Coefficients a_0..a_N of the recipe; validates weights and j >= 1 and
// rejects recipes whose expansion is identically zero up to order N.
IntSeries form_coeffs(const CuspForm& f, long N);

// Independent oracle for Delta: Niebur's recursion
//   tau(n) = n^4 sigma(n) - 24 sum_{m<n} m^2 (35 m^2 - 52 m n + 18 n^2)
//                                       sigma(m) sigma(n-m).
mpz_class niebur_tau(long n);

/*
 * Coefficient table handed to every evaluator: a[n] for 1 <= n <= N with
 * a double view and the Hecke envelope constant
 *
 *   C = 2 max_n |a_n| / n^{k/2}   over the cached range,
 *
 * so |a_n| <= C n^{k/2} holds with margin on the whole table.
 */
struct FormTable {
  CuspForm form;
  long N = 0;
  std::vector<mpz_class> a;   // index 0 unused
  std::vector<double> ad;     // double view (rounded), index 0 unused
  std::vector<double> ad1;    // first residual: a - ad
  std::vector<double> ad2;    // second residual: a - ad - ad1
  double hecke_c = 0.0;

  unsigned weight() const { return form.weight; }
  double coeff(long n) const { return ad[static_cast<size_t>(n)]; }
};

FormTable make_table(const CuspForm& f, long N);
FormTable table_from_coeffs(const CuspForm& f, IntSeries&& s);

// (sum_{n<=x} a_n^2) / x^k, exact integer numerator, one final division.
double rankin_ratio(const FormTable& tab, double x);

}  // namespace cuspsum

#endif
