#ifndef CUSPSUM_GENSERIES_HPP
#define CUSPSUM_GENSERIES_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "cuspsum/forms.hpp"
#include "cuspsum/modarith.hpp"

namespace cuspsum {

/*
 * The twisted generating series and its closed form:
 *
 *   F(s, alpha) = sum_{n>=1} a_n e^{2 pi i n alpha} e^{-s sqrt n},  Re s > 0,
 *
 *   F(s, alpha) = s (8 pi / c)^k (Gamma(k+1/2)/sqrt(pi))
 *                 sum_{m>=1} a_m e^{-2 pi i m d / c} (s^2 + t_m^2)^{-(k+1/2)},
 *
 * with t_m = 4 pi sqrt(m) / c and (b, d) the companion of a/c.  Near the
 * boundary point i t_n the series blows up like sigma^{-k-1/2} with the
 * resonant-term constant carried by leading_scale below.
 */

using cplx = std::complex<double>;

struct SeriesEval {
  cplx value{0.0, 0.0};
  long terms_used = 0;
  double tail_bound = 0;      // certified truncation bound (modulus)
  double rounding_bound = 0;  // certified accumulation rounding bound
  int precision_level = 0;    // 0 double, 1 float128, 2 mpfr
  std::vector<std::string> warnings;
};

double t_value(long n, long long c);
double gamma_half_integer(unsigned k);  // Gamma(k + 1/2), exact recurrence

SeriesEval F_direct(const FormTable& tab, cplx s, const ReducedRational& r, double tol);
SeriesEval F_closed(const FormTable& tab, cplx s, const ReducedRational& r, double tol);
SeriesEval F1_eval(const FormTable& tab, cplx s, const ReducedRational& r, double tol);

// Restricted direct series sum_{n >= 1, n = h mod q} a_n e^{-s sqrt n},
// same certified truncation + precision ladder as F_direct.
SeriesEval F_restricted_direct(const FormTable& tab, cplx s, long long q, long long h,
                               double tol);

// B± = e^{±(1/2-k) pi i/2} (4 pi)^k Gamma(k+1/2) / sqrt(2 pi), verbatim.
std::pair<cplx, cplx> B_constants(unsigned k);

// Resonant-term constant Lambda±(n, c) = B± t_n^{-(k-1/2)}: the
// sigma^{-k-1/2} coefficient the closed form actually produces.  The
// t_n power is easy to drop when B± is quoted alone, but the closed
// form forces it; see README notes.
cplx leading_scale(unsigned k, long n, long long c, int sign);

// Lambda±(n,c) a_n e^{-2 pi i n d / c} c^{-k} sigma^{-k-1/2}.
cplx predicted_leading(const FormTable& tab, long n, const ReducedRational& r, double sigma,
                       int sign);

struct AsymptoticReport {
  std::vector<double> sigma_grid;
  std::vector<cplx> values;           // F_closed(sigma + i t_n, alpha)
  std::vector<cplx> ratios;           // value / predicted_leading (empty when a_n = 0)
  std::vector<double> abs_values;     // |value| (zero-branch boundedness data)
  double fitted_slope = 0;            // d log|F| / d log sigma, least squares
  cplx predicted_constant{0.0, 0.0};  // Lambda+(n,c) a_n e^{-2 pi i n d/c} c^{-k}
  bool zero_branch = false;           // a_n = 0
};
AsymptoticReport asym_ratio(const FormTable& tab, long n, const ReducedRational& r,
                            const std::vector<double>& sigma_grid);

// Relative defect of the quadrature evaluation of the kernel identity
//   e^{-s sqrt n} = s/sqrt(pi) int_0^inf u^{-1/2} e^{-u} e^{-s^2 n/(4u)} du
// after u = e^v compactification; the ray is rotated by -arg(s) so both
// exponentials decay for every s in the right half-plane.
double esn_quadrature_check(cplx s, long n, long long c);

struct LaplaceResult {
  cplx integral{0.0, 0.0};
  cplx reference{0.0, 0.0};
  double defect = 0;
  double tail_budget = 0;
};
// s int_0^Y S(y^2, alpha) e^{-s y} dy, piecewise exact; throws
// tail_budget_error when the certified tail at Y exceeds tol |F|.
// check_budget=false skips the gate (diagnostic use only).
LaplaceResult laplace_check(const FormTable& tab, cplx s, const ReducedRational& r, double Y,
                            double tol, bool check_budget = true);

// Relative defect between the two sides of the weight-k modular relation
//   sum a_n e^{2 pi i n a/c} e^{-2 pi n/(c u)} = u^k sum a_n e^{-2 pi i n d/c} e^{-2 pi n u/c}.
double modular_check(const FormTable& tab, double u, const ReducedRational& r, double tol);

// C_alpha = (8 pi/c)^k (Gamma(k+1/2)/sqrt pi) sum_m |a_m| t_m^{-(2k+1)}
// with certified tail; witnesses F(sigma, alpha) = O(sigma) on the real axis.
double real_axis_constant(const FormTable& tab, const ReducedRational& r);

}  // namespace cuspsum

#endif
