#pragma once

#include <functional>

#include "turnpike/model.hpp"

namespace turnpike {

struct QuadResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int subdivisions = 0;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int initial_panels = 1;
    int max_intervals = 65536;  // ~10^6 integrand evaluations
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7-15) quadrature of f over [a, b]; b < a
/// is allowed and flips the sign. Throws NumericalError when the subdivision
/// cap is hit before the error target, or on a non-finite integrand value.
QuadResult adaptive_quad(const Integrand& f, double a, double b, double tol = 1e-10);
QuadResult adaptive_quad(const Integrand& f, double a, double b, const QuadOptions& opts);

/// Integral of (zeta(s,0)+1)/(s zeta(s,0)) over [a, b]; the removable
/// singularity at s = 0 is bridged linearly across |s| < 1e-6.
double slow_regular_integral(const ZetaFn& zeta, double a, double b, double tol = 1e-10);

/// p.v. integral of 1/(s zeta(s,0)) over [x_out_b, x_in_b], x_out_b < 0 < x_in_b,
/// as regular part + log(-x_out_b / x_in_b).
double pv_slow(const ZetaFn& zeta, double x_out_b, double x_in_b, double tol = 1e-10);

/// Closed form of p.v. int_R s/P(s) ds for P(s) = l0 + l1 s - s^2.
double pv_fast_quadratic(double lambda0, double lambda1);

/// Same principal value by quadrature: int_{-1}^{1} s/P + int_{|s|>=1} (P+s^2)/(sP),
/// tails mapped to (0, 1] by s = +-1/u. Requires n = 1.
double pv_fast_numeric(const PolyP& p, double tol = 1e-10);

/// int_0^1 s/P ds + int_1^inf (P+s^2)/(sP) ds for n = 1: the positive-side
/// half of the regularized fast integral, as it enters the value of log y at x = 0.
double fast_regular_positive(const PolyP& p, double tol = 1e-10);

enum class Side { positive, negative };

/// int_0^inf v/P(v) dv (positive) or int_{-inf}^0 v/P(v) dv (negative); n >= 2.
double half_line_integral(const PolyP& p, Side side, double tol = 1e-10);

/// int_R v^k / P(v)^m dv. Requires 2 n m - k >= 2 for absolute convergence.
double whole_line_moment(const PolyP& p, int k, int m, double tol = 1e-10);

/// int_{x_in}^{x_out} h/f (s) ds, the classical slow divergence integral.
double classical_sdi(const Integrand& h_over_f, double x_in, double x_out, double tol = 1e-10);

}  // namespace turnpike
