#pragma once

// Scalar special functions used by the half-line kernel: log-gamma, the
// exponentially scaled modified Bessel function of the first kind, and the
// generalized Laguerre polynomials.
//
// Every function here is a pure function of its arguments. Invalid arguments
// raise std::domain_error.

#include <vector>

namespace halfline::specfun {

/// ln Gamma(x) for finite x > 0.
///
/// Accurate to a few ulps of the result over (0, 1e6], including the
/// neighbourhoods of the zeros at x = 1 and x = 2.
double log_gamma(double x);

/// e^{-u} I_alpha(u) for alpha > -1, u >= 0.
///
/// At u = 0 the result is 1 for alpha = 0 and 0 for alpha > 0; for alpha < 0
/// I_alpha diverges at the origin and a domain error is raised.
double bessel_i_scaled(double alpha, double u);

/// ln I_alpha(u), assembled as u + ln(e^{-u} I_alpha(u)) so that no
/// intermediate overflows. Returns -inf at u = 0 for alpha > 0.
double log_bessel_i(double alpha, double u);

/// Argument above which the scaled Bessel evaluator switches from the
/// ascending series to the Hankel expansion.
double bessel_switchover(double alpha);

/// Degree and parameter of a generalized Laguerre polynomial L_n^{(alpha)}.
struct LaguerreOrder {
  int n;
  double alpha;

  LaguerreOrder(int degree, double alpha_param);
};

/// L_n^{(alpha)}(t) by the forward three-term recurrence.
double laguerre(const LaguerreOrder& order, double t);

/// [L_0^{(alpha)}(t), ..., L_{max_n}^{(alpha)}(t)]. Element k is bit-identical
/// to laguerre({k, alpha}, t).
std::vector<double> laguerre_sequence(int max_n, double alpha, double t);

namespace detail {

// The two evaluation regimes of ln(e^{-u} I_alpha(u)), exposed so the
// switchover can be tested. Both require u > 0.
double log_bessel_i_scaled_series(double alpha, double u);
double log_bessel_i_scaled_hankel(double alpha, double u);

}  // namespace detail

}  // namespace halfline::specfun
