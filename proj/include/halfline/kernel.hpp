#pragma once

// The half-line covariance kernel on [0, inf) built from Laguerre
// eigenfunctions phi_n(t) = gamma_n e^{-delta t} L_n^{(alpha)}(t) and
// geometric eigenvalues lambda_n = (1 - omega) omega^n.
//
// The closed form is
//
//   K(t,s) = Gamma(alpha+1) / (1-2delta)^{alpha+1} (t s omega)^{-alpha/2}
//            exp(-(t+s)(delta + omega/(1-omega))) I_alpha(2 sqrt(t s omega)/(1-omega))
//
// and is evaluated in log space. The Mercer series is available as an
// independent check (see mercer.hpp).

#include <utility>

namespace halfline {

/// Free parameters of the half-line kernel. Immutable; validated on
/// construction (alpha > -1, 0 < delta < 1/2, 0 < omega < 1).
class HalfLineParams {
 public:
  HalfLineParams(double alpha, double delta, double omega);

  double alpha() const { return alpha_; }
  double delta() const { return delta_; }
  double omega() const { return omega_; }

  // Cached derived quantities used by the evaluators.
  double log_gamma_alpha1() const { return log_gamma_alpha1_; }  // ln Gamma(alpha+1)
  double log_one_minus_2delta() const { return log_1m2d_; }      // ln(1 - 2 delta)
  double decay_rate() const { return decay_; }                   // delta + omega/(1-omega)

  /// delta = sqrt(omega)/(1+sqrt(omega)), the value at which the long-range
  /// behaviour has no sqrt(ts) cross term.
  static double balanced_delta(double omega);

 private:
  double alpha_;
  double delta_;
  double omega_;
  double log_gamma_alpha1_;
  double log_1m2d_;
  double decay_;
};

/// lambda_n = (1 - omega) omega^n.
double eigenvalue(const HalfLineParams& p, int n);

/// gamma_n, the constant making phi_n orthonormal under the weight rho.
double normalization(const HalfLineParams& p, int n);

/// phi_n(t) = gamma_n e^{-delta t} L_n^{(alpha)}(t).
double eigenfunction(const HalfLineParams& p, int n, double t);

/// rho(t) = t^alpha e^{-(1-2delta)t} (1-2delta)^{alpha+1} / Gamma(alpha+1).
/// t = 0 is a domain error when alpha < 0.
double weight(const HalfLineParams& p, double t);

/// ln K(t,s), finite for all finite t, s >= 0. Below a small Bessel argument
/// the (ts omega)^{-alpha/2} and I_alpha factors are combined analytically so
/// the origin is not an indeterminate form.
double kernel_log_value(const HalfLineParams& p, double t, double s);

/// exp(kernel_log_value). Raises std::overflow_error when the value is not
/// representable as a finite double.
double kernel_value(const HalfLineParams& p, double t, double s);

/// Argument 2 sqrt(t s omega)/(1 - omega) below which the fused small-argument
/// branch of kernel_log_value is used.
inline constexpr double kSmallBesselArgument = 1e-6;

/// Limiting form as t -> 0 (or s -> 0):
///   (1-omega)^{-alpha} (1-2delta)^{-(alpha+1)} exp(-(t+s)(delta + omega/(1-omega))).
double kernel_limit_zero(const HalfLineParams& p, double t, double s);

/// Large-argument form, from the leading Hankel term of I_alpha. Requires
/// t, s > 0.
double kernel_limit_infinity(const HalfLineParams& p, double t, double s);

/// Coefficient c of the -2 c sqrt(ts) term in the exponent of
/// kernel_limit_infinity: delta - sqrt(omega)/(1+sqrt(omega)).
double cross_term_coefficient(const HalfLineParams& p);

struct Maximum {
  double t_star;
  double value;
};

/// Maximizer of K(., s) over t >= 0: coarse scan of [0, 4(s+1)] followed by
/// golden-section refinement to |dt| <= 1e-8.
Maximum max_over_t(const HalfLineParams& p, double s);

}  // namespace halfline
