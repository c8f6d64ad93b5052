#pragma once

// Truncated Mercer series sum_n lambda_n phi_n(t) phi_n(s) for the half-line
// kernel. It shares no code with the closed-form evaluator and serves as its
// oracle.
//
// Off the diagonal the series cancels heavily: K(0, 20) is about 1e-169 for
// omega = 0.95 while the leading terms are O(1). kernel_mercer_extended runs
// the same recurrence in MPFR arithmetic with a working precision chosen from
// the observed cancellation.

#include <cmath>
#include <stdexcept>

#include "halfline/kernel.hpp"

namespace halfline {

enum class TailMode {
  absolute,  // stop when |term| < tail_tolerance
  relative,  // stop when |term| < tail_tolerance * |partial sum|
};

struct MercerTruncation {
  int max_terms = 2000;
  double tail_tolerance = 1e-14;
  TailMode mode = TailMode::absolute;

  MercerTruncation() = default;
  MercerTruncation(int max_terms_, double tail_tolerance_, TailMode mode_ = TailMode::absolute)
      : max_terms(max_terms_), tail_tolerance(tail_tolerance_), mode(mode_) {
    if (max_terms < 1) throw std::domain_error("MercerTruncation: max_terms must be >= 1");
    if (!(tail_tolerance >= 0.0)) {
      throw std::domain_error("MercerTruncation: tail_tolerance must be >= 0");
    }
  }
};

/// Number of consecutive terms that must fall below the tail tolerance before
/// the sum stops. A single small term can be a zero crossing of L_n.
inline constexpr int kMercerStopWindow = 3;

struct MercerResult {
  double value = 0.0;
  double log_value = 0.0;  // ln |value|, computed before rounding to double
  int terms_used = 0;
  bool cap_hit = false;
  bool converged = false;
  int digits = 16;  // decimal working precision
};

/// Double-precision Mercer sum.
MercerResult kernel_mercer(const HalfLineParams& p, const MercerTruncation& trunc, double t,
                           double s);

/// Mercer sum in MPFR arithmetic. min_digits is the starting precision; it is
/// raised until the working precision exceeds the observed cancellation by at
/// least 25 digits.
MercerResult kernel_mercer_extended(const HalfLineParams& p, const MercerTruncation& trunc,
                                    double t, double s, int min_digits = 40);

namespace detail {

template <class Real>
struct MercerSum {
  Real value;
  Real max_abs_term;
  int terms_used = 0;
  bool cap_hit = false;
  bool converged = false;
};

// lambda_n phi_n(t) phi_n(s) = C omega^n r_n L_n(t) L_n(s) with
// C = (1-omega) (1-2delta)^{-(alpha+1)} e^{-delta(t+s)} and
// r_n = Gamma(alpha+1) Gamma(n+1) / Gamma(n+alpha+1) = prod_{j<=n} j/(j+alpha).
template <class Real>
MercerSum<Real> mercer_sum(const Real& alpha, const Real& delta, const Real& omega,
                           const MercerTruncation& trunc, const Real& t, const Real& s) {
  using std::abs;
  using std::exp;
  using std::log;
  const Real one(1);
  const Real c = (one - omega) * exp(-(alpha + one) * log(one - 2 * delta) - delta * (t + s));

  MercerSum<Real> out{Real(0), Real(0)};
  Real lt_prev(0), ls_prev(0);
  Real lt(1), ls(1);
  Real weight = c;  // C omega^n r_n
  int below = 0;
  for (int n = 0; n < trunc.max_terms; ++n) {
    if (n == 1) {
      lt_prev = 1;
      ls_prev = 1;
      lt = one + alpha - t;
      ls = one + alpha - s;
    } else if (n > 1) {
      const int k = n - 1;
      Real nt = ((2 * k + 1 + alpha - t) * lt - (k + alpha) * lt_prev) / (k + 1);
      Real ns = ((2 * k + 1 + alpha - s) * ls - (k + alpha) * ls_prev) / (k + 1);
      lt_prev = lt;
      ls_prev = ls;
      lt = nt;
      ls = ns;
    }
    if (n > 0) weight = weight * omega * n / (n + alpha);
    const Real term = weight * lt * ls;
    out.value += term;
    out.terms_used = n + 1;
    const Real mag = abs(term);
    if (mag > out.max_abs_term) out.max_abs_term = mag;
    const Real limit = trunc.mode == TailMode::absolute ? Real(trunc.tail_tolerance)
                                                        : Real(trunc.tail_tolerance) * abs(out.value);
    below = mag < limit ? below + 1 : 0;
    if (below >= kMercerStopWindow) {
      out.converged = true;
      return out;
    }
  }
  out.cap_hit = true;
  return out;
}

}  // namespace detail

}  // namespace halfline
