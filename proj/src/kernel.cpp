#include "halfline/kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "halfline/specfun.hpp"

namespace halfline {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

void check_time(double t, const char* name) {
  require(std::isfinite(t) && t >= 0.0, std::string(name) + " must be finite and >= 0");
}

}  // namespace

HalfLineParams::HalfLineParams(double alpha, double delta, double omega)
    : alpha_(alpha), delta_(delta), omega_(omega) {
  require(std::isfinite(alpha) && alpha > -1.0,
          "alpha must be > -1 (got " + std::to_string(alpha) + ")");
  require(std::isfinite(delta) && delta > 0.0 && delta < 0.5,
          "delta must lie strictly between 0 and 1/2 (got " + std::to_string(delta) + ")");
  require(std::isfinite(omega) && omega > 0.0 && omega < 1.0,
          "omega must lie strictly between 0 and 1 (got " + std::to_string(omega) + ")");
  log_gamma_alpha1_ = specfun::log_gamma(alpha + 1.0);
  log_1m2d_ = std::log1p(-2.0 * delta);
  decay_ = delta + omega / (1.0 - omega);
}

double HalfLineParams::balanced_delta(double omega) {
  const double r = std::sqrt(omega);
  return r / (1.0 + r);
}

double eigenvalue(const HalfLineParams& p, int n) {
  require(n >= 0, "eigenvalue: n must be >= 0");
  return (1.0 - p.omega()) * std::pow(p.omega(), n);
}

double normalization(const HalfLineParams& p, int n) {
  require(n >= 0, "normalization: n must be >= 0");
  const double a = p.alpha();
  const double log_sq = specfun::log_gamma(n + 1.0) - specfun::log_gamma(n + a + 1.0) +
                        p.log_gamma_alpha1() - (a + 1.0) * p.log_one_minus_2delta();
  return std::exp(0.5 * log_sq);
}

double eigenfunction(const HalfLineParams& p, int n, double t) {
  check_time(t, "eigenfunction: t");
  return normalization(p, n) * std::exp(-p.delta() * t) *
         specfun::laguerre(specfun::LaguerreOrder(n, p.alpha()), t);
}

double weight(const HalfLineParams& p, double t) {
  check_time(t, "weight: t");
  const double a = p.alpha();
  const double scale = std::exp((a + 1.0) * p.log_one_minus_2delta() - p.log_gamma_alpha1());
  if (t == 0.0) {
    require(a >= 0.0, "weight: rho(0) diverges for alpha < 0");
    return a == 0.0 ? scale : 0.0;
  }
  return std::exp(a * std::log(t) - (1.0 - 2.0 * p.delta()) * t) * scale;
}

double kernel_log_value(const HalfLineParams& p, double t, double s) {
  check_time(t, "kernel: t");
  check_time(s, "kernel: s");
  const double a = p.alpha();
  const double w = p.omega();
  const double tsw = t * s * w;
  const double u = 2.0 * std::sqrt(tsw) / (1.0 - w);
  const double base = -(a + 1.0) * p.log_one_minus_2delta() - (t + s) * p.decay_rate();
  if (u < kSmallBesselArgument) {
    // -(a/2) ln(tsw) + ln I_a(u) = -a ln(1-w) - ln Gamma(a+1) + u^2/(4(a+1)) + O(u^4);
    // the ln Gamma(a+1) terms cancel exactly.
    return base - a * std::log1p(-w) + u * u / (4.0 * (a + 1.0));
  }
  return p.log_gamma_alpha1() + base - 0.5 * a * std::log(tsw) + specfun::log_bessel_i(a, u);
}

double kernel_value(const HalfLineParams& p, double t, double s) {
  const double lv = kernel_log_value(p, t, s);
  const double v = std::exp(lv);
  if (!std::isfinite(v)) {
    throw std::overflow_error("kernel_value: K(" + std::to_string(t) + ", " + std::to_string(s) +
                              ") = exp(" + std::to_string(lv) + ") overflows");
  }
  return v;
}

double kernel_limit_zero(const HalfLineParams& p, double t, double s) {
  check_time(t, "kernel_limit_zero: t");
  check_time(s, "kernel_limit_zero: s");
  const double a = p.alpha();
  return std::exp(-a * std::log1p(-p.omega()) - (a + 1.0) * p.log_one_minus_2delta() -
                  (t + s) * p.decay_rate());
}

double cross_term_coefficient(const HalfLineParams& p) {
  return p.delta() - HalfLineParams::balanced_delta(p.omega());
}

double kernel_limit_infinity(const HalfLineParams& p, double t, double s) {
  require(std::isfinite(t) && t > 0.0, "kernel_limit_infinity: t must be > 0");
  require(std::isfinite(s) && s > 0.0, "kernel_limit_infinity: s must be > 0");
  const double a = p.alpha();
  const double w = p.omega();
  const double tsw = t * s * w;
  const double log_prefactor = p.log_gamma_alpha1() - std::log(2.0) -
                               (a + 1.0) * p.log_one_minus_2delta() +
                               0.5 * (std::log1p(-w) - std::log(std::numbers::pi) -
                                      (0.5 + a) * std::log(tsw));
  const double root_gap = std::sqrt(t) - std::sqrt(s);
  const double exponent =
      -p.decay_rate() * root_gap * root_gap - 2.0 * cross_term_coefficient(p) * std::sqrt(t * s);
  return std::exp(log_prefactor + exponent);
}

Maximum max_over_t(const HalfLineParams& p, double s) {
  check_time(s, "max_over_t: s");
  constexpr int kScan = 200;
  const double hi = 4.0 * (s + 1.0);
  const double step = hi / (kScan - 1);
  // Compare in log space; K can underflow far from its peak.
  auto f = [&](double t) { return kernel_log_value(p, t, s); };

  int best = 0;
  double best_val = f(0.0);
  for (int i = 1; i < kScan; ++i) {
    const double v = f(i * step);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }

  double a = std::max(0.0, (best - 1) * step);
  double b = std::min(hi, (best + 1) * step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > 1e-8) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double t_star = 0.5 * (a + b);
  double log_max = f(t_star);
  // The golden-section bracket never reaches its endpoints exactly.
  for (double edge : {std::max(0.0, (best - 1) * step), std::min(hi, (best + 1) * step)}) {
    const double v = f(edge);
    if (v >= log_max) {
      log_max = v;
      t_star = edge;
    }
  }
  return {t_star, std::exp(log_max)};
}

}  // namespace halfline
