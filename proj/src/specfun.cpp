#include "halfline/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace halfline::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

// zeta(k) - 1 for k = 2..kZetaTerms+1: direct sum to N-1 plus an
// Euler-Maclaurin tail starting at N.
constexpr int kZetaTerms = 48;

std::array<double, kZetaTerms> make_zeta_minus_one() {
  std::array<double, kZetaTerms> out{};
  constexpr int kN = 32;
  for (int i = 0; i < kZetaTerms; ++i) {
    const double k = i + 2;
    double head = 0.0;
    for (int n = kN - 1; n >= 2; --n) head += std::pow(n, -k);
    const double N = kN;
    const double nk = std::pow(N, -k);
    double tail = N * nk / (k - 1) + 0.5 * nk + k * nk / (12.0 * N);
    tail -= k * (k + 1) * (k + 2) * nk / (720.0 * N * N * N);
    tail += k * (k + 1) * (k + 2) * (k + 3) * (k + 4) * nk / (30240.0 * std::pow(N, 5));
    out[i] = head + tail;
  }
  return out;
}

const std::array<double, kZetaTerms>& zeta_minus_one() {
  static const auto table = make_zeta_minus_one();
  return table;
}

// ln Gamma(2 + z) for |z| <= 1/2 by its Taylor series about 2, whose
// coefficients are (-1)^k (zeta(k) - 1) / k. Exact zero at z = 0.
double log_gamma_near_two(double z) {
  const auto& zm1 = zeta_minus_one();
  double sum = 0.0;
  double zk = z;
  for (int i = 0; i < kZetaTerms; ++i) {
    zk *= z;
    const int k = i + 2;
    const double term = ((k % 2 == 0) ? 1.0 : -1.0) * zm1[i] / k * zk;
    sum += term;
    if (std::abs(term) <= 0.25 * kEps * std::abs(sum)) break;
  }
  return (1.0 - kEulerGamma) * z + sum;
}

// Stirling series with Bernoulli corrections, for x >= 10.
double log_gamma_stirling(double x) {
  static constexpr std::array<double, 8> kCoeff = {
      1.0 / 12.0,          -1.0 / 360.0,    1.0 / 1260.0,  -1.0 / 1680.0,
      1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0};
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double corr = 0.0;
  double p = inv;
  for (double c : kCoeff) {
    corr += c * p;
    p *= inv2;
  }
  constexpr double kHalfLog2Pi = 0.91893853320467274178032973640561764;
  return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + corr;
}

}  // namespace

double log_gamma(double x) {
  require(std::isfinite(x) && x > 0.0, "log_gamma: argument must be finite and positive");
  if (x < 0.5) return log_gamma_near_two(x) - std::log(x * (x + 1.0));
  if (x < 1.5) return log_gamma_near_two(x - 1.0) - std::log(x);
  if (x <= 2.5) return log_gamma_near_two(x - 2.0);
  if (x < 10.0) {
    // Shift down into [1.5, 2.5]; every factor is > 1.5.
    double prod = 1.0;
    double y = x;
    while (y > 2.5) {
      y -= 1.0;
      prod *= y;
    }
    return log_gamma_near_two(y - 2.0) + std::log(prod);
  }
  return log_gamma_stirling(x);
}

double bessel_switchover(double alpha) { return std::max(30.0, 0.5 * alpha * alpha); }

namespace detail {

double log_bessel_i_scaled_series(double alpha, double u) {
  require(u > 0.0, "bessel series: u must be positive");
  // sum_k (u/2)^{2k} / (k! (alpha+1)_k), all terms positive for alpha > -1.
  // Rescaled on the fly so that very large u cannot overflow.
  constexpr double kBig = 1e250;
  const double q = 0.25 * u * u;
  double term = 1.0;
  double sum = 1.0;
  double log_scale = 0.0;
  for (int k = 1;; ++k) {
    term *= q / (k * (alpha + k));
    sum += term;
    if (sum > kBig) {
      sum /= kBig;
      term /= kBig;
      log_scale += std::log(kBig);
    }
    if (term <= 0.5 * kEps * sum && k > q / (alpha + k)) break;
  }
  return alpha * std::log(0.5 * u) - log_gamma(alpha + 1.0) + std::log(sum) + log_scale - u;
}

double log_bessel_i_scaled_hankel(double alpha, double u) {
  require(u > 0.0, "bessel hankel: u must be positive");
  // I_alpha(u) ~ e^u / sqrt(2 pi u) * sum_k (-1)^k a_k / u^k with
  // a_k = prod_{j=1..k} (4 alpha^2 - (2j-1)^2) / (k! 8^k).
  const double mu = 4.0 * alpha * alpha;
  double term = 1.0;
  double sum = 1.0;
  double prev_abs = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * u);
    const double a = std::abs(term);
    if (a > prev_abs && k > 8) break;  // past the smallest term
    sum += term;
    if (a <= 0.5 * kEps * std::abs(sum)) break;
    prev_abs = a;
  }
  return -0.5 * std::log(2.0 * std::numbers::pi * u) + std::log(sum);
}

}  // namespace detail

namespace {

void check_bessel_args(double alpha, double u) {
  require(std::isfinite(alpha) && alpha > -1.0, "bessel: alpha must be finite and > -1");
  require(std::isfinite(u) && u >= 0.0, "bessel: u must be finite and >= 0");
}

double log_scaled(double alpha, double u) {
  return u < bessel_switchover(alpha) ? detail::log_bessel_i_scaled_series(alpha, u)
                                      : detail::log_bessel_i_scaled_hankel(alpha, u);
}

}  // namespace

double bessel_i_scaled(double alpha, double u) {
  check_bessel_args(alpha, u);
  if (u == 0.0) {
    require(alpha >= 0.0, "bessel_i_scaled: I_alpha(0) diverges for alpha < 0");
    return alpha == 0.0 ? 1.0 : 0.0;
  }
  return std::exp(log_scaled(alpha, u));
}

double log_bessel_i(double alpha, double u) {
  check_bessel_args(alpha, u);
  if (u == 0.0) {
    require(alpha >= 0.0, "log_bessel_i: I_alpha(0) diverges for alpha < 0");
    return alpha == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  return u + log_scaled(alpha, u);
}

LaguerreOrder::LaguerreOrder(int degree, double alpha_param) : n(degree), alpha(alpha_param) {
  require(degree >= 0, "LaguerreOrder: degree must be >= 0");
  require(std::isfinite(alpha_param) && alpha_param > -1.0,
          "LaguerreOrder: alpha must be finite and > -1");
}

namespace {

// Shared by laguerre() and laguerre_sequence() so both perform the same
// floating-point operations.
template <class Sink>
double laguerre_recurrence(int n, double alpha, double t, Sink&& sink) {
  double prev = 1.0;
  sink(prev);
  if (n == 0) return prev;
  double cur = 1.0 + alpha - t;
  sink(cur);
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - t) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    sink(cur);
  }
  return cur;
}

}  // namespace

double laguerre(const LaguerreOrder& order, double t) {
  require(std::isfinite(t), "laguerre: t must be finite");
  return laguerre_recurrence(order.n, order.alpha, t, [](double) {});
}

std::vector<double> laguerre_sequence(int max_n, double alpha, double t) {
  const LaguerreOrder order(max_n, alpha);
  require(std::isfinite(t), "laguerre_sequence: t must be finite");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(max_n) + 1);
  laguerre_recurrence(order.n, order.alpha, t, [&](double v) { out.push_back(v); });
  return out;
}

}  // namespace halfline::specfun
