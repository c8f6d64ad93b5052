#pragma once

// Independent reference implementations used only by tests. None of these
// share code with the library; they use the most direct formula available,
// in long double where that helps.

#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

inline double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::abs(want);
}

// I_alpha(u) from its power series sum_k (u/2)^{2k+alpha} / (k! Gamma(k+alpha+1)).
inline long double bessel_i_series(long double alpha, long double u) {
  const long double h = u / 2;
  long double term = std::pow(h, alpha) / std::tgamma(alpha + 1);
  long double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= h * h / (k * (k + alpha));
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum)) break;
  }
  return sum;
}

// Explicit alternating sum L_n^(alpha)(t) = sum_i (-1)^i C(n+alpha, n-i) t^i / i!.
inline long double laguerre_explicit(int n, long double alpha, long double t) {
  long double sum = 0;
  for (int i = 0; i <= n; ++i) {
    // C(n+alpha, n-i) = Gamma(n+alpha+1) / (Gamma(n-i+1) Gamma(alpha+i+1))
    const long double binom =
        std::tgamma(n + alpha + 1) / (std::tgamma(n - i + 1.0L) * std::tgamma(alpha + i + 1));
    sum += (i % 2 ? -1 : 1) * binom * std::pow(t, i) / std::tgamma(i + 1.0L);
  }
  return sum;
}

// Closed-form kernel evaluated literally, with no log-space protection:
// Gamma(a+1)/(1-2d)^{a+1} (ts w)^{-a/2} e^{-(t+s)(d + w/(1-w))} I_a(u).
// Negative orders use I_{-v} = I_v + (2/pi) sin(v pi) K_v.
inline double plain_kernel(double a, double d, double w, double t, double s) {
  const double u = 2.0 * std::sqrt(t * s * w) / (1.0 - w);
  double bessel;
  if (a >= 0.0) {
    bessel = std::cyl_bessel_i(a, u);
  } else {
    const double v = -a;
    bessel = std::cyl_bessel_i(v, u) +
             2.0 / std::numbers::pi * std::sin(v * std::numbers::pi) * std::cyl_bessel_k(v, u);
  }
  return std::tgamma(a + 1.0) / std::pow(1.0 - 2.0 * d, a + 1.0) * std::pow(t * s * w, -a / 2.0) *
         std::exp(-(t + s) * (d + w / (1.0 - w))) * bessel;
}

// Solves A x = b by Gaussian elimination with partial pivoting in long double.
inline std::vector<long double> dense_solve(std::vector<std::vector<long double>> a,
                                            std::vector<long double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    }
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const long double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<long double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    long double acc = b[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= a[k][j] * x[j];
    x[k] = acc / a[k][k];
  }
  return x;
}

}  // namespace oracle
