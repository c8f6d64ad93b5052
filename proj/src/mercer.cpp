#include "halfline/mercer.hpp"

#include <algorithm>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <limits>
#include <string>

namespace halfline {

namespace {

void check_times(double t, double s) {
  if (!(std::isfinite(t) && t >= 0.0 && std::isfinite(s) && s >= 0.0)) {
    throw std::domain_error("kernel_mercer: t and s must be finite and >= 0");
  }
}

}  // namespace

MercerResult kernel_mercer(const HalfLineParams& p, const MercerTruncation& trunc, double t,
                           double s) {
  check_times(t, s);
  const auto sum = detail::mercer_sum<double>(p.alpha(), p.delta(), p.omega(), trunc, t, s);
  return {sum.value, std::log(std::abs(sum.value)), sum.terms_used, sum.cap_hit, sum.converged, 16};
}

MercerResult kernel_mercer_extended(const HalfLineParams& p, const MercerTruncation& trunc,
                                    double t, double s, int min_digits) {
  namespace mp = boost::multiprecision;
  using Real = mp::mpfr_float;
  check_times(t, s);

  const unsigned saved = Real::default_precision();
  int digits = std::max(min_digits, 20);
  for (;;) {
    Real::default_precision(static_cast<unsigned>(digits));
    const auto sum = detail::mercer_sum<Real>(Real(p.alpha()), Real(p.delta()), Real(p.omega()),
                                              trunc, Real(t), Real(s));
    // Digits lost to cancellation: log10(max |term| / |sum|).
    int lost = 0;
    if (sum.value != 0 && sum.max_abs_term != 0) {
      const double ratio = static_cast<double>(log10(sum.max_abs_term / abs(sum.value)));
      lost = static_cast<int>(std::ceil(std::max(0.0, ratio)));
    } else if (sum.max_abs_term != 0) {
      lost = digits;  // total cancellation: retry with more precision
    }
    const int needed = lost + 25;
    if (needed <= digits || digits >= 4000) {
      Real::default_precision(saved);
      const double log_value =
          sum.value != 0 ? static_cast<double>(log(abs(sum.value)))
                         : -std::numeric_limits<double>::infinity();
      return {static_cast<double>(sum.value), log_value, sum.terms_used, sum.cap_hit,
              sum.converged, digits};
    }
    digits = needed + 10;
  }
}

}  // namespace halfline
