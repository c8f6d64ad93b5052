#include "halfline/spacetime.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace halfline {

void check_point(const SpaceTimePoint& p) {
  if (p.x.empty()) throw std::invalid_argument("space-time point has no spatial coordinates");
  for (double c : p.x) {
    if (!std::isfinite(c)) throw std::invalid_argument("space-time point has a non-finite coordinate");
  }
  if (!(std::isfinite(p.t) && p.t >= 0.0)) {
    throw std::invalid_argument("space-time point time must be finite and >= 0");
  }
}

GaussianParams::GaussianParams(double shape) : shape_(shape) {
  if (!(std::isfinite(shape) && shape > 0.0)) {
    throw std::domain_error("spatial shape must be finite and > 0 (got " + std::to_string(shape) +
                            ")");
  }
}

GaussianParams GaussianParams::from_length_scale(double length_scale) {
  if (!(std::isfinite(length_scale) && length_scale > 0.0)) {
    throw std::domain_error("spatial length scale must be finite and > 0");
  }
  return GaussianParams(1.0 / (2.0 * length_scale * length_scale));
}

double squared_distance(std::span<const double> x, std::span<const double> z) {
  if (x.size() != z.size()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(x.size()) + " vs " +
                                std::to_string(z.size()));
  }
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - z[i];
    d2 += d * d;
  }
  return d2;
}

double gaussian_kernel(const GaussianParams& params, std::span<const double> x,
                       std::span<const double> z) {
  return std::exp(-params.shape() * squared_distance(x, z));
}

double product_kernel(const ProductKernelParams& params, const SpaceTimePoint& a,
                      const SpaceTimePoint& b) {
  return gaussian_kernel(params.spatial, a.x, b.x) * kernel_value(params.temporal, a.t, b.t);
}

}  // namespace halfline
