#pragma once

// Separable space-time covariance: a Gaussian kernel in space times the
// half-line kernel in time.

#include <span>
#include <vector>

#include "halfline/kernel.hpp"

namespace halfline {

/// Spatial coordinates (degrees) plus a nonnegative time coordinate (days).
struct SpaceTimePoint {
  std::vector<double> x;
  double t = 0.0;
};

/// Validates finiteness and t >= 0.
void check_point(const SpaceTimePoint& p);

/// Gaussian kernel exp(-shape ||x - z||^2).
///
/// The shape coefficient can also be derived from a length scale l via
/// shape = 1 / (2 l^2); the two readings differ by orders of magnitude for
/// small l, so callers pick one explicitly.
class GaussianParams {
 public:
  explicit GaussianParams(double shape);
  static GaussianParams from_length_scale(double length_scale);

  double shape() const { return shape_; }

 private:
  double shape_;
};

struct ProductKernelParams {
  GaussianParams spatial;
  HalfLineParams temporal;
};

/// Squared Euclidean distance on raw coordinates. Throws
/// std::invalid_argument on dimension mismatch.
double squared_distance(std::span<const double> x, std::span<const double> z);

double gaussian_kernel(const GaussianParams& params, std::span<const double> x,
                       std::span<const double> z);

/// gaussian_kernel(x_a, x_b) * kernel_value(t_a, t_b).
double product_kernel(const ProductKernelParams& params, const SpaceTimePoint& a,
                      const SpaceTimePoint& b);

}  // namespace halfline
