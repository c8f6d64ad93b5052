#pragma once

// Gaussian-process (kriging) engine over the space-time product kernel.

#include <cstddef>
#include <span>
#include <vector>

#include "halfline/linalg.hpp"
#include "halfline/spacetime.hpp"

namespace halfline {

/// Space-time observations. points.size() == values.size() >= 1, all values
/// finite, one spatial dimension throughout.
struct Dataset {
  std::vector<SpaceTimePoint> points;
  std::vector<double> values;

  std::size_t size() const { return points.size(); }
  std::size_t dimension() const { return points.empty() ? 0 : points.front().x.size(); }

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

struct FitOptions {
  /// Subtract the training mean before conditioning and add it back when
  /// predicting. When false the prior mean is zero.
  bool center = true;
};

class KrigingModel;

/// Conditions the product-kernel GP on data: assembles G_ij = K(p_i, p_j),
/// factorizes G + noise_variance I, and precomputes the posterior weights.
/// Throws linalg::FactorizationError if the regularized Gram matrix is not
/// numerically positive definite.
KrigingModel fit(const ProductKernelParams& kernel, Dataset data, double noise_variance,
                 FitOptions options = {});

class KrigingModel {
 public:
  const ProductKernelParams& kernel() const { return kernel_; }
  const Dataset& training() const { return training_; }
  double noise_variance() const { return noise_variance_; }
  double train_mean() const { return train_mean_; }
  const std::vector<double>& centered_values() const { return centered_; }
  /// Lower Cholesky factor of G + noise_variance I.
  const linalg::PackedLower& factor() const { return factor_; }
  /// (G + noise_variance I)^{-1} (y - train_mean).
  const std::vector<double>& weights() const { return weights_; }

  /// Covariances K(q, p_j) against every training point.
  std::vector<double> cross_covariance(const SpaceTimePoint& q) const;

 private:
  friend KrigingModel fit(const ProductKernelParams&, Dataset, double, FitOptions);
  KrigingModel(const ProductKernelParams& kernel, Dataset data, double noise_variance)
      : kernel_(kernel), training_(std::move(data)), noise_variance_(noise_variance) {}

  ProductKernelParams kernel_;
  Dataset training_;
  double noise_variance_;
  double train_mean_ = 0.0;
  std::vector<double> centered_;
  linalg::PackedLower factor_;
  std::vector<double> weights_;
  // Distinct training times; the temporal factor is evaluated once per pair.
  std::vector<double> unique_times_;
  std::vector<std::size_t> time_index_;
};

/// Posterior mean train_mean + k^T (G + noise I)^{-1} (y - train_mean).
std::vector<double> predict_mean(const KrigingModel& model, std::span<const SpaceTimePoint> query);

struct VariancePrediction {
  std::vector<double> variance;
  std::size_t clamped = 0;   // number of negative values raised to zero
  double max_clamp = 0.0;    // largest magnitude removed by clamping
};

/// Posterior variance K(q,q) - k^T (G + noise I)^{-1} k, clamped at zero.
VariancePrediction predict_variance(const KrigingModel& model,
                                    std::span<const SpaceTimePoint> query);

/// sqrt(mean((predicted - observed)^2)).
double rmse(std::span<const double> predicted, std::span<const double> observed);

}  // namespace halfline
