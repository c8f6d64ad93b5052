#include "halfline/gp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "halfline/simd.hpp"

namespace halfline {

void Dataset::validate() const {
  if (points.empty()) throw std::invalid_argument("dataset is empty");
  if (points.size() != values.size()) {
    throw std::invalid_argument("dataset has " + std::to_string(points.size()) + " points but " +
                                std::to_string(values.size()) + " values");
  }
  const std::size_t d = points.front().x.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    check_point(points[i]);
    if (points[i].x.size() != d) {
      throw std::invalid_argument("dataset point " + std::to_string(i) + " has dimension " +
                                  std::to_string(points[i].x.size()) + ", expected " +
                                  std::to_string(d));
    }
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("dataset value " + std::to_string(i) + " is not finite");
    }
  }
}

namespace {

void check_query(const KrigingModel& model, const SpaceTimePoint& q) {
  check_point(q);
  if (q.x.size() != model.training().dimension()) {
    throw std::invalid_argument("query dimension " + std::to_string(q.x.size()) +
                                " does not match training dimension " +
                                std::to_string(model.training().dimension()));
  }
}

std::vector<double> temporal_row(const HalfLineParams& p, double t,
                                 const std::vector<double>& times) {
  std::vector<double> row(times.size());
  for (std::size_t b = 0; b < times.size(); ++b) row[b] = kernel_value(p, t, times[b]);
  return row;
}

}  // namespace

KrigingModel fit(const ProductKernelParams& kernel, Dataset data, double noise_variance,
                 FitOptions options) {
  data.validate();
  if (!(std::isfinite(noise_variance) && noise_variance >= 0.0)) {
    throw std::invalid_argument("noise_variance must be finite and >= 0");
  }
  KrigingModel m(kernel, std::move(data), noise_variance);
  const auto& pts = m.training_.points;
  const std::size_t n = pts.size();

  m.unique_times_.reserve(n);
  for (const auto& p : pts) m.unique_times_.push_back(p.t);
  std::sort(m.unique_times_.begin(), m.unique_times_.end());
  m.unique_times_.erase(std::unique(m.unique_times_.begin(), m.unique_times_.end()),
                        m.unique_times_.end());
  m.time_index_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.time_index_[i] = static_cast<std::size_t>(
        std::lower_bound(m.unique_times_.begin(), m.unique_times_.end(), pts[i].t) -
        m.unique_times_.begin());
  }
  const std::size_t nt = m.unique_times_.size();
  std::vector<double> temporal(nt * nt);
  for (std::size_t a = 0; a < nt; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      temporal[a * nt + b] = temporal[b * nt + a] =
          kernel_value(kernel.temporal, m.unique_times_[a], m.unique_times_[b]);
    }
  }

  m.factor_ = linalg::PackedLower(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = m.factor_.row(i);
    const double* tr = &temporal[m.time_index_[i] * nt];
    for (std::size_t j = 0; j <= i; ++j) {
      row[j] = gaussian_kernel(kernel.spatial, pts[i].x, pts[j].x) * tr[m.time_index_[j]];
    }
    row[i] += noise_variance;
  }
  linalg::cholesky_in_place(m.factor_);

  const auto& y = m.training_.values;
  m.train_mean_ =
      options.center ? std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n) : 0.0;
  m.centered_.resize(n);
  for (std::size_t i = 0; i < n; ++i) m.centered_[i] = y[i] - m.train_mean_;
  m.weights_ = m.centered_;
  linalg::forward_solve(m.factor_, m.weights_);
  linalg::backward_solve_transposed(m.factor_, m.weights_);
  return m;
}

std::vector<double> KrigingModel::cross_covariance(const SpaceTimePoint& q) const {
  check_query(*this, q);
  const auto tr = temporal_row(kernel_.temporal, q.t, unique_times_);
  const auto& pts = training_.points;
  std::vector<double> k(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    k[j] = gaussian_kernel(kernel_.spatial, q.x, pts[j].x) * tr[time_index_[j]];
  }
  return k;
}

std::vector<double> predict_mean(const KrigingModel& model, std::span<const SpaceTimePoint> query) {
  std::vector<double> out;
  out.reserve(query.size());
  for (const auto& q : query) {
    const auto k = model.cross_covariance(q);
    out.push_back(model.train_mean() + simd::dot(k, model.weights()));
  }
  return out;
}

VariancePrediction predict_variance(const KrigingModel& model,
                                    std::span<const SpaceTimePoint> query) {
  VariancePrediction out;
  out.variance.reserve(query.size());
  constexpr std::size_t kBlock = 64;
  for (std::size_t start = 0; start < query.size(); start += kBlock) {
    const std::size_t stop = std::min(query.size(), start + kBlock);
    std::vector<std::vector<double>> rhs;
    rhs.reserve(stop - start);
    for (std::size_t i = start; i < stop; ++i) rhs.push_back(model.cross_covariance(query[i]));
    linalg::forward_solve_many(model.factor(), rhs);
    for (std::size_t i = start; i < stop; ++i) {
      const auto& v = rhs[i - start];
      const auto& q = query[i];
      const double prior = product_kernel(model.kernel(), q, q);
      double var = prior - simd::dot(v, v);
      if (var < 0.0) {
        ++out.clamped;
        out.max_clamp = std::max(out.max_clamp, -var);
        var = 0.0;
      }
      out.variance.push_back(var);
    }
  }
  return out;
}

double rmse(std::span<const double> predicted, std::span<const double> observed) {
  if (predicted.size() != observed.size()) {
    throw std::invalid_argument("rmse: length mismatch (" + std::to_string(predicted.size()) +
                                " vs " + std::to_string(observed.size()) + ")");
  }
  if (predicted.empty()) throw std::invalid_argument("rmse: empty input");
  double acc = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - observed[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(predicted.size()));
}

}  // namespace halfline
