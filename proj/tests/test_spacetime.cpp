#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

#include "halfline/spacetime.hpp"
#include "oracles/reference.hpp"

using namespace halfline;
using oracle::rel_err;

namespace {

const HalfLineParams kLeft(-0.5, 0.455, 0.7);

}  // namespace

TEST_CASE("GaussianParams validation and length-scale reading") {
  CHECK_THROWS_AS(GaussianParams(0.0), std::domain_error);
  CHECK_THROWS_AS(GaussianParams(-1.0), std::domain_error);
  CHECK_THROWS_AS(GaussianParams::from_length_scale(0.0), std::domain_error);
  CHECK(GaussianParams::from_length_scale(0.5).shape() == 2.0);
  CHECK(rel_err(GaussianParams::from_length_scale(0.01).shape(), 5000.0) <= 1e-15);
}

TEST_CASE("gaussian kernel") {
  const GaussianParams g(0.01);
  const std::vector<double> x{-120.0, 40.0};
  CHECK(gaussian_kernel(g, x, x) == 1.0);
  const std::vector<double> z{-114.0, 48.0};  // distance 10
  CHECK(rel_err(gaussian_kernel(g, x, z), std::exp(-1.0)) <= 1e-15);
  CHECK(rel_err(gaussian_kernel(g, x, z), 0.36787944117144233) <= 1e-15);
  CHECK(gaussian_kernel(g, x, z) == gaussian_kernel(g, z, x));
  const std::vector<double> bad{1.0};
  CHECK_THROWS_AS(gaussian_kernel(g, x, bad), std::invalid_argument);
}

TEST_CASE("product kernel") {
  const ProductKernelParams k{GaussianParams(0.01), kLeft};
  const SpaceTimePoint a{{-120.0, 40.0}, 2.0};
  const SpaceTimePoint b{{-117.0, 36.0}, 5.0};
  CHECK(product_kernel(k, a, a) == kernel_value(kLeft, 2.0, 2.0));
  CHECK(product_kernel(k, a, b) ==
        gaussian_kernel(k.spatial, a.x, b.x) * kernel_value(kLeft, a.t, b.t));
  CHECK(rel_err(product_kernel(k, a, b), std::exp(-0.25) * kernel_value(kLeft, 2.0, 5.0)) <=
        1e-15);
  CHECK(product_kernel(k, a, b) == product_kernel(k, b, a));
  const SpaceTimePoint far{{80.0, -60.0}, 2.0};
  CHECK(product_kernel(k, a, far) <= kernel_value(kLeft, 2.0, 2.0) * std::exp(-0.01 * 200.0 * 200.0));
  CHECK(product_kernel(k, a, far) < 1e-100);
}

TEST_CASE("product Gram matrices are positive semidefinite") {
  std::mt19937_64 g(99);
  std::uniform_real_distribution<double> lon(-125.0, -98.0), lat(31.0, 59.0), t(0.0, 50.0);
  std::uniform_int_distribution<int> size(1, 8);
  const HalfLineParams sets[] = {kLeft, HalfLineParams(-0.7, 0.389, 0.3),
                                 HalfLineParams(0.2, 0.439, 0.95)};
  for (int trial = 0; trial < 30; ++trial) {
    const ProductKernelParams k{GaussianParams(trial % 2 ? 0.01 : 0.5), sets[trial % 3]};
    const int n = size(g);
    std::vector<SpaceTimePoint> pts(n);
    for (auto& p : pts) p = {{lon(g), lat(g)}, t(g)};
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = product_kernel(k, pts[i], pts[j]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10 * m.trace());
  }
}

TEST_CASE("point validation") {
  CHECK_NOTHROW(check_point({{1.0}, 0.0}));
  CHECK_THROWS_AS(check_point({{}, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(check_point({{1.0}, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(check_point({{std::nan("")}, 1.0}), std::invalid_argument);
}
