// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "halfline/cli/commands.hpp"
#include "halfline/data.hpp"
#include "halfline/gp.hpp"
#include "halfline/kernel.hpp"
#include "halfline/mercer.hpp"
#include "halfline/quadrature.hpp"
#include "halfline/spacetime.hpp"
#include "oracles/reference.hpp"

using namespace halfline;
using Clock = std::chrono::steady_clock;

namespace {

const HalfLineParams kLeft(-0.5, 0.455, 0.7);
const HalfLineParams kMiddle(-0.7, 0.389, 0.3);
const HalfLineParams kRight(0.2, 0.439, 0.95);

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome mercer_equivalence() {
  const auto start = Clock::now();
  const MercerTruncation trunc(50000, 1e-14, TailMode::relative);
  std::string detail;
  bool ok = true;
  for (const auto& p : {kLeft, kMiddle, kRight}) {
    double worst = 0.0;
    int unconverged = 0;
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        const double t = 20.0 * i / 19.0;
        const double s = 20.0 * j / 19.0;
        const auto m = kernel_mercer_extended(p, trunc, t, s);
        if (!m.converged) {
          ++unconverged;
          continue;
        }
        worst = std::max(worst, std::abs(std::expm1(kernel_log_value(p, t, s) - m.log_value)));
      }
    }
    ok = ok && unconverged == 0 && worst <= 1e-8;
    detail += fmt("omega=%.2f max rel %.2e; ", p.omega(), worst);
    if (unconverged) detail += fmt("%d unconverged; ", unconverged);
  }
  const double elapsed = seconds_since(start);
  ok = ok && elapsed <= 10.0;
  return {ok, detail + fmt("%.2f s", elapsed)};
}

Outcome orthonormality() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (double r : orthonormality_residuals(kLeft, 10)) worst = std::max(worst, std::abs(r));
  const double elapsed = seconds_since(start);
  return {worst <= 1e-6 && elapsed <= 5.0, fmt("max residual %.2e, %.3f s", worst, elapsed)};
}

Outcome eigen_relation_check() {
  double worst = 0.0;
  int roots = 0;
  double worst_at_root = 0.0;
  for (int n = 0; n <= 5; ++n) {
    for (double s : {0.5, 2.0, 10.0}) {
      const auto e = eigen_relation(kLeft, n, s);
      if (e.expected == 0.0) {
        // phi_n(s) vanishes, so the relative error is undefined; use the
        // error relative to lambda_n gamma_n instead.
        ++roots;
        worst_at_root = std::max(worst_at_root, e.scaled_error);
      } else {
        worst = std::max(worst, e.relative_error);
      }
    }
  }
  std::string detail = fmt("max rel %.2e", worst);
  if (roots) detail += fmt("; %d point(s) at a root of phi_n, scaled error %.2e", roots, worst_at_root);
  return {worst <= 1e-5 && worst_at_root <= 1e-5, detail};
}

double min_eigen_ratio(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() / g.trace();
}

Outcome positive_definiteness() {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> ua(-0.95, 3.0), ud(0.01, 0.49), uw(0.05, 0.95);
  std::uniform_real_distribution<double> ut(0.0, 50.0), ux(0.0, 10.0), ulog(-2.0, 1.0);
  std::uniform_int_distribution<int> usize(2, 8);
  double worst = 1.0;
  for (int trial = 0; trial < 50; ++trial) {
    const HalfLineParams p(ua(rng), ud(rng), uw(rng));
    const int n = usize(rng);
    std::vector<double> t(n);
    for (auto& v : t) v = ut(rng);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = kernel_value(p, t[i], t[j]);
    worst = std::min(worst, min_eigen_ratio(g));
  }
  for (int trial = 0; trial < 30; ++trial) {
    const ProductKernelParams k{GaussianParams(std::pow(10.0, ulog(rng))),
                                HalfLineParams(ua(rng), ud(rng), uw(rng))};
    const int n = usize(rng);
    std::vector<SpaceTimePoint> pts(n);
    for (auto& q : pts) q = {{ux(rng), ux(rng)}, ut(rng)};
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = product_kernel(k, pts[i], pts[j]);
    worst = std::min(worst, min_eigen_ratio(g));
  }
  return {worst >= -1e-10, fmt("80 matrices, min lambda_min/trace %.2e", worst)};
}

Outcome max_value_limit() {
  const double w = 0.7;
  const HalfLineParams p(-0.5, HalfLineParams::balanced_delta(w), w);
  const auto m = max_over_t(p, 200.0);
  const double target = (1.0 + std::sqrt(w)) / 2.0;
  const double rel = std::abs(m.value - target) / target;
  return {rel <= 0.01, fmt("max %.6f at t=%.3f, target %.6f, rel %.2e", m.value, m.t_star, target, rel)};
}

Outcome overflow_safety() {
  const double args[] = {0.0, 1.0, 1e2, 1e4, 1e6};
  int nonfinite = 0, compared = 0;
  double worst = 0.0;
  for (double a : {-0.9, 0.5, 3.0}) {
    for (double d : {0.05, 0.25, 0.45}) {
      for (double w : {0.05, 0.5, 0.95}) {
        const HalfLineParams p(a, d, w);
        for (double t : args) {
          for (double s : args) {
            const double lv = kernel_log_value(p, t, s);
            if (!std::isfinite(lv)) ++nonfinite;
            double plain;
            try {
              plain = oracle::plain_kernel(a, d, w, t, s);
            } catch (const std::exception&) {
              continue;  // the standard library refuses arguments this large
            }
            if (!std::isfinite(plain) || plain == 0.0 || !std::isnormal(plain)) continue;
            ++compared;
            worst = std::max(worst, std::abs(std::expm1(lv - std::log(plain))));
          }
        }
      }
    }
  }
  return {nonfinite == 0 && worst <= 1e-12,
          fmt("675 log evaluations, %d non-finite; %d plain comparisons, max rel %.2e", nonfinite,
              compared, worst)};
}

Outcome limit_branches() {
  double zero = 0.0, inf = 0.0, adjudicated = 0.0, rival = 1e300, first_order = 0.0;
  const MercerTruncation trunc(50000, 1e-14, TailMode::relative);
  for (const auto& p : {kLeft, kMiddle, kRight}) {
    for (double s : {0.0, 1.0, 2.0}) {
      zero = std::max(zero, oracle::rel_err(kernel_value(p, 1e-9, s), kernel_limit_zero(p, 1e-9, s)));
    }
    // Further out the limit is off by its first neglected term u^2 / (4(alpha+1)).
    const double t = 1e-9, s = 5.0, w = p.omega();
    const double u2 = 4.0 * t * s * w / ((1.0 - w) * (1.0 - w));
    const double gap = kernel_value(p, t, s) / kernel_limit_zero(p, t, s) - 1.0;
    first_order = std::max(first_order, oracle::rel_err(gap, u2 / (4.0 * (p.alpha() + 1.0))));
    inf = std::max(inf, oracle::rel_err(kernel_value(p, 400.0, 400.0), kernel_limit_infinity(p, 400.0, 400.0)));
    const auto m = kernel_mercer_extended(p, trunc, 0.0, 0.0);
    adjudicated = std::max(adjudicated, oracle::rel_err(kernel_limit_zero(p, 0.0, 0.0), m.value));
    const double printed =
        1.0 / (std::pow(1.0 - 2.0 * p.delta(), p.alpha() + 1.0) * (1.0 - p.omega()));
    rival = std::min(rival, oracle::rel_err(printed, m.value));
  }
  const bool resolved = adjudicated <= 1e-10 && rival > 1e-2;
  return {zero <= 1e-6 && first_order <= 1e-3 && inf <= 1e-3 && resolved,
          fmt("t=1e-9, s<=2 rel %.2e; s=5 gap vs first-order term rel %.2e; t=s=400 rel %.2e; origin oracle: (1-w)^-alpha rel %.2e, "
              "(1-w)^-1 rel >= %.2e -> %s",
              zero, first_order, inf, adjudicated, rival, resolved ? "(1-w)^-alpha" : "unresolved")};
}


double interpolation_ratio(double shape, double generator_noise) {
  const data::GridSpec grid{6, 6, -125.0, 31.0, 1.0, 4};
  const auto d = data::synthesize(grid, 42, generator_noise);
  const ProductKernelParams k{GaussianParams(shape), kLeft};
  const auto model = fit(k, d, 1e-8);
  const auto pred = predict_mean(model, d.points);
  double mean = 0.0, var = 0.0, worst = 0.0;
  for (double v : d.values) mean += v / d.size();
  for (double v : d.values) var += (v - mean) * (v - mean) / (d.size() - 1);
  for (std::size_t i = 0; i < d.size(); ++i) worst = std::max(worst, std::abs(pred[i] - d.values[i]));
  return worst / std::sqrt(var);
}

Outcome kriging_interpolation() {
  // Noisy field with a broad spatial kernel, and a noiseless field with the
  // narrow default kernel.
  const double broad = interpolation_ratio(1.0, 0.1);
  const double clean = interpolation_ratio(0.01, 0.0);
  // Reported only: the narrow kernel on the noisy field is ill-conditioned.
  const double noisy_narrow = interpolation_ratio(0.01, 0.1);

  // Three training points, three queries, against a long double dense solve.
  const ProductKernelParams k{GaussianParams(0.1), kLeft};
  const Dataset d{{{{-120.0, 40.0}, 1.0}, {{-119.0, 40.0}, 2.0}, {{-120.0, 41.0}, 3.5}},
                  {285.0, 287.5, 283.0}};
  const auto model = fit(k, d, 1e-8);
  std::vector<std::vector<long double>> a(3, std::vector<long double>(3));
  long double mean = 0;
  for (double v : d.values) mean += v / 3.0L;
  std::vector<long double> y(3);
  for (int i = 0; i < 3; ++i) {
    y[i] = d.values[i] - mean;
    for (int j = 0; j < 3; ++j) a[i][j] = product_kernel(k, d.points[i], d.points[j]) + (i == j ? 1e-8 : 0.0);
  }
  const auto w = oracle::dense_solve(a, y);
  const std::vector<SpaceTimePoint> queries{{{-119.5, 40.5}, 1.5}, {{-121.0, 39.0}, 4.0}, {{-120.0, 40.0}, 0.0}};
  const auto pred = predict_mean(model, queries);
  double dense_worst = 0.0;
  for (int q = 0; q < 3; ++q) {
    // Compare the correction to the mean, which the mean would otherwise mask.
    long double acc = 0;
    for (int i = 0; i < 3; ++i) acc += product_kernel(k, queries[q], d.points[i]) * w[i];
    dense_worst = std::max(dense_worst, oracle::rel_err(pred[q] - model.train_mean(),
                                                        static_cast<double>(acc)));
  }
  return {broad <= 1e-3 && clean <= 1e-3 && dense_worst <= 1e-9,
          fmt("max err/std: noisy field shape 1 %.2e, clean field shape 0.01 %.2e "
              "(noisy field shape 0.01 %.2e, not gated); dense oracle rel %.2e",
              broad, clean, noisy_narrow, dense_worst)};
}

Outcome experiment_shape() {
  const data::GridSpec grid{};
  const auto d = data::synthesize(grid, 42);
  const auto split = data::split_by_day(grid, d, data::SplitSpec{7, 1});
  const auto start = Clock::now();
  const auto model = fit(ProductKernelParams{GaussianParams(0.01), kLeft}, split.train, 1e-8);
  const auto pred = predict_mean(model, split.test.points);
  const double elapsed = seconds_since(start);
  const double e = rmse(pred, split.test.values);
  const bool ok = split.train.size() == 5684 && split.test.size() == 812 && elapsed <= 300.0 &&
                  std::isfinite(e);
  return {ok, fmt("train %zu, test %zu, rmse %.4f, fit+predict %.1f s", split.train.size(),
                  split.test.size(), e, elapsed)};
}

Outcome sweep_robustness() {
  const auto dir = std::filesystem::temp_directory_path() / "halfline_acceptance";
  std::filesystem::create_directories(dir);
  cli::SweepOptions opt;
  opt.source.grid = data::GridSpec{6, 6, -125.0, 31.0, 1.0, 4};
  opt.mode = "delta-omega";
  opt.axes = {"delta=0.05:0.45:3", "omega=0.1:0.9:3"};
  opt.out = (dir / "sweep.csv").string();
  std::ostringstream out, err;
  const int code = cli::cmd_sweep(opt, out, err);
  std::ifstream in(opt.out);
  std::string line;
  std::getline(in, line);
  int cells = 0, finite = 0, failed = 0;
  while (std::getline(in, line)) {
    ++cells;
    const auto cell = line.substr(line.rfind(',') + 1);
    if (cell == "failed") {
      ++failed;
    } else if (std::isfinite(std::stod(cell))) {
      ++finite;
    }
  }
  return {code == 0 && cells == 9 && finite + failed == 9,
          fmt("exit %d, %d cells: %d finite, %d failed", code, cells, finite, failed)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"closed form vs Mercer series", mercer_equivalence},
      {"orthonormality", orthonormality},
      {"integral eigenrelation", eigen_relation_check},
      {"positive definiteness", positive_definiteness},
      {"max-value limit", max_value_limit},
      {"overflow safety", overflow_safety},
      {"limit branches", limit_branches},
      {"kriging interpolation", kriging_interpolation},
      {"experiment shape", experiment_shape},
      {"sweep robustness", sweep_robustness},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << i + 1 << ' ' << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
