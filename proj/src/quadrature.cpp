#include "halfline/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "halfline/specfun.hpp"

namespace halfline {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::domain_error("gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

QuadratureRule gauss_jacobi_origin(int n, double alpha) {
  if (n < 1) throw std::domain_error("gauss_jacobi_origin: n must be >= 1");
  if (!(alpha > -1.0)) throw std::domain_error("gauss_jacobi_origin: alpha must be > -1");
  // Golub-Welsch for the Jacobi weight (1+x)^alpha on [-1, 1], mapped to [0, 1].
  const double b = alpha;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + b;
    diag[k] = (k == 0) ? b / (b + 2.0) : (b * b) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + b;
    const double beta = 4.0 * k * k * (k + b) * (k + b) / (s * s * (s + 1.0) * (s - 1.0));
    sub[k - 1] = std::sqrt(beta);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_jacobi_origin: eigen decomposition failed");
  }
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[i] = 0.5 * (1.0 + solver.eigenvalues()[i]);
    rule.weights[i] = v0 * v0 / (alpha + 1.0);
  }
  return rule;
}

QuadratureRule half_line_rule(double alpha, double upper, double panel_width, int order) {
  if (!(upper > 0.0) || !(panel_width > 0.0)) {
    throw std::domain_error("half_line_rule: upper and panel_width must be positive");
  }
  const int panels = static_cast<int>(std::ceil(upper / panel_width));
  const double h = upper / panels;
  QuadratureRule out;
  out.nodes.reserve(static_cast<std::size_t>(panels) * order);
  out.weights.reserve(out.nodes.capacity());

  const QuadratureRule first = gauss_jacobi_origin(order, alpha);
  const double scale = std::pow(h, alpha + 1.0);
  for (int i = 0; i < order; ++i) {
    out.nodes.push_back(h * first.nodes[i]);
    out.weights.push_back(scale * first.weights[i]);
  }
  const QuadratureRule gl = gauss_legendre(order);
  for (int p = 1; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int i = 0; i < order; ++i) {
      const double t = mid + 0.5 * h * gl.nodes[i];
      out.nodes.push_back(t);
      out.weights.push_back(0.5 * h * gl.weights[i] * std::pow(t, alpha));
    }
  }
  return out;
}

double quadrature_cutoff(const HalfLineParams& p, int max_order) {
  return (40.0 + 10.0 * max_order) / (1.0 - 2.0 * p.delta());
}

namespace {

// rho(t) = t^alpha * rho_scale * e^{-(1-2delta)t}; the t^alpha factor lives in
// the quadrature weights.
double rho_scale(const HalfLineParams& p) {
  return std::exp((p.alpha() + 1.0) * p.log_one_minus_2delta() - p.log_gamma_alpha1());
}

// phi_0..phi_max at t.
std::vector<double> eigenfunctions_at(const HalfLineParams& p, int max_order, double t,
                                      const std::vector<double>& gammas) {
  auto lag = specfun::laguerre_sequence(max_order, p.alpha(), t);
  const double env = std::exp(-p.delta() * t);
  for (int n = 0; n <= max_order; ++n) lag[n] *= gammas[n] * env;
  return lag;
}

}  // namespace

std::vector<double> orthonormality_residuals(const HalfLineParams& p, int max_order) {
  if (max_order < 0) throw std::domain_error("orthonormality_residuals: max_order must be >= 0");
  const int m = max_order + 1;
  const auto rule = half_line_rule(p.alpha(), quadrature_cutoff(p, max_order));
  std::vector<double> gammas(m);
  for (int n = 0; n < m; ++n) gammas[n] = normalization(p, n);
  const double scale = rho_scale(p);
  const double rate = 1.0 - 2.0 * p.delta();

  std::vector<double> acc(static_cast<std::size_t>(m) * m, 0.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const double w = rule.weights[i] * scale * std::exp(-rate * t);
    const auto phi = eigenfunctions_at(p, max_order, t, gammas);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) acc[a * m + b] += w * phi[a] * phi[b];
    }
  }
  for (int a = 0; a < m; ++a) acc[a * m + a] -= 1.0;
  return acc;
}

EigenRelation eigen_relation(const HalfLineParams& p, int n, double s) {
  if (n < 0) throw std::domain_error("eigen_relation: n must be >= 0");
  const double upper = std::max(quadrature_cutoff(p, n), 4.0 * (s + 10.0));
  const auto rule = half_line_rule(p.alpha(), upper);
  const double scale = rho_scale(p);
  const double rate = 1.0 - 2.0 * p.delta();
  const double gamma = normalization(p, n);
  const specfun::LaguerreOrder order(n, p.alpha());

  double integral = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const double phi = gamma * specfun::laguerre(order, t);
    // K(t,s) e^{-delta t} e^{-(1-2delta)t}, combined in log space.
    const double log_k = kernel_log_value(p, t, s) - (p.delta() + rate) * t;
    integral += rule.weights[i] * scale * std::exp(log_k) * phi;
  }
  const double expected = eigenvalue(p, n) * eigenfunction(p, n, s);
  const double diff = std::abs(integral - expected);
  return {integral, expected, diff / std::abs(expected), diff / (eigenvalue(p, n) * gamma)};
}

}  // namespace halfline
