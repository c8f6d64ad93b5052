#pragma once

// Quadrature on the half-line for integrands of the form t^alpha g(t) with g
// smooth, and the orthonormality / integral-eigenproblem checks built on it.

#include <functional>
#include <vector>

#include "halfline/kernel.hpp"

namespace halfline {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Jacobi rule for integral_0^1 x^alpha f(x) dx, alpha > -1.
/// The weights absorb x^alpha.
QuadratureRule gauss_jacobi_origin(int n, double alpha);

/// Composite rule for integral_0^upper t^alpha g(t) dt: panels of the given
/// width, the first one Gauss-Jacobi (exact for the endpoint factor), the rest
/// Gauss-Legendre with t^alpha folded into the weights.
QuadratureRule half_line_rule(double alpha, double upper, double panel_width = 5.0,
                              int order = 64);

/// Integration cutoff (40 + 10 max_order) / (1 - 2 delta).
double quadrature_cutoff(const HalfLineParams& p, int max_order);

/// R(m,n) = integral phi_m phi_n rho dt - [m == n] for 0 <= m,n <= max_order,
/// row-major.
std::vector<double> orthonormality_residuals(const HalfLineParams& p, int max_order);

struct EigenRelation {
  double integral;   // integral K(t,s) phi_n(t) rho(t) dt
  double expected;   // lambda_n phi_n(s)
  double relative_error;  // infinite when phi_n(s) = 0 and the integral is not
  double scaled_error;    // |integral - expected| / (lambda_n gamma_n), finite at roots of phi_n
};

/// Checks integral K(t,s) phi_n(t) rho(t) dt = lambda_n phi_n(s).
EigenRelation eigen_relation(const HalfLineParams& p, int n, double s);

}  // namespace halfline
