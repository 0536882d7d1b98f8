#pragma once

#include <vector>

#include "zpreal/linalg.hpp"

namespace zpreal {

/// Scalar rational function r(z) = c * prod(z - mu_l) / prod(z - lambda_j).
struct ScalarZeroPole {
  std::vector<Complex> poles;
  std::vector<Complex> zeros;
  Complex c = 1.0;
};

/// Throws Collision if two of the 2n points coincide (within sep_eps), and
/// InvalidData for c == 0, n == 0 or mismatched lengths.
void validate(const ScalarZeroPole& d, double sep_eps = default_tolerances().sep_eps);

Complex scalar_eval(const ScalarZeroPole& d, Complex z, double eval_eps = default_tolerances().eval_eps);

/// r'(mu_q) and (1/r)'(lambda_p), from the product form.
Complex scalar_derivative_at_zero(const ScalarZeroPole& d, std::size_t q);
Complex scalar_inverse_derivative_at_pole(const ScalarZeroPole& d, std::size_t p);

/// s(p, q) = 1 / (mu_p - lambda_q)
Matrix cauchy_matrix(const std::vector<Complex>& lambda, const std::vector<Complex>& mu,
                     double sep_eps = default_tolerances().sep_eps);

/// Closed-form inverse of cauchy_matrix(lambda, mu):
///   h(p, q) = 1 / ((1/r)'(lambda_p) (lambda_p - mu_q) r'(mu_q)).
Matrix cauchy_inverse_formula(const std::vector<Complex>& lambda, const std::vector<Complex>& mu,
                              Complex c = 1.0, double sep_eps = default_tolerances().sep_eps,
                              double deriv_eps = default_tolerances().deriv_eps);

/// (det S)^2 from the derivative products, with c = 1.
Complex cauchy_det_squared(const std::vector<Complex>& lambda, const std::vector<Complex>& mu,
                           double sep_eps = default_tolerances().sep_eps);

struct ScalarSystem {
  std::vector<Complex> xi;   // r(z)    = 1 + sum xi_q  / (z - lambda_q)
  std::vector<Complex> eta;  // 1/r(z)  = 1 + sum eta_p / (z - mu_p)
};

/// Requires c == 1. Solves S xi = -1 and eta S = 1.
ScalarSystem scalar_system_representation(const ScalarZeroPole& d);

/// r(x) / r(y) = 1 + (x - y) e (x - A_P)^{-1} S^{-1} (y - A_N)^{-1} e*.
Complex scalar_joint_eval(const ScalarZeroPole& d, Complex x, Complex y,
                          double eval_eps = default_tolerances().eval_eps);

}  // namespace zpreal
