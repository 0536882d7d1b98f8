#pragma once

#include <utility>
#include <vector>

#include "zpreal/zero_pole.hpp"

namespace zpreal {

/// Unique X with diag(a) X - X diag(b) = c.
Matrix sylvester_diag_solve(const std::vector<Complex>& a, const std::vector<Complex>& b, const Matrix& c,
                            double sep_min = default_tolerances().sep_min);

/// Closed forms h^r(p,q) = g_lambda_p f_mu_q / (lambda_p - mu_q) and
/// h^l(p,q) = g_mu_p f_lambda_q / (mu_p - lambda_q).
std::pair<Matrix, Matrix> core_matrices(const ZeroPoleData& d, double sep_min = default_tolerances().sep_min);

/// Closed forms s^r(p,q) = g_mu_p f_lambda_q / (mu_p - lambda_q) and
/// s^l(p,q) = g_lambda_p f_mu_q / (lambda_p - mu_q).
std::pair<Matrix, Matrix> coupling_matrices(const ZeroPoleData& d, double sep_min = default_tolerances().sep_min);

/// The same pair through sylvester_diag_solve:
///   A_N Sr - Sr A_P = G_N F_P,   A_P Sl - Sl A_N = G_P F_N.
std::pair<Matrix, Matrix> coupling_matrices_sylvester(const ZeroPoleData& d,
                                                      double sep_min = default_tolerances().sep_min);

struct RealizationBundle {
  ZeroPoleData data;
  Matrix Hr, Hl, Sr, Sl;
  Matrix Sr_inv, Sl_inv;  // LU inverses, used by every evaluator
  Report diagnostics;
  double cond_Sr = 0.0;

  std::size_t k() const noexcept { return data.k; }
  std::size_t n() const noexcept { return data.n(); }

  // Cached products shared by the evaluators.
  Matrix Sr_inv_G_N, F_P_Sr_inv, Sl_inv_G_P, F_N_Sl_inv;
};

/// Every bundle identity as a named residual; never throws on inconsistent
/// data (a singular coupling matrix shows up as an infinite residual).
RealizationBundle assemble_bundle(const ZeroPoleData& d, const Tolerances& tol = default_tolerances());

/// Validates, assembles, and refuses data whose mutual-inverse or coupling
/// residuals exceed fail_tol (InconsistentData).
RealizationBundle build_bundle(const ZeroPoleData& d, const Tolerances& tol = default_tolerances());

/// a) G_N = -Sr G_P   b) G_P = -Sl G_N   c) F_P = F_N Sr   d) F_N = F_P Sl
Report check_coupling_relations(const RealizationBundle& b, double tol = default_tolerances().report_tol);

Matrix eval_R(const RealizationBundle& b, Complex z, double eval_eps = default_tolerances().eval_eps);
Matrix eval_Rinv(const RealizationBundle& b, Complex z, double eval_eps = default_tolerances().eval_eps);
Matrix eval_R_left(const RealizationBundle& b, Complex z, double eval_eps = default_tolerances().eval_eps);
Matrix eval_Rinv_left(const RealizationBundle& b, Complex z, double eval_eps = default_tolerances().eval_eps);

/// R(x) R^{-1}(y) = I + (x - y) F_P (xI - A_P)^{-1} Sr^{-1} (yI - A_N)^{-1} G_N
Matrix eval_joint_right(const RealizationBundle& b, Complex x, Complex y,
                        double eval_eps = default_tolerances().eval_eps);
/// R^{-1}(x) R(y) = I + (x - y) F_N (xI - A_N)^{-1} Sl^{-1} (yI - A_P)^{-1} G_P
Matrix eval_joint_left(const RealizationBundle& b, Complex x, Complex y,
                       double eval_eps = default_tolerances().eval_eps);
/// R(x) R^{-1}(y) = I - (x - y) F_N Sl^{-1} (xI - A_P)^{-1} Sl (yI - A_N)^{-1} Sl^{-1} G_P
Matrix eval_hybrid_right(const RealizationBundle& b, Complex x, Complex y,
                         double eval_eps = default_tolerances().eval_eps);
/// R^{-1}(x) R(y) = I - (x - y) F_P Sr^{-1} (xI - A_N)^{-1} Sr (yI - A_P)^{-1} Sr^{-1} G_N
Matrix eval_hybrid_left(const RealizationBundle& b, Complex x, Complex y,
                        double eval_eps = default_tolerances().eval_eps);

}  // namespace zpreal
