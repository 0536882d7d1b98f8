#pragma once

#include <vector>

#include "zpreal/cauchy.hpp"
#include "zpreal/linalg.hpp"
#include "zpreal/report.hpp"

namespace zpreal {

/// A k x k rational function in general position, normalized to R(inf) = I:
///   R(z)      = I + F_P (zI - A_P)^{-1} G_P,   A_P = diag(poles)
///   R^{-1}(z) = I + F_N (zI - A_N)^{-1} G_N,   A_N = diag(zeros)
struct ZeroPoleData {
  std::size_t k = 0;
  std::vector<Complex> poles;
  std::vector<Complex> zeros;
  Matrix F_P;  // k x n
  Matrix G_P;  // n x k
  Matrix F_N;  // k x n
  Matrix G_N;  // n x k

  std::size_t n() const noexcept { return poles.size(); }

  /// Identity function of size k (n = 0).
  static ZeroPoleData identity(std::size_t k);
};

/// Shapes, finiteness, nonzero semiresiduals and separation of all points.
/// n = 0 is accepted (the constant identity).
void validate(const ZeroPoleData& d, double sep_min = default_tolerances().sep_min);

struct RankOneFactor {
  Matrix f;  // k x 1
  Matrix g;  // 1 x k
};

RankOneFactor factor_rank_one(const Matrix& m, double rank_eps = default_tolerances().rank_eps);

struct GaugePair {
  std::vector<Complex> D_P;
  std::vector<Complex> D_N;
};

ZeroPoleData gauge_transform(const ZeroPoleData& d, const GaugePair& g);

Matrix additive_eval_R(const ZeroPoleData& d, Complex z, double eval_eps = default_tolerances().eval_eps);
Matrix additive_eval_Rinv(const ZeroPoleData& d, Complex z, double eval_eps = default_tolerances().eval_eps);
/// R'(z) = -F_P (zI - A_P)^{-2} G_P, and likewise for R^{-1}.
Matrix additive_deriv_R(const ZeroPoleData& d, Complex z, double eval_eps = default_tolerances().eval_eps);
Matrix additive_deriv_Rinv(const ZeroPoleData& d, Complex z, double eval_eps = default_tolerances().eval_eps);

/// Residue f_a g_a of R at pole j, or of R^{-1} at zero j.
Matrix pole_residue(const ZeroPoleData& d, std::size_t j);
Matrix zero_residue(const ZeroPoleData& d, std::size_t j);

/// Points well away from every pole and zero, used for sampled checks.
std::vector<Complex> sample_points(const ZeroPoleData& d, std::size_t count);

Report check_consistency(const ZeroPoleData& d, double tol = default_tolerances().report_tol);

struct LogDerivativeResidues {
  std::vector<Matrix> at_poles;  // P_lambda = -R_lambda (R^{-1})'(lambda)
  std::vector<Matrix> at_zeros;  // P_mu = R'(mu) R^{-1}_mu
};

LogDerivativeResidues log_derivative_residues(const ZeroPoleData& d);

/// k = 1 instance of r with c = 1 in the gauge f = 1: G_P holds the residues
/// of r and G_N those of 1/r.
ZeroPoleData from_scalar(const ScalarZeroPole& s);

}  // namespace zpreal
