#pragma once

namespace zpreal {

// Default numerical thresholds. All of them can be overridden per call; the
// CLI exposes the user-facing ones as flags.
struct Tolerances {
  double pivot_eps = 1e-13;      // LU pivot threshold, relative to the infinity norm
  double tol_solve = 1e-9;       // relative solve residual that tests hold LU to
  double rank_eps = 1e-9;        // numerical rank threshold, relative to the max entry
  double sep_eps = 1e-10;        // Cauchy-matrix node collision threshold
  double eval_eps = 1e-12;       // distance at which an evaluation point hits a pole
  double deriv_eps = 1e-250;     // |r'| below this is treated as a vanished derivative
  double sep_min = 1e-6;         // minimum pole/zero separation accepted at validation
  double report_tol = 1e-8;      // pass/fail threshold of verification reports
  double fail_tol = 1e-6;        // bundle construction refuses data above this
  double cond_max = 1e8;         // factorization existence threshold on cond(S11)
  double boundary_eps = 1e-9;    // relative distance to the contour treated as "on" it
  double generation_cond = 1e6;  // conditioning gate for random instances
  double product_tol = 1e-7;     // Phi_+ Phi_- against Phi at verification points
  double alt_tol = 1e-9;         // agreement of the two Phi_- constructions
  double singular_cond = 1e12;   // synthesis treats a coupling matrix above this as singular
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace zpreal
