#include "zpreal/realization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <tuple>

namespace zpreal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Complex> resolvent_diag(const std::vector<Complex>& a, Complex z, double eval_eps, const char* what) {
  std::vector<Complex> w(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Complex diff = z - a[j];
    if (std::abs(diff) < eval_eps) {
      throw Error(ErrorKind::PoleHit, std::string("evaluation point hits ") + what + " " + std::to_string(j), j);
    }
    w[j] = 1.0 / diff;
  }
  return w;
}

// I + s * L diag(w) Rt
Matrix identity_plus(const Matrix& L, const std::vector<Complex>& w, const Matrix& Rt, Complex s) {
  Matrix out = Matrix::identity(L.rows());
  out += s * (scale_cols(L, w) * Rt);
  return out;
}

Matrix cauchy_like(const Matrix& G, const std::vector<Complex>& row_pts, const Matrix& F,
                   const std::vector<Complex>& col_pts, double sep_min) {
  const std::size_t n = row_pts.size();
  Matrix s(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const Complex diff = row_pts[p] - col_pts[q];
      if (std::abs(diff) < sep_min) {
        throw Error(ErrorKind::Collision, "points " + std::to_string(p) + " and " + std::to_string(q) + " collide",
                    p);
      }
      Complex gf = 0.0;
      for (std::size_t c = 0; c < G.cols(); ++c) gf += G(p, c) * F(c, q);
      s(p, q) = gf / diff;
    }
  }
  return s;
}

Matrix diag_times(const std::vector<Complex>& a, const Matrix& m) { return scale_rows(a, m); }
Matrix times_diag(const Matrix& m, const std::vector<Complex>& a) { return scale_cols(m, a); }

double safe_residual(const Matrix& a, const Matrix& b) {
  if (!a.all_finite()) return kInf;
  return relative_residual(a, b);
}

}  // namespace

Matrix sylvester_diag_solve(const std::vector<Complex>& a, const std::vector<Complex>& b, const Matrix& c,
                            double sep_min) {
  if (c.rows() != a.size() || c.cols() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "sylvester_diag_solve: right-hand side shape");
  }
  Matrix x(a.size(), b.size());
  for (std::size_t p = 0; p < a.size(); ++p) {
    for (std::size_t q = 0; q < b.size(); ++q) {
      const Complex diff = a[p] - b[q];
      if (std::abs(diff) < sep_min) {
        throw Error(ErrorKind::SpectraOverlap,
                    "a[" + std::to_string(p) + "] and b[" + std::to_string(q) + "] overlap", p);
      }
      x(p, q) = c(p, q) / diff;
    }
  }
  return x;
}

std::pair<Matrix, Matrix> core_matrices(const ZeroPoleData& d, double sep_min) {
  return {cauchy_like(d.G_P, d.poles, d.F_N, d.zeros, sep_min),
          cauchy_like(d.G_N, d.zeros, d.F_P, d.poles, sep_min)};
}

std::pair<Matrix, Matrix> coupling_matrices(const ZeroPoleData& d, double sep_min) {
  return {cauchy_like(d.G_N, d.zeros, d.F_P, d.poles, sep_min),
          cauchy_like(d.G_P, d.poles, d.F_N, d.zeros, sep_min)};
}

std::pair<Matrix, Matrix> coupling_matrices_sylvester(const ZeroPoleData& d, double sep_min) {
  try {
    return {sylvester_diag_solve(d.zeros, d.poles, d.G_N * d.F_P, sep_min),
            sylvester_diag_solve(d.poles, d.zeros, d.G_P * d.F_N, sep_min)};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SpectraOverlap) throw;
    throw Error(ErrorKind::Collision, e.what(), e.index());
  }
}

RealizationBundle assemble_bundle(const ZeroPoleData& d, const Tolerances& tol) {
  RealizationBundle b;
  b.data = d;
  std::tie(b.Hr, b.Hl) = core_matrices(d, tol.sep_min);
  std::tie(b.Sr, b.Sl) = coupling_matrices(d, tol.sep_min);
  const std::size_t n = d.n();
  const Matrix I = Matrix::identity(n);
  const double rt = tol.report_tol;
  Report& r = b.diagnostics;

  auto try_inverse = [&](const Matrix& m) {
    try {
      return inverse(m, tol.pivot_eps);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Singular) throw;
      Matrix bad(n, n);
      for (auto& z : bad.entries()) z = Complex(kInf, kInf);
      return bad;
    }
  };
  b.Sr_inv = try_inverse(b.Sr);
  b.Sl_inv = try_inverse(b.Sl);
  b.cond_Sr = b.Sr_inv.all_finite() ? frobenius_norm(b.Sr) * frobenius_norm(b.Sr_inv) : kInf;
  b.Sr_inv_G_N = b.Sr_inv * d.G_N;
  b.F_P_Sr_inv = d.F_P * b.Sr_inv;
  b.Sl_inv_G_P = b.Sl_inv * d.G_P;
  b.F_N_Sl_inv = d.F_N * b.Sl_inv;

  r.add("sylvester_r", safe_residual(diag_times(d.zeros, b.Sr) - times_diag(b.Sr, d.poles), d.G_N * d.F_P), rt);
  r.add("sylvester_l", safe_residual(diag_times(d.poles, b.Sl) - times_diag(b.Sl, d.zeros), d.G_P * d.F_N), rt);
  r.add("core_sylvester_r",
        safe_residual(times_diag(b.Hr, d.zeros) - diag_times(d.poles, b.Hr), b.Hr * d.G_N * d.F_P * b.Hr), rt);
  r.add("core_sylvester_l",
        safe_residual(times_diag(b.Hl, d.poles) - diag_times(d.zeros, b.Hl), b.Hl * d.G_P * d.F_N * b.Hl), rt);
  r.add("mutual_inverse", std::max(safe_residual(b.Sr * b.Sl, I), safe_residual(b.Sl * b.Sr, I)), rt);
  r.add("core_mutual_inverse", std::max(safe_residual(b.Hr * b.Hl, I), safe_residual(b.Hl * b.Hr, I)), rt);
  r.merge(check_coupling_relations(b, rt));
  const auto [sr2, sl2] = coupling_matrices_sylvester(d, tol.sep_min);
  r.add("closed_vs_solve", std::max(safe_residual(b.Sr, sr2), safe_residual(b.Sl, sl2)), 1e-12);
  r.add("core_vs_lu", std::max(safe_residual(b.Hr, b.Sr_inv), safe_residual(b.Hl, b.Sl_inv)), rt);
  r.values["cond_Sr"] = b.cond_Sr;
  return b;
}

RealizationBundle build_bundle(const ZeroPoleData& d, const Tolerances& tol) {
  validate(d, tol.sep_min);
  RealizationBundle b = assemble_bundle(d, tol);
  for (const char* name : {"mutual_inverse", "coupling_a", "coupling_b", "coupling_c", "coupling_d"}) {
    const Check* c = b.diagnostics.find(name);
    if (c && !(c->residual <= tol.fail_tol)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s residual %.3e exceeds %.1e", name, c->residual, tol.fail_tol);
      throw Error(ErrorKind::InconsistentData, buf);
    }
  }
  return b;
}

Report check_coupling_relations(const RealizationBundle& b, double tol) {
  const ZeroPoleData& d = b.data;
  Report r;
  r.add("coupling_a", safe_residual(-(b.Sr * d.G_P), d.G_N), tol);
  r.add("coupling_b", safe_residual(-(b.Sl * d.G_N), d.G_P), tol);
  r.add("coupling_c", safe_residual(d.F_N * b.Sr, d.F_P), tol);
  r.add("coupling_d", safe_residual(d.F_P * b.Sl, d.F_N), tol);
  return r;
}

Matrix eval_R(const RealizationBundle& b, Complex z, double eval_eps) {
  return identity_plus(b.data.F_P, resolvent_diag(b.data.poles, z, eval_eps, "pole"), b.Sr_inv_G_N, -1.0);
}

Matrix eval_Rinv(const RealizationBundle& b, Complex z, double eval_eps) {
  return identity_plus(b.F_P_Sr_inv, resolvent_diag(b.data.zeros, z, eval_eps, "zero"), b.data.G_N, 1.0);
}

Matrix eval_R_left(const RealizationBundle& b, Complex z, double eval_eps) {
  return identity_plus(b.F_N_Sl_inv, resolvent_diag(b.data.poles, z, eval_eps, "pole"), b.data.G_P, 1.0);
}

Matrix eval_Rinv_left(const RealizationBundle& b, Complex z, double eval_eps) {
  return identity_plus(b.data.F_N, resolvent_diag(b.data.zeros, z, eval_eps, "zero"), b.Sl_inv_G_P, -1.0);
}

Matrix eval_joint_right(const RealizationBundle& b, Complex x, Complex y, double eval_eps) {
  const auto wx = resolvent_diag(b.data.poles, x, eval_eps, "pole");
  const auto wy = resolvent_diag(b.data.zeros, y, eval_eps, "zero");
  const Matrix mid = diag_times(wx, times_diag(b.Sr_inv, wy));
  return Matrix::identity(b.k()) + (x - y) * (b.data.F_P * mid * b.data.G_N);
}

Matrix eval_joint_left(const RealizationBundle& b, Complex x, Complex y, double eval_eps) {
  const auto wx = resolvent_diag(b.data.zeros, x, eval_eps, "zero");
  const auto wy = resolvent_diag(b.data.poles, y, eval_eps, "pole");
  const Matrix mid = diag_times(wx, times_diag(b.Sl_inv, wy));
  return Matrix::identity(b.k()) + (x - y) * (b.data.F_N * mid * b.data.G_P);
}

Matrix eval_hybrid_right(const RealizationBundle& b, Complex x, Complex y, double eval_eps) {
  const auto wx = resolvent_diag(b.data.poles, x, eval_eps, "pole");
  const auto wy = resolvent_diag(b.data.zeros, y, eval_eps, "zero");
  const Matrix mid = diag_times(wx, times_diag(b.Sl, wy));
  return Matrix::identity(b.k()) - (x - y) * (b.F_N_Sl_inv * mid * b.Sl_inv_G_P);
}

Matrix eval_hybrid_left(const RealizationBundle& b, Complex x, Complex y, double eval_eps) {
  const auto wx = resolvent_diag(b.data.zeros, x, eval_eps, "zero");
  const auto wy = resolvent_diag(b.data.poles, y, eval_eps, "pole");
  const Matrix mid = diag_times(wx, times_diag(b.Sr, wy));
  return Matrix::identity(b.k()) - (x - y) * (b.F_P_Sr_inv * mid * b.Sr_inv_G_N);
}

}  // namespace zpreal
