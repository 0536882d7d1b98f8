#include "zpreal/zero_pole.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zpreal {

namespace {

void check_pole_hit(const std::vector<Complex>& points, Complex z, double eval_eps, const char* what) {
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (std::abs(z - points[j]) < eval_eps) {
      throw Error(ErrorKind::PoleHit, std::string("evaluation point hits ") + what + " " + std::to_string(j), j);
    }
  }
}

// I + F (zI - diag(a))^{-power} G
Matrix resolvent_form(const Matrix& F, const std::vector<Complex>& a, const Matrix& G, Complex z, int power,
                      Complex scale) {
  const std::size_t k = F.rows();
  Matrix out(k, k);
  for (std::size_t j = 0; j < a.size(); ++j) {
    Complex w = 1.0 / (z - a[j]);
    if (power == 2) w *= w;
    w *= scale;
    for (std::size_t r = 0; r < k; ++r) {
      const Complex fr = F(r, j) * w;
      for (std::size_t c = 0; c < k; ++c) out(r, c) += fr * G(j, c);
    }
  }
  return out;
}

double kernel_residual(const Matrix& a, const Matrix& b) {
  return frobenius_norm(a * b) / std::max(1.0, frobenius_norm(a) * frobenius_norm(b));
}

}  // namespace

ZeroPoleData ZeroPoleData::identity(std::size_t k) {
  ZeroPoleData d;
  d.k = k;
  d.F_P = Matrix(k, 0);
  d.G_P = Matrix(0, k);
  d.F_N = Matrix(k, 0);
  d.G_N = Matrix(0, k);
  return d;
}

void validate(const ZeroPoleData& d, double sep_min) {
  const std::size_t k = d.k, n = d.n();
  if (k == 0) throw Error(ErrorKind::InvalidData, "k must be at least 1");
  if (d.zeros.size() != n) {
    throw Error(ErrorKind::CardinalityMismatch,
                "pole count " + std::to_string(n) + " differs from zero count " + std::to_string(d.zeros.size()));
  }
  auto shape = [&](const Matrix& m, std::size_t r, std::size_t c, const char* name) {
    if (m.rows() != r || m.cols() != c) {
      throw Error(ErrorKind::DimensionMismatch, std::string(name) + " has shape " + std::to_string(m.rows()) +
                                                    "x" + std::to_string(m.cols()) + ", expected " +
                                                    std::to_string(r) + "x" + std::to_string(c));
    }
    if (!m.all_finite()) throw Error(ErrorKind::InvalidData, std::string(name) + " has non-finite entries");
  };
  shape(d.F_P, k, n, "F_P");
  shape(d.G_P, n, k, "G_P");
  shape(d.F_N, k, n, "F_N");
  shape(d.G_N, n, k, "G_N");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(std::abs(d.poles[j])) || !std::isfinite(std::abs(d.zeros[j]))) {
      throw Error(ErrorKind::InvalidData, "non-finite pole or zero", j);
    }
    if (frobenius_norm(d.F_P.col(j)) == 0.0) throw Error(ErrorKind::InvalidData, "F_P column is zero", j);
    if (frobenius_norm(d.F_N.col(j)) == 0.0) throw Error(ErrorKind::InvalidData, "F_N column is zero", j);
    if (frobenius_norm(d.G_P.row(j)) == 0.0) throw Error(ErrorKind::InvalidData, "G_P row is zero", j);
    if (frobenius_norm(d.G_N.row(j)) == 0.0) throw Error(ErrorKind::InvalidData, "G_N row is zero", j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(d.poles[i] - d.zeros[j]) < sep_min) {
        throw Error(ErrorKind::Collision,
                    "pole " + std::to_string(i) + " collides with zero " + std::to_string(j), i);
      }
      if (j > i && std::abs(d.poles[i] - d.poles[j]) < sep_min) {
        throw Error(ErrorKind::Collision, "poles " + std::to_string(i) + " and " + std::to_string(j) + " coincide",
                    j);
      }
      if (j > i && std::abs(d.zeros[i] - d.zeros[j]) < sep_min) {
        throw Error(ErrorKind::Collision, "zeros " + std::to_string(i) + " and " + std::to_string(j) + " coincide",
                    j);
      }
    }
  }
}

RankOneFactor factor_rank_one(const Matrix& m, double rank_eps) {
  const std::size_t r = rank(m, rank_eps);
  if (r != 1) throw Error(ErrorKind::NotRankOne, "matrix has numerical rank " + std::to_string(r));
  std::size_t best_col = 0;
  double best_norm = -1.0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const double v = frobenius_norm(m.col(c));
    if (v > best_norm) {
      best_norm = v;
      best_col = c;
    }
  }
  Matrix f = m.col(best_col);
  std::size_t istar = 0;
  for (std::size_t i = 1; i < f.rows(); ++i)
    if (std::abs(f(i, 0)) > std::abs(f(istar, 0))) istar = i;
  f *= 1.0 / f(istar, 0);
  return {f, m.row(istar)};
}

ZeroPoleData gauge_transform(const ZeroPoleData& d, const GaugePair& g) {
  if (g.D_P.size() != d.n() || g.D_N.size() != d.n()) {
    throw Error(ErrorKind::DimensionMismatch, "gauge length differs from n");
  }
  std::vector<Complex> inv_p(d.n()), inv_n(d.n());
  for (std::size_t j = 0; j < d.n(); ++j) {
    if (g.D_P[j] == Complex{}) throw Error(ErrorKind::ZeroGaugeEntry, "D_P entry is zero", j);
    if (g.D_N[j] == Complex{}) throw Error(ErrorKind::ZeroGaugeEntry, "D_N entry is zero", j);
    inv_p[j] = 1.0 / g.D_P[j];
    inv_n[j] = 1.0 / g.D_N[j];
  }
  ZeroPoleData out = d;
  out.F_P = scale_cols(d.F_P, g.D_P);
  out.G_P = scale_rows(inv_p, d.G_P);
  out.F_N = scale_cols(d.F_N, g.D_N);
  out.G_N = scale_rows(inv_n, d.G_N);
  return out;
}

Matrix additive_eval_R(const ZeroPoleData& d, Complex z, double eval_eps) {
  check_pole_hit(d.poles, z, eval_eps, "pole");
  return Matrix::identity(d.k) + resolvent_form(d.F_P, d.poles, d.G_P, z, 1, 1.0);
}

Matrix additive_eval_Rinv(const ZeroPoleData& d, Complex z, double eval_eps) {
  check_pole_hit(d.zeros, z, eval_eps, "zero");
  return Matrix::identity(d.k) + resolvent_form(d.F_N, d.zeros, d.G_N, z, 1, 1.0);
}

Matrix additive_deriv_R(const ZeroPoleData& d, Complex z, double eval_eps) {
  check_pole_hit(d.poles, z, eval_eps, "pole");
  return resolvent_form(d.F_P, d.poles, d.G_P, z, 2, -1.0);
}

Matrix additive_deriv_Rinv(const ZeroPoleData& d, Complex z, double eval_eps) {
  check_pole_hit(d.zeros, z, eval_eps, "zero");
  return resolvent_form(d.F_N, d.zeros, d.G_N, z, 2, -1.0);
}

Matrix pole_residue(const ZeroPoleData& d, std::size_t j) { return d.F_P.col(j) * d.G_P.row(j); }
Matrix zero_residue(const ZeroPoleData& d, std::size_t j) { return d.F_N.col(j) * d.G_N.row(j); }

std::vector<Complex> sample_points(const ZeroPoleData& d, std::size_t count) {
  double scale = 1.0;
  for (const auto& z : d.poles) scale = std::max(scale, std::abs(z));
  for (const auto& z : d.zeros) scale = std::max(scale, std::abs(z));
  const double radii[] = {0.37, 0.81, 1.29, 1.63};
  std::vector<Complex> out;
  double min_sep = 0.1 * scale;
  std::size_t m = 0;
  while (out.size() < count) {
    const double theta = 0.7 + 2.399963229728653 * static_cast<double>(m);
    const Complex z = std::polar(radii[m % 4] * scale, theta);
    ++m;
    bool ok = true;
    for (const auto& p : d.poles) ok = ok && std::abs(z - p) >= min_sep;
    for (const auto& p : d.zeros) ok = ok && std::abs(z - p) >= min_sep;
    if (ok) out.push_back(z);
    if (m % (40 * count) == 0) min_sep *= 0.5;
  }
  return out;
}

Report check_consistency(const ZeroPoleData& d, double tol) {
  Report rep;
  const Matrix I = Matrix::identity(d.k);
  double inv_res = 0.0;
  for (const auto& z : sample_points(d, 8)) {
    inv_res = std::max(inv_res, relative_residual(additive_eval_R(d, z) * additive_eval_Rinv(d, z), I));
  }
  rep.add("R_Rinv_identity", inv_res, tol);

  double pole_kernel = 0.0, pole_repro = 0.0;
  for (std::size_t j = 0; j < d.n(); ++j) {
    const Matrix res = pole_residue(d, j);
    const Matrix b0 = additive_eval_Rinv(d, d.poles[j]);
    const Matrix b1 = additive_deriv_Rinv(d, d.poles[j]);
    pole_kernel = std::max({pole_kernel, kernel_residual(res, b0), kernel_residual(b0, res)});
    pole_repro = std::max(pole_repro, relative_residual(res * b1 * res, res));
  }
  rep.add("pole_residue_kernel", pole_kernel, tol);
  rep.add("pole_residue_reproduce", pole_repro, tol);

  double zero_kernel = 0.0, zero_repro = 0.0;
  for (std::size_t j = 0; j < d.n(); ++j) {
    const Matrix res = zero_residue(d, j);
    const Matrix c0 = additive_eval_R(d, d.zeros[j]);
    const Matrix c1 = additive_deriv_R(d, d.zeros[j]);
    zero_kernel = std::max({zero_kernel, kernel_residual(res, c0), kernel_residual(c0, res)});
    zero_repro = std::max(zero_repro, relative_residual(res * c1 * res, res));
  }
  rep.add("zero_residue_kernel", zero_kernel, tol);
  rep.add("zero_residue_reproduce", zero_repro, tol);
  return rep;
}

LogDerivativeResidues log_derivative_residues(const ZeroPoleData& d) {
  LogDerivativeResidues out;
  for (std::size_t j = 0; j < d.n(); ++j) {
    out.at_poles.push_back(-(pole_residue(d, j) * additive_deriv_Rinv(d, d.poles[j])));
    out.at_zeros.push_back(additive_deriv_R(d, d.zeros[j]) * zero_residue(d, j));
  }
  return out;
}

ZeroPoleData from_scalar(const ScalarZeroPole& s) {
  validate(s);
  const ScalarSystem sys = scalar_system_representation(s);
  const std::size_t n = s.poles.size();
  ZeroPoleData d;
  d.k = 1;
  d.poles = s.poles;
  d.zeros = s.zeros;
  d.F_P = Matrix(1, n, std::vector<Complex>(n, 1.0));
  d.F_N = Matrix(1, n, std::vector<Complex>(n, 1.0));
  d.G_P = Matrix(n, 1, sys.xi);
  d.G_N = Matrix(n, 1, sys.eta);
  return d;
}

}  // namespace zpreal
