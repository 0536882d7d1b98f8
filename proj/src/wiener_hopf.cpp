#include "zpreal/wiener_hopf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "zpreal/chain.hpp"

namespace zpreal {

namespace {

void check_contour(const CircleContour& c) {
  if (!(c.radius > 0.0) || !std::isfinite(c.radius) || !std::isfinite(std::abs(c.center))) {
    throw Error(ErrorKind::ConfigError, "contour radius must be positive and finite");
  }
}

std::string point_text(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", z.real(), z.imag());
  return buf;
}

template <class T>
std::vector<T> pick(const std::vector<T>& v, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

Matrix pick_cols(const Matrix& m, const std::vector<std::size_t>& idx) {
  Matrix out(m.rows(), idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) out.set_block(0, j, m.col(idx[j]));
  return out;
}

Matrix pick_rows(const Matrix& m, const std::vector<std::size_t>& idx) {
  Matrix out(idx.size(), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.set_block(i, 0, m.row(idx[i]));
  return out;
}

std::vector<std::size_t> concat(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// 20 points on the circle, 20 pseudo-random points off it, all away from
// the singularities of Phi.
std::vector<Complex> verification_points(const ZeroPoleData& d, const CircleContour& c) {
  std::vector<Complex> sing = d.poles;
  sing.insert(sing.end(), d.zeros.begin(), d.zeros.end());
  auto clear = [&](Complex z, double gap) {
    return std::all_of(sing.begin(), sing.end(), [&](const Complex& s) { return std::abs(z - s) >= gap; });
  };
  std::vector<Complex> pts;
  for (int j = 0; j < 20; ++j) {
    pts.push_back(c.center + std::polar(c.radius, 2.0 * std::numbers::pi * (j + 0.5) / 20.0));
  }
  Rng rng(0x5eed);
  double gap = 0.05 * c.radius;
  int tries = 0;
  while (pts.size() < 40) {
    const Complex z = rng.in_disk(c.center, 3.0 * c.radius);
    const double off = std::abs(std::abs(z - c.center) - c.radius);
    if (off >= 0.05 * c.radius && clear(z, gap)) pts.push_back(z);
    if (++tries % 1000 == 0) gap *= 0.5;
  }
  return pts;
}

double audit(const ZeroPoleData& d, const CircleContour& c, bool want_inside) {
  std::size_t bad = 0;
  for (const auto& z : d.poles) bad += c.inside(z) != want_inside;
  for (const auto& z : d.zeros) bad += c.inside(z) != want_inside;
  return static_cast<double>(bad);
}

}  // namespace

Partition partition(const ZeroPoleData& d, const CircleContour& c, double boundary_eps) {
  check_contour(c);
  Partition p;
  auto classify = [&](const std::vector<Complex>& pts, const char* what, std::vector<std::size_t>& plus,
                      std::vector<std::size_t>& minus) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double dist = std::abs(pts[j] - c.center);
      if (std::abs(dist - c.radius) <= boundary_eps * c.radius) {
        throw Error(ErrorKind::OnContour,
                    std::string(what) + " " + std::to_string(j) + " at " + point_text(pts[j]) + " lies on the contour",
                    j);
      }
      (dist < c.radius ? plus : minus).push_back(j);
    }
  };
  classify(d.poles, "pole", p.idxP_plus, p.idxP_minus);
  classify(d.zeros, "zero", p.idxN_plus, p.idxN_minus);
  if (p.idxP_plus.size() != p.idxN_plus.size()) {
    throw Error(ErrorKind::CardinalityMismatch, std::to_string(p.idxP_plus.size()) + " poles but " +
                                                    std::to_string(p.idxN_plus.size()) +
                                                    " zeros inside the contour");
  }
  return p;
}

ZeroPoleData reorder(const ZeroPoleData& d, const Partition& p) {
  const auto ip = concat(p.idxP_plus, p.idxP_minus);
  const auto in = concat(p.idxN_plus, p.idxN_minus);
  ZeroPoleData r;
  r.k = d.k;
  r.poles = pick(d.poles, ip);
  r.zeros = pick(d.zeros, in);
  r.F_P = pick_cols(d.F_P, ip);
  r.G_P = pick_rows(d.G_P, ip);
  r.F_N = pick_cols(d.F_N, in);
  r.G_N = pick_rows(d.G_N, in);
  return r;
}

MinusAlternative::MinusAlternative(const RealizationBundle& reordered, std::size_t n_plus) {
  const ZeroPoleData& d = reordered.data;
  const std::size_t n = d.n(), n2 = n - n_plus;
  const Block2x2 s = Block2x2::split(reordered.Sr, n_plus);
  Matrix a, b;  // S11^{-1} S12 and S21 S11^{-1}
  try {
    const LuDecomposition lu11(s.m11);
    a = lu11.solve(s.m12);
    b = lu11.solve_left(s.m21);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Singular) throw;
    throw Error(ErrorKind::Singular11, "leading block of Sr is singular", e.index());
  }
  Matrix upper(n, n2), lower(n2, n);
  upper.set_block(0, 0, -a);
  upper.set_block(n_plus, 0, Matrix::identity(n2));
  lower.set_block(0, 0, -b);
  lower.set_block(0, n_plus, Matrix::identity(n2));
  const Matrix schur = s.m22 - s.m21 * a;
  try {
    right_ = solve(schur, lower * d.G_N);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Singular) throw;
    throw Error(ErrorKind::SingularSchur, "Schur complement of Sr is singular", e.index());
  }
  left_ = d.F_P * upper;
  poles_.assign(d.poles.begin() + static_cast<std::ptrdiff_t>(n_plus), d.poles.end());
}

Matrix MinusAlternative::operator()(Complex z, double eval_eps) const {
  std::vector<Complex> w(poles_.size());
  for (std::size_t j = 0; j < poles_.size(); ++j) {
    if (std::abs(z - poles_[j]) < eval_eps) throw Error(ErrorKind::PoleHit, "evaluation point hits a pole", j);
    w[j] = 1.0 / (z - poles_[j]);
  }
  return Matrix::identity(left_.rows()) - scale_cols(left_, w) * right_;
}

const char* to_string(Existence e) {
  switch (e) {
    case Existence::Exists: return "Exists";
    case Existence::Boundary: return "Boundary";
    case Existence::NotExists: return "NotExists";
  }
  return "Unknown";
}

ExistenceDecision factorization_exists(const RealizationBundle& b, const CircleContour& c, const Tolerances& tol) {
  const Partition p = partition(b.data, c, tol.boundary_eps);
  ExistenceDecision out;
  const std::size_t m = p.n_plus();
  if (m == 0 || m == b.n()) return out;
  const ZeroPoleData& d = b.data;
  Matrix s11(m, m), eq(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const double gi = frobenius_norm(d.G_N.row(p.idxN_plus[i]));
    for (std::size_t j = 0; j < m; ++j) {
      const double fj = frobenius_norm(d.F_P.col(p.idxP_plus[j]));
      s11(i, j) = b.Sr(p.idxN_plus[i], p.idxP_plus[j]);
      eq(i, j) = s11(i, j) / (gi * fj);
    }
  }
  out.det = determinant(s11);
  try {
    const Matrix inv = inverse(eq, 0.0);
    out.sigma_min = 1.0 / frobenius_norm(inv);
    out.cond = frobenius_norm(eq) * frobenius_norm(inv);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Singular) throw;
    out.sigma_min = 0.0;
    out.cond = std::numeric_limits<double>::infinity();
  }
  if (out.cond < tol.cond_max / 10.0) {
    out.verdict = Existence::Exists;
  } else if (out.cond <= tol.cond_max) {
    out.verdict = Existence::Boundary;
  } else {
    out.verdict = Existence::NotExists;
  }
  return out;
}

FactorizationResult factorize(const RealizationBundle& b, const CircleContour& c, const Tolerances& tol) {
  FactorizationResult res;
  res.part = partition(b.data, c, tol.boundary_eps);
  const ExistenceDecision dec = factorization_exists(b, c, tol);
  res.cond_S11 = dec.cond;
  if (dec.verdict == Existence::NotExists) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "leading block of Sr is singular (cond %.3e > %.1e)", dec.cond, tol.cond_max);
    throw Error(ErrorKind::NoFactorization, buf);
  }
  const std::size_t k = b.k(), n = b.n(), m = res.part.n_plus();
  const ZeroPoleData rd = reorder(b.data, res.part);
  const RealizationBundle rb = build_bundle(rd, tol);
  auto range = [](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> v;
    for (std::size_t i = lo; i < hi; ++i) v.push_back(i);
    return v;
  };
  const auto plus_idx = range(0, m), minus_idx = range(m, n);
  try {
    if (m == 0) {
      res.plus = build_bundle(ZeroPoleData::identity(k), tol);
      res.minus = b;
    } else if (m == n) {
      res.plus = b;
      res.minus = build_bundle(ZeroPoleData::identity(k), tol);
    } else {
      res.plus = synthesize({pick_cols(rd.F_P, plus_idx), pick_rows(rd.G_N, plus_idx), pick(rd.poles, plus_idx),
                             pick(rd.zeros, plus_idx)},
                            tol);
      res.minus = synthesize_hybrid({pick_cols(rd.F_N, minus_idx), pick_rows(rd.G_P, minus_idx),
                                     pick(rd.poles, minus_idx), pick(rd.zeros, minus_idx)},
                                    tol);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularCoupling) throw;
    throw Error(ErrorKind::NoFactorization, std::string("factor construction failed: ") + e.what());
  }

  const MinusAlternative alt(rb, m);
  double product = 0.0, agreement = 0.0;
  for (const auto& z : verification_points(b.data, c)) {
    const Matrix phi = eval_R(b, z);
    const Matrix minus = eval_R_left(res.minus, z);
    product = std::max(product, relative_residual(eval_R(res.plus, z) * minus, phi));
    agreement = std::max(agreement, relative_residual(alt(z), minus));
  }
  Report& r = res.report;
  r.add("product_residual", product, tol.product_tol);
  r.add("minus_formula_agreement", agreement, tol.alt_tol);
  r.add("plus_location_audit", audit(res.plus.data, c, true), 0.0);
  r.add("minus_location_audit", audit(res.minus.data, c, false), 0.0);
  r.values["cond_S11"] = dec.cond;
  r.values["n_plus"] = static_cast<double>(m);
  r.values["n_minus"] = static_cast<double>(n - m);
  r.notes["existence"] = to_string(dec.verdict);
  if (!(product <= tol.fail_tol)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "product residual %.3e exceeds %.1e", product, tol.fail_tol);
    throw Error(ErrorKind::VerificationFailed, buf);
  }
  return res;
}

Matrix contour_residue(const std::function<Matrix(Complex)>& f, Complex at, double radius, int nodes) {
  Matrix acc;
  for (int j = 0; j < nodes; ++j) {
    const Complex dz = std::polar(radius, 2.0 * std::numbers::pi * j / nodes);
    Matrix v = f(at + dz);
    v *= dz;
    if (j == 0) {
      acc = v;
    } else {
      acc += v;
    }
  }
  acc *= 1.0 / nodes;
  return acc;
}

double quadrature_radius(Complex at, const std::vector<Complex>& singular) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : singular) {
    const double dist = std::abs(s - at);
    if (dist > 0.0) best = std::min(best, dist);
  }
  return std::isfinite(best) ? 0.5 * best : 1.0;
}

}  // namespace zpreal
