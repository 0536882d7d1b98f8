#include "zpreal/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zpreal {

namespace {

void require_nonzero_semiresiduals(const SynthesisInput& in) {
  const std::size_t n = in.A.size();
  if (in.B.size() != n || in.F.cols() != n || in.G.rows() != n || in.F.rows() != in.G.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "synthesis input shapes are inconsistent");
  }
  if (in.F.rows() == 0) throw Error(ErrorKind::InvalidData, "k must be at least 1");
  for (std::size_t j = 0; j < n; ++j) {
    if (frobenius_norm(in.F.col(j)) == 0.0) {
      throw Error(ErrorKind::InvalidData, "F column " + std::to_string(j) + " is zero", j);
    }
    if (frobenius_norm(in.G.row(j)) == 0.0) {
      throw Error(ErrorKind::InvalidData, "G row " + std::to_string(j) + " is zero", j);
    }
  }
}

LuDecomposition coupling_lu(const Matrix& s, const Tolerances& tol) {
  try {
    LuDecomposition lu(s, tol.pivot_eps);
    const double cond = frobenius_norm(s) * frobenius_norm(lu.inverse());
    if (!(cond <= tol.singular_cond)) {
      throw Error(ErrorKind::SingularCoupling, "coupling matrix is numerically singular (cond " +
                                                   std::to_string(cond) + ")");
    }
    return lu;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Singular) throw;
    throw Error(ErrorKind::SingularCoupling, "coupling matrix is singular", e.index());
  }
}

bool near_any(const std::vector<Complex>& pts, Complex z, double eps) {
  return std::any_of(pts.begin(), pts.end(), [&](const Complex& p) { return std::abs(z - p) < eps; });
}

// Leja ordering of the nodes after centering and scaling; the Newton basis
// on these nodes spans the same polynomial space as the monomials.
std::vector<Complex> leja_nodes(const std::vector<Complex>& a) {
  std::vector<Complex> pts = a;
  if (pts.empty()) return pts;
  Complex c = 0.0;
  for (const auto& z : pts) c += z;
  c /= static_cast<double>(pts.size());
  double rho = 0.0;
  for (auto& z : pts) {
    z -= c;
    rho = std::max(rho, std::abs(z));
  }
  if (rho > 0.0)
    for (auto& z : pts) z /= rho;
  std::vector<Complex> out;
  std::vector<bool> used(pts.size(), false);
  std::size_t first = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (std::abs(pts[i]) > std::abs(pts[first])) first = i;
  out.push_back(pts[first]);
  used[first] = true;
  while (out.size() < pts.size()) {
    std::size_t best = 0;
    double best_v = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (used[i]) continue;
      double v = 1.0;
      for (const auto& o : out) v *= std::abs(pts[i] - o);
      if (v > best_v) {
        best_v = v;
        best = i;
      }
    }
    used[best] = true;
    out.push_back(pts[best]);
  }
  // Return both the scaled diagonal (first half) and the ordered nodes.
  std::vector<Complex> result = pts;
  result.insert(result.end(), out.begin(), out.end());
  return result;
}

// Stack of F p_m(A~) for the Newton polynomials p_0 .. p_{n-1}, each block
// scaled to unit max entry.
Matrix krylov_stack(const Matrix& F, const std::vector<Complex>& a) {
  const std::size_t n = a.size(), k = F.rows();
  const std::vector<Complex> both = leja_nodes(a);
  const std::vector<Complex> scaled(both.begin(), both.begin() + n);
  const std::vector<Complex> nodes(both.begin() + n, both.end());
  Matrix stack(k * n, n);
  Matrix block = F;
  for (std::size_t m = 0; m < n; ++m) {
    const double s = max_abs(block);
    if (s > 0.0) block *= 1.0 / s;
    stack.set_block(m * k, 0, block);
    std::vector<Complex> shift(n);
    for (std::size_t j = 0; j < n; ++j) shift[j] = scaled[j] - nodes[m];
    block = scale_cols(block, shift);
  }
  return stack;
}

}  // namespace

RealizationBundle synthesize(const SynthesisInput& in, const Tolerances& tol) {
  require_nonzero_semiresiduals(in);
  const Matrix S = sylvester_diag_solve(in.B, in.A, in.G * in.F, tol.sep_min);
  const LuDecomposition lu = coupling_lu(S, tol);
  ZeroPoleData d;
  d.k = in.F.rows();
  d.poles = in.A;
  d.zeros = in.B;
  d.F_P = in.F;
  d.G_N = in.G;
  d.F_N = lu.solve_left(in.F);
  d.G_P = -lu.solve(in.G);
  return build_bundle(d, tol);
}

RealizationBundle synthesize_hybrid(const SynthesisInput& in, const Tolerances& tol) {
  require_nonzero_semiresiduals(in);
  const Matrix S = sylvester_diag_solve(in.A, in.B, in.G * in.F, tol.sep_min);
  const LuDecomposition lu = coupling_lu(S, tol);
  ZeroPoleData d;
  d.k = in.F.rows();
  d.poles = in.A;
  d.zeros = in.B;
  d.F_N = in.F;
  d.G_P = in.G;
  d.F_P = lu.solve_left(in.F);
  d.G_N = -lu.solve(in.G);
  return build_bundle(d, tol);
}

Matrix ChainFunction::operator()(ExtendedPoint x, ExtendedPoint y) const {
  if (!x_allowed(x)) throw Error(ErrorKind::DomainViolation, "x lies outside the first domain");
  if (!y_allowed(y)) throw Error(ErrorKind::DomainViolation, "y lies outside the second domain");
  return eval(x, y);
}

bool ChainFunction::x_allowed(ExtendedPoint x, double eps) const { return !x || !near_any(x_excluded, *x, eps); }
bool ChainFunction::y_allowed(ExtendedPoint y, double eps) const { return !y || !near_any(y_excluded, *y, eps); }

ChainFunction chain_function(const RealizationBundle& b) {
  ChainFunction t;
  t.k = b.k();
  t.x_excluded = b.data.poles;
  t.y_excluded = b.data.zeros;
  t.eval = [b](ExtendedPoint x, ExtendedPoint y) {
    if (!x && !y) return Matrix::identity(b.k());
    if (!y) return eval_R(b, *x);
    if (!x) return eval_Rinv(b, *y);
    return eval_joint_right(b, *x, *y);
  };
  return t;
}

ChainFunction chain_function_hybrid(const RealizationBundle& b) {
  ChainFunction t;
  t.k = b.k();
  t.x_excluded = b.data.poles;
  t.y_excluded = b.data.zeros;
  t.eval = [b](ExtendedPoint x, ExtendedPoint y) {
    if (!x && !y) return Matrix::identity(b.k());
    if (!y) return eval_R_left(b, *x);
    if (!x) return eval_Rinv_left(b, *y);
    return eval_hybrid_right(b, *x, *y);
  };
  return t;
}

ChainFunction constant_identity(std::size_t k) {
  ChainFunction t;
  t.k = k;
  t.eval = [k](ExtendedPoint, ExtendedPoint) { return Matrix::identity(k); };
  return t;
}

Report chain_identity_check(const ChainFunction& t, const std::vector<Triple>& triples, double tol) {
  double chain = 0.0, unity = 0.0;
  const Matrix I = Matrix::identity(t.k);
  for (const auto& [x, y, z] : triples) {
    if (!t.x_allowed(x) || !t.x_allowed(y) || !t.y_allowed(y) || !t.y_allowed(z)) {
      throw Error(ErrorKind::DomainViolation, "triple leaves the domain of T");
    }
    chain = std::max(chain, relative_residual(t(x, y) * t(y, z), t(x, z)));
    if (t.y_allowed(x)) unity = std::max(unity, relative_residual(t(x, x), I));
  }
  Report r;
  r.add("chain_identity", chain, tol);
  r.add("diagonal_unity", unity, tol);
  return r;
}

Generator extract_generator(const ChainFunction& t, ExtendedPoint a) {
  if (!t.x_allowed(a) || !t.y_allowed(a)) {
    throw Error(ErrorKind::DomainViolation, "distinguished point lies outside both domains");
  }
  Generator g;
  g.phi = [t, a](ExtendedPoint x) { return t(x, a); };
  g.phi_inv = [t, a](ExtendedPoint y) { return t(a, y); };
  return g;
}

bool obstrollable(const Matrix& F, const std::vector<Complex>& A, double rank_eps) {
  if (F.cols() != A.size()) throw Error(ErrorKind::DimensionMismatch, "obstrollable: F and A disagree");
  if (A.empty()) return true;
  return rank(krylov_stack(F, A), rank_eps) == A.size();
}

bool obstrollable_columns(const std::vector<Complex>& B, const Matrix& G, double rank_eps) {
  return obstrollable(G.transpose(), B, rank_eps);
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

Complex Rng::in_disk(Complex center, double radius) {
  for (;;) {
    const double x = uniform(-1.0, 1.0), y = uniform(-1.0, 1.0);
    if (x * x + y * y <= 1.0) return center + radius * Complex(x, y);
  }
}

Complex Rng::in_annulus(Complex center, double r_min, double r_max) {
  for (;;) {
    const Complex z = in_disk(0.0, r_max);
    if (std::abs(z) >= r_min) return center + z;
  }
}

Geometry Geometry::disk(double radius, double min_separation) {
  Geometry g;
  g.radius = radius;
  g.min_separation = min_separation;
  return g;
}

Geometry Geometry::split(Complex center, double contour_radius, std::size_t n_plus, double min_separation) {
  Geometry g;
  g.kind = Kind::Split;
  g.center = center;
  g.contour_radius = contour_radius;
  g.n_plus = n_plus;
  g.min_separation = min_separation;
  return g;
}

namespace {

void check_geometry(const Geometry& g, std::size_t n) {
  if (!(g.min_separation > 0.0)) throw Error(ErrorKind::ConfigError, "min_separation must be positive");
  if (g.kind == Geometry::Kind::Disk && !(g.radius > 0.0)) {
    throw Error(ErrorKind::ConfigError, "disk radius must be positive");
  }
  if (g.kind == Geometry::Kind::Split) {
    if (!(g.contour_radius > 0.0)) throw Error(ErrorKind::ConfigError, "contour radius must be positive");
    if (g.n_plus > n) throw Error(ErrorKind::ConfigError, "n_plus exceeds n");
  }
}

// 2n points in pool order: poles first, zeros second. Returns false when the
// separation could not be met.
bool draw_points(Rng& rng, const Geometry& g, std::size_t n, std::vector<Complex>& poles,
                 std::vector<Complex>& zeros) {
  std::vector<Complex> all;
  auto draw = [&](bool inside) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Complex z;
      if (g.kind == Geometry::Kind::Disk) {
        z = rng.in_disk(0.0, g.radius);
      } else if (inside) {
        z = rng.in_disk(g.center, 0.8 * g.contour_radius);
      } else {
        z = rng.in_annulus(g.center, 1.25 * g.contour_radius, 2.5 * g.contour_radius);
      }
      if (!near_any(all, z, g.min_separation)) {
        all.push_back(z);
        return true;
      }
    }
    return false;
  };
  for (std::size_t j = 0; j < 2 * n; ++j) {
    const std::size_t idx = j % n;
    if (!draw(idx < g.n_plus)) return false;
  }
  poles.assign(all.begin(), all.begin() + n);
  zeros.assign(all.begin() + n, all.end());
  if (g.kind == Geometry::Kind::Split) {
    // Interleave inside and outside indices so consumers cannot rely on order.
    for (std::size_t i = n; i > 1; --i) {
      const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
      std::swap(poles[i - 1], poles[std::min(j, i - 1)]);
    }
    for (std::size_t i = n; i > 1; --i) {
      const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
      std::swap(zeros[i - 1], zeros[std::min(j, i - 1)]);
    }
  }
  return true;
}

Matrix unit_columns(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        m(r, c) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        norm += std::norm(m(r, c));
      }
    } while (norm < 1e-4);
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < rows; ++r) m(r, c) /= norm;
  }
  return m;
}

bool inside(const Geometry& g, Complex z) { return std::abs(z - g.center) < g.contour_radius; }

}  // namespace

RealizationBundle random_instance(std::size_t k, std::size_t n, std::uint64_t seed, const Geometry& geometry,
                                  const Tolerances& tol, int max_retries) {
  if (k == 0 || n == 0) throw Error(ErrorKind::ConfigError, "random_instance needs k >= 1 and n >= 1");
  check_geometry(geometry, n);
  Rng rng(seed);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    SynthesisInput in;
    if (!draw_points(rng, geometry, n, in.A, in.B)) continue;
    in.F = unit_columns(rng, k, n);
    in.G = unit_columns(rng, k, n).transpose();
    const Matrix S = sylvester_diag_solve(in.B, in.A, in.G * in.F, tol.sep_min);
    if (!(condition_number(S) <= tol.generation_cond)) continue;
    if (geometry.kind == Geometry::Kind::Split && geometry.n_plus > 0 && geometry.n_plus < n) {
      std::vector<std::size_t> ip, in_;
      for (std::size_t j = 0; j < n; ++j) {
        if (inside(geometry, in.A[j])) ip.push_back(j);
        if (inside(geometry, in.B[j])) in_.push_back(j);
      }
      Matrix s11(in_.size(), ip.size());
      for (std::size_t p = 0; p < in_.size(); ++p)
        for (std::size_t q = 0; q < ip.size(); ++q) s11(p, q) = S(in_[p], ip[q]);
      if (!(condition_number(s11) <= tol.generation_cond)) continue;
    }
    try {
      return synthesize(in, tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularCoupling && e.kind() != ErrorKind::InconsistentData) throw;
    }
  }
  throw Error(ErrorKind::GenerationFailed,
              "no acceptable instance after " + std::to_string(max_retries) + " attempts");
}

Matrix fit_core_matrix(const ChainFunction& t, const RealizationBundle& b,
                       const std::vector<std::pair<Complex, Complex>>& samples) {
  const std::size_t n = b.n(), k = b.k();
  const ZeroPoleData& d = b.data;
  const std::size_t unknowns = n * n;
  Matrix normal(unknowns, unknowns);
  Matrix rhs(unknowns, 1);
  std::vector<Complex> row(unknowns);
  for (const auto& [x, y] : samples) {
    const Matrix T = t(x, y) - Matrix::identity(k);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q)
            row[p * n + q] = (x - y) * d.F_P(r, p) / (x - d.poles[p]) * d.G_N(q, c) / (y - d.zeros[q]);
        for (std::size_t i = 0; i < unknowns; ++i) {
          const Complex ci = std::conj(row[i]);
          rhs(i, 0) += ci * T(r, c);
          for (std::size_t j = 0; j < unknowns; ++j) normal(i, j) += ci * row[j];
        }
      }
    }
  }
  const Matrix x = solve(normal, rhs, 0.0);
  return Matrix(n, n, std::vector<Complex>(x.entries().begin(), x.entries().end()));
}

}  // namespace zpreal
