#include "zpreal/cauchy.hpp"

#include <cmath>
#include <string>

namespace zpreal {

namespace {

void require_same_length(const std::vector<Complex>& lambda, const std::vector<Complex>& mu) {
  if (lambda.size() != mu.size()) {
    throw Error(ErrorKind::DimensionMismatch, "pole and zero lists differ in length");
  }
}

void check_pole_hit(const std::vector<Complex>& points, Complex z, double eval_eps) {
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (std::abs(z - points[j]) < eval_eps) {
      throw Error(ErrorKind::PoleHit, "evaluation point hits pole " + std::to_string(j), j);
    }
  }
}

void check_derivative(Complex v, double deriv_eps, const char* what, std::size_t idx) {
  if (!(std::abs(v) >= deriv_eps) || !std::isfinite(std::abs(v))) {
    throw Error(ErrorKind::DegenerateDerivative,
                std::string(what) + " vanishes at index " + std::to_string(idx), idx);
  }
}

}  // namespace

void validate(const ScalarZeroPole& d, double sep_eps) {
  require_same_length(d.poles, d.zeros);
  if (d.poles.empty()) throw Error(ErrorKind::InvalidData, "scalar instance needs n >= 1");
  if (d.c == Complex{}) throw Error(ErrorKind::InvalidData, "c must be nonzero");
  std::vector<Complex> all(d.poles);
  all.insert(all.end(), d.zeros.begin(), d.zeros.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (std::abs(all[i] - all[j]) < sep_eps) {
        throw Error(ErrorKind::Collision,
                    "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide", j);
      }
    }
  }
}

Complex scalar_eval(const ScalarZeroPole& d, Complex z, double eval_eps) {
  require_same_length(d.poles, d.zeros);
  check_pole_hit(d.poles, z, eval_eps);
  Complex r = d.c;
  for (std::size_t j = 0; j < d.poles.size(); ++j) r *= (z - d.zeros[j]) / (z - d.poles[j]);
  return r;
}

Complex scalar_derivative_at_zero(const ScalarZeroPole& d, std::size_t q) {
  const Complex m = d.zeros.at(q);
  Complex v = d.c;
  for (std::size_t l = 0; l < d.zeros.size(); ++l) {
    if (l != q) v *= m - d.zeros[l];
  }
  for (const auto& lam : d.poles) v /= m - lam;
  return v;
}

Complex scalar_inverse_derivative_at_pole(const ScalarZeroPole& d, std::size_t p) {
  const Complex lam = d.poles.at(p);
  Complex v = 1.0 / d.c;
  for (std::size_t j = 0; j < d.poles.size(); ++j) {
    if (j != p) v *= lam - d.poles[j];
  }
  for (const auto& m : d.zeros) v /= lam - m;
  return v;
}

Matrix cauchy_matrix(const std::vector<Complex>& lambda, const std::vector<Complex>& mu, double sep_eps) {
  require_same_length(lambda, mu);
  const std::size_t n = lambda.size();
  Matrix s(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const Complex diff = mu[p] - lambda[q];
      if (std::abs(diff) < sep_eps) {
        throw Error(ErrorKind::Collision,
                    "mu[" + std::to_string(p) + "] collides with lambda[" + std::to_string(q) + "]", p);
      }
      s(p, q) = 1.0 / diff;
    }
  }
  return s;
}

Matrix cauchy_inverse_formula(const std::vector<Complex>& lambda, const std::vector<Complex>& mu, Complex c,
                              double sep_eps, double deriv_eps) {
  (void)cauchy_matrix(lambda, mu, sep_eps);
  if (c == Complex{}) throw Error(ErrorKind::InvalidData, "c must be nonzero");
  const ScalarZeroPole d{lambda, mu, c};
  const std::size_t n = lambda.size();
  std::vector<Complex> dinv(n), dr(n);
  for (std::size_t p = 0; p < n; ++p) {
    dinv[p] = scalar_inverse_derivative_at_pole(d, p);
    check_derivative(dinv[p], deriv_eps, "(1/r)'", p);
    dr[p] = scalar_derivative_at_zero(d, p);
    check_derivative(dr[p], deriv_eps, "r'", p);
  }
  Matrix h(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) h(p, q) = 1.0 / (dinv[p] * (lambda[p] - mu[q]) * dr[q]);
  return h;
}

Complex cauchy_det_squared(const std::vector<Complex>& lambda, const std::vector<Complex>& mu, double sep_eps) {
  (void)cauchy_matrix(lambda, mu, sep_eps);
  const ScalarZeroPole d{lambda, mu, 1.0};
  // S^{-1} = -D1 S^T D2, so det(S)^2 picks up (-1)^n.
  Complex v = (lambda.size() % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t p = 0; p < lambda.size(); ++p) v *= scalar_inverse_derivative_at_pole(d, p);
  for (std::size_t q = 0; q < mu.size(); ++q) v *= scalar_derivative_at_zero(d, q);
  return v;
}

ScalarSystem scalar_system_representation(const ScalarZeroPole& d) {
  if (d.c != Complex(1.0)) throw Error(ErrorKind::InvalidData, "system representation requires c = 1");
  const Matrix s = cauchy_matrix(d.poles, d.zeros);
  const std::size_t n = s.rows();
  const LuDecomposition lu(s);
  Matrix minus_ones(n, 1), ones(1, n);
  for (std::size_t i = 0; i < n; ++i) {
    minus_ones(i, 0) = -1.0;
    ones(0, i) = 1.0;
  }
  const Matrix xi = lu.solve(minus_ones);
  const Matrix eta = lu.solve_left(ones);
  ScalarSystem out;
  out.xi.assign(xi.entries().begin(), xi.entries().end());
  out.eta.assign(eta.entries().begin(), eta.entries().end());
  return out;
}

Complex scalar_joint_eval(const ScalarZeroPole& d, Complex x, Complex y, double eval_eps) {
  check_pole_hit(d.poles, x, eval_eps);
  check_pole_hit(d.zeros, y, eval_eps);
  const Matrix s = cauchy_matrix(d.poles, d.zeros);
  const std::size_t n = s.rows();
  Matrix v(n, 1);
  for (std::size_t p = 0; p < n; ++p) v(p, 0) = 1.0 / (y - d.zeros[p]);
  const Matrix w = LuDecomposition(s).solve(v);
  Complex acc = 0.0;
  for (std::size_t q = 0; q < n; ++q) acc += w(q, 0) / (x - d.poles[q]);
  return 1.0 + (x - y) * acc;
}

}  // namespace zpreal
