#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "zpreal/chain.hpp"
#include "zpreal/zero_pole.hpp"

namespace testing {

using zpreal::Complex;
using zpreal::Matrix;

inline Matrix random_matrix(zpreal::Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (auto& z : m.entries()) z = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return m;
}

/// Random matrix with a dominant diagonal, comfortably invertible.
inline Matrix well_conditioned(zpreal::Rng& rng, std::size_t n) {
  Matrix m = random_matrix(rng, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) += static_cast<double>(n) + 1.0;
  return m;
}

/// Textbook triple loop.
inline Matrix naive_product(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex s = 0.0;
      for (std::size_t l = 0; l < a.cols(); ++l) s += a(i, l) * b(l, j);
      c(i, j) = s;
    }
  return c;
}

inline double dist(const Matrix& a, const Matrix& b) { return zpreal::frobenius_norm(a - b); }

/// Points separated by at least `sep`, uniform in |z| <= radius.
inline std::vector<Complex> separated_points(zpreal::Rng& rng, std::size_t count, double radius, double sep) {
  std::vector<Complex> pts;
  while (pts.size() < count) {
    const Complex z = rng.in_disk(0.0, radius);
    bool ok = true;
    for (const auto& p : pts) ok = ok && std::abs(z - p) >= sep;
    if (ok) pts.push_back(z);
  }
  return pts;
}

/// r(z) = (z - 1) / z.
inline zpreal::ZeroPoleData d1() {
  zpreal::ZeroPoleData d;
  d.k = 1;
  d.poles = {0.0};
  d.zeros = {1.0};
  d.F_P = Matrix{{1.0}};
  d.G_P = Matrix{{-1.0}};
  d.F_N = Matrix{{1.0}};
  d.G_N = Matrix{{1.0}};
  return d;
}

/// r(z) = (z - 0.3)(z - 3) / ((z - 0.5)(z - 2)).
inline zpreal::ScalarZeroPole d2_scalar() { return {{0.5, 2.0}, {0.3, 3.0}, 1.0}; }

/// k = 2, n = 3 family with two poles and zeros inside the unit circle;
/// det S11 vanishes at mu1 = -0.7. Useful for mu1 in [-0.9, -0.5].
inline zpreal::RealizationBundle sweep_instance(double mu1) {
  const Matrix F{{1.0, 1.0, 1.0}, {1.0, -1.0, 0.5}};
  const Matrix G{{1.0, 0.5}, {1.0, -0.5}, {0.7, 0.3}};
  return zpreal::synthesize({F, G, {0.2, -0.4, 2.0}, {mu1, 0.5, 3.0}});
}

}  // namespace testing
