#include "zpreal/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zpreal {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::Singular11: return "Singular11";
    case ErrorKind::SingularSchur: return "SingularSchur";
    case ErrorKind::Collision: return "Collision";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::DegenerateDerivative: return "DegenerateDerivative";
    case ErrorKind::NotRankOne: return "NotRankOne";
    case ErrorKind::ZeroGaugeEntry: return "ZeroGaugeEntry";
    case ErrorKind::SpectraOverlap: return "SpectraOverlap";
    case ErrorKind::InvalidData: return "InvalidData";
    case ErrorKind::InconsistentData: return "InconsistentData";
    case ErrorKind::SingularCoupling: return "SingularCoupling";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::OnContour: return "OnContour";
    case ErrorKind::CardinalityMismatch: return "CardinalityMismatch";
    case ErrorKind::NoFactorization: return "NoFactorization";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(op) + ": shape " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch, "Matrix: data size does not match shape");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw Error(ErrorKind::DimensionMismatch, "Matrix::block out of range");
  }
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
    throw Error(ErrorKind::DimensionMismatch, "Matrix::set_block out of range");
  }
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix Matrix::adjoint() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& b) {
  require_same_shape(*this, b, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += b.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& b) {
  require_same_shape(*this, b, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= b.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= -1.0; }
Matrix operator*(Complex s, Matrix a) { return a *= s; }
Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                "matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                    std::to_string(b.rows()));
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Complex ail = a(i, l);
      if (ail == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
    }
  }
  return c;
}

Matrix scale_rows(std::span<const Complex> d, const Matrix& m) {
  if (d.size() != m.rows()) throw Error(ErrorKind::DimensionMismatch, "scale_rows");
  Matrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) *= d[i];
  return r;
}

Matrix scale_cols(const Matrix& m, std::span<const Complex> d) {
  if (d.size() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "scale_cols");
  Matrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) *= d[j];
  return r;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (const auto& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double inf_norm(const Matrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double max_abs(const Matrix& a) {
  double best = 0.0;
  for (const auto& z : a.entries()) best = std::max(best, std::abs(z));
  return best;
}

double relative_residual(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "relative_residual");
  const double r = frobenius_norm(a - b) / std::max(1.0, frobenius_norm(b));
  return std::isnan(r) ? std::numeric_limits<double>::infinity() : r;
}

LuDecomposition::LuDecomposition(const Matrix& a, double pivot_eps) : lu_(a) {
  if (!a.square()) throw Error(ErrorKind::DimensionMismatch, "LU: matrix is not square");
  if (!a.all_finite()) throw Error(ErrorKind::InvalidData, "LU: matrix has non-finite entries");
  const std::size_t n = a.rows();
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  const double threshold = pivot_eps * inf_norm(a);
  min_pivot_ = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best > threshold) || best == 0.0) {
      throw Error(ErrorKind::Singular, "LU: pivot " + std::to_string(k) + " below threshold", k);
    }
    min_pivot_ = std::min(min_pivot_, best);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
      sign_ = -sign_;
    }
    const Complex pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex factor = lu_(i, k) / pivot;
      lu_(i, k) = factor;
      if (factor == Complex{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
    }
  }
  if (n == 0) min_pivot_ = 0.0;
}

Matrix LuDecomposition::solve(const Matrix& b) const {
  const std::size_t n = size();
  if (b.rows() != n) throw Error(ErrorKind::DimensionMismatch, "LU solve: rhs rows");
  Matrix x(n, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = b(perm_[i], c);
      for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x(j, c);
      x(i, c) = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      Complex s = x(i, c);
      for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x(j, c);
      x(i, c) = s / lu_(i, i);
    }
  }
  return x;
}

Matrix LuDecomposition::solve_left(const Matrix& b) const {
  // x A = b  <=>  A^T x^T = b^T, with A^T = U^T L^T P.
  const std::size_t n = size();
  if (b.cols() != n) throw Error(ErrorKind::DimensionMismatch, "LU solve_left: rhs cols");
  Matrix x(b.rows(), n);
  std::vector<Complex> w(n);
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = b(r, i);
      for (std::size_t j = 0; j < i; ++j) s -= lu_(j, i) * w[j];
      w[i] = s / lu_(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
      Complex s = w[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= lu_(j, i) * w[j];
      w[i] = s;
    }
    for (std::size_t i = 0; i < n; ++i) x(r, perm_[i]) = w[i];
  }
  return x;
}

Matrix LuDecomposition::inverse() const { return solve(Matrix::identity(size())); }

Complex LuDecomposition::determinant() const {
  Complex d = static_cast<double>(sign_);
  for (std::size_t i = 0; i < size(); ++i) d *= lu_(i, i);
  return d;
}

Matrix solve(const Matrix& a, const Matrix& b, double pivot_eps) {
  return LuDecomposition(a, pivot_eps).solve(b);
}

Matrix inverse(const Matrix& a, double pivot_eps) { return LuDecomposition(a, pivot_eps).inverse(); }

Complex determinant(const Matrix& a) {
  try {
    return LuDecomposition(a, 0.0).determinant();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Singular) return 0.0;
    throw;
  }
}

double condition_number(const Matrix& a) {
  try {
    return frobenius_norm(a) * frobenius_norm(inverse(a));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Singular) return std::numeric_limits<double>::infinity();
    throw;
  }
}

Block2x2 Block2x2::split(const Matrix& m, std::size_t n1) {
  if (!m.square() || n1 > m.rows()) throw Error(ErrorKind::DimensionMismatch, "Block2x2::split");
  const std::size_t n2 = m.rows() - n1;
  return {m.block(0, 0, n1, n1), m.block(0, n1, n1, n2), m.block(n1, 0, n2, n1), m.block(n1, n1, n2, n2)};
}

Matrix Block2x2::assemble() const {
  const std::size_t a = n1(), b = n2();
  if (m11.cols() != a || m12.rows() != a || m12.cols() != b || m21.rows() != b || m21.cols() != a ||
      m22.cols() != b) {
    throw Error(ErrorKind::DimensionMismatch, "Block2x2::assemble: inconsistent block shapes");
  }
  Matrix m(a + b, a + b);
  m.set_block(0, 0, m11);
  m.set_block(0, a, m12);
  m.set_block(a, 0, m21);
  m.set_block(a, a, m22);
  return m;
}

Block2x2 block_inverse_2x2(const Block2x2& m, double pivot_eps) {
  (void)m.assemble();
  std::optional<LuDecomposition> lu11;
  try {
    lu11.emplace(m.m11, pivot_eps);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Singular) throw;
    throw Error(ErrorKind::Singular11, "block_inverse_2x2: (1,1) block is singular", e.index());
  }
  const Matrix inv11 = lu11->inverse();
  const Matrix a = inv11 * m.m12;        // m11^{-1} m12
  const Matrix b = lu11->solve_left(m.m21);  // m21 m11^{-1}
  const Matrix schur = m.m22 - m.m21 * a;
  Matrix dinv;
  try {
    dinv = inverse(schur, pivot_eps);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Singular) throw;
    throw Error(ErrorKind::SingularSchur, "block_inverse_2x2: Schur complement is singular", e.index());
  }
  Block2x2 r;
  r.m22 = dinv;
  r.m12 = -(a * dinv);
  r.m21 = -(dinv * b);
  r.m11 = inv11 + a * dinv * b;
  return r;
}

std::size_t rank(const Matrix& a, double rank_eps) {
  Matrix w = a;
  const double threshold = rank_eps * max_abs(a);
  const std::size_t nr = w.rows(), nc = w.cols();
  std::size_t r = 0;
  if (threshold == 0.0) return 0;
  for (; r < std::min(nr, nc); ++r) {
    std::size_t pi = r, pj = r;
    double best = 0.0;
    for (std::size_t i = r; i < nr; ++i)
      for (std::size_t j = r; j < nc; ++j)
        if (std::abs(w(i, j)) > best) {
          best = std::abs(w(i, j));
          pi = i;
          pj = j;
        }
    if (best <= threshold) break;
    for (std::size_t j = 0; j < nc; ++j) std::swap(w(r, j), w(pi, j));
    for (std::size_t i = 0; i < nr; ++i) std::swap(w(i, r), w(i, pj));
    for (std::size_t i = r + 1; i < nr; ++i) {
      const Complex f = w(i, r) / w(r, r);
      for (std::size_t j = r; j < nc; ++j) w(i, j) -= f * w(r, j);
    }
  }
  return r;
}

}  // namespace zpreal
