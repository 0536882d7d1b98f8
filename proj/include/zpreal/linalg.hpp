#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "zpreal/error.hpp"
#include "zpreal/tolerances.hpp"

namespace zpreal {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Zero-sized dimensions are allowed and
/// behave as empty blocks (a 0x0 matrix is its own inverse).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix diagonal(std::span<const Complex> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  Matrix row(std::size_t r) const { return block(r, 0, 1, cols_); }
  Matrix col(std::size_t c) const { return block(0, c, rows_, 1); }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  Matrix adjoint() const;
  Matrix transpose() const;

  Matrix& operator+=(const Matrix& b);
  Matrix& operator-=(const Matrix& b);
  Matrix& operator*=(Complex s);

  bool all_finite() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(Complex s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

Matrix matmul(const Matrix& a, const Matrix& b);

/// diag(d) * m and m * diag(d) without forming the diagonal matrix.
Matrix scale_rows(std::span<const Complex> d, const Matrix& m);
Matrix scale_cols(const Matrix& m, std::span<const Complex> d);

double frobenius_norm(const Matrix& a);
double inf_norm(const Matrix& a);    // max row sum
double max_abs(const Matrix& a);

/// ||a - b||_F / max(1, ||b||_F)
double relative_residual(const Matrix& a, const Matrix& b);

/// LU factorization with partial pivoting, P*A = L*U.
class LuDecomposition {
 public:
  /// Throws Singular (with the offending column) when a pivot falls below
  /// pivot_eps * ||a||_inf.
  explicit LuDecomposition(const Matrix& a, double pivot_eps = default_tolerances().pivot_eps);

  std::size_t size() const noexcept { return lu_.rows(); }
  Matrix solve(const Matrix& b) const;
  /// x * A = b for a row block b.
  Matrix solve_left(const Matrix& b) const;
  Matrix inverse() const;
  Complex determinant() const;
  /// Smallest |pivot| / largest |pivot| is a cheap singularity proxy.
  double min_pivot() const noexcept { return min_pivot_; }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  double min_pivot_ = 0.0;
};

Matrix solve(const Matrix& a, const Matrix& b, double pivot_eps = default_tolerances().pivot_eps);
Matrix inverse(const Matrix& a, double pivot_eps = default_tolerances().pivot_eps);
Complex determinant(const Matrix& a);

/// ||a||_F * ||a^{-1}||_F. Returns +inf when a is numerically singular.
double condition_number(const Matrix& a);

struct Block2x2 {
  Matrix m11, m12, m21, m22;

  std::size_t n1() const noexcept { return m11.rows(); }
  std::size_t n2() const noexcept { return m22.rows(); }

  static Block2x2 split(const Matrix& m, std::size_t n1);
  Matrix assemble() const;
};

/// Inverse through the Schur complement of m11:
///   M^{-1} = [m11^{-1} 0; 0 0] + [-m11^{-1} m12; I] D^{-1} [-m21 m11^{-1}  I],
///   D = m22 - m21 m11^{-1} m12.
/// Throws Singular11 or SingularSchur to tell the two failure modes apart.
Block2x2 block_inverse_2x2(const Block2x2& m, double pivot_eps = default_tolerances().pivot_eps);

/// Numerical rank by Gaussian elimination with complete pivoting; entries
/// below rank_eps * max|a| are treated as zero.
std::size_t rank(const Matrix& a, double rank_eps = default_tolerances().rank_eps);

}  // namespace zpreal
