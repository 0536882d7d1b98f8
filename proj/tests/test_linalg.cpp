#include "doctest.h"
#include "helpers.hpp"
#include "zpreal/linalg.hpp"

using namespace zpreal;
using testing::dist;

TEST_CASE("matmul") {
  const Matrix m{{1.0, 2.0}, {Complex(0, 1), -3.0}};
  CHECK(matmul(Matrix::identity(2), m) == m);
  CHECK(matmul(Matrix{{Complex(0, 1)}}, Matrix{{Complex(0, 1)}}) == Matrix{{-1.0}});

  Rng rng(1);
  const Matrix a = testing::random_matrix(rng, 3, 3), b = testing::random_matrix(rng, 3, 3);
  CHECK(dist(matmul(a, b), testing::naive_product(a, b)) <= 1e-15);

  CHECK_THROWS_AS(matmul(Matrix(2, 3), Matrix(2, 3)), Error);
}

TEST_CASE("matmul is associative on random triples") {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = testing::random_matrix(rng, 4, 3), b = testing::random_matrix(rng, 3, 5),
                 c = testing::random_matrix(rng, 5, 2);
    CHECK(relative_residual((a * b) * c, a * (b * c)) <= 1e-12);
  }
}

TEST_CASE("solve") {
  const Matrix m{{1.0, 2.0}, {3.0, 4.0}};
  CHECK(solve(Matrix::identity(2), m) == m);
  CHECK(solve(Matrix{{2.0}}, Matrix{{4.0}}) == Matrix{{2.0}});

  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = testing::well_conditioned(rng, 5);
    const Matrix b = testing::random_matrix(rng, 5, 2);
    const Matrix x = solve(a, b);
    CHECK(frobenius_norm(a * x - b) <= 1e-10 * frobenius_norm(b));
  }
}

TEST_CASE("solve reports the failing pivot") {
  const Matrix a{{1.0, 2.0}, {2.0, 4.0}};
  try {
    (void)solve(a, Matrix::identity(2));
    FAIL("expected Singular");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singular);
    REQUIRE(e.index().has_value());
    CHECK(*e.index() == 1);
  }
}

TEST_CASE("solve_left") {
  Rng rng(4);
  const Matrix a = testing::well_conditioned(rng, 4);
  const Matrix b = testing::random_matrix(rng, 3, 4);
  const Matrix x = LuDecomposition(a).solve_left(b);
  CHECK(dist(x * a, b) <= 1e-12);
}

TEST_CASE("inverse") {
  const Complex diag[] = {1.0, 2.0};
  const Complex half[] = {1.0, 0.5};
  CHECK(dist(inverse(Matrix::diagonal(diag)), Matrix::diagonal(half)) == 0.0);
  CHECK(dist(inverse(Matrix{{Complex(0, 1)}}), Matrix{{Complex(0, -1)}}) == 0.0);

  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = testing::well_conditioned(rng, 4);
    CHECK(relative_residual(a * inverse(a), Matrix::identity(4)) <= default_tolerances().tol_solve);
    CHECK(relative_residual(inverse(inverse(a)), a) <= 1e-12);
  }
  CHECK(inverse(Matrix(0, 0)).rows() == 0);
}

TEST_CASE("determinant") {
  CHECK(std::abs(determinant(Matrix{{1.0, 2.0}, {3.0, 4.0}}) - Complex(-2.0)) <= 1e-15);
  CHECK(determinant(Matrix{{1.0, 2.0}, {2.0, 4.0}}) == Complex(0.0));
  CHECK(determinant(Matrix(0, 0)) == Complex(1.0));
}

TEST_CASE("block_inverse_2x2") {
  Block2x2 m{Matrix{{1.0}}, Matrix(1, 1), Matrix(1, 1), Matrix{{2.0}}};
  CHECK(block_inverse_2x2(m).m22 == Matrix{{0.5}});

  for (std::size_t split = 0; split <= 3; ++split) {
    const Block2x2 inv = block_inverse_2x2(Block2x2::split(Matrix::identity(3), split));
    CHECK(dist(inv.assemble(), Matrix::identity(3)) == 0.0);
  }

  Rng rng(6);
  const Matrix a = testing::well_conditioned(rng, 4);
  CHECK(dist(block_inverse_2x2(Block2x2::split(a, 2)).assemble(), inverse(a)) <= 1e-10);
}

TEST_CASE("block_inverse_2x2 agrees with inverse on random splits") {
  Rng rng(7);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto n = static_cast<std::size_t>(2 + rng.uniform() * 6);
    const auto split = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n + 1));
    const Matrix a = testing::well_conditioned(rng, n);
    worst = std::max(worst, dist(block_inverse_2x2(Block2x2::split(a, std::min(split, n))).assemble(), inverse(a)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("block_inverse_2x2 names the failing block") {
  const Matrix singular11{{0.0, 1.0}, {1.0, 0.0}};
  try {
    (void)block_inverse_2x2(Block2x2::split(singular11, 1));
    FAIL("expected Singular11");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singular11);
  }
  const Matrix singular_schur{{1.0, 1.0}, {1.0, 1.0}};
  try {
    (void)block_inverse_2x2(Block2x2::split(singular_schur, 1));
    FAIL("expected SingularSchur");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularSchur);
  }
}

TEST_CASE("rank") {
  CHECK(rank(Matrix(3, 3)) == 0);
  CHECK(rank(Matrix::identity(3)) == 3);
  const Matrix f{{1.0}, {Complex(2, 1)}, {-3.0}};
  const Matrix g{{0.5, Complex(0, 1), 2.0}};
  CHECK(rank(f * g) == 1);
  CHECK(rank(Matrix{{1.0, 2.0, 3.0}, {2.0, 4.0, 6.0}}) == 1);
}

TEST_CASE("relative_residual flags non-finite input") {
  Matrix a{{std::nan("")}};
  CHECK(std::isinf(relative_residual(a, Matrix{{1.0}})));
}
