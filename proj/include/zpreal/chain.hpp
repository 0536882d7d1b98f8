#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "zpreal/realization.hpp"

namespace zpreal {

/// A point of the extended plane; nullopt is infinity.
using ExtendedPoint = std::optional<Complex>;

struct SynthesisInput {
  Matrix F;               // k x n
  Matrix G;               // n x k
  std::vector<Complex> A;  // n
  std::vector<Complex> B;  // n
};

/// S solves B X - X A = G F. Then F_P = F, G_N = G, F_N = F S^{-1},
/// G_P = -S^{-1} G, A_P = A, A_N = B.
RealizationBundle synthesize(const SynthesisInput& in, const Tolerances& tol = default_tolerances());

/// S solves A X - X B = G F. Then F_N = F, G_P = G, F_P = F S^{-1},
/// G_N = -S^{-1} G.
RealizationBundle synthesize_hybrid(const SynthesisInput& in, const Tolerances& tol = default_tolerances());

/// T(x, y) on (C-bar minus x_excluded) x (C-bar minus y_excluded).
struct ChainFunction {
  std::size_t k = 0;
  std::vector<Complex> x_excluded;
  std::vector<Complex> y_excluded;
  std::function<Matrix(ExtendedPoint, ExtendedPoint)> eval;

  Matrix operator()(ExtendedPoint x, ExtendedPoint y) const;
  bool x_allowed(ExtendedPoint x, double eps = default_tolerances().eval_eps) const;
  bool y_allowed(ExtendedPoint y, double eps = default_tolerances().eval_eps) const;
};

/// T(x, y) = R(x) R^{-1}(y) from the right joint representation; the limits
/// at infinity use the individual representations.
ChainFunction chain_function(const RealizationBundle& b);
/// The same function through the hybrid formula.
ChainFunction chain_function_hybrid(const RealizationBundle& b);
ChainFunction constant_identity(std::size_t k);

using Triple = std::tuple<ExtendedPoint, ExtendedPoint, ExtendedPoint>;

/// chain_identity: max ||T(x,y) T(y,z) - T(x,z)||; diagonal_unity: max
/// ||T(x,x) - I|| over the x of every triple that lies in both domains.
Report chain_identity_check(const ChainFunction& t, const std::vector<Triple>& triples,
                           double tol = default_tolerances().report_tol);

struct Generator {
  std::function<Matrix(ExtendedPoint)> phi;      // T(x, a)
  std::function<Matrix(ExtendedPoint)> phi_inv;  // T(a, y)
};

Generator extract_generator(const ChainFunction& t, ExtendedPoint a);

/// Row version: rank of the stacked [F; F A; ...; F A^{n-1}] equals n.
bool obstrollable(const Matrix& F, const std::vector<Complex>& A, double rank_eps = default_tolerances().rank_eps);
/// Column version: rank of [G, B G, ..., B^{n-1} G] equals n.
bool obstrollable_columns(const std::vector<Complex>& B, const Matrix& G,
                          double rank_eps = default_tolerances().rank_eps);

struct Geometry {
  enum class Kind { Disk, Split };
  Kind kind = Kind::Disk;
  double radius = 2.0;          // Disk: points uniform in |z| <= radius
  double min_separation = 0.05;
  // Split: n_plus poles and zeros inside the circle, the rest outside.
  Complex center = 0.0;
  double contour_radius = 1.0;
  std::size_t n_plus = 0;

  static Geometry disk(double radius = 2.0, double min_separation = 0.05);
  static Geometry split(Complex center, double contour_radius, std::size_t n_plus, double min_separation = 0.05);
};

/// Deterministic random instance built through synthesize. Retries up to
/// max_retries times until cond(S) <= tol.generation_cond (and, for split
/// geometries, the leading block of S passes the same gate).
RealizationBundle random_instance(std::size_t k, std::size_t n, std::uint64_t seed, const Geometry& geometry = {},
                                  const Tolerances& tol = default_tolerances(), int max_retries = 50);

/// Least-squares fit of X in T(x,y) - I = (x - y) F (xI - A)^{-1} X (yI - B)^{-1} G
/// from samples of t, with F = F_P, G = G_N, A = poles, B = zeros of b.
Matrix fit_core_matrix(const ChainFunction& t, const RealizationBundle& b,
                       const std::vector<std::pair<Complex, Complex>>& samples);

/// Raw 53-bit uniform doubles from a seeded mt19937_64; shared by the
/// generators so that output is stable across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();                  // [0, 1)
  double uniform(double a, double b);
  Complex in_disk(Complex center, double radius);
  Complex in_annulus(Complex center, double r_min, double r_max);

 private:
  std::mt19937_64 engine_;
};

}  // namespace zpreal
