#pragma once

#include <functional>
#include <vector>

#include "zpreal/realization.hpp"

namespace zpreal {

/// G+ is the open disk, G- the exterior together with infinity.
struct CircleContour {
  Complex center = 0.0;
  double radius = 1.0;

  bool inside(Complex z) const { return std::abs(z - center) < radius; }
};

struct Partition {
  std::vector<std::size_t> idxP_plus, idxP_minus;
  std::vector<std::size_t> idxN_plus, idxN_minus;

  std::size_t n_plus() const noexcept { return idxP_plus.size(); }
  std::size_t n_minus() const noexcept { return idxP_minus.size(); }
};

/// Throws OnContour when a pole or zero lies within boundary_eps * radius of
/// the circle, CardinalityMismatch when the inside pole and zero counts differ.
Partition partition(const ZeroPoleData& d, const CircleContour& c,
                    double boundary_eps = default_tolerances().boundary_eps);

/// Reindexes the data so that the '+' poles and zeros come first.
ZeroPoleData reorder(const ZeroPoleData& d, const Partition& p);

struct FactorizationResult {
  RealizationBundle plus;   // Phi_+, singularities in G+
  RealizationBundle minus;  // Phi_-, singularities in G-
  Partition part;
  Report report;
  double cond_S11 = 0.0;
};

/// Phi = Phi_+ Phi_- with
///   Phi_+(z) = I - F_P1 (zI - A_P1)^{-1} S11^{-1} G_N1
///   Phi_-(z) = I + F_N2 Sl22^{-1} (zI - A_P2)^{-1} G_P2
/// where S11 is the leading block of Sr and Sl22 the trailing block of Sl.
FactorizationResult factorize(const RealizationBundle& b, const CircleContour& c,
                              const Tolerances& tol = default_tolerances());

/// The second construction of Phi_-, through the Schur complement
/// D = S22 - S21 S11^{-1} S12 of Sr:
///   I - F_P [-S11^{-1} S12; I] (zI - A_P2)^{-1} D^{-1} [-S21 S11^{-1}  I] G_N
/// built from data already reordered so the '+' block leads.
class MinusAlternative {
 public:
  MinusAlternative(const RealizationBundle& reordered, std::size_t n_plus);
  Matrix operator()(Complex z, double eval_eps = default_tolerances().eval_eps) const;

 private:
  Matrix left_;   // F_P [-S11^{-1} S12; I]
  Matrix right_;  // D^{-1} [-S21 S11^{-1}  I] G_N
  std::vector<Complex> poles_;
};

enum class Existence { Exists, Boundary, NotExists };
const char* to_string(Existence e);

struct ExistenceDecision {
  Existence verdict = Existence::Exists;
  double cond = 1.0;       // cond(S11) after equilibrating the gauge
  double sigma_min = 1.0;  // 1 / ||S11^{-1}||_F, 0 when singular
  Complex det = 1.0;       // det S11 in the stored gauge
};

ExistenceDecision factorization_exists(const RealizationBundle& b, const CircleContour& c,
                                       const Tolerances& tol = default_tolerances());

/// Residue of f at `at` by the trapezoid rule on |z - at| = radius.
Matrix contour_residue(const std::function<Matrix(Complex)>& f, Complex at, double radius, int nodes = 64);

/// Half the distance from `at` to the nearest other point in `singular`.
double quadrature_radius(Complex at, const std::vector<Complex>& singular);

}  // namespace zpreal
