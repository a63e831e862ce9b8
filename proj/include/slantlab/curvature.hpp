#pragma once

#include "slantlab/slant.hpp"

#include <span>
#include <string>
#include <vector>

namespace slantlab {

// Sign convention used throughout:
//   R(X, Y) = [nabla_X, nabla_Y] - nabla_[X, Y],  R(X, Y, Z, W) = g(R(X, Y) Z, W).
// With it, on a submanifold tangent to xi with nabla_X xi = TX,
//   R(X, Y) xi = (nabla_X T) Y - (nabla_Y T) X.
extern const char* const kCurvatureConvention;

struct CurvatureData {
  Rank4 R;        // R(l, i, j, k) = (R(E_i, E_j) E_k)^l
  Rank4 lowered;  // lowered(i, j, k, l) = g(R(E_i, E_j) E_k, E_l)
  Rank3 gamma;    // induced Levi-Civita symbols gamma(k, i, j)
  Matrix metric;  // induced metric
  double antisymmetry_residual = 0.0;   // both index pairs of the lowered tensor
  double pair_symmetry_residual = 0.0;
  double bianchi_residual = 0.0;
  std::string convention_note;
};

// Curvature of the induced metric in the parameter frame, by nested finite
// differences of the Christoffel symbols (second_order_step for both levels).
CurvatureData riemann(const AmbientStructure& s, const Immersion& f, const Vector& u, const FDConfig& cfg);

// R(X, Y) Z and R(X, Y, Z, W) on parameter coefficients.
Vector curvature_apply(const CurvatureData& c, const Vector& x, const Vector& y, const Vector& z);
double curvature_lowered(const CurvatureData& c, const Vector& x, const Vector& y, const Vector& z, const Vector& w);

struct TensorDerivative {
  std::vector<Matrix> nabla_T;  // nabla_T[i] = (nabla_{E_i} T)
  std::vector<Matrix> nabla_Q;  // computed from Q directly
  double product_rule_residual = 0.0;  // |nabla Q - (nabla T) T - T (nabla T)|
};

// Sum_i x^i slices[i].
Matrix along(const std::vector<Matrix>& slices, const Vector& x);

TensorDerivative nabla_T(const AmbientStructure& s, const Immersion& f, const Vector& u, const FDConfig& cfg);

struct CurvaturePoint {
  PointSlant slant;
  CurvatureData curvature;
  TensorDerivative derivative;
};

CurvaturePoint evaluate_curvature_point(const AmbientStructure& s, const Immersion& f, const Vector& u,
                                        const FDConfig& cfg);

inline constexpr double kCurvatureSymmetryTolerance = 1e-5;
inline constexpr double kLemmaTolerance = 2e-4;
inline constexpr double kParallelThreshold = 1e-5;
inline constexpr double kNonParallelThreshold = 1e-2;
inline constexpr double kSectionalSnap = 2e-4;
inline constexpr double kPlaneSpreadTolerance = 5e-4;
inline constexpr double kCrossValidationTolerance = 1e-2;

// curvature/antisymmetry, curvature/pair-symmetry, curvature/bianchi.
std::vector<CheckRecord> curvature_symmetry_records(std::span<const CurvaturePoint> points,
                                                    double tolerance = kCurvatureSymmetryTolerance);

// Records
//   lemma41/r-x-y-xi          R(X, Y) xi - (nabla_X T) Y + (nabla_Y T) X
//   lemma41/r-xi-x-xi         R(xi, X) xi - QX - (nabla_xi T) X
//   lemma41/r-x-xi-x-xi       R(X, xi, X, xi) - g(QX, X)
//   lemma41/nabla-xi-t-skew   g((nabla_xi T) X, X)
// and the diagnostic lemma41/r-x-y-xi-printed-sign for the opposite sign of
// the first identity.
std::vector<CheckRecord> lemma41_residuals(std::span<const CurvaturePoint> points,
                                           double tolerance = kLemmaTolerance,
                                           std::uint64_t vector_seed = kVectorSeed, int pairs_per_point = 4);
std::vector<CheckRecord> lemma41_residuals(const AmbientStructure& s, const Immersion& f, const Vector& u,
                                           const FDConfig& cfg, double tolerance = kLemmaTolerance);

struct Theorem41Result {
  std::vector<CheckRecord> records;
  double max_nabla_q = 0.0;
  int xi_sign = 0;  // chosen signs in cos^2(theta) (s1 g(Y, TX) xi + s2 eta(Y) TX)
  int tx_sign = 0;
  std::string convention_note;
};

// theorem41/q-derivative-formula  (nabla_X Q) Y against the sign pattern with
//                                 the smallest residual
// theorem41/parallel-iff-anti-invariant  0 when max |nabla Q| < 1e-5 exactly
//                                 for anti-invariant fits and > 1e-2 otherwise
// theorem41/max-nabla-q           diagnostic
// On a non-slant fit all three are diagnostic.
Theorem41Result theorem41_check(std::span<const CurvaturePoint> points, const SlantReport& fit,
                                double tolerance = kLemmaTolerance, std::uint64_t vector_seed = kVectorSeed,
                                int pairs_per_point = 4);

// K(X, xi) = R(X, xi, X, xi) / (g(X, X) g(xi, xi) - g(X, xi)^2) for spacelike
// X orthogonal to xi; throws contract otherwise.
double sectional_xi(const CurvaturePoint& p, const Vector& x);
double sectional_xi(const AmbientStructure& s, const Immersion& f, const Vector& u, const Vector& x,
                    const FDConfig& cfg);

struct CurvatureSlantOptions {
  double snap = kSectionalSnap;
  double spread_tolerance = kPlaneSpreadTolerance;
};

// Slant angle from the mean of K(d_a, xi) over D-basis vectors and samples.
// lambda_raw is the mean, fit_residual the spread max - min.
SlantReport slant_from_curvature(std::span<const CurvaturePoint> points, const CurvatureSlantOptions& opts = {});

// theorem42/sectional-equals-cos2, theorem42/plane-independence and
// theorem42/curvature-slant-agreement (|theta from curvature - theta from Q|).
std::vector<CheckRecord> theorem42_records(std::span<const CurvaturePoint> points, const SlantReport& fit,
                                           const SlantReport& from_curvature,
                                           double agreement_tolerance = kCrossValidationTolerance);

}  // namespace slantlab
