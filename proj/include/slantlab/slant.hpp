#pragma once

#include "slantlab/submanifold.hpp"

#include <span>
#include <string>
#include <vector>

namespace slantlab {

enum class SlantClass { invariant, anti_invariant, proper_slant, non_slant };
const char* to_string(SlantClass c);

struct PointAngle {
  Vector u;
  double theta;
};

struct SlantReport {
  std::string method;  // "q-fit" or "curvature"
  double lambda_fit = 0.0;     // snapped to 0 / 1 for anti-invariant / invariant
  double lambda_raw = 0.0;     // least-squares value before snapping
  double fit_residual = 0.0;   // worst per-point residual
  double theta = 0.0;          // arccos(sqrt(lambda_fit))
  double theta_spread = 0.0;   // max - min of per-point angles
  std::vector<EigenCluster> spectrum;  // Q spectrum on T_xM at the first sample
  SlantClass classification = SlantClass::non_slant;
  std::vector<PointAngle> per_point;
};

// Angle between phi X and T_xM, from the D-component X' of X:
// arccos(|TX'| / |phi X'|), with pi/2 when TX' vanishes.
// x holds parameter-frame coefficients.
double slant_angle(const PhiSplit& split, const PointFrame& frame, const Vector& x);

// Q = T^2 in the parameter frame.
Matrix q_operator(const PhiSplit& split);

// Matrix of Q restricted to D in the g-orthonormal basis d_coeffs.
Matrix q_on_d(const Matrix& q, const PointFrame& frame);

// Spectrum of Q on T_xM: the D part via self_adjoint_spectrum plus the zero
// eigenvalue of xi.
std::vector<EigenCluster> q_spectrum(const Matrix& q, const PointFrame& frame);

// Eigen-decomposition of Q on the whole tangent space (general solver, in the
// g-orthonormal frame [d | xi]).
struct QEigenStructure {
  Vector values;             // real parts, ascending
  double max_imag = 0.0;
  double max_xi_component = 0.0;  // max |g(v, xi)| over unit eigenvectors of non-zero eigenvalues
  std::vector<EigenCluster> clusters;
};
QEigenStructure q_eigen_structure(const Matrix& q, const PointFrame& frame);

inline constexpr double kSlantFitTolerance = 1e-4;
inline constexpr double kSlantSnap = 1e-6;
inline constexpr double kTheorem31Tolerance = 1e-6;
inline constexpr double kCorollaryTolerance = 1e-5;

// residual |cos theta(X) - sqrt(-lambda(X)) |X| / |phi X|| over eigenvectors X
// of Q. Throws contract when some X is not an eigenvector (residual > 1e-6).
CheckRecord theorem31_check(const Matrix& q, const PhiSplit& split, const PointFrame& frame,
                            std::span<const Vector> xs, double tolerance = kTheorem31Tolerance);

struct PointSlant {
  PointFrame frame;
  PhiSplit split;
  Matrix q;
};

PointSlant evaluate_slant_point(const AmbientStructure& s, const Immersion& f, const Vector& u, const FDConfig& cfg);

struct SlantFitOptions {
  double tolerance = kSlantFitTolerance;
  double snap = kSlantSnap;
};

// Least-squares lambda with T^2 ~ lambda (-I + eta (x) xi) over the sampled
// points (Frobenius norm in the orthonormal frame).
SlantReport slant_fit(std::span<const PointSlant> points, const SlantFitOptions& opts = {});

// Records corollary31/tangential-metric and corollary31/normal-metric,
//   g(TX, TY) - cos^2(theta) (g(X, Y) + eta(X) eta(Y))
//   g(NX, NY) - sin^2(theta) (g(X, Y) + eta(X) eta(Y)),
// and the diagnostic "paper-as-printed-(3.5)" for the variant with
// -eta(X) eta(Y), which is off by 2 cos^2(theta) at X = Y = xi.
std::vector<CheckRecord> metric_identities(std::span<const PointSlant> points, double theta,
                                           double tolerance = kCorollaryTolerance,
                                           std::uint64_t vector_seed = kVectorSeed, int pairs_per_point = 4);

// Slant-module invariants per sample point: Q spectrum within [-1, 0],
// even multiplicity of non-zero eigenvalues, eigenspaces inside D, skewness
// of T, Cauchy-Schwarz |TX| <= |phi X| and Theorem-3.1 consistency.
std::vector<CheckRecord> slant_point_checks(std::span<const PointSlant> points, double spectrum_tolerance = 1e-6,
                                            double eigenspace_tolerance = 1e-8,
                                            double theorem31_tolerance = kTheorem31Tolerance);

}  // namespace slantlab
