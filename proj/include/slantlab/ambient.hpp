#pragma once

#include "slantlab/check.hpp"
#include "slantlab/tensor.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace slantlab {

struct AmbientAtPoint {
  MetricAtPoint g;
  Matrix phi;
  Vector xi;
  Vector eta;  // covector components
};

// A Lorentzian almost contact structure (phi, xi, eta, g) on a chart of
// R^{2n+1}. Immutable; the field callbacks must be pure.
class AmbientStructure {
 public:
  using MatrixField = std::function<Matrix(const Vector&)>;
  using VectorField = std::function<Vector(const Vector&)>;

  AmbientStructure(std::string name, int n, MatrixField g, MatrixField phi, VectorField xi, VectorField eta,
                   std::string smoothness_note);

  const std::string& name() const noexcept { return name_; }
  int n() const noexcept { return n_; }
  int dim() const noexcept { return 2 * n_ + 1; }
  const std::string& smoothness_note() const noexcept { return note_; }

  // Raw field values; used inside finite-difference stencils.
  Matrix metric_matrix(const Vector& p) const;
  Matrix phi(const Vector& p) const;
  Vector xi(const Vector& p) const;
  Vector eta(const Vector& p) const;

  // Lorentzian-checked metric.
  MetricAtPoint metric(const CoordPoint& p) const;
  AmbientAtPoint at(const CoordPoint& p) const;

  // phi -> phi_sign * phi, (eta, xi) -> eta_sign * (eta, xi).
  AmbientStructure with_convention(int phi_sign, int eta_sign, std::string note) const;

 private:
  void check_point(const Vector& p) const;

  std::string name_;
  int n_;
  MatrixField g_;
  MatrixField phi_;
  VectorField xi_;
  VectorField eta_;
  std::string note_;
};

struct ChristoffelData {
  Rank3 symbols;  // symbols(k, i, j) = Gamma^k_ij
  double fd_error_estimate = 0.0;
  double symmetry_residual = 0.0;        // max |Gamma^k_ij - Gamma^k_ji|
  double metric_compat_residual = 0.0;   // max |nabla_k g_ij|
};

ChristoffelData christoffel(const AmbientStructure& s, const CoordPoint& p, const FDConfig& cfg);

// Gamma^k_ij x^i y^j.
Vector contract_connection(const Rank3& gamma, const Vector& x, const Vector& y);

// (nabla_X Y)^k = X^i d_i Y^k + Gamma^k_ij X^i Y^j at p.
Vector ambient_cov_deriv(const AmbientStructure& s, const Vector& x, const AmbientStructure::VectorField& y,
                         const CoordPoint& p, const FDConfig& cfg);
Vector ambient_cov_deriv(const ChristoffelData& gamma, const Vector& x, const AmbientStructure::VectorField& y,
                         const CoordPoint& p, const FDConfig& cfg);

inline constexpr double kAlgebraicTolerance = 1e-10;
inline constexpr double kSasakianTolerance = 1e-5;
inline constexpr std::uint64_t kVectorSeed = 7;

struct VerifyOptions {
  double tolerance;
  std::uint64_t vector_seed = kVectorSeed;
  int pairs_per_point = 4;
};

// Records (all maximized over points and random vector pairs):
//   structure/phi-squared            phi^2 X + X - eta(X) xi
//   structure/phi-kernel             eta(phi X), phi xi, eta(xi) - 1
//   structure/metric-compatibility   g(phi X, phi Y) - g(X, Y) - eta(X) eta(Y)
//   structure/phi-skew               g(phi X, Y) + g(X, phi Y)
//   structure/eta-metric-dual        eta(X) + g(X, xi)
std::vector<CheckRecord> verify_structure(const AmbientStructure& s, std::span<const CoordPoint> points,
                                          const VerifyOptions& opts = {kAlgebraicTolerance});

// Records:
//   sasakian/nabla-phi    (nabla_X phi) Y - g(X, Y) xi - eta(Y) X
//   sasakian/nabla-xi     nabla_X xi - phi X
// plus the diagnostic sasakian/nabla-phi-printed-sign, the residual of
// (nabla_X phi) Y + g(X, Y) xi + eta(Y) X. The two sign variants of the phi
// identity cannot hold together with nabla_X xi = phi X: substituting Y = xi
// in the printed variant forces nabla_X xi = -phi X.
std::vector<CheckRecord> verify_sasakian(const AmbientStructure& s, std::span<const CoordPoint> points,
                                         const FDConfig& cfg, const VerifyOptions& opts = {kSasakianTolerance});

struct Calibration {
  AmbientStructure structure;
  int phi_sign;
  int eta_sign;
  double residual;  // max Sasakian residual of the selected member
};

// Tries {phi -> -phi} x {(eta, xi) -> -(eta, xi)} and keeps the member with the
// smallest Sasakian residual (identity preferred on ties).
Calibration calibrate_sasakian(const AmbientStructure& s, std::span<const CoordPoint> points, const FDConfig& cfg);

// Chart (x^1..x^n, y^1..y^n, z), eta = (dz - sum y^i dx^i) / 2, xi = 2 d/dz,
// phi(X, Y, Z) = (Y, -X, sum Y^i y^i), g = -eta (x) eta + sum(dx^2 + dy^2) / 4.
AmbientStructure canonical_model_uncalibrated(int n);
// The same model after calibrate_sasakian; the chosen convention is recorded in
// the smoothness note.
AmbientStructure canonical_lorentzian_sasakian(int n);

// Constant phi(X, Y, Z) = (Y, -X, 0), xi = d/dz, eta = dz,
// g = -dz^2 + sum(dx^2 + dy^2) / 4. Almost contact but not Sasakian.
AmbientStructure flat_product(int n);

std::vector<CoordPoint> default_ambient_samples(int dim, std::size_t count = 100, std::uint64_t seed = 42);

}  // namespace slantlab
