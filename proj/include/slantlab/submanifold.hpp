#pragma once

#include "slantlab/ambient.hpp"
#include "slantlab/sampling.hpp"

#include <string>
#include <vector>

namespace slantlab {

// A smooth map from a box in R^m into the ambient chart.
class Immersion {
 public:
  using Map = std::function<Vector(const Vector&)>;

  Immersion(std::string name, int m, int ambient_dim, Map map, std::vector<Interval> domain,
            std::vector<std::string> component_sources = {});

  const std::string& name() const noexcept { return name_; }
  int m() const noexcept { return m_; }
  int ambient_dim() const noexcept { return ambient_dim_; }
  const std::vector<Interval>& domain() const noexcept { return domain_; }
  // Printable component definitions (DSL text) when available.
  const std::vector<std::string>& component_sources() const noexcept { return sources_; }

  Vector operator()(const Vector& u) const;

  // Throws DomainError unless every coordinate of u is at least margin away
  // from the corresponding face of the domain box.
  void require_interior(const Vector& u, double margin) const;

 private:
  std::string name_;
  int m_;
  int ambient_dim_;
  Map map_;
  std::vector<Interval> domain_;
  std::vector<std::string> sources_;
};

// Geometry of M at one parameter point. Tangent quantities are stored in
// parameter-frame coefficients (m-vectors) unless noted as ambient.
struct PointFrame {
  Vector base_param;
  CoordPoint base{Vector::Zero(1)};
  MetricAtPoint g{Matrix::Identity(1, 1)};   // ambient metric at base
  Matrix phi;                               // ambient phi at base
  Vector xi;                                // ambient xi at base
  Vector eta;                               // ambient eta at base
  Matrix tangent;         // D x m, pushforward basis E_i (ambient)
  Matrix normal;          // D x (D - m), g-orthonormal, spacelike (ambient)
  Matrix induced_metric;  // m x m
  Vector xi_coeffs;       // xi = sum_i xi_coeffs[i] E_i
  Matrix d_coeffs;        // m x (m - 1), g-orthonormal basis of D
  Matrix d_basis;         // D x (m - 1), the same basis as ambient vectors

  int m() const { return int(tangent.cols()); }
  int codim() const { return int(normal.cols()); }
  // [d_coeffs | xi_coeffs]: a g-orthonormal frame (last vector timelike).
  Matrix orthonormal_coeffs() const;
  // Coefficients of a tangent ambient vector, via g-orthogonal projection.
  Vector tangential_coeffs(const Vector& ambient) const;
  // g-inner product of tangent vectors given by coefficients.
  double tangent_inner(const Vector& a, const Vector& b) const { return a.dot(induced_metric * b); }
};

// phi X = T X + N X, phi V = t V + n V. T and t act on / produce parameter
// coefficients, N and n produce coefficients in the orthonormal normal basis.
struct PhiSplit {
  Matrix T;       // m x m
  Matrix N;       // (D - m) x m
  Matrix t;       // m x (D - m)
  Matrix n_op;    // (D - m) x (D - m)
  double reconstruction_residual = 0.0;
  double skew_residual = 0.0;  // max |g(TX, Y) + g(X, TY)| over frame vectors
};

struct SecondFundamental {
  Rank3 h;                         // h(k, i, j) = g(h(E_i, E_j), V_k)
  std::vector<Matrix> shape_ops;   // A_{V_k}, acting on parameter coefficients
  Rank3 connection;                // induced Gamma^k_ij from the tangential part
  Rank3 normal_connection;         // normal_connection(l, i, k) = g(nabla^perp_{E_i} V_k, V_l)
  double symmetry_residual = 0.0;
  double duality_residual = 0.0;
  double gauss_residual = 0.0;       // |tan + nor - ambient derivative|
  double weingarten_residual = 0.0;  // |tan(nabla_X V) + A_V X|
};

// Throws DomainError (interior margin), degenerate_immersion, xi_not_tangent.
PointFrame frame_at(const AmbientStructure& s, const Immersion& f, const Vector& u, const FDConfig& cfg);

PhiSplit phi_split(const AmbientStructure& s, const PointFrame& frame);

SecondFundamental second_fundamental(const AmbientStructure& s, const Immersion& f, const Vector& u,
                                     const FDConfig& cfg);

inline constexpr double kXiIdentityTolerance = 1e-6;

// Records xi/nabla-xi-equals-T (tangential part of nabla_X xi minus TX) and
// xi/h-xi-equals-N (h(X, xi) minus NX), over the coordinate frame and D.
std::vector<CheckRecord> xi_identities(const AmbientStructure& s, const Immersion& f, const Vector& u,
                                       const FDConfig& cfg, double tolerance = kXiIdentityTolerance);

namespace detail {
// frame_at without the interior-margin check, for use inside stencils.
PointFrame frame_unchecked(const AmbientStructure& s, const Immersion& f, const Vector& u, const FDConfig& cfg);
SecondFundamental second_fundamental_unchecked(const AmbientStructure& s, const Immersion& f, const Vector& u,
                                               const FDConfig& cfg);
}  // namespace detail

}  // namespace slantlab
