#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace slantlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A point of the ambient chart. Entries are finite.
class CoordPoint {
 public:
  explicit CoordPoint(Vector coords);

  const Vector& coords() const noexcept { return coords_; }
  Eigen::Index dim() const noexcept { return coords_.size(); }
  double operator[](Eigen::Index i) const { return coords_[i]; }

 private:
  Vector coords_;
};

// Symmetric bilinear form at a point. Construction only enforces symmetry;
// use lorentzian() where the (-, +, ..., +) signature is required.
class MetricAtPoint {
 public:
  explicit MetricAtPoint(Matrix entries);

  // Throws ErrorCode::degenerate_metric unless exactly one eigenvalue is
  // negative and none vanish.
  static MetricAtPoint lorentzian(Matrix entries);

  const Matrix& entries() const noexcept { return entries_; }
  Eigen::Index dim() const noexcept { return entries_.rows(); }

  // Number of negative eigenvalues (after rejecting near-zero ones).
  int negative_count() const;

 private:
  Matrix entries_;
};

struct FDConfig {
  double step = 1e-4;
  double second_order_step = 1e-3;
  bool richardson = true;

  // Throws ErrorCode::usage unless both steps lie in (0, 0.1).
  void validate() const;

  // Smallest distance from the parameter-domain boundary at which every
  // nested stencil used by the geometric modules stays inside the domain.
  double interior_margin() const { return 2.0 * (second_order_step + step); }
};

// X^T g Y.
double inner(const MetricAtPoint& g, const Vector& x, const Vector& y);

// g-orthonormal basis (modified Gram-Schmidt, two passes) of the span of a
// spacelike family. Throws degenerate_frame for rank deficiency and
// not_spacelike when the span is not positive definite.
std::vector<Vector> orthonormalize_spacelike(const MetricAtPoint& g,
                                             std::span<const Vector> basis);
Matrix orthonormalize_spacelike(const MetricAtPoint& g, const Matrix& columns);

struct EigenCluster {
  double value;
  int multiplicity;

  bool operator==(const EigenCluster&) const = default;
};

struct Spectrum {
  Vector values;        // ascending, near-zero values snapped to 0
  Matrix vectors;       // columns, g-orthonormal
  std::vector<EigenCluster> clusters;
  double max_residual;  // max over pairs of |A v - lambda v|
};

inline constexpr double kZeroSnap = 1e-8;
inline constexpr double kClusterTolerance = 1e-6;

// Spectrum of an operator that is self-adjoint with respect to a positive
// definite g. Throws ErrorCode::contract when g A is not symmetric within
// 1e-8 (relative to the size of g A).
Spectrum self_adjoint_spectrum(const MetricAtPoint& g, const Matrix& a);

std::vector<EigenCluster> cluster_eigenvalues(const Vector& ascending);

using VectorMap = std::function<Vector(const Vector&)>;

struct FdJacobian {
  Matrix value;           // rows: outputs, cols: inputs
  double error_estimate;  // truncation (two-step discrepancy) plus rounding floor
};

// Central-difference Jacobian of f at p. With richardson on, the steps h and
// h/2 are combined as (4 D(h/2) - D(h)) / 3.
FdJacobian fd_jacobian(const VectorMap& f, const Vector& p, double step, bool richardson);
inline FdJacobian fd_jacobian(const VectorMap& f, const Vector& p, const FDConfig& cfg) {
  return fd_jacobian(f, p, cfg.step, cfg.richardson);
}

// Flattening helpers for matrix-valued maps (column-major).
Vector flatten(const Matrix& m);
Matrix unflatten(const Vector& v, Eigen::Index rows, Eigen::Index cols);

// Dense rank-3 and rank-4 arrays with row-major index order.
class Rank3 {
 public:
  Rank3() = default;
  Rank3(int a, int b, int c) : a_(a), b_(b), c_(c), data_(std::size_t(a) * b * c, 0.0) {}

  double& operator()(int i, int j, int k) { return data_[(std::size_t(i) * b_ + j) * c_ + k]; }
  double operator()(int i, int j, int k) const { return data_[(std::size_t(i) * b_ + j) * c_ + k]; }
  int dim(int axis) const { return axis == 0 ? a_ : axis == 1 ? b_ : c_; }

  // Slice with the first index fixed: (j, k) matrix.
  Matrix slice(int i) const;
  double max_abs() const;

 private:
  int a_ = 0, b_ = 0, c_ = 0;
  std::vector<double> data_;
};

class Rank4 {
 public:
  Rank4() = default;
  explicit Rank4(int n) : n_(n), data_(std::size_t(n) * n * n * n, 0.0) {}

  double& operator()(int i, int j, int k, int l) { return data_[((std::size_t(i) * n_ + j) * n_ + k) * n_ + l]; }
  double operator()(int i, int j, int k, int l) const {
    return data_[((std::size_t(i) * n_ + j) * n_ + k) * n_ + l];
  }
  int dim() const { return n_; }

 private:
  int n_ = 0;
  std::vector<double> data_;
};

}  // namespace slantlab
