#include "slantlab/tensor.hpp"

#include "slantlab/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace slantlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

CoordPoint::CoordPoint(Vector coords) : coords_(std::move(coords)) {
  if (!coords_.allFinite()) throw Error(ErrorCode::structural, "coordinate point has non-finite entries");
}

MetricAtPoint::MetricAtPoint(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw Error(ErrorCode::structural, "metric matrix is not square");
  if (!entries_.allFinite()) throw Error(ErrorCode::structural, "metric has non-finite entries");
  const double scale = std::max(1.0, max_abs(entries_));
  if (max_abs(entries_ - entries_.transpose()) > 1e-12 * scale)
    throw Error(ErrorCode::structural, "metric matrix is not symmetric");
}

MetricAtPoint MetricAtPoint::lorentzian(Matrix entries) {
  MetricAtPoint g(std::move(entries));
  if (g.negative_count() != 1) throw Error(ErrorCode::degenerate_metric, "metric is not Lorentzian");
  return g;
}

int MetricAtPoint::negative_count() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  const Vector& ev = solver.eigenvalues();
  const double scale = std::max(1e-300, ev.cwiseAbs().maxCoeff());
  int negative = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= 1e-12 * scale) throw Error(ErrorCode::degenerate_metric, "metric is degenerate");
    if (ev[i] < 0) ++negative;
  }
  return negative;
}

void FDConfig::validate() const {
  auto ok = [](double s) { return std::isfinite(s) && s > 0.0 && s < 0.1; };
  if (!ok(step) || !ok(second_order_step))
    throw Error(ErrorCode::usage, "finite-difference steps must lie in (0, 0.1)");
}

double inner(const MetricAtPoint& g, const Vector& x, const Vector& y) {
  if (x.size() != g.dim() || y.size() != g.dim())
    throw Error(ErrorCode::structural, "inner: dimension mismatch between metric and vectors");
  return x.dot(g.entries() * y);
}

std::vector<Vector> orthonormalize_spacelike(const MetricAtPoint& g, std::span<const Vector> basis) {
  const double g_scale = std::max(1e-300, max_abs(g.entries()));
  std::vector<Vector> out;
  out.reserve(basis.size());
  for (const Vector& v : basis) {
    if (v.size() != g.dim()) throw Error(ErrorCode::structural, "orthonormalize: dimension mismatch");
    const double vnorm = v.norm();
    if (!(vnorm > 0.0)) throw Error(ErrorCode::degenerate_frame, "degenerate frame: zero vector");
    Vector w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& e : out) w -= inner(g, w, e) * e;
    if (w.norm() <= 1e-10 * vnorm) throw Error(ErrorCode::degenerate_frame, "degenerate frame: rank deficiency");
    const double nn = inner(g, w, w);
    if (nn <= 1e-14 * g_scale * w.squaredNorm()) throw Error(ErrorCode::not_spacelike, "span is not spacelike");
    out.push_back(w / std::sqrt(nn));
  }
  return out;
}

Matrix orthonormalize_spacelike(const MetricAtPoint& g, const Matrix& columns) {
  std::vector<Vector> cols;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) cols.emplace_back(columns.col(j));
  const auto on = orthonormalize_spacelike(g, cols);
  Matrix out(columns.rows(), columns.cols());
  for (Eigen::Index j = 0; j < columns.cols(); ++j) out.col(j) = on[std::size_t(j)];
  return out;
}

std::vector<EigenCluster> cluster_eigenvalues(const Vector& ascending) {
  std::vector<EigenCluster> clusters;
  Eigen::Index i = 0;
  while (i < ascending.size()) {
    const double start = ascending[i];
    double sum = 0.0;
    int count = 0;
    while (i < ascending.size() && ascending[i] - start <= kClusterTolerance) {
      sum += ascending[i];
      ++count;
      ++i;
    }
    clusters.push_back({sum / count, count});
  }
  return clusters;
}

Spectrum self_adjoint_spectrum(const MetricAtPoint& g, const Matrix& a) {
  if (a.rows() != g.dim() || a.cols() != g.dim())
    throw Error(ErrorCode::structural, "spectrum: operator and metric sizes differ");
  const Matrix ga = g.entries() * a;
  if (max_abs(ga - ga.transpose()) > 1e-8 * std::max(1.0, max_abs(ga)))
    throw Error(ErrorCode::contract, "operator is not self-adjoint with respect to the metric");

  Spectrum out;
  if (a.rows() == 0) {
    out.values = Vector(0);
    out.vectors = Matrix(0, 0);
    out.max_residual = 0.0;
    return out;
  }
  Eigen::LLT<Matrix> llt(g.entries());
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::not_spacelike, "spectrum: metric is not positive definite");
  const Matrix l = llt.matrixL();
  // B = L^T A L^{-T} is symmetric exactly when g A is.
  const Matrix l_inv_t = l.transpose().triangularView<Eigen::Upper>().solve(Matrix::Identity(a.rows(), a.cols()));
  Matrix b = l.transpose() * a * l_inv_t;
  b = 0.5 * (b + b.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(b);
  const Vector raw = solver.eigenvalues();
  out.vectors = l_inv_t * solver.eigenvectors();
  out.values = raw;
  out.max_residual = 0.0;
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    out.max_residual = std::max(out.max_residual, (a * out.vectors.col(i) - raw[i] * out.vectors.col(i)).norm());
    if (std::abs(out.values[i]) < kZeroSnap) out.values[i] = 0.0;
  }
  out.clusters = cluster_eigenvalues(out.values);
  return out;
}

FdJacobian fd_jacobian(const VectorMap& f, const Vector& p, double step, bool richardson) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::usage, "fd_jacobian: step must be positive");
  double scale = 0.0;

  auto eval = [&](const Vector& x, Eigen::Index coord, double offset) -> Vector {
    Vector y;
    try {
      y = f(x);
    } catch (const DomainError&) {
      throw;
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "evaluation failed at input coordinate " << coord << " (" << p[coord]
          << (offset < 0 ? " - " : " + ") << std::abs(offset) << "): " << e.what();
      throw Error(ErrorCode::evaluation, msg.str());
    }
    if (!y.allFinite()) {
      std::ostringstream msg;
      msg << "non-finite value at input coordinate " << coord << " (" << p[coord]
          << (offset < 0 ? " - " : " + ") << std::abs(offset) << ")";
      throw Error(ErrorCode::evaluation, msg.str());
    }
    scale = std::max(scale, y.size() ? y.cwiseAbs().maxCoeff() : 0.0);
    return y;
  };

  auto central = [&](double h) {
    Matrix d;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      Vector xp = p, xm = p;
      xp[i] += h;
      xm[i] -= h;
      const Vector fp = eval(xp, i, h);
      const Vector fm = eval(xm, i, -h);
      if (d.size() == 0) d.resize(fp.size(), p.size());
      if (fp.size() != d.rows() || fm.size() != d.rows())
        throw Error(ErrorCode::structural, "fd_jacobian: output size changed between evaluations");
      d.col(i) = (fp - fm) / (2.0 * h);
    }
    return d;
  };

  FdJacobian out;
  if (!richardson) {
    out.value = central(step);
    // Truncation is O(h^2): the half-step difference is 3/4 of the error.
    out.error_estimate = max_abs(out.value - central(0.5 * step)) * 4.0 / 3.0 + 4.0 * kEps * scale / step;
    return out;
  }
  const Matrix coarse = central(step);
  const Matrix fine = central(0.5 * step);
  out.value = (4.0 * fine - coarse) / 3.0;
  out.error_estimate = max_abs(fine - coarse) + 8.0 * kEps * scale / step;
  return out;
}

Vector flatten(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unflatten(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw Error(ErrorCode::structural, "unflatten: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix Rank3::slice(int i) const {
  Matrix out(b_, c_);
  for (int j = 0; j < b_; ++j)
    for (int k = 0; k < c_; ++k) out(j, k) = (*this)(i, j, k);
  return out;
}

double Rank3::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace slantlab
