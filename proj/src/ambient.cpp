#include "slantlab/ambient.hpp"

#include "slantlab/error.hpp"
#include "slantlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace slantlab {

AmbientStructure::AmbientStructure(std::string name, int n, MatrixField g, MatrixField phi, VectorField xi,
                                   VectorField eta, std::string smoothness_note)
    : name_(std::move(name)),
      n_(n),
      g_(std::move(g)),
      phi_(std::move(phi)),
      xi_(std::move(xi)),
      eta_(std::move(eta)),
      note_(std::move(smoothness_note)) {
  if (n_ < 1) throw Error(ErrorCode::usage, "ambient structure needs n >= 1");
}

void AmbientStructure::check_point(const Vector& p) const {
  if (p.size() != dim()) throw Error(ErrorCode::structural, "point dimension does not match the ambient chart");
}

Matrix AmbientStructure::metric_matrix(const Vector& p) const {
  check_point(p);
  Matrix g = g_(p);
  if (g.rows() != dim() || g.cols() != dim()) throw Error(ErrorCode::structural, "metric field has wrong size");
  return g;
}

Matrix AmbientStructure::phi(const Vector& p) const {
  check_point(p);
  Matrix f = phi_(p);
  if (f.rows() != dim() || f.cols() != dim()) throw Error(ErrorCode::structural, "phi field has wrong size");
  return f;
}

Vector AmbientStructure::xi(const Vector& p) const {
  check_point(p);
  Vector v = xi_(p);
  if (v.size() != dim()) throw Error(ErrorCode::structural, "xi field has wrong size");
  return v;
}

Vector AmbientStructure::eta(const Vector& p) const {
  check_point(p);
  Vector v = eta_(p);
  if (v.size() != dim()) throw Error(ErrorCode::structural, "eta field has wrong size");
  return v;
}

MetricAtPoint AmbientStructure::metric(const CoordPoint& p) const {
  return MetricAtPoint::lorentzian(metric_matrix(p.coords()));
}

AmbientAtPoint AmbientStructure::at(const CoordPoint& p) const {
  return {metric(p), phi(p.coords()), xi(p.coords()), eta(p.coords())};
}

AmbientStructure AmbientStructure::with_convention(int phi_sign, int eta_sign, std::string note) const {
  const double ps = phi_sign < 0 ? -1.0 : 1.0;
  const double es = eta_sign < 0 ? -1.0 : 1.0;
  auto phi = phi_;
  auto xi = xi_;
  auto eta = eta_;
  return AmbientStructure(
      name_, n_, g_, [phi, ps](const Vector& p) -> Matrix { return ps * phi(p); },
      [xi, es](const Vector& p) -> Vector { return es * xi(p); },
      [eta, es](const Vector& p) -> Vector { return es * eta(p); }, std::move(note));
}

ChristoffelData christoffel(const AmbientStructure& s, const CoordPoint& p, const FDConfig& cfg) {
  const int d = s.dim();
  const Matrix g = s.metric_matrix(p.coords());
  Eigen::FullPivLU<Matrix> lu(g);
  if (!lu.isInvertible()) throw Error(ErrorCode::degenerate_metric, "degenerate metric: cannot form Christoffel symbols");
  const Matrix ginv = lu.inverse();

  const FdJacobian dg = fd_jacobian([&](const Vector& q) { return flatten(s.metric_matrix(q)); }, p.coords(),
                                    cfg.step, cfg.richardson);
  // dmetric(l, i, j) = d_l g_ij
  auto dmetric = [&](int l, int i, int j) { return dg.value(i + j * d, l); };

  ChristoffelData out;
  out.symbols = Rank3(d, d, d);
  out.fd_error_estimate = dg.error_estimate;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double sum = 0.0;
        for (int l = 0; l < d; ++l) sum += ginv(k, l) * (dmetric(i, j, l) + dmetric(j, i, l) - dmetric(l, i, j));
        out.symbols(k, i, j) = 0.5 * sum;
      }
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        out.symmetry_residual = std::max(out.symmetry_residual, std::abs(out.symbols(k, i, j) - out.symbols(k, j, i)));
        double nabla = dmetric(k, i, j);
        for (int l = 0; l < d; ++l) nabla -= out.symbols(l, k, i) * g(l, j) + out.symbols(l, k, j) * g(i, l);
        out.metric_compat_residual = std::max(out.metric_compat_residual, std::abs(nabla));
      }
  return out;
}

Vector contract_connection(const Rank3& gamma, const Vector& x, const Vector& y) {
  const int d = gamma.dim(0);
  Vector out = Vector::Zero(d);
  for (int k = 0; k < d; ++k) {
    double sum = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) sum += gamma(k, i, j) * x[i] * y[j];
    out[k] = sum;
  }
  return out;
}

Vector ambient_cov_deriv(const ChristoffelData& gamma, const Vector& x, const AmbientStructure::VectorField& y,
                         const CoordPoint& p, const FDConfig& cfg) {
  if (x.size() != p.dim()) throw Error(ErrorCode::structural, "cov_deriv: direction has wrong dimension");
  const FdJacobian dy = fd_jacobian(y, p.coords(), cfg.step, cfg.richardson);
  return dy.value * x + contract_connection(gamma.symbols, x, y(p.coords()));
}

Vector ambient_cov_deriv(const AmbientStructure& s, const Vector& x, const AmbientStructure::VectorField& y,
                         const CoordPoint& p, const FDConfig& cfg) {
  return ambient_cov_deriv(christoffel(s, p, cfg), x, y, p, cfg);
}

std::vector<CheckRecord> verify_structure(const AmbientStructure& s, std::span<const CoordPoint> points,
                                          const VerifyOptions& opts) {
  if (points.empty()) throw Error(ErrorCode::usage, "verify_structure: empty sample set");
  CheckAccumulator phi_sq("structure/phi-squared", opts.tolerance);
  CheckAccumulator kernel("structure/phi-kernel", opts.tolerance);
  CheckAccumulator compat("structure/metric-compatibility", opts.tolerance);
  CheckAccumulator skew("structure/phi-skew", opts.tolerance);
  CheckAccumulator dual("structure/eta-metric-dual", opts.tolerance);

  Rng rng(opts.vector_seed);
  const int d = s.dim();
  for (const CoordPoint& p : points) {
    const AmbientAtPoint a = s.at(p);
    const Matrix& g = a.g.entries();
    const double eta_xi = a.eta.dot(a.xi);
    kernel.add(std::max({(a.phi * a.xi).cwiseAbs().maxCoeff(), std::abs(eta_xi - 1.0), (a.eta.transpose() * a.phi).cwiseAbs().maxCoeff()}),
               p.coords());
    for (int k = 0; k < opts.pairs_per_point; ++k) {
      const Vector x = rng.uniform_vector(d, -1.0, 1.0);
      const Vector y = rng.uniform_vector(d, -1.0, 1.0);
      const double ex = a.eta.dot(x), ey = a.eta.dot(y);
      phi_sq.add((a.phi * (a.phi * x) + x - ex * a.xi).cwiseAbs().maxCoeff(), p.coords());
      kernel.add(std::abs(a.eta.dot(a.phi * x)), p.coords());
      const Vector px = a.phi * x, py = a.phi * y;
      compat.add(std::abs(px.dot(g * py) - x.dot(g * y) - ex * ey), p.coords());
      skew.add(std::abs(px.dot(g * y) + x.dot(g * py)), p.coords());
      dual.add(std::abs(ex + x.dot(g * a.xi)), p.coords());
    }
  }
  return {phi_sq.finish(), kernel.finish(), compat.finish(), skew.finish(), dual.finish()};
}

std::vector<CheckRecord> verify_sasakian(const AmbientStructure& s, std::span<const CoordPoint> points,
                                         const FDConfig& cfg, const VerifyOptions& opts) {
  if (points.empty()) throw Error(ErrorCode::usage, "verify_sasakian: empty sample set");
  CheckAccumulator nabla_phi("sasakian/nabla-phi", opts.tolerance);
  CheckAccumulator nabla_xi("sasakian/nabla-xi", opts.tolerance);
  CheckAccumulator printed("sasakian/nabla-phi-printed-sign", opts.tolerance, true);

  Rng rng(opts.vector_seed);
  const int d = s.dim();
  for (const CoordPoint& p : points) {
    const ChristoffelData gamma = christoffel(s, p, cfg);
    const AmbientAtPoint a = s.at(p);
    const Matrix& g = a.g.entries();
    for (int k = 0; k < opts.pairs_per_point; ++k) {
      const Vector x = rng.uniform_vector(d, -1.0, 1.0);
      const Vector y = rng.uniform_vector(d, -1.0, 1.0);
      // (nabla_X phi) Y with Y extended as a constant-coefficient field.
      const Vector d_phi_y = ambient_cov_deriv(gamma, x, [&](const Vector& q) -> Vector { return s.phi(q) * y; }, p, cfg);
      const Vector phi_d_y = a.phi * contract_connection(gamma.symbols, x, y);
      const Vector lhs = d_phi_y - phi_d_y;
      const double gxy = x.dot(g * y);
      const double ey = a.eta.dot(y);
      nabla_phi.add((lhs - gxy * a.xi - ey * x).cwiseAbs().maxCoeff(), p.coords());
      printed.add((lhs + gxy * a.xi + ey * x).cwiseAbs().maxCoeff(), p.coords());

      const Vector d_xi = ambient_cov_deriv(gamma, x, [&](const Vector& q) -> Vector { return s.xi(q); }, p, cfg);
      nabla_xi.add((d_xi - a.phi * x).cwiseAbs().maxCoeff(), p.coords());
    }
  }
  return {nabla_phi.finish(), nabla_xi.finish(), printed.finish()};
}

Calibration calibrate_sasakian(const AmbientStructure& s, std::span<const CoordPoint> points, const FDConfig& cfg) {
  std::optional<Calibration> best;
  for (int phi_sign : {1, -1})
    for (int eta_sign : {1, -1}) {
      AmbientStructure candidate = s.with_convention(phi_sign, eta_sign, s.smoothness_note());
      double residual = 0.0;
      for (const CheckRecord& r : verify_sasakian(candidate, points, cfg))
        if (!r.diagnostic) residual = std::max(residual, r.max_residual);
      if (!best || residual < best->residual) best = Calibration{std::move(candidate), phi_sign, eta_sign, residual};
    }
  return std::move(*best);
}

AmbientStructure canonical_model_uncalibrated(int n) {
  if (n < 1) throw Error(ErrorCode::usage, "canonical model needs n >= 1");
  const int d = 2 * n + 1;
  auto eta = [n, d](const Vector& p) -> Vector {
    Vector e = Vector::Zero(d);
    for (int i = 0; i < n; ++i) e[i] = -0.5 * p[n + i];
    e[d - 1] = 0.5;
    return e;
  };
  auto xi = [d](const Vector&) -> Vector {
    Vector v = Vector::Zero(d);
    v[d - 1] = 2.0;
    return v;
  };
  auto phi = [n, d](const Vector& p) -> Matrix {
    Matrix f = Matrix::Zero(d, d);
    for (int i = 0; i < n; ++i) {
      f(i, n + i) = 1.0;
      f(n + i, i) = -1.0;
      f(d - 1, n + i) = p[n + i];
    }
    return f;
  };
  auto g = [n, d, eta](const Vector& p) -> Matrix {
    const Vector e = eta(p);
    Matrix m = -e * e.transpose();
    for (int i = 0; i < 2 * n; ++i) m(i, i) += 0.25;
    return m;
  };
  std::string name = n == 2 ? "lorentz-sasakian-R5" : "lorentz-sasakian-R2n+1(" + std::to_string(n) + ")";
  return AmbientStructure(std::move(name), n, g, phi, xi, eta, "analytic (C-infinity) fields");
}

AmbientStructure canonical_lorentzian_sasakian(int n) {
  const AmbientStructure raw = canonical_model_uncalibrated(n);
  const auto points = default_ambient_samples(raw.dim(), 10);
  const FDConfig cfg;
  Calibration c = calibrate_sasakian(raw, points, cfg);
  std::string note = raw.smoothness_note() + "; sign convention: phi " + (c.phi_sign > 0 ? "+1" : "-1") +
                     ", (eta, xi) " + (c.eta_sign > 0 ? "+1" : "-1") + " (calibrated against the Sasakian checks)";
  return c.structure.with_convention(1, 1, std::move(note));
}

AmbientStructure flat_product(int n) {
  if (n < 1) throw Error(ErrorCode::usage, "flat product needs n >= 1");
  const int d = 2 * n + 1;
  Matrix phi = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    phi(i, n + i) = 1.0;
    phi(n + i, i) = -1.0;
  }
  Matrix g = Matrix::Zero(d, d);
  for (int i = 0; i < 2 * n; ++i) g(i, i) = 0.25;
  g(d - 1, d - 1) = -1.0;
  Vector xi = Vector::Zero(d);
  xi[d - 1] = 1.0;
  const Vector eta = xi;  // dz
  std::string name = n == 2 ? "flat-product" : "flat-product(" + std::to_string(n) + ")";
  return AmbientStructure(
      std::move(name), n, [g](const Vector&) { return g; }, [phi](const Vector&) { return phi; },
      [xi](const Vector&) { return xi; }, [eta](const Vector&) { return eta; }, "constant fields");
}

std::vector<CoordPoint> default_ambient_samples(int dim, std::size_t count, std::uint64_t seed) {
  std::vector<CoordPoint> out;
  for (Vector& v : sample_cube(count, seed, dim)) out.emplace_back(std::move(v));
  return out;
}

}  // namespace slantlab
