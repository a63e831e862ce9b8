#include "slantlab/submanifold.hpp"

#include "slantlab/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace slantlab {

Immersion::Immersion(std::string name, int m, int ambient_dim, Map map, std::vector<Interval> domain,
                     std::vector<std::string> component_sources)
    : name_(std::move(name)),
      m_(m),
      ambient_dim_(ambient_dim),
      map_(std::move(map)),
      domain_(std::move(domain)),
      sources_(std::move(component_sources)) {
  if (m_ < 1) throw Error(ErrorCode::usage, "immersion needs at least one parameter");
  if (int(domain_.size()) != m_) throw Error(ErrorCode::structural, "immersion domain box must have one interval per parameter");
  for (const Interval& iv : domain_)
    if (!(iv.hi > iv.lo)) throw Error(ErrorCode::usage, "immersion domain interval is empty");
}

Vector Immersion::operator()(const Vector& u) const {
  if (u.size() != m_) throw Error(ErrorCode::structural, "immersion: parameter point has wrong dimension");
  Vector p = map_(u);
  if (p.size() != ambient_dim_) throw Error(ErrorCode::structural, "immersion: image has wrong dimension");
  if (!p.allFinite()) throw Error(ErrorCode::evaluation, "immersion '" + name_ + "' produced a non-finite point");
  return p;
}

void Immersion::require_interior(const Vector& u, double margin) const {
  if (u.size() != m_) throw Error(ErrorCode::structural, "immersion: parameter point has wrong dimension");
  for (int i = 0; i < m_; ++i) {
    if (u[i] - domain_[std::size_t(i)].lo < margin || domain_[std::size_t(i)].hi - u[i] < margin) {
      std::ostringstream msg;
      msg << "parameter point (";
      for (int k = 0; k < m_; ++k) msg << (k ? ", " : "") << u[k];
      msg << ") is within " << margin << " of the boundary of the domain in parameter u" << i + 1;
      throw DomainError(msg.str(), std::vector<double>(u.data(), u.data() + u.size()));
    }
  }
}

Matrix PointFrame::orthonormal_coeffs() const {
  Matrix o(m(), m());
  o.leftCols(m() - 1) = d_coeffs;
  o.col(m() - 1) = xi_coeffs;
  return o;
}

Vector PointFrame::tangential_coeffs(const Vector& ambient) const {
  return induced_metric.partialPivLu().solve(tangent.transpose() * (g.entries() * ambient));
}

namespace {

Matrix kernel_basis(const Matrix& a, Eigen::Index dim) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(dim);
}

Matrix jacobian_of(const Immersion& f, const Vector& u, const FDConfig& cfg) {
  return fd_jacobian([&f](const Vector& x) { return f(x); }, u, cfg.step, cfg.richardson).value;
}

}  // namespace

namespace detail {

PointFrame frame_unchecked(const AmbientStructure& s, const Immersion& f, const Vector& u, const FDConfig& cfg) {
  if (f.ambient_dim() != s.dim()) throw Error(ErrorCode::structural, "immersion and ambient dimensions differ");
  const int m = f.m();
  const int d = s.dim();
  if (m >= d) throw Error(ErrorCode::structural, "immersion must have positive codimension");

  PointFrame fr;
  fr.base_param = u;
  fr.base = CoordPoint(f(u));
  AmbientAtPoint a = s.at(fr.base);
  fr.g = a.g;
  fr.phi = a.phi;
  fr.xi = a.xi;
  fr.eta = a.eta;
  const Matrix& g = fr.g.entries();

  fr.tangent = jacobian_of(f, u, cfg);
  Eigen::JacobiSVD<Matrix> svd(fr.tangent);
  const Vector sv = svd.singularValues();
  if (!(sv[m - 1] > 1e-8 * sv[0])) throw Error(ErrorCode::degenerate_immersion, "degenerate immersion: Jacobian rank < m");

  fr.xi_coeffs = fr.tangent.colPivHouseholderQr().solve(fr.xi);
  if ((fr.tangent * fr.xi_coeffs - fr.xi).norm() > 1e-8 * std::max(1.0, fr.xi.norm()))
    throw Error(ErrorCode::xi_not_tangent, "xi-not-tangent: the structure vector field is not tangent to the immersion");

  Matrix ind = fr.tangent.transpose() * g * fr.tangent;
  fr.induced_metric = 0.5 * (ind + ind.transpose());
  if (std::abs(fr.induced_metric.determinant()) <= 1e-14 * std::pow(fr.induced_metric.cwiseAbs().maxCoeff(), m))
    throw Error(ErrorCode::degenerate_metric, "degenerate induced metric");

  fr.normal = orthonormalize_spacelike(fr.g, kernel_basis(fr.tangent.transpose() * g, d - m));

  if (m > 1) {
    const Vector w = fr.induced_metric * fr.xi_coeffs;
    fr.d_coeffs = orthonormalize_spacelike(MetricAtPoint(fr.induced_metric), kernel_basis(w.transpose(), m - 1));
  } else {
    fr.d_coeffs = Matrix(m, 0);
  }
  fr.d_basis = fr.tangent * fr.d_coeffs;
  return fr;
}

SecondFundamental second_fundamental_unchecked(const AmbientStructure& s, const Immersion& f, const Vector& u,
                                               const FDConfig& cfg) {
  const PointFrame fr = frame_unchecked(s, f, u, cfg);
  const int m = fr.m(), d = s.dim(), q = fr.codim();
  const Matrix& g = fr.g.entries();
  const Matrix& e = fr.tangent;
  const Matrix& nb = fr.normal;
  const auto lu = fr.induced_metric.partialPivLu();

  const Matrix hess = fd_jacobian([&](const Vector& x) { return flatten(jacobian_of(f, x, cfg)); }, u,
                                  cfg.second_order_step, cfg.richardson)
                          .value;
  const ChristoffelData gamma = christoffel(s, fr.base, cfg);

  SecondFundamental out;
  out.h = Rank3(q, m, m);
  out.connection = Rank3(m, m, m);
  out.normal_connection = Rank3(q, m, q);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Vector w = Vector(hess.col(i).segment(j * d, d)) + contract_connection(gamma.symbols, e.col(i), e.col(j));
      const Vector tan = lu.solve(e.transpose() * (g * w));
      const Vector nor = nb.transpose() * (g * w);
      for (int k = 0; k < m; ++k) out.connection(k, i, j) = tan[k];
      for (int k = 0; k < q; ++k) out.h(k, i, j) = nor[k];
      out.gauss_residual = std::max(out.gauss_residual, (e * tan + nb * nor - w).cwiseAbs().maxCoeff());
    }

  for (int k = 0; k < q; ++k) {
    Matrix hk(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        hk(i, j) = out.h(k, i, j);
        out.symmetry_residual = std::max(out.symmetry_residual, std::abs(out.h(k, i, j) - out.h(k, j, i)));
      }
    out.shape_ops.push_back(lu.solve(hk));
    const Matrix ga = fr.induced_metric * out.shape_ops.back();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out.duality_residual = std::max(out.duality_residual, std::abs(ga(j, i) - hk(i, j)));
  }

  // Weingarten: extend V_k by projecting it onto the normal space at nearby
  // points; the tangential part of nabla_X V only depends on V at the base.
  for (int k = 0; k < q; ++k) {
    const Vector v0 = nb.col(k);
    auto field = [&](const Vector& x) -> Vector {
      const Matrix jx = jacobian_of(f, x, cfg);
      const Matrix gx = s.metric_matrix(f(x));
      const Matrix hx = jx.transpose() * gx * jx;
      return v0 - jx * hx.partialPivLu().solve(jx.transpose() * (gx * v0));
    };
    const Matrix dv = fd_jacobian(field, u, cfg.second_order_step, cfg.richardson).value;
    for (int i = 0; i < m; ++i) {
      const Vector nab = Vector(dv.col(i)) + contract_connection(gamma.symbols, e.col(i), v0);
      const Vector tan = lu.solve(e.transpose() * (g * nab));
      out.weingarten_residual =
          std::max(out.weingarten_residual, (tan + out.shape_ops[std::size_t(k)].col(i)).cwiseAbs().maxCoeff());
      const Vector nor = nb.transpose() * (g * nab);
      for (int l = 0; l < q; ++l) out.normal_connection(l, i, k) = nor[l];
    }
  }
  return out;
}

}  // namespace detail

PointFrame frame_at(const AmbientStructure& s, const Immersion& f, const Vector& u, const FDConfig& cfg) {
  cfg.validate();
  f.require_interior(u, cfg.interior_margin());
  return detail::frame_unchecked(s, f, u, cfg);
}

PhiSplit phi_split(const AmbientStructure&, const PointFrame& fr) {
  const Matrix& g = fr.g.entries();
  const Matrix& e = fr.tangent;
  const Matrix& nb = fr.normal;
  const auto lu = fr.induced_metric.partialPivLu();
  const Matrix phi_e = fr.phi * e;
  const Matrix phi_n = fr.phi * nb;

  PhiSplit sp;
  sp.T = lu.solve(e.transpose() * g * phi_e);
  sp.N = nb.transpose() * g * phi_e;
  sp.t = lu.solve(e.transpose() * g * phi_n);
  sp.n_op = nb.transpose() * g * phi_n;
  const double recon_t = (phi_e - e * sp.T - nb * sp.N).cwiseAbs().maxCoeff();
  const double recon_n = nb.cols() ? (phi_n - e * sp.t - nb * sp.n_op).cwiseAbs().maxCoeff() : 0.0;
  sp.reconstruction_residual = std::max(recon_t, recon_n);
  sp.skew_residual = (sp.T.transpose() * fr.induced_metric + fr.induced_metric * sp.T).cwiseAbs().maxCoeff();
  return sp;
}

SecondFundamental second_fundamental(const AmbientStructure& s, const Immersion& f, const Vector& u,
                                     const FDConfig& cfg) {
  cfg.validate();
  f.require_interior(u, cfg.interior_margin());
  return detail::second_fundamental_unchecked(s, f, u, cfg);
}

std::vector<CheckRecord> xi_identities(const AmbientStructure& s, const Immersion& f, const Vector& u,
                                       const FDConfig& cfg, double tolerance) {
  const PointFrame fr = frame_at(s, f, u, cfg);
  const PhiSplit sp = phi_split(s, fr);
  const SecondFundamental sf = detail::second_fundamental_unchecked(s, f, u, cfg);
  const ChristoffelData gamma = christoffel(s, fr.base, cfg);
  const int m = fr.m(), q = fr.codim();
  const Matrix& g = fr.g.entries();

  const Matrix dxi = fd_jacobian([&](const Vector& x) { return s.xi(f(x)); }, u, cfg.step, cfg.richardson).value;
  Matrix nabla_xi(m, m);  // column i: tangential coefficients of nabla_{E_i} xi
  Matrix h_xi(q, m);      // column i: h(E_i, xi) in the normal basis
  for (int i = 0; i < m; ++i) {
    const Vector amb = Vector(dxi.col(i)) + contract_connection(gamma.symbols, fr.tangent.col(i), fr.xi);
    nabla_xi.col(i) = fr.induced_metric.partialPivLu().solve(fr.tangent.transpose() * (g * amb));
    for (int k = 0; k < q; ++k) {
      double sum = 0.0;
      for (int j = 0; j < m; ++j) sum += sf.h(k, i, j) * fr.xi_coeffs[j];
      h_xi(k, i) = sum;
    }
  }

  CheckAccumulator tan_rec("xi/nabla-xi-equals-T", tolerance);
  CheckAccumulator nor_rec("xi/h-xi-equals-N", tolerance);
  Matrix directions(m, m + fr.d_coeffs.cols());
  directions << Matrix::Identity(m, m), fr.d_coeffs;
  for (Eigen::Index c = 0; c < directions.cols(); ++c) {
    const Vector x = directions.col(c);
    tan_rec.add((fr.tangent * ((nabla_xi - sp.T) * x)).cwiseAbs().maxCoeff(), u);
    nor_rec.add(q ? ((h_xi - sp.N) * x).cwiseAbs().maxCoeff() : 0.0, u);
  }
  return {tan_rec.finish(), nor_rec.finish()};
}

}  // namespace slantlab
