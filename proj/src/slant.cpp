#include "slantlab/slant.hpp"

#include "slantlab/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace slantlab {

const char* to_string(SlantClass c) {
  switch (c) {
    case SlantClass::invariant: return "invariant";
    case SlantClass::anti_invariant: return "anti-invariant";
    case SlantClass::proper_slant: return "proper-slant";
    case SlantClass::non_slant: return "non-slant";
  }
  return "?";
}

namespace {

double g_norm(const PointFrame& fr, const Vector& x) { return std::sqrt(std::max(0.0, fr.tangent_inner(x, x))); }

// D-component of a tangent vector.
Vector d_component(const PointFrame& fr, const Vector& x) {
  const double gxx = fr.tangent_inner(fr.xi_coeffs, fr.xi_coeffs);
  return x - (fr.tangent_inner(x, fr.xi_coeffs) / gxx) * fr.xi_coeffs;
}

Matrix in_orthonormal_frame(const Matrix& a, const PointFrame& fr) {
  const Matrix o = fr.orthonormal_coeffs();
  return o.partialPivLu().solve(a * o);
}

double eta_of(const PointFrame& fr, const Vector& x) { return fr.eta.dot(fr.tangent * x); }

}  // namespace

double slant_angle(const PhiSplit& split, const PointFrame& fr, const Vector& x) {
  if (x.size() != fr.m()) throw Error(ErrorCode::structural, "slant_angle: vector has wrong dimension");
  const Vector xd = d_component(fr, x);
  if (!(xd.norm() > 1e-10 * x.norm())) throw Error(ErrorCode::xi_direction, "xi-direction: the slant angle is undefined along xi");
  if (!(fr.tangent_inner(xd, xd) > 1e-20 * xd.squaredNorm()))
    throw Error(ErrorCode::null_vector, "null-vector: the D-component has no positive length");
  const Vector tx = split.T * xd;
  const Vector phix = fr.phi * (fr.tangent * xd);
  const double norm_t = g_norm(fr, tx);
  const double norm_phi = std::sqrt(std::max(0.0, inner(fr.g, phix, phix)));
  if (norm_t < 1e-10 * norm_phi) return std::acos(0.0);
  return std::acos(std::min(1.0, norm_t / norm_phi));
}

Matrix q_operator(const PhiSplit& split) { return split.T * split.T; }

Matrix q_on_d(const Matrix& q, const PointFrame& fr) {
  const Matrix& od = fr.d_coeffs;
  Matrix s = od.transpose() * fr.induced_metric * q * od;
  return s;
}

std::vector<EigenCluster> q_spectrum(const Matrix& q, const PointFrame& fr) {
  const int k = int(fr.d_coeffs.cols());
  Vector values(k + 1);
  if (k > 0) {
    const Matrix s = q_on_d(q, fr);
    values.head(k) = self_adjoint_spectrum(MetricAtPoint(Matrix::Identity(k, k)), s).values;
  }
  values[k] = 0.0;
  std::sort(values.data(), values.data() + values.size());
  return cluster_eigenvalues(values);
}

QEigenStructure q_eigen_structure(const Matrix& q, const PointFrame& fr) {
  const Matrix qo = in_orthonormal_frame(q, fr);
  Eigen::EigenSolver<Matrix> es(qo);
  const int m = fr.m();
  QEigenStructure out;
  out.values = es.eigenvalues().real();
  out.max_imag = es.eigenvalues().imag().cwiseAbs().maxCoeff();
  for (int i = 0; i < m; ++i) {
    if (std::abs(out.values[i]) < kZeroSnap) continue;
    Eigen::VectorXcd w = es.eigenvectors().col(i);
    w /= w.norm();
    // In the g-orthonormal frame g(v, xi) = -v_last.
    out.max_xi_component = std::max(out.max_xi_component, std::abs(w[m - 1]));
  }
  for (int i = 0; i < m; ++i)
    if (std::abs(out.values[i]) < kZeroSnap) out.values[i] = 0.0;
  std::sort(out.values.data(), out.values.data() + out.values.size());
  out.clusters = cluster_eigenvalues(out.values);
  return out;
}

CheckRecord theorem31_check(const Matrix& q, const PhiSplit& split, const PointFrame& fr,
                            std::span<const Vector> xs, double tolerance) {
  CheckAccumulator acc("theorem31/eigen-angle", tolerance);
  for (const Vector& x : xs) {
    const double theta = slant_angle(split, fr, x);  // rejects xi and null directions
    const double gxx = fr.tangent_inner(x, x);
    const Vector qx = q * x;
    const double lambda = fr.tangent_inner(qx, x) / gxx;
    if ((qx - lambda * x).norm() > 1e-6 * std::max(1.0, x.norm()))
      throw Error(ErrorCode::contract, "theorem31_check: vector is not an eigenvector of Q");
    const Vector phix = fr.phi * (fr.tangent * x);
    const double rhs = std::sqrt(std::max(0.0, -lambda)) * std::sqrt(gxx) / std::sqrt(inner(fr.g, phix, phix));
    acc.add(std::abs(std::cos(theta) - rhs), fr.base_param);
  }
  return acc.finish();
}

PointSlant evaluate_slant_point(const AmbientStructure& s, const Immersion& f, const Vector& u, const FDConfig& cfg) {
  PointFrame fr = frame_at(s, f, u, cfg);
  PhiSplit sp = phi_split(s, fr);
  Matrix q = q_operator(sp);
  return {std::move(fr), std::move(sp), std::move(q)};
}

SlantReport slant_fit(std::span<const PointSlant> points, const SlantFitOptions& opts) {
  if (points.empty()) throw Error(ErrorCode::usage, "slant_fit needs at least one sample point");
  const int m = points.front().frame.m();
  if (m < 2) throw Error(ErrorCode::usage, "slant_fit: the distribution D is trivial (m = 1)");

  Matrix b = Matrix::Zero(m, m);
  b.topLeftCorner(m - 1, m - 1) = -Matrix::Identity(m - 1, m - 1);

  SlantReport rep;
  rep.method = "q-fit";
  std::vector<Matrix> qos;
  double num = 0.0, den = 0.0;
  for (const PointSlant& p : points) {
    qos.push_back(in_orthonormal_frame(p.q, p.frame));
    num += (qos.back().array() * b.array()).sum();
    den += double(m - 1);
  }
  rep.lambda_raw = num / den;
  double lambda = std::clamp(rep.lambda_raw, 0.0, 1.0);

  double tmin = INFINITY, tmax = -INFINITY;
  for (std::size_t i = 0; i < points.size(); ++i) {
    rep.fit_residual = std::max(rep.fit_residual, (qos[i] - lambda * b).norm());
    const double lp = std::clamp(-qos[i].topLeftCorner(m - 1, m - 1).trace() / double(m - 1), 0.0, 1.0);
    const double th = std::acos(std::sqrt(lp));
    rep.per_point.push_back({points[i].frame.base_param, th});
    tmin = std::min(tmin, th);
    tmax = std::max(tmax, th);
  }
  rep.theta_spread = tmax - tmin;
  rep.spectrum = q_spectrum(points.front().q, points.front().frame);

  if (lambda > 1.0 - opts.snap) {
    rep.classification = SlantClass::invariant;
    lambda = 1.0;
  } else if (lambda < opts.snap) {
    rep.classification = SlantClass::anti_invariant;
    lambda = 0.0;
  } else if (rep.fit_residual < opts.tolerance) {
    rep.classification = SlantClass::proper_slant;
  } else {
    rep.classification = SlantClass::non_slant;
  }
  rep.lambda_fit = lambda;
  rep.theta = std::acos(std::sqrt(lambda));
  return rep;
}

std::vector<CheckRecord> metric_identities(std::span<const PointSlant> points, double theta, double tolerance,
                                           std::uint64_t vector_seed, int pairs_per_point) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  CheckAccumulator tt("corollary31/tangential-metric", tolerance);
  CheckAccumulator nn("corollary31/normal-metric", tolerance);
  CheckAccumulator printed("paper-as-printed-(3.5)", tolerance, true);
  Rng rng(vector_seed);
  for (const PointSlant& p : points) {
    const PointFrame& fr = p.frame;
    const Matrix o = fr.orthonormal_coeffs();
    std::vector<std::pair<Vector, Vector>> pairs;
    for (int i = 0; i < pairs_per_point; ++i) {
      const Vector a = o * rng.uniform_vector(fr.m(), -1.0, 1.0);
      const Vector b = o * rng.uniform_vector(fr.m(), -1.0, 1.0);
      pairs.emplace_back(a, b);
    }
    for (Eigen::Index c = 0; c < fr.d_coeffs.cols(); ++c) pairs.emplace_back(fr.d_coeffs.col(c), fr.d_coeffs.col(c));
    pairs.emplace_back(fr.xi_coeffs, fr.xi_coeffs);

    for (const auto& [x, y] : pairs) {
      const double gxy = fr.tangent_inner(x, y);
      const double ee = eta_of(fr, x) * eta_of(fr, y);
      const double gt = fr.tangent_inner(p.split.T * x, p.split.T * y);
      const double gn = (p.split.N * x).dot(p.split.N * y);
      tt.add(std::abs(gt - c2 * (gxy + ee)), fr.base_param);
      nn.add(std::abs(gn - s2 * (gxy + ee)), fr.base_param);
      printed.add(std::abs(gt - c2 * (gxy - ee)), fr.base_param);
    }
  }
  return {tt.finish(), nn.finish(), printed.finish()};
}

std::vector<CheckRecord> slant_point_checks(std::span<const PointSlant> points, double spectrum_tolerance,
                                            double eigenspace_tolerance, double theorem31_tolerance) {
  CheckAccumulator range("slant/q-spectrum-range", spectrum_tolerance);
  CheckAccumulator even("slant/even-multiplicity", 0.0);
  CheckAccumulator in_d("slant/q-eigenspace-in-d", eigenspace_tolerance);
  CheckAccumulator skew("slant/t-skew", 1e-10);
  CheckAccumulator cs("slant/cauchy-schwarz", 1e-10);
  std::vector<CheckRecord> t31;
  Rng rng(kVectorSeed);
  for (const PointSlant& p : points) {
    const PointFrame& fr = p.frame;
    const Vector& u = fr.base_param;
    const int k = int(fr.d_coeffs.cols());

    std::vector<Vector> eigvecs;
    if (k > 0) {
      const Spectrum sp = self_adjoint_spectrum(MetricAtPoint(Matrix::Identity(k, k)), q_on_d(p.q, fr));
      range.add(std::max({0.0, sp.values.maxCoeff(), -1.0 - sp.values.minCoeff()}), u);
      for (int i = 0; i < k; ++i) eigvecs.push_back(fr.d_coeffs * sp.vectors.col(i));
    }
    bool odd = false;
    for (const EigenCluster& c : q_spectrum(p.q, fr))
      if (c.value != 0.0 && c.multiplicity % 2 != 0) odd = true;
    even.add(odd ? 1.0 : 0.0, u);

    const QEigenStructure qe = q_eigen_structure(p.q, fr);
    in_d.add(std::max(qe.max_xi_component, (p.q * fr.xi_coeffs).norm()), u);
    skew.add(p.split.skew_residual, u);

    const Matrix o = fr.orthonormal_coeffs();
    for (int i = 0; i < 4; ++i) {
      const Vector x = o * rng.uniform_vector(fr.m(), -1.0, 1.0);
      const Vector phix = fr.phi * (fr.tangent * x);
      const Vector tx = p.split.T * x;
      const double nt = std::sqrt(std::max(0.0, fr.tangent_inner(tx, tx)));
      const double np = std::sqrt(std::max(0.0, inner(fr.g, phix, phix)));
      cs.add(std::max(0.0, nt - np), u);
    }
    if (!eigvecs.empty()) t31.push_back(theorem31_check(p.q, p.split, fr, eigvecs, theorem31_tolerance));
  }
  std::vector<CheckRecord> out{range.finish(), even.finish(), in_d.finish(), skew.finish(), cs.finish()};
  for (const CheckRecord& r : merge_records(t31)) out.push_back(r);
  return out;
}

}  // namespace slantlab
