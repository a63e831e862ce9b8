#include "slantlab/curvature.hpp"

#include "slantlab/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace slantlab {

const char* const kCurvatureConvention =
    "R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]; R(X,Y,Z,W) = g(R(X,Y)Z, W); "
    "R(X,Y)xi = (nabla_X T)Y - (nabla_Y T)X";

namespace {

Vector induced_metric_flat(const AmbientStructure& s, const Immersion& f, const Vector& x, const FDConfig& cfg) {
  const Matrix j = fd_jacobian([&f](const Vector& y) { return f(y); }, x, cfg.step, cfg.richardson).value;
  const Matrix h = j.transpose() * s.metric_matrix(f(x)) * j;
  return flatten(0.5 * (h + h.transpose()));
}

// Gamma^k_ij flattened as (k * m + i) * m + j.
Vector gamma_flat(const AmbientStructure& s, const Immersion& f, const Vector& x, const FDConfig& cfg) {
  const int m = int(x.size());
  const Matrix h = unflatten(induced_metric_flat(s, f, x, cfg), m, m);
  const Matrix dh = fd_jacobian([&](const Vector& y) { return induced_metric_flat(s, f, y, cfg); }, x,
                                cfg.second_order_step, cfg.richardson)
                        .value;
  const Matrix hinv = h.inverse();
  auto d = [&](int l, int i, int j) { return dh(i + j * m, l); };  // d_l h_ij
  Vector out(m * m * m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double sum = 0.0;
        for (int l = 0; l < m; ++l) sum += hinv(k, l) * (d(i, j, l) + d(j, i, l) - d(l, i, j));
        out[(k * m + i) * m + j] = 0.5 * sum;
      }
  return out;
}

Matrix t_at(const AmbientStructure& s, const Immersion& f, const Vector& x, const FDConfig& cfg) {
  return phi_split(s, detail::frame_unchecked(s, f, x, cfg)).T;
}

// Gamma_i as a matrix (a, p) -> Gamma^a_{ip}.
Matrix gamma_matrix(const Rank3& gamma, int i) {
  const int m = gamma.dim(0);
  Matrix g(m, m);
  for (int a = 0; a < m; ++a)
    for (int p = 0; p < m; ++p) g(a, p) = gamma(a, i, p);
  return g;
}

// Infinity norm of the components in the g-orthonormal frame.
struct FrameNorm {
  explicit FrameNorm(const PointFrame& fr) : lu(fr.orthonormal_coeffs().partialPivLu()) {}
  double operator()(const Vector& v) const { return lu.solve(v).cwiseAbs().maxCoeff(); }
  Eigen::PartialPivLU<Matrix> lu;
};

std::vector<Vector> test_vectors(const PointFrame& fr, Rng& rng, int count) {
  const Matrix o = fr.orthonormal_coeffs();
  std::vector<Vector> out;
  for (Eigen::Index c = 0; c < o.cols(); ++c) out.push_back(o.col(c));
  for (int i = 0; i < count; ++i) out.push_back(o * rng.uniform_vector(fr.m(), -1.0, 1.0));
  return out;
}

double eta_of(const PointFrame& fr, const Vector& x) { return fr.eta.dot(fr.tangent * x); }

}  // namespace

CurvatureData riemann(const AmbientStructure& s, const Immersion& f, const Vector& u, const FDConfig& cfg) {
  cfg.validate();
  f.require_interior(u, cfg.interior_margin());
  const int m = f.m();
  const Vector g0 = gamma_flat(s, f, u, cfg);
  const Matrix dg =
      fd_jacobian([&](const Vector& y) { return gamma_flat(s, f, y, cfg); }, u, cfg.second_order_step, cfg.richardson)
          .value;

  CurvatureData c;
  c.metric = unflatten(induced_metric_flat(s, f, u, cfg), m, m);
  c.gamma = Rank3(m, m, m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) c.gamma(k, i, j) = g0[(k * m + i) * m + j];
  auto dgam = [&](int i, int l, int j, int k) { return dg((l * m + j) * m + k, i); };  // d_i Gamma^l_jk

  c.R = Rank4(m);
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          double v = dgam(i, l, j, k) - dgam(j, l, i, k);
          for (int p = 0; p < m; ++p) v += c.gamma(l, i, p) * c.gamma(p, j, k) - c.gamma(l, j, p) * c.gamma(p, i, k);
          c.R(l, i, j, k) = v;
        }
  c.lowered = Rank4(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          double v = 0.0;
          for (int p = 0; p < m; ++p) v += c.metric(l, p) * c.R(p, i, j, k);
          c.lowered(i, j, k, l) = v;
        }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          const double a = c.lowered(i, j, k, l);
          c.antisymmetry_residual = std::max({c.antisymmetry_residual, std::abs(a + c.lowered(j, i, k, l)),
                                              std::abs(a + c.lowered(i, j, l, k))});
          c.pair_symmetry_residual = std::max(c.pair_symmetry_residual, std::abs(a - c.lowered(k, l, i, j)));
          c.bianchi_residual =
              std::max(c.bianchi_residual, std::abs(c.R(l, i, j, k) + c.R(l, j, k, i) + c.R(l, k, i, j)));
        }
  c.convention_note = kCurvatureConvention;
  return c;
}

Vector curvature_apply(const CurvatureData& c, const Vector& x, const Vector& y, const Vector& z) {
  const int m = c.R.dim();
  Vector out = Vector::Zero(m);
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) out[l] += c.R(l, i, j, k) * x[i] * y[j] * z[k];
  return out;
}

double curvature_lowered(const CurvatureData& c, const Vector& x, const Vector& y, const Vector& z, const Vector& w) {
  return curvature_apply(c, x, y, z).dot(c.metric * w);
}

Matrix along(const std::vector<Matrix>& slices, const Vector& x) {
  Matrix out = Matrix::Zero(slices.front().rows(), slices.front().cols());
  for (std::size_t i = 0; i < slices.size(); ++i) out += x[Eigen::Index(i)] * slices[i];
  return out;
}

TensorDerivative nabla_T(const AmbientStructure& s, const Immersion& f, const Vector& u, const FDConfig& cfg) {
  cfg.validate();
  f.require_interior(u, cfg.interior_margin());
  const int m = f.m();
  const Vector g0 = gamma_flat(s, f, u, cfg);
  Rank3 gamma(m, m, m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) gamma(k, i, j) = g0[(k * m + i) * m + j];

  const Matrix t0 = t_at(s, f, u, cfg);
  const Matrix q0 = t0 * t0;
  const Matrix dt = fd_jacobian([&](const Vector& y) { return flatten(t_at(s, f, y, cfg)); }, u,
                                cfg.second_order_step, cfg.richardson)
                        .value;
  const Matrix dq = fd_jacobian(
                        [&](const Vector& y) {
                          const Matrix t = t_at(s, f, y, cfg);
                          return flatten(t * t);
                        },
                        u, cfg.second_order_step, cfg.richardson)
                        .value;

  TensorDerivative out;
  for (int i = 0; i < m; ++i) {
    const Matrix gi = gamma_matrix(gamma, i);
    out.nabla_T.push_back(unflatten(dt.col(i), m, m) + gi * t0 - t0 * gi);
    out.nabla_Q.push_back(unflatten(dq.col(i), m, m) + gi * q0 - q0 * gi);
    const Matrix prod = out.nabla_T.back() * t0 + t0 * out.nabla_T.back();
    out.product_rule_residual = std::max(out.product_rule_residual, (out.nabla_Q.back() - prod).cwiseAbs().maxCoeff());
  }
  return out;
}

CurvaturePoint evaluate_curvature_point(const AmbientStructure& s, const Immersion& f, const Vector& u,
                                        const FDConfig& cfg) {
  CurvaturePoint p{evaluate_slant_point(s, f, u, cfg), riemann(s, f, u, cfg), nabla_T(s, f, u, cfg)};
  return p;
}

std::vector<CheckRecord> curvature_symmetry_records(std::span<const CurvaturePoint> points, double tolerance) {
  CheckAccumulator anti("curvature/antisymmetry", tolerance);
  CheckAccumulator pair("curvature/pair-symmetry", tolerance);
  CheckAccumulator bianchi("curvature/bianchi", tolerance);
  for (const CurvaturePoint& p : points) {
    const Vector& u = p.slant.frame.base_param;
    anti.add(p.curvature.antisymmetry_residual, u);
    pair.add(p.curvature.pair_symmetry_residual, u);
    bianchi.add(p.curvature.bianchi_residual, u);
  }
  return {anti.finish(), pair.finish(), bianchi.finish()};
}

std::vector<CheckRecord> lemma41_residuals(std::span<const CurvaturePoint> points, double tolerance,
                                           std::uint64_t vector_seed, int pairs_per_point) {
  CheckAccumulator rxy("lemma41/r-x-y-xi", tolerance);
  CheckAccumulator rxy_printed("lemma41/r-x-y-xi-printed-sign", tolerance, true);
  CheckAccumulator rxix("lemma41/r-xi-x-xi", tolerance);
  CheckAccumulator sect("lemma41/r-x-xi-x-xi", tolerance);
  CheckAccumulator skew("lemma41/nabla-xi-t-skew", tolerance);
  Rng rng(vector_seed);
  for (const CurvaturePoint& p : points) {
    const PointFrame& fr = p.slant.frame;
    const Vector& u = fr.base_param;
    const Vector& xi = fr.xi_coeffs;
    const FrameNorm norm(fr);
    const std::vector<Matrix>& nt = p.derivative.nabla_T;
    const Matrix nt_xi = along(nt, xi);
    const std::vector<Vector> vs = test_vectors(fr, rng, pairs_per_point);
    for (std::size_t a = 0; a < vs.size(); ++a) {
      const Vector& x = vs[a];
      for (std::size_t b = 0; b < vs.size(); ++b) {
        if (a == b) continue;
        const Vector& y = vs[b];
        const Vector lhs = curvature_apply(p.curvature, x, y, xi);
        const Vector rhs = along(nt, x) * y - along(nt, y) * x;
        rxy.add(norm(lhs - rhs), u);
        rxy_printed.add(norm(lhs + rhs), u);
      }
      rxix.add(norm(curvature_apply(p.curvature, xi, x, xi) - p.slant.q * x - nt_xi * x), u);
      sect.add(std::abs(curvature_lowered(p.curvature, x, xi, x, xi) - fr.tangent_inner(p.slant.q * x, x)), u);
      skew.add(std::abs(fr.tangent_inner(nt_xi * x, x)), u);
    }
  }
  return {rxy.finish(), rxix.finish(), sect.finish(), skew.finish(), rxy_printed.finish()};
}

std::vector<CheckRecord> lemma41_residuals(const AmbientStructure& s, const Immersion& f, const Vector& u,
                                           const FDConfig& cfg, double tolerance) {
  const CurvaturePoint p = evaluate_curvature_point(s, f, u, cfg);
  return lemma41_residuals(std::span<const CurvaturePoint>(&p, 1), tolerance);
}

Theorem41Result theorem41_check(std::span<const CurvaturePoint> points, const SlantReport& fit, double tolerance,
                                std::uint64_t vector_seed, int pairs_per_point) {
  const bool slant = fit.classification != SlantClass::non_slant;
  const double c2 = fit.lambda_fit;
  const std::array<std::pair<int, int>, 4> patterns{{{-1, 1}, {1, 1}, {-1, -1}, {1, -1}}};
  std::array<CheckAccumulator, 4> acc{
      CheckAccumulator("theorem41/q-derivative-formula", tolerance, !slant),
      CheckAccumulator("theorem41/q-derivative-formula", tolerance, !slant),
      CheckAccumulator("theorem41/q-derivative-formula", tolerance, !slant),
      CheckAccumulator("theorem41/q-derivative-formula", tolerance, !slant)};

  Theorem41Result out;
  Vector worst_nq;
  Rng rng(vector_seed);
  for (const CurvaturePoint& p : points) {
    const PointFrame& fr = p.slant.frame;
    const Vector& u = fr.base_param;
    const Matrix& t = p.slant.split.T;
    const FrameNorm norm(fr);
    const std::vector<Matrix>& nq = p.derivative.nabla_Q;

    const Matrix o = fr.orthonormal_coeffs();
    const auto olu = o.partialPivLu();
    double sq = 0.0;
    for (Eigen::Index a = 0; a < o.cols(); ++a) sq += olu.solve(along(nq, o.col(a)) * o).squaredNorm();
    if (std::sqrt(sq) >= out.max_nabla_q) {
      out.max_nabla_q = std::sqrt(sq);
      worst_nq = u;
    }

    const std::vector<Vector> vs = test_vectors(fr, rng, pairs_per_point);
    for (const Vector& x : vs)
      for (const Vector& y : vs) {
        const Vector lhs = along(nq, x) * y;
        const Vector tx = t * x;
        const double gytx = fr.tangent_inner(y, tx);
        const double ey = eta_of(fr, y);
        for (std::size_t k = 0; k < patterns.size(); ++k) {
          const auto [s1, s2] = patterns[k];
          const Vector rhs = c2 * (s1 * gytx * fr.xi_coeffs + s2 * ey * tx);
          acc[k].add(norm(lhs - rhs), u);
        }
      }
  }
  std::size_t best = 0;
  std::array<CheckRecord, 4> recs;
  for (std::size_t k = 0; k < 4; ++k) {
    recs[k] = acc[k].finish();
    if (recs[k].max_residual < recs[best].max_residual) best = k;
  }
  out.xi_sign = patterns[best].first;
  out.tx_sign = patterns[best].second;
  out.convention_note = std::string("(nabla_X Q)Y = cos^2(theta) (") + (out.xi_sign < 0 ? "-" : "+") +
                        "g(Y,TX) xi " + (out.tx_sign < 0 ? "-" : "+") + " eta(Y) TX)";
  out.records.push_back(recs[best]);

  const bool parallel = out.max_nabla_q < kParallelThreshold;
  const bool non_parallel = out.max_nabla_q > kNonParallelThreshold;
  const bool anti = fit.classification == SlantClass::anti_invariant;
  CheckAccumulator iff("theorem41/parallel-iff-anti-invariant", 0.0, !slant);
  iff.add((anti ? parallel : non_parallel) ? 0.0 : 1.0, worst_nq);
  out.records.push_back(iff.finish());
  CheckAccumulator nqr("theorem41/max-nabla-q", kParallelThreshold, true);
  nqr.add(out.max_nabla_q, worst_nq);
  out.records.push_back(nqr.finish());
  return out;
}

double sectional_xi(const CurvaturePoint& p, const Vector& x) {
  const PointFrame& fr = p.slant.frame;
  if (x.size() != fr.m()) throw Error(ErrorCode::structural, "sectional_xi: vector has wrong dimension");
  const Vector& xi = fr.xi_coeffs;
  const double gxx = fr.tangent_inner(x, x);
  const double gxxi = fr.tangent_inner(x, xi);
  const double gxixi = fr.tangent_inner(xi, xi);
  if (!(gxx > 1e-20 * x.squaredNorm())) throw Error(ErrorCode::contract, "sectional_xi: X must be spacelike");
  if (std::abs(gxxi) > 1e-8 * std::sqrt(gxx * std::abs(gxixi)))
    throw Error(ErrorCode::contract, "sectional_xi: X must be orthogonal to xi");
  return curvature_lowered(p.curvature, x, xi, x, xi) / (gxx * gxixi - gxxi * gxxi);
}

double sectional_xi(const AmbientStructure& s, const Immersion& f, const Vector& u, const Vector& x,
                    const FDConfig& cfg) {
  return sectional_xi(evaluate_curvature_point(s, f, u, cfg), x);
}

SlantReport slant_from_curvature(std::span<const CurvaturePoint> points, const CurvatureSlantOptions& opts) {
  if (points.empty()) throw Error(ErrorCode::usage, "slant_from_curvature needs at least one sample point");
  if (points.front().slant.frame.m() < 2)
    throw Error(ErrorCode::usage, "slant_from_curvature: the distribution D is trivial (m = 1)");
  SlantReport rep;
  rep.method = "curvature";
  double sum = 0.0, kmin = INFINITY, kmax = -INFINITY;
  std::size_t count = 0;
  double tmin = INFINITY, tmax = -INFINITY;
  for (const CurvaturePoint& p : points) {
    const Matrix& d = p.slant.frame.d_coeffs;
    double local = 0.0;
    for (Eigen::Index c = 0; c < d.cols(); ++c) {
      const double k = sectional_xi(p, d.col(c));
      local += k;
      kmin = std::min(kmin, k);
      kmax = std::max(kmax, k);
    }
    sum += local;
    count += std::size_t(d.cols());
    const double th = std::acos(std::sqrt(std::clamp(local / double(d.cols()), 0.0, 1.0)));
    rep.per_point.push_back({p.slant.frame.base_param, th});
    tmin = std::min(tmin, th);
    tmax = std::max(tmax, th);
  }
  rep.lambda_raw = sum / double(count);
  rep.fit_residual = kmax - kmin;
  rep.theta_spread = tmax - tmin;
  rep.spectrum = q_spectrum(points.front().slant.q, points.front().slant.frame);
  double lambda = std::clamp(rep.lambda_raw, 0.0, 1.0);
  if (lambda > 1.0 - opts.snap) {
    rep.classification = SlantClass::invariant;
    lambda = 1.0;
  } else if (lambda < opts.snap) {
    rep.classification = SlantClass::anti_invariant;
    lambda = 0.0;
  } else if (rep.fit_residual <= opts.spread_tolerance) {
    rep.classification = SlantClass::proper_slant;
  } else {
    rep.classification = SlantClass::non_slant;
  }
  rep.lambda_fit = lambda;
  rep.theta = std::acos(std::sqrt(lambda));
  return rep;
}

std::vector<CheckRecord> theorem42_records(std::span<const CurvaturePoint> points, const SlantReport& fit,
                                           const SlantReport& from_curvature, double agreement_tolerance) {
  const bool slant = fit.classification != SlantClass::non_slant;
  CheckAccumulator k_cos("theorem42/sectional-equals-cos2", kSectionalSnap, !slant);
  CheckAccumulator spread("theorem42/plane-independence", kPlaneSpreadTolerance, !slant);
  CheckAccumulator agree("theorem42/curvature-slant-agreement", agreement_tolerance, !slant);
  Vector first = points.empty() ? Vector() : points.front().slant.frame.base_param;
  for (const CurvaturePoint& p : points) {
    const Matrix& d = p.slant.frame.d_coeffs;
    for (Eigen::Index c = 0; c < d.cols(); ++c)
      k_cos.add(std::abs(sectional_xi(p, d.col(c)) - fit.lambda_fit), p.slant.frame.base_param);
  }
  spread.add(from_curvature.fit_residual, first);
  agree.add(std::abs(from_curvature.theta - fit.theta), first);
  return {k_cos.finish(), spread.finish(), agree.finish()};
}

}  // namespace slantlab
