#include "slantlab/runner.hpp"

#include <algorithm>
#include <chrono>

namespace slantlab {

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::pass: return "pass";
    case RunStatus::check_failed: return "check-failed";
    case RunStatus::usage_error: return "usage-error";
  }
  return "?";
}

int exit_code(RunStatus s) {
  switch (s) {
    case RunStatus::pass: return 0;
    case RunStatus::check_failed: return 1;
    case RunStatus::usage_error: return 2;
  }
  return 2;
}

namespace {

void append(std::vector<CheckRecord>& out, std::vector<CheckRecord> more) {
  for (CheckRecord& r : more) out.push_back(std::move(r));
}

void make_diagnostic(std::vector<CheckRecord>& recs) {
  for (CheckRecord& r : recs) r.diagnostic = true;
}

}  // namespace

RunSummary run_scenario(const Scenario& sc) {
  const auto start = std::chrono::steady_clock::now();
  RunSummary sum;
  sum.scenario = sc.name;
  const AmbientStructure& amb = *sc.ambient;
  const auto has = [&](CheckKind k) { return sc.checks.count(k) > 0; };
  std::vector<CheckRecord> recs;

  if (has(CheckKind::structure) || has(CheckKind::sasakian)) sum.notes.push_back("ambient " + amb.name() + ": " + amb.smoothness_note());
  if (has(CheckKind::structure))
    append(recs, verify_structure(amb, sc.ambient_points, {sc.tolerance("structure", kAlgebraicTolerance)}));
  if (has(CheckKind::sasakian))
    append(recs, verify_sasakian(amb, sc.ambient_points, sc.fd, {sc.tolerance("sasakian", kSasakianTolerance)}));

  const bool need_points = std::any_of(sc.checks.begin(), sc.checks.end(), needs_immersion);
  if (need_points) {
    const Immersion& f = *sc.immersion;
    std::vector<PointSlant> pts;
    for (const Vector& u : sc.parameter_points) pts.push_back(evaluate_slant_point(amb, f, u, sc.fd));
    const SlantReport fit = slant_fit(pts, {sc.tolerance("slant", kSlantFitTolerance), kSlantSnap});
    const bool slant = fit.classification != SlantClass::non_slant;
    if (has(CheckKind::slant)) {
      sum.slant_report = fit;
      append(recs, slant_point_checks(pts));
      const double tol = sc.tolerance("slant", kSlantFitTolerance);
      recs.push_back(CheckRecord{"slant/fit-residual", fit.fit_residual, tol, pts.size(), fit.fit_residual <= tol,
                                 pts.front().frame.base_param, true});
    }
    if (!slant && (has(CheckKind::corollary31) || has(CheckKind::theorem41) || has(CheckKind::theorem42)))
      sum.notes.push_back("slant fit classified the immersion non-slant; slant-dependent records are diagnostic");
    if (has(CheckKind::corollary31)) {
      std::vector<CheckRecord> c = metric_identities(pts, fit.theta, sc.tolerance("corollary31", kCorollaryTolerance));
      if (!slant) make_diagnostic(c);
      append(recs, std::move(c));
    }
    if (has(CheckKind::lemma41) || has(CheckKind::theorem41) || has(CheckKind::theorem42)) {
      std::vector<CurvaturePoint> cps;
      for (const Vector& u : sc.parameter_points) cps.push_back(evaluate_curvature_point(amb, f, u, sc.fd));
      sum.notes.push_back(std::string("curvature convention: ") + kCurvatureConvention);
      if (has(CheckKind::lemma41)) {
        append(recs, lemma41_residuals(cps, sc.tolerance("lemma41", kLemmaTolerance)));
        append(recs, curvature_symmetry_records(cps, sc.tolerance("curvature", kCurvatureSymmetryTolerance)));
        CheckAccumulator prod("curvature/product-rule", sc.tolerance("curvature", kCurvatureSymmetryTolerance));
        std::vector<CheckRecord> xi;
        for (const CurvaturePoint& p : cps) {
          prod.add(p.derivative.product_rule_residual, p.slant.frame.base_param);
          append(xi, xi_identities(amb, f, p.slant.frame.base_param, sc.fd, sc.tolerance("xi", kXiIdentityTolerance)));
        }
        recs.push_back(prod.finish());
        append(recs, merge_records(xi));
      }
      if (has(CheckKind::theorem41)) {
        Theorem41Result t = theorem41_check(cps, fit, sc.tolerance("theorem41", kLemmaTolerance));
        sum.notes.push_back("nabla Q sign pattern: " + t.convention_note);
        append(recs, std::move(t.records));
      }
      if (has(CheckKind::theorem42)) {
        const SlantReport curv = slant_from_curvature(cps);
        append(recs, theorem42_records(cps, fit, curv, sc.tolerance("theorem42", kCrossValidationTolerance)));
        sum.curvature_report = curv;
      }
    }
  }

  sum.records = merge_records(recs);
  sum.status = all_passed(sum.records) ? RunStatus::pass : RunStatus::check_failed;
  sum.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sum;
}

}  // namespace slantlab
