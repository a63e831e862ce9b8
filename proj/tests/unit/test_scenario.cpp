#include "slantlab/catalog.hpp"
#include "slantlab/error.hpp"
#include "slantlab/runner.hpp"
#include "slantlab/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

using namespace slantlab;

namespace {

const char* const kCatalog = R"(# catalog scenario
name = pi6
[ambient]
model = lorentz-sasakian-R5
[immersion]
catalog = slant-candidate-R5(0.5235987755982988)
[checks]
run = slant
)";

std::string dsl(const std::string& extra_components = "", const std::string& samples = "") {
  return "name = dsl\n[ambient]\nmodel = lorentz-sasakian-R5\n[immersion]\nparams = 3\n"
         "f1 = u1\nf2 = 0\nf3 = u2*cos(pi/6)\nf4 = u2*sin(pi/6)\n" +
         (extra_components.empty() ? std::string("f5 = u3\n") : extra_components) +
         "domain = -1 1, -1 1, -1 1\n" + samples + "[checks]\nrun = slant, corollary31\n";
}

ParseError parse_failure(const std::string& src, const LoadOptions& opts = {}) {
  try {
    load_scenario(src, opts);
  } catch (const ParseError& e) {
    return e;
  } catch (const Error& e) {
    ADD_FAILURE() << "non-parse error: " << e.what();
    return ParseError(ParseIssue::syntax, "", 0, 0, "");
  }
  ADD_FAILURE() << "loaded without error";
  return ParseError(ParseIssue::syntax, "", 0, 0, "");
}

ErrorCode error_code(const std::string& src, const LoadOptions& opts = {}) {
  try {
    load_scenario(src, opts);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "loaded without error";
  return ErrorCode::io;
}

}  // namespace

TEST(LoadScenario, CatalogExample) {
  const Scenario sc = load_scenario(kCatalog);
  EXPECT_EQ(sc.name, "pi6");
  ASSERT_TRUE(sc.immersion.has_value());
  ASSERT_TRUE(sc.ambient.has_value());
  EXPECT_EQ(sc.immersion->m(), 3);
  EXPECT_EQ(sc.ambient->dim(), 5);
  EXPECT_EQ(sc.checks, std::set<CheckKind>{CheckKind::slant});
  EXPECT_EQ(sc.seed, 42u);
  EXPECT_EQ(sc.sample_count, kDefaultSampleCount);
  EXPECT_EQ(sc.parameter_points.size(), kDefaultSampleCount);
  for (const Vector& u : sc.parameter_points) {
    EXPECT_LE(u.cwiseAbs().maxCoeff(), 1.0 - sc.fd.interior_margin());
  }
}

TEST(LoadScenario, DslImmersionMatchesCatalog) {
  const Scenario a = load_scenario(dsl());
  const Immersion cat = resolve_immersion("slant-candidate-R5(pi/6)");
  for (const Vector& u : a.parameter_points) {
    EXPECT_LT(((*a.immersion)(u) - cat(u)).cwiseAbs().maxCoeff(), 1e-15);
  }
  EXPECT_EQ(a.immersion->component_sources().size(), 5u);
}

TEST(LoadScenario, DimensionMismatch) {
  // Four components into a five-dimensional chart.
  const std::string four = "name = d\n[ambient]\nmodel = lorentz-sasakian-R5\n[immersion]\nparams = 3\n"
                           "f1 = u1\nf2 = 0\nf3 = u2\nf4 = u3\n[checks]\nrun = slant\n";
  EXPECT_EQ(error_code(four), ErrorCode::structural);  // f5 missing
  const std::string seven = "name = d\n[ambient]\nmodel = lorentz-sasakian-R5\n[immersion]\ncatalog = invariant-R5\n"
                            "[checks]\nrun = slant\n";
  EXPECT_NO_THROW(load_scenario(seven));
  const std::string wrong_chart = "name = d\n[ambient]\nmodel = lorentz-sasakian-R2n+1(3)\n[immersion]\n"
                                  "catalog = invariant-R5\n[checks]\nrun = slant\n";
  EXPECT_EQ(error_code(wrong_chart), ErrorCode::structural);
  const std::string dsl_wrong = "name = d\n[ambient]\nmodel = lorentz-sasakian-R2n+1(3)\n[immersion]\nparams = 3\n"
                                "f1 = u1\nf2 = 0\nf3 = u2\nf4 = 0\nf5 = u3\n[checks]\nrun = slant\n";
  EXPECT_EQ(error_code(dsl_wrong), ErrorCode::structural);  // f6, f7 missing
}

TEST(LoadScenario, ExtraComponentIsAnError) {
  EXPECT_EQ(error_code(dsl("f5 = u3\nf6 = 0\n")), ErrorCode::structural);
}

TEST(LoadScenario, SeedPrecedence) {
  const std::string with_seed = std::string(kCatalog) + "[samples]\nseed = 9\n";
  EXPECT_EQ(load_scenario(kCatalog).seed, 42u);
  EXPECT_EQ(load_scenario(with_seed).seed, 9u);

  LoadOptions env;
  env.default_seed = 5;
  EXPECT_EQ(load_scenario(kCatalog, env).seed, 5u);
  EXPECT_EQ(load_scenario(with_seed, env).seed, 9u);

  LoadOptions flag = env;
  flag.seed = 77;
  EXPECT_EQ(load_scenario(with_seed, flag).seed, 77u);
}

TEST(LoadScenario, Deterministic) {
  const Scenario a = load_scenario(kCatalog), b = load_scenario(kCatalog);
  ASSERT_EQ(a.parameter_points.size(), b.parameter_points.size());
  for (std::size_t i = 0; i < a.parameter_points.size(); ++i) {
    EXPECT_EQ(a.parameter_points[i], b.parameter_points[i]);
  }
  LoadOptions other;
  other.seed = 1;
  EXPECT_NE(load_scenario(kCatalog, other).parameter_points[0], a.parameter_points[0]);
}

TEST(LoadScenario, ExplicitPoints) {
  const Scenario sc = load_scenario(dsl("", "[samples]\npoints = 0 0 0; 0.5 -0.25 0.1\n"));
  EXPECT_TRUE(sc.explicit_points);
  ASSERT_EQ(sc.parameter_points.size(), 2u);
  EXPECT_EQ(sc.parameter_points[1][1], -0.25);
  EXPECT_THROW(load_scenario(dsl("", "[samples]\npoints = 0.9999 0 0\n")), DomainError);
  const ParseError e = parse_failure(dsl("", "[samples]\npoints = 0 0\n"));
  EXPECT_EQ(e.issue(), ParseIssue::invalid_value);
}

TEST(LoadScenario, OptionOverrides) {
  LoadOptions opts;
  opts.sample_count = 3;
  opts.fd_step = 2e-4;
  opts.checks = std::set<CheckKind>{CheckKind::lemma41};
  opts.tolerances["slant"] = 1e-3;
  const Scenario sc = load_scenario(kCatalog, opts);
  EXPECT_EQ(sc.parameter_points.size(), 3u);
  EXPECT_EQ(sc.fd.step, 2e-4);
  EXPECT_EQ(sc.checks, std::set<CheckKind>{CheckKind::lemma41});
  EXPECT_EQ(sc.tolerance("slant", 1.0), 1e-3);
  EXPECT_EQ(sc.tolerance("lemma41", 2e-4), 2e-4);
}

TEST(LoadScenario, FdAndTolerancesSections) {
  const std::string src = std::string(kCatalog) +
                          "[fd]\nstep = 5e-5\nsecond_order_step = 2e-3\nrichardson = off\n"
                          "[tolerances]\nslant = 1e-3\ncurvature = 1e-4\n";
  const Scenario sc = load_scenario(src);
  EXPECT_EQ(sc.fd.step, 5e-5);
  EXPECT_EQ(sc.fd.second_order_step, 2e-3);
  EXPECT_FALSE(sc.fd.richardson);
  EXPECT_EQ(sc.tolerance("curvature", 1.0), 1e-4);
}

TEST(LoadScenario, ParseErrorsHaveLineAndColumn) {
  ParseError e = parse_failure("name = x\n[ambient]\nmodle = lorentz-sasakian-R5\n");
  EXPECT_EQ(e.issue(), ParseIssue::unknown_identifier);
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 1);
  EXPECT_EQ(e.token(), "modle");

  e = parse_failure("[ambiant]\n");
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(e.issue(), ParseIssue::unknown_identifier);

  e = parse_failure("[ambient\n");
  EXPECT_EQ(e.issue(), ParseIssue::syntax);

  e = parse_failure("[ambient]\nmodel\n");
  EXPECT_EQ(e.issue(), ParseIssue::syntax);
  EXPECT_EQ(e.line(), 2);

  e = parse_failure("[ambient]\nmodel = a\nmodel = b\n");
  EXPECT_EQ(e.line(), 3);

  e = parse_failure("[ambient]\nmodel = no-such-model\n[checks]\nrun = structure\n");
  EXPECT_EQ(e.issue(), ParseIssue::unknown_identifier);
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 9);

  e = parse_failure(std::string(kCatalog) + "[samples]\ncount = many\n");
  EXPECT_EQ(e.issue(), ParseIssue::invalid_value);
  EXPECT_EQ(e.line(), 10);
  EXPECT_EQ(e.column(), 9);

  e = parse_failure("[ambient]\nmodel = flat-product\n[checks]\nrun = structure, bogus\n");
  EXPECT_EQ(e.line(), 4);
  EXPECT_EQ(e.column(), 18);
  EXPECT_EQ(e.token(), "bogus");

  // An expression error is reported at its position in the file.
  e = parse_failure(dsl("f5 = u3 +* 2\n"));
  EXPECT_EQ(e.line(), 10);
  EXPECT_EQ(e.column(), 10);

  e = parse_failure("name = x\n[immersion]\ncatalog = nope-R5\n[ambient]\nmodel = flat-product\n[checks]\nrun = slant\n");
  EXPECT_EQ(e.line(), 3);
}

TEST(LoadScenario, UsageErrors) {
  EXPECT_EQ(error_code("name = x\n[checks]\nrun = structure\n"), ErrorCode::usage);  // no model
  EXPECT_EQ(error_code("[ambient]\nmodel = flat-product\n"), ErrorCode::usage);     // no checks
  EXPECT_EQ(error_code("[ambient]\nmodel = flat-product\n[checks]\nrun = slant\n"), ErrorCode::usage);
}

TEST(AmbientScenario, Defaults) {
  const Scenario sc = ambient_scenario("lorentz-sasakian-R5");
  EXPECT_EQ(sc.ambient_points.size(), 100u);
  EXPECT_EQ(sc.checks, (std::set<CheckKind>{CheckKind::structure, CheckKind::sasakian}));
  try {
    ambient_scenario("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::usage);
  }
}

TEST(ToleranceKeys, Known) {
  EXPECT_TRUE(is_tolerance_key("structure"));
  EXPECT_TRUE(is_tolerance_key("theorem42"));
  EXPECT_TRUE(is_tolerance_key("curvature"));
  EXPECT_TRUE(is_tolerance_key("xi"));
  EXPECT_FALSE(is_tolerance_key("bogus"));
  for (CheckKind k : {CheckKind::structure, CheckKind::sasakian, CheckKind::slant, CheckKind::corollary31,
                      CheckKind::lemma41, CheckKind::theorem41, CheckKind::theorem42})
    EXPECT_EQ(check_from_name(to_string(k)), k);
}

TEST(RunScenario, CatalogStatuses) {
  RunSummary s = run_scenario(load_scenario(kCatalog));
  EXPECT_EQ(s.status, RunStatus::pass);
  ASSERT_TRUE(s.slant_report.has_value());
  EXPECT_EQ(s.slant_report->classification, SlantClass::proper_slant);
  EXPECT_TRUE(std::is_sorted(s.records.begin(), s.records.end(),
                             [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; }));

  s = run_scenario(load_scenario("[ambient]\nmodel = flat-product\n[samples]\ncount = 5\n[checks]\nrun = sasakian\n"));
  EXPECT_EQ(s.status, RunStatus::check_failed);
  EXPECT_EQ(exit_code(s.status), 1);
  EXPECT_EQ(exit_code(RunStatus::usage_error), 2);
}

TEST(RunScenario, ToleranceOverrideCanFailARun) {
  LoadOptions opts;
  opts.tolerances["corollary31"] = 1e-30;
  opts.sample_count = 3;
  const RunSummary s = run_scenario(load_scenario(dsl(), opts));
  EXPECT_EQ(s.status, RunStatus::check_failed);
}

TEST(RunScenario, NonSlantMakesSlantDependentRecordsDiagnostic) {
  const std::string src =
      "name = twisted\n[ambient]\nmodel = lorentz-sasakian-R5\n[immersion]\nparams = 3\n"
      "f1 = u1\nf2 = 0\nf3 = u2*cos(u1)\nf4 = u2*sin(u1)\nf5 = u3\n[samples]\ncount = 5\n"
      "[checks]\nrun = slant, corollary31\n";
  const RunSummary s = run_scenario(load_scenario(src));
  ASSERT_TRUE(s.slant_report.has_value());
  EXPECT_EQ(s.slant_report->classification, SlantClass::non_slant);
  for (const CheckRecord& r : s.records)
    if (r.name.rfind("corollary31/", 0) == 0) {
      EXPECT_TRUE(r.diagnostic) << r.name;
    }
}
