// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include "slantlab/ambient.hpp"
#include "slantlab/catalog.hpp"
#include "slantlab/curvature.hpp"
#include "slantlab/error.hpp"
#include "slantlab/expr.hpp"
#include "slantlab/sampling.hpp"
#include "slantlab/slant.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace slantlab;

namespace {

const char* const kCatalog[] = {"invariant-R5", "anti-invariant-R5", "slant-candidate-R5(pi/6)",
                                "slant-candidate-R5(1.2)"};

// Collects failed sub-conditions of one criterion.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void less(double value, double bound, const std::string& what) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s = %.3g (bound %.3g)", what.c_str(), value, bound);
    require(std::isfinite(value) && value < bound, buf);
  }
  void near(double value, double want, double tol, const std::string& what) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s = %.17g (want %.17g +- %.3g)", what.c_str(), value, want, tol);
    require(std::isfinite(value) && std::abs(value - want) <= tol, buf);
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

const AmbientStructure& model() {
  static const AmbientStructure s = canonical_lorentzian_sasakian(2);
  return s;
}

std::vector<Vector> interior(const Immersion& f, std::size_t count, const FDConfig& cfg) {
  return sample_box(count, kDefaultSeed, f.domain(), cfg.interior_margin());
}

std::vector<PointSlant> slant_points(const char* name, std::size_t count) {
  const Immersion f = resolve_immersion(name);
  const FDConfig cfg;
  std::vector<PointSlant> out;
  for (const Vector& u : interior(f, count, cfg)) out.push_back(evaluate_slant_point(model(), f, u, cfg));
  return out;
}

std::vector<CurvaturePoint> curvature_points(const char* name, std::size_t count) {
  const Immersion f = resolve_immersion(name);
  FDConfig cfg;
  cfg.second_order_step = 1e-3;
  std::vector<CurvaturePoint> out;
  for (const Vector& u : interior(f, count, cfg)) out.push_back(evaluate_curvature_point(model(), f, u, cfg));
  return out;
}

const CheckRecord& find(const std::vector<CheckRecord>& rs, const std::string& name) {
  for (const CheckRecord& r : rs)
    if (r.name == name) return r;
  throw std::runtime_error("missing record " + name);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Captured {
  int exit_code = -1;
  std::string out;
};

Captured run_cli(const std::string& args) {
  const std::string cmd = std::string("'") + SLANTLAB_CLI_PATH + "' " + args + " 2>/dev/null";
  Captured c;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return c;
  char buf[4096];
  for (std::size_t k; (k = std::fread(buf, 1, sizeof buf, p)) > 0;) c.out.append(buf, k);
  const int status = pclose(p);
  c.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

void structure_identities(Verdict& v) {
  const auto points = default_ambient_samples(5, 100, kDefaultSeed);
  for (const CheckRecord& r : verify_structure(model(), points)) {
    if (r.diagnostic) continue;
    v.less(r.max_residual, 1e-10, r.name);
    v.require(r.samples >= 100, r.name + " sampled fewer than 100 points");
  }
  for (const char* name : {"structure/phi-squared", "structure/phi-kernel", "structure/metric-compatibility",
                           "structure/eta-metric-dual"})
    v.require(find(verify_structure(model(), points), name).samples > 0, name);
}

void sasakian_conditions(Verdict& v) {
  FDConfig cfg;
  cfg.step = 1e-4;
  const auto rs = verify_sasakian(model(), default_ambient_samples(5, 50, kDefaultSeed), cfg);
  for (const char* name : {"sasakian/nabla-phi", "sasakian/nabla-xi"}) v.less(find(rs, name).max_residual, 1e-5, name);
}

void classification_triple(Verdict& v) {
  SlantReport r = slant_fit(slant_points("invariant-R5", 50));
  v.require(r.classification == SlantClass::invariant, "invariant-R5 classified " + std::string(to_string(r.classification)));
  v.near(r.lambda_fit, 1.0, 1e-6, "invariant lambda");
  r = slant_fit(slant_points("anti-invariant-R5", 50));
  v.require(r.classification == SlantClass::anti_invariant,
            "anti-invariant-R5 classified " + std::string(to_string(r.classification)));
  v.near(r.lambda_fit, 0.0, 1e-6, "anti-invariant lambda");

  const Immersion f = resolve_immersion("slant-candidate-R5(pi/6)");
  std::vector<PointSlant> origin{evaluate_slant_point(model(), f, Vector::Zero(3), FDConfig{})};
  r = slant_fit(origin);
  v.require(r.classification == SlantClass::proper_slant, "slant candidate classified " +
                                                              std::string(to_string(r.classification)));
  v.near(r.lambda_fit, 0.75, 1e-4, "slant candidate lambda");
  v.require(r.spectrum.size() == 2, "slant candidate spectrum has " + std::to_string(r.spectrum.size()) + " clusters");
  if (r.spectrum.size() == 2) {
    v.near(r.spectrum[0].value, -0.75, 1e-4, "spectrum value 0");
    v.require(r.spectrum[0].multiplicity == 2, "multiplicity of -0.75");
    v.near(r.spectrum[1].value, 0.0, 1e-4, "spectrum value 1");
    v.require(r.spectrum[1].multiplicity == 1, "multiplicity of 0");
  }
}

void eigen_structure(Verdict& v) {
  for (const char* name : kCatalog) {
    for (const PointSlant& p : slant_points(name, 50)) {
      const QEigenStructure es = q_eigen_structure(p.q, p.frame);
      v.require(es.values.size() == 3, std::string(name) + " eigenvalue count");
      for (Eigen::Index i = 0; i < es.values.size(); ++i)
        v.require(es.values[i] >= -1 - 1e-6 && es.values[i] <= 1e-6, std::string(name) + " eigenvalue out of range");
      for (const EigenCluster& c : q_spectrum(p.q, p.frame))
        if (c.value != 0.0) v.require(c.multiplicity % 2 == 0, std::string(name) + " odd multiplicity");
      v.less(es.max_xi_component, 1e-8, std::string(name) + " |g(v, xi)|");
    }
  }
}

void corollary31(Verdict& v) {
  const struct {
    const char* name;
    double theta;
  } cases[] = {{"invariant-R5", 0.0}, {"anti-invariant-R5", M_PI / 2}, {"slant-candidate-R5(pi/6)", M_PI / 6}};
  for (const auto& c : cases) {
    const auto rs = metric_identities(slant_points(c.name, 20), c.theta);
    v.less(find(rs, "corollary31/tangential-metric").max_residual, 1e-5, std::string(c.name) + " tangential");
    v.less(find(rs, "corollary31/normal-metric").max_residual, 1e-5, std::string(c.name) + " normal");
    if (std::string(c.name) == "invariant-R5") {
      const CheckRecord& printed = find(rs, "paper-as-printed-(3.5)");
      v.require(printed.diagnostic, "paper-as-printed-(3.5) is not diagnostic");
      v.near(printed.max_residual, 2.0, 1e-9, "paper-as-printed-(3.5) on invariant-R5");
    }
  }
}

void lemma41(Verdict& v) {
  for (const char* name : {"invariant-R5", "anti-invariant-R5"}) {
    const auto rs = lemma41_residuals(curvature_points(name, 10));
    v.require(rs.size() >= 4, std::string(name) + " produced too few lemma records");
    for (const CheckRecord& r : rs)
      if (!r.diagnostic) v.less(r.max_residual, 2e-4, std::string(name) + " " + r.name);
  }
}

void theorem41(Verdict& v) {
  const auto anti = curvature_points("anti-invariant-R5", 10);
  const auto anti_fit = slant_fit(slant_points("anti-invariant-R5", 10));
  const Theorem41Result a = theorem41_check(anti, anti_fit);
  v.less(a.max_nabla_q, 1e-5, "anti-invariant max |nabla Q|");

  const auto inv = curvature_points("invariant-R5", 10);
  const auto inv_fit = slant_fit(slant_points("invariant-R5", 10));
  const Theorem41Result b = theorem41_check(inv, inv_fit);
  v.require(b.max_nabla_q > 1e-2, "invariant max |nabla Q| = " + std::to_string(b.max_nabla_q) + " (want > 1e-2)");
  for (const Theorem41Result* t : {&a, &b})
    v.require(find(t->records, "theorem41/parallel-iff-anti-invariant").passed, "parallel-iff-anti-invariant");
}

void theorem42(Verdict& v) {
  const struct {
    const char* name;
    double want;
  } fixed[] = {{"invariant-R5", 1.0}, {"anti-invariant-R5", 0.0}};
  for (const auto& c : fixed) {
    for (const CurvaturePoint& p : curvature_points(c.name, 10))
      for (Eigen::Index a = 0; a < p.slant.frame.d_coeffs.cols(); ++a)
        v.near(sectional_xi(p, p.slant.frame.d_coeffs.col(a)), c.want, 2e-4, std::string(c.name) + " K(X, xi)");
  }
  for (const char* name : kCatalog) {
    const SlantReport fit = slant_fit(slant_points(name, 10));
    if (fit.classification == SlantClass::non_slant) continue;
    const auto points = curvature_points(name, 10);
    const SlantReport est = slant_from_curvature(points);
    v.less(std::abs(est.theta - fit.theta), 1e-2, std::string(name) + " |theta_est - theta_fit|");
  }
}

void curvature_symmetries(Verdict& v) {
  for (const char* name : kCatalog) {
    const auto rs = curvature_symmetry_records(curvature_points(name, 10));
    v.require(rs.size() == 3, std::string(name) + " produced " + std::to_string(rs.size()) + " symmetry records");
    for (const CheckRecord& r : rs) v.less(r.max_residual, 1e-5, std::string(name) + " " + r.name);
  }
}

void dsl_and_cli(Verdict& v) {
  std::istringstream corpus(read_file(std::string(SLANTLAB_GOLDEN_DIR) + "/expressions.txt"));
  int lines = 0;
  for (std::string line; std::getline(corpus, line);) {
    if (line.empty() || line[0] == '#') continue;
    ++lines;
    const Expr e = parse_expr(line);
    const Expr back = parse_expr(e.to_string());
    v.require(back == e, "round trip of '" + line + "'");
    v.require(back.to_string() == e.to_string(), "printing is not a fixed point for '" + line + "'");
  }
  v.require(lines > 0, "empty expression corpus");

  const struct {
    const char* name;
    int exit_code;
  } golden[] = {{"invariant-all", 0}, {"slant-pi6-origin", 0}, {"flat-product-sasakian", 1}, {"syntax-error", 2}};
  for (const auto& g : golden) {
    const std::string dir = std::string(SLANTLAB_GOLDEN_DIR) + "/" + g.name;
    const std::string want = read_file(dir + ".records");
    for (int pass = 0; pass < 2; ++pass) {
      const Captured c = run_cli("run '" + dir + ".scn' --format records");
      v.require(c.exit_code == g.exit_code, std::string(g.name) + " exit code " + std::to_string(c.exit_code));
      v.require(c.out == want, std::string(g.name) + " output differs from golden records");
    }
  }
}

}  // namespace

int main() {
  const struct {
    const char* title;
    std::function<void(Verdict&)> body;
    double budget_seconds;  // 0 = no runtime bound
  } criteria[] = {
      {"structure identities", structure_identities, 1.0},
      {"Sasakian conditions", sasakian_conditions, 10.0},
      {"classification triple", classification_triple, 0},
      {"Q eigen-structure", eigen_structure, 0},
      {"metric identities", corollary31, 0},
      {"curvature identities of slant submanifolds", lemma41, 60.0},
      {"parallel Q iff anti-invariant", theorem41, 0},
      {"curvature slant cross-validation", theorem42, 0},
      {"curvature tensor symmetries", curvature_symmetries, 0},
      {"DSL round trip and CLI golden runs", dsl_and_cli, 0},
  };

  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0) v.less(secs, c.budget_seconds, "runtime in seconds");
    const bool ok = v.failures().empty();
    failed += !ok;
    std::printf("%s criterion %d: %s (%.3f s)\n", ok ? "PASS" : "FAIL", index, c.title, secs);
    for (const std::string& f : v.failures()) std::printf("    %s\n", f.c_str());
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
