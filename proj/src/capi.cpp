#include "slantlab/slantlab.h"

#include "slantlab/error.hpp"
#include "slantlab/report.hpp"
#include "slantlab/runner.hpp"
#include "slantlab/scenario.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

using namespace slantlab;

struct slantlab_options {
  LoadOptions load;
};

struct SlantView {
  std::string classification;
  std::vector<double> values;
  std::vector<int> multiplicities;
};

struct slantlab_run {
  RunSummary summary;
  std::vector<std::vector<double>> points;
  std::optional<SlantView> slant;
  std::optional<SlantView> curvature;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, std::string msg) {
  g_last_error = std::move(msg);
  return code;
}

int code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::parse: return SLANTLAB_ERR_PARSE;
    case ErrorCode::usage: return SLANTLAB_ERR_USAGE;
    case ErrorCode::io: return SLANTLAB_ERR_IO;
    case ErrorCode::domain: return SLANTLAB_ERR_DOMAIN;
    case ErrorCode::evaluation: return SLANTLAB_ERR_EVALUATION;
    default: return SLANTLAB_ERR_GEOMETRY;
  }
}

template <class F>
int guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SLANTLAB_OK;
  } catch (const Error& e) {
    return fail(code_for(e), std::string(to_string(e.code())) + ": " + e.what());
  } catch (const std::exception& e) {
    return fail(SLANTLAB_ERR_INTERNAL, std::string("internal: ") + e.what());
  }
}

SlantView view_of(const SlantReport& r) {
  SlantView v;
  v.classification = to_string(r.classification);
  for (const EigenCluster& c : r.spectrum) {
    v.values.push_back(c.value);
    v.multiplicities.push_back(c.multiplicity);
  }
  return v;
}

slantlab_run* make_run(RunSummary sum) {
  auto* run = new slantlab_run{std::move(sum), {}, {}, {}};
  for (const CheckRecord& r : run->summary.records)
    run->points.emplace_back(r.worst_point.data(), r.worst_point.data() + r.worst_point.size());
  if (run->summary.slant_report) run->slant = view_of(*run->summary.slant_report);
  if (run->summary.curvature_report) run->curvature = view_of(*run->summary.curvature_report);
  return run;
}

const LoadOptions& load_of(const slantlab_options* opts) {
  static const LoadOptions empty;
  return opts ? opts->load : empty;
}

int run_source(const std::string& text, const slantlab_options* opts, slantlab_run** out) {
  if (!out) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  return guarded([&] { *out = make_run(run_scenario(load_scenario(text, load_of(opts)))); });
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void fill(const slantlab_run* run, const SlantReport& r, const SlantView& v, slantlab_slant_summary* out) {
  (void)run;
  out->classification = v.classification.c_str();
  out->lambda_fit = r.lambda_fit;
  out->theta = r.theta;
  out->fit_residual = r.fit_residual;
  out->theta_spread = r.theta_spread;
  out->spectrum_size = v.values.size();
  out->spectrum_values = v.values.data();
  out->spectrum_multiplicities = v.multiplicities.data();
}

}  // namespace

extern "C" {

const char* slantlab_version(void) { return "0.1.0"; }

const char* slantlab_last_error(void) { return g_last_error.c_str(); }

slantlab_options* slantlab_options_create(void) { return new slantlab_options{}; }

void slantlab_options_destroy(slantlab_options* opts) { delete opts; }

int slantlab_options_set_seed(slantlab_options* opts, uint64_t seed) {
  if (!opts) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "null options");
  opts->load.seed = seed;
  return SLANTLAB_OK;
}

int slantlab_options_set_default_seed(slantlab_options* opts, uint64_t seed) {
  if (!opts) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "null options");
  opts->load.default_seed = seed;
  return SLANTLAB_OK;
}

int slantlab_options_set_samples(slantlab_options* opts, size_t count) {
  if (!opts) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "null options");
  if (count == 0) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "sample count must be positive");
  opts->load.sample_count = count;
  return SLANTLAB_OK;
}

int slantlab_options_set_fd_step(slantlab_options* opts, double step) {
  if (!opts) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "null options");
  if (!(step > 0.0 && step < 0.1)) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "fd step must lie in (0, 0.1)");
  opts->load.fd_step = step;
  return SLANTLAB_OK;
}

int slantlab_options_set_tolerance(slantlab_options* opts, const char* name, double value) {
  if (!opts || !name) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "null argument");
  if (!is_tolerance_key(name)) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, std::string("unknown tolerance name '") + name + "'");
  if (!(value > 0.0)) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "tolerance must be positive");
  opts->load.tolerances[name] = value;
  return SLANTLAB_OK;
}

int slantlab_options_set_checks(slantlab_options* opts, const char* checks) {
  if (!opts || !checks) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "null argument");
  std::set<CheckKind> set;
  std::string item;
  std::istringstream in(checks);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
    const auto k = check_from_name(item);
    if (!k) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "unknown check '" + item + "'");
    set.insert(*k);
  }
  if (set.empty()) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "empty check list");
  opts->load.checks = set;
  return SLANTLAB_OK;
}

int slantlab_run_file(const char* path, const slantlab_options* opts, slantlab_run** out) {
  if (!path) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "null path");
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (out) *out = nullptr;
    return fail(SLANTLAB_ERR_IO, std::string("io: cannot read scenario file '") + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return run_source(ss.str(), opts, out);
}

int slantlab_run_text(const char* text, const slantlab_options* opts, slantlab_run** out) {
  if (!text) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "null text");
  return run_source(text, opts, out);
}

int slantlab_verify_ambient(const char* model, const slantlab_options* opts, slantlab_run** out) {
  if (!model || !out) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = make_run(run_scenario(ambient_scenario(model, load_of(opts)))); });
}

void slantlab_run_destroy(slantlab_run* run) { delete run; }

slantlab_run_status slantlab_run_get_status(const slantlab_run* run) {
  if (!run) return SLANTLAB_RUN_USAGE_ERROR;
  return static_cast<slantlab_run_status>(exit_code(run->summary.status));
}

size_t slantlab_run_record_count(const slantlab_run* run) { return run ? run->summary.records.size() : 0; }

int slantlab_run_get_record(const slantlab_run* run, size_t index, slantlab_record* out) {
  if (!run || !out) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= run->summary.records.size()) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "record index out of range");
  const CheckRecord& r = run->summary.records[index];
  out->name = r.name.c_str();
  out->residual = r.max_residual;
  out->tolerance = r.tolerance;
  out->passed = r.passed ? 1 : 0;
  out->diagnostic = r.diagnostic ? 1 : 0;
  out->samples = r.samples;
  out->point = run->points[index].data();
  out->point_size = run->points[index].size();
  return SLANTLAB_OK;
}

int slantlab_run_get_slant(const slantlab_run* run, slantlab_slant_summary* out) {
  if (!run || !out) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "null argument");
  if (!run->slant) return fail(SLANTLAB_ERR_NOT_FOUND, "the run has no slant report");
  fill(run, *run->summary.slant_report, *run->slant, out);
  return SLANTLAB_OK;
}

int slantlab_run_get_curvature_slant(const slantlab_run* run, slantlab_slant_summary* out) {
  if (!run || !out) return fail(SLANTLAB_ERR_INVALID_ARGUMENT, "null argument");
  if (!run->curvature) return fail(SLANTLAB_ERR_NOT_FOUND, "the run has no curvature slant report");
  fill(run, *run->summary.curvature_report, *run->curvature, out);
  return SLANTLAB_OK;
}

double slantlab_run_wall_time(const slantlab_run* run) { return run ? run->summary.wall_time : 0.0; }

char* slantlab_run_render(const slantlab_run* run, slantlab_format format) {
  if (!run) {
    fail(SLANTLAB_ERR_INVALID_ARGUMENT, "null run");
    return nullptr;
  }
  return dup(format == SLANTLAB_FORMAT_RECORDS ? render_records(run->summary) : render_table(run->summary));
}

char* slantlab_list(int checks_only, slantlab_format format) {
  return dup(format == SLANTLAB_FORMAT_RECORDS ? render_list_records(checks_only != 0)
                                                : render_list_table(checks_only != 0));
}

void slantlab_string_free(char* s) { std::free(s); }

}  // extern "C"
