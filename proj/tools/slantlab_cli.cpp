// slantlab command-line front end. Links only the C interface.
#include "slantlab/slantlab.h"

#include "CLI11.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 2;

struct Flags {
  std::string format = "table";
  std::optional<uint64_t> seed;
  std::optional<size_t> samples;
  std::optional<double> fd_step;
  std::vector<std::string> tolerances;
  bool checks_only = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"table", "records"}));
  cmd->add_option("--seed", f.seed, "sampling seed (overrides the scenario and SLANTLAB_SEED)");
  cmd->add_option("--samples", f.samples, "number of sample points")->check(CLI::PositiveNumber);
  cmd->add_option("--fd-step", f.fd_step, "first-derivative finite-difference step");
  cmd->add_option("--tolerance", f.tolerances, "per-check tolerance override NAME=X")->allow_extra_args(false);
}

int report_error() {
  std::fprintf(stderr, "error: %s\n", slantlab_last_error());
  return kExitUsage;
}

using OptionsPtr = std::unique_ptr<slantlab_options, decltype(&slantlab_options_destroy)>;

// Returns 0 or an exit code.
int build_options(const Flags& f, const char* checks, OptionsPtr& opts) {
  if (const char* env = std::getenv("SLANTLAB_SEED"); env && *env) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || *end != '\0' || env[0] == '-') {
      std::fprintf(stderr, "error: SLANTLAB_SEED must be a non-negative integer\n");
      return kExitUsage;
    }
    slantlab_options_set_default_seed(opts.get(), v);
  }
  if (f.seed && slantlab_options_set_seed(opts.get(), *f.seed) != SLANTLAB_OK) return report_error();
  if (f.samples && slantlab_options_set_samples(opts.get(), *f.samples) != SLANTLAB_OK) return report_error();
  if (f.fd_step && slantlab_options_set_fd_step(opts.get(), *f.fd_step) != SLANTLAB_OK) return report_error();
  for (const std::string& t : f.tolerances) {
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::fprintf(stderr, "error: --tolerance expects NAME=X, got '%s'\n", t.c_str());
      return kExitUsage;
    }
    const std::string value = t.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') {
      std::fprintf(stderr, "error: --tolerance value '%s' is not a number\n", value.c_str());
      return kExitUsage;
    }
    if (slantlab_options_set_tolerance(opts.get(), t.substr(0, eq).c_str(), v) != SLANTLAB_OK) return report_error();
  }
  if (checks && slantlab_options_set_checks(opts.get(), checks) != SLANTLAB_OK) return report_error();
  return 0;
}

slantlab_format format_of(const Flags& f) {
  return f.format == "records" ? SLANTLAB_FORMAT_RECORDS : SLANTLAB_FORMAT_TABLE;
}

int finish_run(int rc, slantlab_run* run, const Flags& f) {
  if (rc != SLANTLAB_OK) return report_error();
  std::unique_ptr<slantlab_run, decltype(&slantlab_run_destroy)> guard(run, slantlab_run_destroy);
  char* text = slantlab_run_render(run, format_of(f));
  if (!text) return report_error();
  std::fputs(text, stdout);
  slantlab_string_free(text);
  return int(slantlab_run_get_status(run));
}

int run_scenario_command(const std::string& path, const Flags& f, const char* checks) {
  OptionsPtr opts(slantlab_options_create(), slantlab_options_destroy);
  if (int rc = build_options(f, checks, opts)) return rc;
  slantlab_run* run = nullptr;
  const int rc = slantlab_run_file(path.c_str(), opts.get(), &run);
  return finish_run(rc, run, f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slantlab: numerical checks for slant submanifolds of Lorentzian almost contact manifolds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(slantlab_version()));

  Flags f;
  std::string model, path;

  CLI::App* va = app.add_subcommand("verify-ambient", "check the structure identities and Sasakian conditions of a model");
  va->add_option("model", model, "ambient model name")->required();
  add_common(va, f);

  CLI::App* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("scenario", path, "scenario file")->required();
  add_common(run, f);

  CLI::App* slant = app.add_subcommand("slant", "run a scenario with checks = slant");
  slant->add_option("scenario", path, "scenario file")->required();
  add_common(slant, f);

  CLI::App* curv = app.add_subcommand("curvature", "run a scenario with checks = lemma41, theorem42");
  curv->add_option("scenario", path, "scenario file")->required();
  add_common(curv, f);

  CLI::App* list = app.add_subcommand("list", "list ambient models, catalog immersions and checks");
  list->add_flag("--checks", f.checks_only, "list only the available checks");
  list->add_option("--format", f.format, "output format")->check(CLI::IsMember({"table", "records"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (*va) {
    OptionsPtr opts(slantlab_options_create(), slantlab_options_destroy);
    if (int rc = build_options(f, nullptr, opts)) return rc;
    slantlab_run* r = nullptr;
    const int rc = slantlab_verify_ambient(model.c_str(), opts.get(), &r);
    return finish_run(rc, r, f);
  }
  if (*run) return run_scenario_command(path, f, nullptr);
  if (*slant) return run_scenario_command(path, f, "slant");
  if (*curv) return run_scenario_command(path, f, "lemma41,theorem42");
  if (*list) {
    char* text = slantlab_list(f.checks_only ? 1 : 0, format_of(f));
    if (!text) return report_error();
    std::fputs(text, stdout);
    slantlab_string_free(text);
    return 0;
  }
  return kExitUsage;
}
