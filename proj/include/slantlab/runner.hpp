#pragma once

#include "slantlab/curvature.hpp"
#include "slantlab/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slantlab {

enum class RunStatus { pass, check_failed, usage_error };
const char* to_string(RunStatus s);
int exit_code(RunStatus s);  // 0 / 1 / 2

struct RunSummary {
  std::string scenario;
  std::vector<CheckRecord> records;  // sorted by name
  std::optional<SlantReport> slant_report;
  std::optional<SlantReport> curvature_report;
  std::vector<std::string> notes;
  double wall_time = 0.0;  // seconds
  RunStatus status = RunStatus::pass;
};

// Runs the requested checks in dependency order. Geometry errors (domain,
// degenerate frames, evaluation failures) propagate as slantlab::Error.
RunSummary run_scenario(const Scenario& sc);

}  // namespace slantlab
