#pragma once

#include "slantlab/ambient.hpp"
#include "slantlab/submanifold.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace slantlab {

// Declaration order is the execution order.
enum class CheckKind { structure, sasakian, slant, corollary31, lemma41, theorem41, theorem42 };

const char* to_string(CheckKind k);
std::optional<CheckKind> check_from_name(std::string_view name);
bool needs_immersion(CheckKind k);

inline constexpr std::size_t kDefaultSampleCount = 20;

// Tolerance override keys: the check names plus "curvature" (curvature
// symmetries) and "xi" (xi identities).
bool is_tolerance_key(std::string_view key);

struct Scenario {
  std::string name;
  std::string ambient_name;
  std::optional<AmbientStructure> ambient;
  std::string immersion_name;  // catalog name, or the scenario name for DSL immersions
  std::optional<Immersion> immersion;
  std::uint64_t seed = kDefaultSeed;
  std::size_t sample_count = kDefaultSampleCount;
  bool explicit_points = false;
  std::vector<Vector> parameter_points;
  std::vector<CoordPoint> ambient_points;
  FDConfig fd;
  std::set<CheckKind> checks;
  std::map<std::string, double> tolerances;

  double tolerance(std::string_view key, double fallback) const;
};

struct LoadOptions {
  std::optional<std::uint64_t> seed;          // --seed, beats the file
  std::optional<std::uint64_t> default_seed;  // environment default, loses to the file
  std::optional<std::size_t> sample_count;
  std::optional<double> fd_step;
  std::map<std::string, double> tolerances;
  std::optional<std::set<CheckKind>> checks;  // replaces the [checks] section
};

// Parses and resolves a scenario. Errors: ParseError with line and column for
// malformed text, unknown keys, sections, checks and names; Error(usage) for
// unknown models, missing parts and an empty check list; Error(structural) for
// a dimension mismatch between the immersion and the ambient chart;
// DomainError for explicit points too close to the domain boundary.
Scenario load_scenario(std::string_view src, const LoadOptions& opts = {});

// Ambient-only scenario used by verify-ambient.
Scenario ambient_scenario(std::string_view model, const LoadOptions& opts = {});

}  // namespace slantlab
