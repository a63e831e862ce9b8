#pragma once

#include "slantlab/catalog.hpp"
#include "slantlab/runner.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace slantlab {

// Human-readable report; residuals rounded to 3 significant digits. Includes
// the wall time, so it is not byte-stable.
std::string render_table(const RunSummary& sum);

// Line-delimited JSON, one object per record with the fields in the order
// name, residual, tolerance, passed, point, samples, kind. Slant reports
// follow the records as lines of kind "slant-report". Floats use 17
// significant digits; non-finite values are null. Byte-stable for a fixed
// scenario and seed.
std::string render_records(const RunSummary& sum);

std::string render_list_table(bool checks_only);
std::string render_list_records(bool checks_only);

struct ParsedRecord {
  std::string name;
  double residual = 0.0;  // NaN for null
  double tolerance = 0.0;
  bool passed = false;
  std::vector<double> point;
  std::size_t samples = 0;
  std::string kind;
};

// Reads the output of render_records back; lines of other kinds are skipped.
// Throws ErrorCode::parse on malformed lines.
std::vector<ParsedRecord> parse_records(std::string_view text);

}  // namespace slantlab
