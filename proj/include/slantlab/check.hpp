#pragma once

#include "slantlab/tensor.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace slantlab {

// The universal report unit. passed <=> max_residual <= tolerance.
// Diagnostic records document a quantity (typically a printed-sign variant of
// an identity) and never affect the exit status.
struct CheckRecord {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool passed = true;
  Vector worst_point;
  bool diagnostic = false;
};

class CheckAccumulator {
 public:
  CheckAccumulator(std::string name, double tolerance, bool diagnostic = false)
      : name_(std::move(name)), tolerance_(tolerance), diagnostic_(diagnostic) {}

  void add(double residual, const Vector& point);
  CheckRecord finish() const;

 private:
  std::string name_;
  double tolerance_;
  bool diagnostic_;
  double worst_ = 0.0;
  Vector worst_point_;
  std::size_t samples_ = 0;
  bool saw_nan_ = false;
};

// Combines per-point records with the same name (max residual, summed
// samples); the result is sorted by name.
std::vector<CheckRecord> merge_records(const std::vector<CheckRecord>& records);

bool all_passed(const std::vector<CheckRecord>& records);

}  // namespace slantlab
