#include "slantlab/check.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace slantlab {

void CheckAccumulator::add(double residual, const Vector& point) {
  ++samples_;
  if (std::isnan(residual)) {
    saw_nan_ = true;
    worst_point_ = point;
    return;
  }
  if (samples_ == 1 || residual > worst_) {
    if (!saw_nan_) worst_point_ = point;
    worst_ = std::max(worst_, residual);
  }
}

CheckRecord CheckAccumulator::finish() const {
  CheckRecord r;
  r.name = name_;
  r.tolerance = tolerance_;
  r.samples = samples_;
  r.max_residual = saw_nan_ ? std::nan("") : worst_;
  r.worst_point = worst_point_;
  r.diagnostic = diagnostic_;
  r.passed = !saw_nan_ && worst_ <= tolerance_;
  return r;
}

std::vector<CheckRecord> merge_records(const std::vector<CheckRecord>& records) {
  std::map<std::string, CheckRecord> merged;
  for (const CheckRecord& r : records) {
    auto [it, inserted] = merged.try_emplace(r.name, r);
    if (inserted) continue;
    CheckRecord& m = it->second;
    m.samples += r.samples;
    const bool nan_r = std::isnan(r.max_residual);
    if (nan_r || (!std::isnan(m.max_residual) && r.max_residual > m.max_residual)) {
      m.max_residual = r.max_residual;
      m.worst_point = r.worst_point;
    }
    m.tolerance = r.tolerance;
    m.passed = !std::isnan(m.max_residual) && m.max_residual <= m.tolerance;
  }
  std::vector<CheckRecord> out;
  out.reserve(merged.size());
  for (auto& [_, r] : merged) out.push_back(std::move(r));
  return out;
}

bool all_passed(const std::vector<CheckRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.diagnostic || r.passed; });
}

}  // namespace slantlab
