#pragma once

#include "slantlab/tensor.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace slantlab {

inline constexpr std::uint64_t kDefaultSeed = 42;

// Deterministic across standard libraries: only the mt19937_64 bit stream is
// used, the mapping to doubles is done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  Vector uniform_vector(Eigen::Index n, double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

struct Interval {
  double lo;
  double hi;

  bool operator==(const Interval&) const = default;
};

// count points drawn uniformly from the box, each interval shrunk by margin.
std::vector<Vector> sample_box(std::size_t count, std::uint64_t seed, const std::vector<Interval>& box,
                               double margin = 0.0);

std::vector<Vector> sample_cube(std::size_t count, std::uint64_t seed, Eigen::Index dim,
                                double lo = -1.0, double hi = 1.0);

}  // namespace slantlab
