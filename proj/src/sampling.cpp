#include "slantlab/sampling.hpp"

#include "slantlab/error.hpp"

namespace slantlab {

double Rng::uniform(double lo, double hi) {
  const double unit = double(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

Vector Rng::uniform_vector(Eigen::Index n, double lo, double hi) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

std::vector<Vector> sample_box(std::size_t count, std::uint64_t seed, const std::vector<Interval>& box,
                               double margin) {
  for (const Interval& iv : box)
    if (!(iv.hi - iv.lo > 2.0 * margin))
      throw Error(ErrorCode::domain, "sampling box is empty after removing the interior margin");
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    Vector v(Eigen::Index(box.size()));
    for (std::size_t i = 0; i < box.size(); ++i) v[Eigen::Index(i)] = rng.uniform(box[i].lo + margin, box[i].hi - margin);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> sample_cube(std::size_t count, std::uint64_t seed, Eigen::Index dim, double lo, double hi) {
  return sample_box(count, seed, std::vector<Interval>(std::size_t(dim), Interval{lo, hi}));
}

}  // namespace slantlab
