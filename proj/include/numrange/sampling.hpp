#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "numrange/space.hpp"

namespace numrange {

/// Seed splitting rule used everywhere a task needs its own stream:
/// child = splitmix64(root ^ splitmix64(stream + 1)).
std::uint64_t split_seed(std::uint64_t root, std::uint64_t stream);

/// Halton sequence with a Cranley-Patterson rotation drawn from the seed.
/// Point i is a deterministic function of (dims, seed, i), so prefixes agree
/// across budgets.
class HaltonSequence {
 public:
  HaltonSequence(int dims, std::uint64_t seed);

  int dims() const { return static_cast<int>(shift_.size()); }
  /// Coordinate j of point i, in [0, 1).
  double coord(std::uint64_t i, int j) const;
  std::vector<double> point(std::uint64_t i) const;

 private:
  std::vector<double> shift_;
};

enum class SphereScheme { Grid, QuasiRandom };

SphereScheme sphere_scheme_from_string(const std::string& name);
std::string to_string(SphereScheme scheme);

/// Points of the unit sphere of `space`, each normalized to ‖x‖_p = 1.
///
/// Grid: normalized boundary points of the cube lattice {-r..r}^d (d the real
/// dimension), with r the smallest resolution giving at least `count` points;
/// contains every signed (and, over C, every i-rotated) basis vector.
/// QuasiRandom: the signed basis vectors followed by normalized Halton points
/// of the cube, `count` points in total.
std::vector<Vector> sphere_sample(const SpaceSpec& space, SphereScheme scheme, std::size_t count,
                                  std::uint64_t seed);

/// Number of worker threads: NUMRANGE_THREADS if set, hardware concurrency otherwise.
unsigned worker_count();

/// Runs body(i) for i in [0, n). Bodies must only write to per-index state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace numrange
