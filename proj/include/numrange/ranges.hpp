#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "numrange/duality.hpp"
#include "numrange/geometry.hpp"
#include "numrange/indexed_pair.hpp"

namespace numrange {

enum class CloudKind { Spatial, EpsSlice, ApproxSpatial, IntrinsicBoundary };

std::string to_string(CloudKind kind);

struct CloudPoint {
  Scalar value;
  std::size_t source = 0;  // position in the pair's index set
  Functional functional;
  /// Smallest schedule level at which (source, functional) passes the
  /// near-norming bound; 0 for exactly norming (spatial) points.
  double stability_eps = 0.0;
};

/// Finite planar sample of a compact subset of the scalar field.
struct RangeCloud {
  CloudKind kind = CloudKind::Spatial;
  std::vector<CloudPoint> points;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
  PointSet values() const;
};

struct SliceConfig {
  /// Functionals per slice, split evenly over contributing indices.
  std::size_t budget = 10000;
  std::size_t min_per_index = 8;
  std::uint64_t seed = 0;
  std::size_t phases = 16;
  /// Samples of each non-singleton duality face; 0 means a quarter of the per-index share.
  std::size_t face_budget = 0;
};

struct ApproxConfig {
  std::vector<double> schedule;  // strictly decreasing, positive
  /// Match radius; negative means 1e-3 * max(‖f‖_inf, 1e-12).
  double eta = -1.0;
  SliceConfig slice;
};

/// ε_k = 2^-k, k = 1..levels.
std::vector<double> default_schedule(int levels = 12);

/// Schedule actually used for a pair. Generated index sets truncated at N only
/// resolve attainment gaps down to 1/N, so levels with ε_k <= 1/N are dropped
/// (at least one level is kept). Finite index sets use the schedule unchanged.
std::vector<double> effective_schedule(const IndexedPair& pair, const std::vector<double>& schedule);

/// {y*(f(t)) : ‖g(t)‖ = 1 within kTolAttain, y* sampled from the duality face at g(t)}.
RangeCloud spatial_range(const IndexedPair& pair, std::size_t face_budget, std::uint64_t seed,
                         std::size_t phases = 16);

/// {y*(f(t)) : Re y*(g(t)) > 1 - eps} over sampled (t, y*).
RangeCloud eps_slice(const IndexedPair& pair, double eps, const SliceConfig& config);

/// Approximated spatial range: the finest slice of the schedule, keeping points
/// that have a neighbour within eta in every slice. Slice k is the union of the
/// samples drawn at levels k..K, so slices are nested by construction.
RangeCloud approx_spatial_range(const IndexedPair& pair, const ApproxConfig& config);

struct NestedSupRe {
  double lhs = 0.0;  // sup Re of the (eta-matched) intersection
  double rhs = 0.0;  // inf_n sup Re W_n
  std::size_t intersection_size = 0;
};

/// Both sides of sup Re ∩W_n = inf_n sup Re W_n for a decreasing family of
/// clouds. The intersection is the set of points of the last cloud within eta
/// of every cloud.
NestedSupRe nested_sup_re(const std::vector<PointSet>& clouds, double eta);

}  // namespace numrange
