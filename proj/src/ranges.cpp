#include "numrange/ranges.hpp"

#include <algorithm>
#include <limits>

#include "numrange/sampling.hpp"

namespace numrange {

std::string to_string(CloudKind kind) {
  switch (kind) {
    case CloudKind::Spatial: return "spatial";
    case CloudKind::EpsSlice: return "eps-slice";
    case CloudKind::ApproxSpatial: return "approx-spatial";
    case CloudKind::IntrinsicBoundary: return "intrinsic-boundary";
  }
  return "unknown";
}

PointSet RangeCloud::values() const {
  PointSet out;
  out.reserve(points.size());
  for (const CloudPoint& p : points) out.push_back(p.value);
  return out;
}

std::vector<double> default_schedule(int levels) {
  if (levels < 1) throw InputError("schedule needs at least one level");
  std::vector<double> out;
  for (int k = 1; k <= levels; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

std::vector<double> effective_schedule(const IndexedPair& pair, const std::vector<double>& schedule) {
  if (!pair.is_generated()) return schedule;
  const double resolution = 1.0 / static_cast<double>(pair.index.truncation);
  std::vector<double> out;
  for (double e : schedule)
    if (e > resolution) out.push_back(e);
  if (out.empty() && !schedule.empty()) out.push_back(schedule.front());
  return out;
}

RangeCloud spatial_range(const IndexedPair& pair, std::size_t face_budget, std::uint64_t seed,
                         std::size_t phases) {
  RangeCloud cloud;
  cloud.kind = CloudKind::Spatial;
  // Face seeds match the ones eps_slice uses for the same root seed.
  for (std::size_t t = 0; t < pair.size(); ++t) {
    if (std::abs(norm(pair.space, pair.g[t]) - 1.0) > kTolAttain) continue;
    const DualityFace face = duality_face(pair.space, pair.g[t], phases);
    for (Functional& y : sample_face(face, face_budget, split_seed(seed, t))) {
      const Scalar value = pairing(y, pair.f[t]);
      cloud.points.push_back({value, t, std::move(y), 0.0});
    }
  }
  return cloud;
}

namespace {

// Samples of one slice level, in index order.
std::vector<CloudPoint> slice_pool(const IndexedPair& pair, double eps, const SliceConfig& config,
                                   std::uint64_t level_seed) {
  std::vector<std::size_t> contributing;
  for (std::size_t t = 0; t < pair.size(); ++t)
    if (norm(pair.space, pair.g[t]) > 1.0 - eps) contributing.push_back(t);
  std::vector<CloudPoint> pool;
  if (contributing.empty()) return pool;
  const std::size_t per_index =
      std::max(config.min_per_index, config.budget / contributing.size());

  std::vector<std::vector<CloudPoint>> parts(contributing.size());
  parallel_for(contributing.size(), [&](std::size_t i) {
    const std::size_t t = contributing[i];
    for (Functional& y : near_norming(pair.space, pair.g[t], eps, per_index,
                                      split_seed(level_seed, t), config.phases, config.face_budget,
                                      split_seed(config.seed, t))) {
      const Scalar value = pairing(y, pair.f[t]);
      parts[i].push_back({value, t, std::move(y), eps});
    }
  });
  for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(pool));
  return pool;
}

void check_schedule(const std::vector<double>& schedule) {
  if (schedule.empty()) throw InputError("eps schedule must be nonempty");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (!(schedule[k] > 0.0)) throw InputError("eps schedule entries must be positive");
    if (k > 0 && !(schedule[k] < schedule[k - 1]))
      throw InputError("eps schedule must be strictly decreasing");
  }
}

}  // namespace

RangeCloud eps_slice(const IndexedPair& pair, double eps, const SliceConfig& config) {
  if (!(eps > 0.0)) throw InputError("eps_slice needs eps > 0");
  RangeCloud cloud;
  cloud.kind = CloudKind::EpsSlice;
  cloud.points = slice_pool(pair, eps, config, config.seed);
  return cloud;
}

RangeCloud approx_spatial_range(const IndexedPair& pair, const ApproxConfig& config) {
  check_schedule(config.schedule);
  const std::vector<double> schedule = effective_schedule(pair, config.schedule);
  const double eta = config.eta >= 0.0 ? config.eta : 1e-3 * std::max(pair.f_sup, 1e-12);
  const std::size_t levels = schedule.size();

  std::vector<std::vector<CloudPoint>> pools(levels);
  for (std::size_t k = 0; k < levels; ++k)
    pools[k] = slice_pool(pair, schedule[k], config.slice, split_seed(config.slice.seed, k));

  RangeCloud cloud;
  cloud.kind = CloudKind::ApproxSpatial;
  const std::vector<CloudPoint>& finest = pools.back();
  if (finest.empty()) return cloud;

  // Slice k = pools k..K; check eta-persistence of each finest point in every slice.
  std::vector<bool> keep(finest.size(), true);
  PointSet acc;
  for (std::size_t k = levels; k-- > 0;) {
    for (const CloudPoint& p : pools[k]) acc.push_back(p.value);
    if (k + 1 == levels) continue;
    const PointIndex index(acc);
    for (std::size_t i = 0; i < finest.size(); ++i)
      if (keep[i] && index.nearest_distance(finest[i].value, eta) > eta) keep[i] = false;
  }
  for (std::size_t i = 0; i < finest.size(); ++i) {
    if (!keep[i]) continue;
    CloudPoint p = finest[i];
    const double gap = 1.0 - pairing(p.functional, pair.g[p.source]).real();
    p.stability_eps = schedule.back();
    for (double e : schedule)
      if (gap < e) p.stability_eps = e;
    cloud.points.push_back(std::move(p));
  }
  return cloud;
}

NestedSupRe nested_sup_re(const std::vector<PointSet>& clouds, double eta) {
  if (clouds.empty()) throw InputError("nested_sup_re needs at least one cloud");
  for (const PointSet& c : clouds)
    if (c.empty()) throw InputError("nested_sup_re needs nonempty clouds");
  NestedSupRe out;
  out.rhs = std::numeric_limits<double>::infinity();
  for (const PointSet& c : clouds) {
    double sup = -std::numeric_limits<double>::infinity();
    for (const Scalar& z : c) sup = std::max(sup, z.real());
    out.rhs = std::min(out.rhs, sup);
  }
  std::vector<PointIndex> indices;
  indices.reserve(clouds.size());
  for (const PointSet& c : clouds) indices.emplace_back(c);
  out.lhs = -std::numeric_limits<double>::infinity();
  for (const Scalar& z : clouds.back()) {
    bool member = true;
    for (const PointIndex& index : indices)
      if (index.nearest_distance(z, eta) > eta) {
        member = false;
        break;
      }
    if (member) {
      ++out.intersection_size;
      out.lhs = std::max(out.lhs, z.real());
    }
  }
  return out;
}

}  // namespace numrange
