#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "numrange/space.hpp"

namespace numrange {

using PointSet = std::vector<Scalar>;

/// Compact convex subset of the plane given by its vertices in counterclockwise
/// order. One vertex is a point, two a segment.
struct ConvexPolygon {
  std::vector<Scalar> vertices;

  bool empty() const { return vertices.empty(); }
  /// Euclidean distance from z to the filled polygon (0 inside).
  double distance(Scalar z) const;
  bool contains(Scalar z, double tol = 1e-12) const { return distance(z) <= tol; }
  /// sup { Re(e^{-i phi} z) : z in the polygon }.
  double support(double phi) const;
  double area() const;
  /// Dense sample of the filled polygon: edges at spacing `resolution`, plus an
  /// interior lattice whose spacing is coarsened to keep at most ~2e4 points.
  PointSet resample(double resolution) const;
};

/// Andrew's monotone chain. Collinear and duplicate points are dropped, so every
/// vertex is an input point. Throws InputError on an empty input.
ConvexPolygon convex_hull(std::span<const Scalar> points);

/// Uniform-grid nearest-neighbour index over a planar point set.
class PointIndex {
 public:
  explicit PointIndex(std::span<const Scalar> points);

  /// Number of distinct indexed points.
  std::size_t size() const { return points_.size(); }
  /// Distance from z to the nearest indexed point. The search stops early once
  /// a point within good_enough is found, returning that point's distance.
  double nearest_distance(Scalar z, double good_enough = 0.0) const;

 private:
  std::vector<Scalar> points_;
  double x0_ = 0.0, y0_ = 0.0, cell_ = 1.0;
  long nx_ = 1, ny_ = 1;
  std::vector<std::size_t> cell_start_;
  std::vector<std::size_t> order_;
};

inline constexpr double kDefaultHausdorffResolution = 1e-3;

/// sup_{a in A} dist(a, B).
double directed_hausdorff(std::span<const Scalar> a, std::span<const Scalar> b);
double directed_hausdorff(std::span<const Scalar> a, const ConvexPolygon& b);
double directed_hausdorff(const ConvexPolygon& a, std::span<const Scalar> b,
                          double resolution = kDefaultHausdorffResolution);
/// Exact: the sup of the convex function dist(., B) over A is attained at a vertex.
double directed_hausdorff(const ConvexPolygon& a, const ConvexPolygon& b);

double hausdorff(std::span<const Scalar> a, std::span<const Scalar> b);
double hausdorff(const ConvexPolygon& a, const ConvexPolygon& b);
double hausdorff(const ConvexPolygon& a, std::span<const Scalar> b,
                 double resolution = kDefaultHausdorffResolution);
double hausdorff(std::span<const Scalar> a, const ConvexPolygon& b,
                 double resolution = kDefaultHausdorffResolution);

}  // namespace numrange
