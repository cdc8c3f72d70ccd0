#include "numrange/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace numrange {

namespace {

double cross(Scalar o, Scalar a, Scalar b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

double segment_distance(Scalar z, Scalar a, Scalar b) {
  const Scalar ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  double t = ((z - a) * std::conj(ab)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

void require_nonempty(std::size_t n, const char* what) {
  if (n == 0) throw InputError(std::string("hausdorff: empty ") + what);
}

}  // namespace

double ConvexPolygon::distance(Scalar z) const {
  const std::size_t n = vertices.size();
  if (n == 0) throw InputError("distance to an empty polygon");
  if (n == 1) return std::abs(z - vertices[0]);
  if (n == 2) return segment_distance(z, vertices[0], vertices[1]);
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar a = vertices[i], b = vertices[(i + 1) % n];
    if (cross(a, b, z) < 0.0) inside = false;
    best = std::min(best, segment_distance(z, a, b));
  }
  return inside ? 0.0 : best;
}

double ConvexPolygon::support(double phi) const {
  const Scalar rot = std::polar(1.0, -phi);
  double best = -std::numeric_limits<double>::infinity();
  for (const Scalar& v : vertices) best = std::max(best, (rot * v).real());
  return best;
}

double ConvexPolygon::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Scalar p = vertices[i], q = vertices[(i + 1) % vertices.size()];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * std::abs(a);
}

PointSet ConvexPolygon::resample(double resolution) const {
  PointSet out;
  const std::size_t n = vertices.size();
  if (n == 0) return out;
  if (n == 1) return {vertices[0]};
  const std::size_t edges = n == 2 ? 1 : n;
  for (std::size_t i = 0; i < edges; ++i) {
    const Scalar a = vertices[i], b = vertices[(i + 1) % n];
    const auto steps = static_cast<std::size_t>(std::ceil(std::abs(b - a) / resolution));
    for (std::size_t k = 0; k < std::max<std::size_t>(steps, 1); ++k)
      out.push_back(a + (b - a) * (static_cast<double>(k) / static_cast<double>(std::max<std::size_t>(steps, 1))));
  }
  if (n == 2) {
    out.push_back(vertices[1]);
    return out;
  }
  double h = std::max(resolution, std::sqrt(area() / 2e4));
  double xmin = vertices[0].real(), xmax = xmin, ymin = vertices[0].imag(), ymax = ymin;
  for (const Scalar& v : vertices) {
    xmin = std::min(xmin, v.real());
    xmax = std::max(xmax, v.real());
    ymin = std::min(ymin, v.imag());
    ymax = std::max(ymax, v.imag());
  }
  for (double x = xmin + 0.5 * h; x < xmax; x += h)
    for (double y = ymin + 0.5 * h; y < ymax; y += h)
      if (contains(Scalar(x, y), 0.0)) out.emplace_back(x, y);
  return out;
}

ConvexPolygon convex_hull(std::span<const Scalar> points) {
  if (points.empty()) throw InputError("convex_hull of an empty cloud");
  std::vector<Scalar> pts(points.begin(), points.end());
  auto less = [](const Scalar& a, const Scalar& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  };
  std::sort(pts.begin(), pts.end(), less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 1) return {pts};

  std::vector<Scalar> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Scalar& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return {hull};
}

PointIndex::PointIndex(std::span<const Scalar> points) : points_(points.begin(), points.end()) {
  if (points_.empty()) throw InputError("PointIndex over an empty set");
  auto less = [](Scalar a, Scalar b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); };
  std::sort(points_.begin(), points_.end(), less);
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  double xmin = points_[0].real(), xmax = xmin, ymin = points_[0].imag(), ymax = ymin;
  for (const Scalar& p : points_) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  const double w = xmax - xmin, h = ymax - ymin;
  const double n = static_cast<double>(points_.size());
  double cell = std::sqrt(w * h / n);
  if (!(cell > 0.0)) cell = std::max(w, h) / n;
  if (!(cell > 0.0)) cell = 1.0;
  cell_ = cell;
  x0_ = xmin;
  y0_ = ymin;
  nx_ = std::max<long>(1, static_cast<long>(w / cell) + 1);
  ny_ = std::max<long>(1, static_cast<long>(h / cell) + 1);

  const auto cells = static_cast<std::size_t>(nx_ * ny_);
  std::vector<std::size_t> cell_of(points_.size());
  cell_start_.assign(cells + 1, 0);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const long cx = std::min(nx_ - 1, static_cast<long>((points_[i].real() - x0_) / cell_));
    const long cy = std::min(ny_ - 1, static_cast<long>((points_[i].imag() - y0_) / cell_));
    cell_of[i] = static_cast<std::size_t>(cy * nx_ + cx);
    ++cell_start_[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) cell_start_[c + 1] += cell_start_[c];
  order_.resize(points_.size());
  std::vector<std::size_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < points_.size(); ++i) order_[fill[cell_of[i]]++] = i;
}

double PointIndex::nearest_distance(Scalar z, double good_enough) const {
  const long cx = std::clamp(static_cast<long>(std::floor((z.real() - x0_) / cell_)), 0L, nx_ - 1);
  const long cy = std::clamp(static_cast<long>(std::floor((z.imag() - y0_) / cell_)), 0L, ny_ - 1);
  double best = std::numeric_limits<double>::infinity();
  auto scan = [&](long x, long y) {
    if (x < 0 || y < 0 || x >= nx_ || y >= ny_) return;
    const auto c = static_cast<std::size_t>(y * nx_ + x);
    for (std::size_t k = cell_start_[c]; k < cell_start_[c + 1] && best > good_enough; ++k)
      best = std::min(best, std::abs(z - points_[order_[k]]));
  };
  const long max_ring = std::max(nx_, ny_);
  for (long r = 0; r <= max_ring; ++r) {
    if (best <= good_enough) break;
    if (r >= 1 && static_cast<double>(r - 1) * cell_ >= best) break;
    if (r == 0) {
      scan(cx, cy);
      continue;
    }
    for (long x = cx - r; x <= cx + r; ++x) {
      scan(x, cy - r);
      scan(x, cy + r);
    }
    for (long y = cy - r + 1; y <= cy + r - 1; ++y) {
      scan(cx - r, y);
      scan(cx + r, y);
    }
  }
  return best;
}

double directed_hausdorff(std::span<const Scalar> a, std::span<const Scalar> b) {
  require_nonempty(a.size(), "first operand");
  require_nonempty(b.size(), "second operand");
  const PointIndex index(b);
  double worst = 0.0;
  for (const Scalar& z : a) worst = std::max(worst, index.nearest_distance(z, worst));
  return worst;
}

double directed_hausdorff(std::span<const Scalar> a, const ConvexPolygon& b) {
  require_nonempty(a.size(), "first operand");
  require_nonempty(b.vertices.size(), "second operand");
  double worst = 0.0;
  for (const Scalar& z : a) worst = std::max(worst, b.distance(z));
  return worst;
}

double directed_hausdorff(const ConvexPolygon& a, std::span<const Scalar> b, double resolution) {
  require_nonempty(a.vertices.size(), "first operand");
  const PointSet dense = a.resample(resolution);
  return directed_hausdorff(std::span<const Scalar>(dense), b);
}

double directed_hausdorff(const ConvexPolygon& a, const ConvexPolygon& b) {
  return directed_hausdorff(std::span<const Scalar>(a.vertices), b);
}

double hausdorff(std::span<const Scalar> a, std::span<const Scalar> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double hausdorff(const ConvexPolygon& a, const ConvexPolygon& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double hausdorff(const ConvexPolygon& a, std::span<const Scalar> b, double resolution) {
  return std::max(directed_hausdorff(a, b, resolution), directed_hausdorff(b, a));
}

double hausdorff(std::span<const Scalar> a, const ConvexPolygon& b, double resolution) {
  return hausdorff(b, a, resolution);
}

}  // namespace numrange
