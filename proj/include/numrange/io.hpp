#pragma once

#include <string>
#include <vector>

#include "numrange/intrinsic.hpp"
#include "numrange/ranges.hpp"

namespace numrange {

/// One row of the cloud CSV schema: re,im,source_label,stability_eps.
struct CsvRow {
  Scalar value;
  std::string label;
  double stability_eps = 0.0;
};

/// Header row plus one row per point, numbers with 17 significant digits.
std::string cloud_csv(const RangeCloud& cloud, const IndexedPair& pair);
/// Polygon vertices in the cloud schema, labelled "vertex<k>", stability 0.
std::string polygon_csv(const ConvexPolygon& polygon);
/// phi,support rows of a support polygon.
std::string support_csv(const SupportPolygon& polygon);

std::vector<CsvRow> parse_cloud_csv(const std::string& text);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

struct PlotLayers {
  PointSet spatial;      // dots
  PointSet approx;       // crosses
  ConvexPolygon intrinsic;  // outline
};

std::string render_svg(const PlotLayers& layers, int size = 640);

}  // namespace numrange
