#include "numrange/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace numrange {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

const char* kHeader = "re,im,source_label,stability_eps\n";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw InputError("csv line " + std::to_string(line) + ": bad number \"" + s + "\"");
  }
}

}  // namespace

std::string cloud_csv(const RangeCloud& cloud, const IndexedPair& pair) {
  std::string out = kHeader;
  for (const CloudPoint& p : cloud.points) {
    out += num(p.value.real()) + "," + num(p.value.imag()) + "," + csv_field(pair.label(p.source)) + "," +
           num(p.stability_eps) + "\n";
  }
  return out;
}

std::string polygon_csv(const ConvexPolygon& polygon) {
  std::string out = kHeader;
  for (std::size_t k = 0; k < polygon.vertices.size(); ++k) {
    const Scalar z = polygon.vertices[k];
    out += num(z.real()) + "," + num(z.imag()) + ",vertex" + std::to_string(k) + "," + num(0.0) + "\n";
  }
  return out;
}

std::string support_csv(const SupportPolygon& polygon) {
  std::string out = "phi,support\n";
  for (std::size_t j = 0; j < polygon.angles.size(); ++j)
    out += num(polygon.angles[j]) + "," + num(polygon.support[j]) + "\n";
  return out;
}

std::vector<CsvRow> parse_cloud_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InputError("csv: missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line + "\n" != kHeader) throw InputError("csv: header must be re,im,source_label,stability_eps");
  std::vector<CsvRow> rows;
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 4) throw InputError("csv line " + std::to_string(n) + ": expected 4 fields");
    rows.push_back({{parse_double(f[0], n), parse_double(f[1], n)}, f[2], parse_double(f[3], n)});
  }
  return rows;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write \"" + path + "\"");
  out << text;
  if (!out) throw InputError("failed writing \"" + path + "\"");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string render_svg(const PlotLayers& layers, int size) {
  double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
  auto grow = [&](Scalar z) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  };
  for (Scalar z : layers.spatial) grow(z);
  for (Scalar z : layers.approx) grow(z);
  for (Scalar z : layers.intrinsic.vertices) grow(z);
  if (xmin > xmax) xmin = ymin = -1.0, xmax = ymax = 1.0;
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-6}) * 1.15;
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  const double margin = 40.0, inner = size - 2.0 * margin;
  auto px = [&](Scalar z) {
    return std::pair<double, double>{margin + (z.real() - cx + span / 2) / span * inner,
                                     margin + (cy + span / 2 - z.imag()) / span * inner};
  };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size + 30
     << "\" viewBox=\"0 0 " << size << " " << size + 30 << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Axes through the origin when it is in view.
  const auto [ox, oy] = px(0.0);
  if (ox > margin && ox < size - margin)
    os << "<line x1=\"" << fmt(ox) << "\" y1=\"" << margin << "\" x2=\"" << fmt(ox) << "\" y2=\"" << size - margin
       << "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
  if (oy > margin && oy < size - margin)
    os << "<line x1=\"" << margin << "\" y1=\"" << fmt(oy) << "\" x2=\"" << size - margin << "\" y2=\"" << fmt(oy)
       << "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";

  if (!layers.intrinsic.empty()) {
    os << "<polygon points=\"";
    for (Scalar z : layers.intrinsic.vertices) {
      const auto [x, y] = px(z);
      os << fmt(x) << "," << fmt(y) << " ";
    }
    os << "\" fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\"/>\n";
  }
  // Crosses, thinned to one per half pixel.
  std::set<std::pair<long, long>> seen;
  os << "<g stroke=\"#d0602a\" stroke-width=\"1\">\n";
  for (Scalar z : layers.approx) {
    const auto [x, y] = px(z);
    if (!seen.insert({std::lround(2 * x), std::lround(2 * y)}).second) continue;
    os << "<path d=\"M" << fmt(x - 3) << " " << fmt(y - 3) << "l6 6m0 -6l-6 6\"/>\n";
  }
  os << "</g>\n";
  seen.clear();
  os << "<g fill=\"#111\">\n";
  for (Scalar z : layers.spatial) {
    const auto [x, y] = px(z);
    if (!seen.insert({std::lround(2 * x), std::lround(2 * y)}).second) continue;
    os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"2\"/>\n";
  }
  os << "</g>\n";
  os << "<text x=\"" << margin << "\" y=\"" << size + 15
     << "\" font-family=\"sans-serif\" font-size=\"13\">dots: W   crosses: approximated W   outline: V</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace numrange
