#include "numrange/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace numrange {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& message) {
  throw InputError(key + ": " + message);
}

std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where.empty() ? "document" : where, "must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
    if (!known) fail(join(where, it.key()), "unknown key");
  }
}

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "must be a number");
  return v.get<double>();
}

std::uint64_t as_seed(const json& v, const std::string& key) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
    fail(key, "must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::size_t as_count(const json& v, const std::string& key, std::size_t min_value) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0))
    fail(key, "must be a nonnegative integer");
  const auto n = v.get<std::size_t>();
  if (n < min_value) fail(key, "must be at least " + std::to_string(min_value));
  return n;
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) fail(key, "must be a string");
  return v.get<std::string>();
}

double parse_p(const json& v, const std::string& key) {
  double p = 0.0;
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s != "inf" && s != "infinity" && s != "∞") fail(key, "p must be in [1, ∞]");
    p = kInf;
  } else {
    p = as_number(v, key);
  }
  if (!(p >= 1.0)) fail(key, "p must be in [1, ∞]");
  return p;
}

json p_json(double p) { return p == kInf ? json("inf") : json(p); }

Scalar parse_scalar(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  fail(key, "scalar must be a number or [re, im]");
}

Vector parse_vector(const json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) fail(key, "must be a nonempty array of scalars");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = parse_scalar(v[i], key + "[" + std::to_string(i) + "]");
  return out;
}

std::vector<Vector> parse_vectors(const json& v, const std::string& key, int dim) {
  if (!v.is_array() || v.empty()) fail(key, "must be a nonempty array of vectors");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string k = key + "[" + std::to_string(i) + "]";
    out.push_back(parse_vector(v[i], k));
    if (out.back().size() != dim) fail(k, "length must equal space.dim = " + std::to_string(dim));
  }
  return out;
}

json scalar_json(Scalar z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_json(v(i)));
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i).transpose()));
  return out;
}

SpaceSpec parse_space(const json& s) {
  check_keys(s, "space", {"field", "p", "dim"});
  if (!s.contains("field")) fail("space.field", "missing");
  if (!s.contains("p")) fail("space.p", "missing");
  if (!s.contains("dim")) fail("space.dim", "missing");
  const std::string name = as_string(s["field"], "space.field");
  Field field;
  try {
    field = field_from_string(name);
  } catch (const InputError& e) {
    fail("space.field", e.what());
  }
  const double p = parse_p(s["p"], "space.p");
  const std::size_t dim = as_count(s["dim"], "space.dim", 1);
  return SpaceSpec(field, static_cast<int>(dim), p);
}

json space_json(const SpaceSpec& s) {
  return {{"field", to_string(s.field)}, {"p", p_json(s.p)}, {"dim", s.dim}};
}

std::size_t line_col_offset(const std::string& text, std::size_t byte, std::size_t& col) {
  std::size_t line = 1;
  col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return line;
}

}  // namespace

ProblemFile parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t col = 0;
    const std::size_t line = line_col_offset(text, e.byte, col);
    std::string detail = e.what();
    const auto pos = detail.rfind(": ");
    if (pos != std::string::npos) detail = detail.substr(pos + 2);
    std::ostringstream os;
    os << "syntax error at line " << line << ", column " << col << ": " << detail;
    throw InputError(os.str());
  }
  check_keys(doc, "", {"space", "pair", "compute", "verify"});

  ProblemFile out;
  json resolved = json::object();

  std::optional<SpaceSpec> space;
  if (doc.contains("space")) space = parse_space(doc["space"]);

  if (doc.contains("pair")) {
    const json& p = doc["pair"];
    if (!p.is_object()) fail("pair", "must be an object");
    if (!p.contains("kind")) fail("pair.kind", "missing (finite, generated or operator)");
    const std::string kind = as_string(p["kind"], "pair.kind");
    json echo;
    if (kind == "finite") {
      check_keys(p, "pair", {"kind", "labels", "g", "f"});
      if (!space) fail("space", "missing (required for finite pairs)");
      if (!p.contains("g")) fail("pair.g", "missing");
      if (!p.contains("f")) fail("pair.f", "missing");
      std::vector<Vector> g = parse_vectors(p["g"], "pair.g", space->dim);
      std::vector<Vector> f = parse_vectors(p["f"], "pair.f", space->dim);
      if (f.size() != g.size()) fail("pair.f", "must have as many entries as pair.g");
      if (!space->is_complex()) {
        for (std::size_t i = 0; i < g.size(); ++i) {
          if (!is_real(g[i])) fail("pair.g[" + std::to_string(i) + "]", "complex entries need a complex space");
          if (!is_real(f[i])) fail("pair.f[" + std::to_string(i) + "]", "complex entries need a complex space");
        }
      }
      std::vector<std::string> labels;
      if (p.contains("labels")) {
        const json& l = p["labels"];
        if (!l.is_array() || l.size() != g.size()) fail("pair.labels", "must list one label per entry of pair.g");
        for (std::size_t i = 0; i < l.size(); ++i) labels.push_back(as_string(l[i], "pair.labels[" + std::to_string(i) + "]"));
        std::vector<std::string> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("pair.labels", "labels must be distinct");
      } else {
        for (std::size_t i = 0; i < g.size(); ++i) labels.push_back("t" + std::to_string(i));
      }
      try {
        out.pair = make_finite_pair(*space, labels, g, f);
      } catch (const InputError& e) {
        fail("pair.g", e.what());
      }
      echo = {{"kind", "finite"}, {"labels", labels}};
      echo["g"] = json::array();
      echo["f"] = json::array();
      for (const Vector& v : out.pair->g) echo["g"].push_back(vector_json(v));
      for (const Vector& v : out.pair->f) echo["f"].push_back(vector_json(v));
    } else if (kind == "generated") {
      check_keys(p, "pair", {"kind", "family", "N", "v"});
      GeneratedParams params;
      if (!p.contains("family")) fail("pair.family", "missing");
      try {
        params.family = family_from_string(as_string(p["family"], "pair.family"));
      } catch (const InputError& e) {
        fail("pair.family", e.what());
      }
      params.truncation = p.contains("N") ? as_count(p["N"], "pair.N", 1) : 1000;
      if (p.contains("v")) {
        if (params.family != Family::Nonattained) fail("pair.v", "only the nonattained family takes v");
        params.v = parse_vector(p["v"], "pair.v");
        if (params.v.size() != 2) fail("pair.v", "must have length 2");
      } else {
        params.v = (Vector(2) << 0.3, 0.4).finished();
      }
      out.pair = make_generated_pair(params);
      if (space && !(*space == out.pair->space))
        fail("space", "the " + to_string(params.family) + " family lives in " + out.pair->space.describe());
      space = out.pair->space;
      echo = {{"kind", "generated"}, {"family", to_string(params.family)}, {"N", params.truncation}};
      if (params.family == Family::Nonattained) echo["v"] = vector_json(params.v);
    } else if (kind == "operator") {
      check_keys(p, "pair", {"kind", "matrix", "domain_dim", "sampling"});
      if (!space) fail("space", "missing (required for operator pairs)");
      if (!p.contains("matrix")) fail("pair.matrix", "missing");
      const json& m = p["matrix"];
      if (!m.is_array() || m.empty()) fail("pair.matrix", "must be a nonempty array of rows");
      std::vector<Vector> rows;
      for (std::size_t i = 0; i < m.size(); ++i) rows.push_back(parse_vector(m[i], "pair.matrix[" + std::to_string(i) + "]"));
      const Eigen::Index cols = rows.front().size();
      for (const Vector& r : rows)
        if (r.size() != cols) fail("pair.matrix", "rows must have equal length");
      if (static_cast<int>(rows.size()) != space->dim) fail("pair.matrix", "must have space.dim rows");
      OperatorSpec op;
      op.matrix.resize(static_cast<Eigen::Index>(rows.size()), cols);
      for (std::size_t i = 0; i < rows.size(); ++i) op.matrix.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
      op.domain_dim = p.contains("domain_dim") ? static_cast<int>(as_count(p["domain_dim"], "pair.domain_dim", 1))
                                               : static_cast<int>(cols);
      if (op.domain_dim != cols) fail("pair.domain_dim", "must equal the number of matrix columns");
      if (!space->is_complex() && !is_real(op.matrix.reshaped()))
        fail("pair.matrix", "complex entries need a complex space");
      OperatorSampling sampling;
      if (p.contains("sampling")) {
        const json& s = p["sampling"];
        check_keys(s, "pair.sampling", {"scheme", "count", "seed"});
        if (s.contains("scheme")) {
          try {
            sampling.scheme = sphere_scheme_from_string(as_string(s["scheme"], "pair.sampling.scheme"));
          } catch (const InputError& e) {
            fail("pair.sampling.scheme", e.what());
          }
        }
        if (s.contains("count")) sampling.count = as_count(s["count"], "pair.sampling.count", 2);
        if (s.contains("seed")) sampling.seed = as_seed(s["seed"], "pair.sampling.seed");
      }
      try {
        out.pair = from_operator(op, *space, sampling);
      } catch (const InputError& e) {
        fail("pair", e.what());
      }
      if (op.matrix.rows() == op.matrix.cols() && space->p == 2.0 && space->is_complex())
        out.operator_matrix = op.matrix;
      echo = {{"kind", "operator"}, {"matrix", matrix_json(op.matrix)}, {"domain_dim", op.domain_dim}};
      echo["sampling"] = {{"scheme", to_string(sampling.scheme)}, {"count", sampling.count}, {"seed", sampling.seed}};
    } else {
      fail("pair.kind", "must be finite, generated or operator; got \"" + kind + "\"");
    }
    resolved["pair"] = std::move(echo);
  }
  if (space) resolved["space"] = space_json(*space);

  ComputeOptions& c = out.compute;
  if (doc.contains("compute")) {
    const json& cj = doc["compute"];
    check_keys(cj, "compute", {"ranges", "levels", "schedule", "budget", "min_per_index", "face_budget", "phases",
                               "angles", "method", "alpha_levels", "eta", "seed"});
    if (cj.contains("ranges")) {
      const json& r = cj["ranges"];
      if (!r.is_array()) fail("compute.ranges", "must be an array");
      c.spatial = c.approx = c.intrinsic = false;
      for (const json& item : r) {
        const std::string name = as_string(item, "compute.ranges");
        if (name == "spatial") c.spatial = true;
        else if (name == "approx") c.approx = true;
        else if (name == "intrinsic") c.intrinsic = true;
        else fail("compute.ranges", "unknown range \"" + name + "\" (spatial, approx, intrinsic)");
      }
    }
    if (cj.contains("levels") && cj.contains("schedule")) fail("compute.schedule", "give either levels or schedule");
    if (cj.contains("levels")) c.schedule = default_schedule(static_cast<int>(as_count(cj["levels"], "compute.levels", 1)));
    if (cj.contains("schedule")) {
      const json& s = cj["schedule"];
      if (!s.is_array() || s.empty()) fail("compute.schedule", "must be a nonempty array");
      c.schedule.clear();
      for (const json& e : s) c.schedule.push_back(as_number(e, "compute.schedule"));
      for (std::size_t k = 0; k < c.schedule.size(); ++k) {
        if (!(c.schedule[k] > 0.0)) fail("compute.schedule", "entries must be positive");
        if (k > 0 && !(c.schedule[k] < c.schedule[k - 1])) fail("compute.schedule", "must be strictly decreasing");
      }
    }
    if (cj.contains("budget")) c.budget = as_count(cj["budget"], "compute.budget", 1);
    if (cj.contains("min_per_index")) c.min_per_index = as_count(cj["min_per_index"], "compute.min_per_index", 1);
    if (cj.contains("face_budget")) c.face_budget = as_count(cj["face_budget"], "compute.face_budget", 1);
    if (cj.contains("phases")) c.phases = as_count(cj["phases"], "compute.phases", 1);
    if (cj.contains("angles")) c.angles = static_cast<int>(as_count(cj["angles"], "compute.angles", 8));
    if (cj.contains("method")) {
      try {
        c.method = intrinsic_method_from_string(as_string(cj["method"], "compute.method"));
      } catch (const InputError& e) {
        fail("compute.method", e.what());
      }
    }
    if (cj.contains("alpha_levels")) c.alpha_levels = static_cast<int>(as_count(cj["alpha_levels"], "compute.alpha_levels", 1));
    if (cj.contains("eta")) {
      c.eta = as_number(cj["eta"], "compute.eta");
      if (!(c.eta >= 0.0)) fail("compute.eta", "must be nonnegative");
    }
    if (cj.contains("seed")) c.seed = as_seed(cj["seed"], "compute.seed");
  }
  if (out.pair && out.pair->is_generated() && c.method == IntrinsicMethod::States)
    fail("compute.method", "the state method needs a finite index set");
  {
    json ranges = json::array();
    if (c.spatial) ranges.push_back("spatial");
    if (c.approx) ranges.push_back("approx");
    if (c.intrinsic) ranges.push_back("intrinsic");
    const double eta = c.eta >= 0.0 ? c.eta : (out.pair ? 1e-3 * std::max(out.pair->f_sup, 1e-12) : -1.0);
    resolved["compute"] = {{"ranges", ranges},     {"schedule", c.schedule},
                           {"budget", c.budget},   {"min_per_index", c.min_per_index},
                           {"face_budget", c.face_budget}, {"phases", c.phases},
                           {"angles", space && !space->is_complex() ? 2 : c.angles},
                           {"method", to_string(c.method)}, {"alpha_levels", c.alpha_levels},
                           {"eta", eta},           {"seed", c.seed}};
  }

  VerifyOptions& v = out.verify;
  if (doc.contains("verify")) {
    const json& vj = doc["verify"];
    check_keys(vj, "verify", {"suite", "count", "tol", "cross_tol", "hilbert_tol", "levels", "budget", "face_budget",
                              "angles", "eta", "phases", "seed"});
    if (vj.contains("suite")) {
      v.suite = as_string(vj["suite"], "verify.suite");
      if (v.suite != "main" && v.suite != "compact" && v.suite != "smooth")
        fail("verify.suite", "must be main, compact or smooth");
    }
    SuiteSettings& s = v.settings;
    if (vj.contains("count")) v.count = as_count(vj["count"], "verify.count", 1);
    auto positive = [&](const char* key, double& target) {
      if (!vj.contains(key)) return;
      target = as_number(vj[key], std::string("verify.") + key);
      if (!(target > 0.0)) fail(std::string("verify.") + key, "must be positive");
    };
    positive("tol", s.tol);
    positive("cross_tol", s.cross_tol);
    positive("hilbert_tol", s.hilbert_tol);
    if (vj.contains("eta")) {
      s.eta = as_number(vj["eta"], "verify.eta");
      if (!(s.eta >= 0.0)) fail("verify.eta", "must be nonnegative");
    }
    if (vj.contains("levels")) s.levels = static_cast<int>(as_count(vj["levels"], "verify.levels", 1));
    if (vj.contains("budget")) s.budget = as_count(vj["budget"], "verify.budget", 1);
    if (vj.contains("face_budget")) s.face_budget = as_count(vj["face_budget"], "verify.face_budget", 1);
    if (vj.contains("angles")) s.angles = static_cast<int>(as_count(vj["angles"], "verify.angles", 8));
    if (vj.contains("phases")) s.phases = as_count(vj["phases"], "verify.phases", 1);
    if (vj.contains("seed")) s.seed = as_seed(vj["seed"], "verify.seed");
  }
  resolved["verify"] = {{"suite", v.suite}, {"count", v.count}, {"settings", v.settings.to_json()}};
  out.resolved = std::move(resolved);
  return out;
}

ProblemFile parse_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open problem file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str());
}

}  // namespace numrange
