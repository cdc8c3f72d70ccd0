#include "numrange/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "numrange/hilbert.hpp"
#include "numrange/intrinsic.hpp"
#include "numrange/ranges.hpp"

namespace numrange {

using nlohmann::json;

namespace {

json number_or_inf(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : "-inf";
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

json pair_descriptor(const SuiteInstance& inst) {
  const IndexedPair& pair = inst.pair;
  json d;
  d["origin"] = inst.origin;
  d["space"] = {{"field", to_string(pair.space.field)},
                {"dim", pair.space.dim},
                {"p", number_or_inf(pair.space.p)}};
  d["index_size"] = pair.size();
  if (pair.is_generated()) {
    d["family"] = to_string(pair.index.family);
    d["truncation"] = pair.index.truncation;
  }
  d["f_sup"] = pair.f_sup;
  if (!pair.is_generated() && pair.size() <= 32) {
    json g = json::array(), f = json::array();
    for (std::size_t t = 0; t < pair.size(); ++t) {
      g.push_back(vector_json(pair.g[t]));
      f.push_back(vector_json(pair.f[t]));
    }
    d["g"] = std::move(g);
    d["f"] = std::move(f);
  }
  return d;
}

SuiteSettings with_defaults(SuiteSettings s, double tol, int levels, std::size_t face_budget) {
  if (s.tol < 0.0) s.tol = tol;
  if (s.levels < 0) s.levels = levels;
  if (s.face_budget == 0) s.face_budget = face_budget;
  return s;
}

// With match_faces, every near-norming pool samples non-singleton duality faces
// as densely as the spatial cloud does.
ApproxConfig approx_config(const SuiteSettings& s, std::uint64_t seed, bool match_faces = false) {
  ApproxConfig ac;
  if (match_faces) {
    ac.slice.face_budget = s.face_budget;
  }
  ac.schedule = default_schedule(s.levels);
  ac.eta = s.eta;
  ac.slice.budget = s.budget;
  ac.slice.seed = seed;
  ac.slice.phases = s.phases;
  return ac;
}

std::uint64_t instance_seed(std::uint64_t root, std::size_t i, std::uint64_t stream) {
  return split_seed(split_seed(root, i), stream);
}

ConvexPolygon point_polygon(Scalar z) { return ConvexPolygon{{z}}; }

ConvexPolygon unit_segment() { return ConvexPolygon{{Scalar(0.0), Scalar(1.0)}}; }

// Distance used when a set that should be nonempty came out empty.
double empty_penalty(const IndexedPair& pair) { return pair.f_sup + 1.0; }

Vector random_vector(std::mt19937_64& rng, int dim, bool cplx) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(dim);
  do {
    for (int i = 0; i < dim; ++i) v(i) = Scalar(u(rng), cplx ? u(rng) : 0.0);
  } while (v.cwiseAbs().maxCoeff() < 1e-3);
  return v;
}

}  // namespace

bool InstanceReport::pass() const {
  return std::all_of(discrepancies.begin(), discrepancies.end(), [](const Discrepancy& d) { return d.pass(); });
}

bool VerificationReport::pass() const {
  return std::all_of(instances.begin(), instances.end(), [](const InstanceReport& r) { return r.pass(); }) &&
         std::all_of(aggregate.begin(), aggregate.end(), [](const Discrepancy& d) { return d.pass(); });
}

json SuiteSettings::to_json() const {
  return {{"tol", tol},       {"cross_tol", cross_tol}, {"hilbert_tol", hilbert_tol},
          {"levels", levels}, {"budget", budget},       {"face_budget", face_budget},
          {"angles", angles}, {"eta", eta},             {"phases", phases},
          {"seed", seed}};
}

json VerificationReport::to_json() const {
  auto discrepancy_json = [](const Discrepancy& d) {
    return json{{"name", d.name},
                {"value", d.value},
                {"threshold", d.threshold},
                {"relation", d.at_least ? ">=" : "<="},
                {"pass", d.pass()}};
  };
  json out;
  out["schema_version"] = kReportSchemaVersion;
  out["suite"] = suite;
  out["seed"] = seed;
  out["settings"] = settings;
  json thresholds = json::object();
  json list = json::array();
  for (const InstanceReport& r : instances) {
    json item;
    item["index"] = r.index;
    item["descriptor"] = r.descriptor;
    item["discrepancies"] = json::array();
    for (const Discrepancy& d : r.discrepancies) {
      item["discrepancies"].push_back(discrepancy_json(d));
      thresholds[d.name] = d.threshold;
    }
    item["details"] = r.details;
    item["pass"] = r.pass();
    list.push_back(std::move(item));
  }
  out["thresholds"] = std::move(thresholds);
  out["instances"] = std::move(list);
  out["aggregate"] = json::array();
  for (const Discrepancy& d : aggregate) out["aggregate"].push_back(discrepancy_json(d));
  out["instance_count"] = instances.size();
  out["failed_instances"] = std::count_if(instances.begin(), instances.end(),
                                          [](const InstanceReport& r) { return !r.pass(); });
  out["pass"] = pass();
  return out;
}

IndexedPair random_pair(const RandomPairOptions& options, std::uint64_t seed) {
  if (options.exponents.empty() || options.max_dim < 1 || options.min_index < 1 ||
      options.max_index < options.min_index)
    throw InputError("invalid random pair options");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  Field field = options.field ? *options.field : (pick(2) == 0 ? Field::Real : Field::Complex);
  const double p = options.exponents[pick(options.exponents.size())];
  const int dim = 1 + static_cast<int>(pick(static_cast<std::size_t>(options.max_dim)));
  const std::size_t n = options.min_index + pick(options.max_index - options.min_index + 1);
  const SpaceSpec space(field, dim, p);
  const bool cplx = space.is_complex();

  std::vector<bool> on_sphere(n, true);
  if (!options.all_unit) {
    bool any = false;
    for (std::size_t t = 0; t < n; ++t) any |= (on_sphere[t] = unit(rng) < 0.5);
    if (!any) on_sphere[pick(n)] = true;
  }

  std::vector<std::string> labels;
  std::vector<Vector> g, f;
  for (std::size_t t = 0; t < n; ++t) {
    Vector v = random_vector(rng, dim, cplx);
    // A face with k peaks (p = inf) has dimension k - 1; one with k free
    // coordinates (p = 1) has dimension k, or 2k over C.
    const int per_free = cplx ? 2 : 1;
    const int max_peaks = std::min(dim, options.max_face_dim + 1);
    const int max_zeros = std::min(dim - 1, options.max_face_dim / per_free);
    const bool corner = (p == 1.0 || p == kInf) && unit(rng) < options.corner_probability &&
                        (p == kInf ? max_peaks >= 2 : max_zeros >= 1);
    if (corner && p == kInf) {
      // At least two peak coordinates, the rest strictly inside.
      const int peaks = 2 + static_cast<int>(pick(static_cast<std::size_t>(max_peaks - 1)));
      for (int i = 0; i < dim; ++i) v(i) = i < peaks ? sgn(v(i)) : 0.8 * v(i);
    } else if (corner && p == 1.0) {
      const int zeros = 1 + static_cast<int>(pick(static_cast<std::size_t>(max_zeros)));
      for (int i = dim - zeros; i < dim; ++i) v(i) = 0.0;
      if (v.cwiseAbs().maxCoeff() == 0.0) v(0) = 1.0;
    }
    v /= norm(space, v);
    if (!on_sphere[t]) v *= 0.2 + 0.7 * unit(rng);
    Vector w = random_vector(rng, dim, cplx);
    w *= unit(rng) / norm(space, w);
    labels.push_back("t" + std::to_string(t));
    g.push_back(std::move(v));
    f.push_back(std::move(w));
  }
  return make_finite_pair(space, std::move(labels), std::move(g), std::move(f));
}

std::vector<SuiteInstance> random_main_suite(std::size_t count, std::uint64_t seed) {
  const std::vector<double> exponents = {1.0, 1.5, 2.0, 4.0, kInf};
  std::vector<SuiteInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    RandomPairOptions opt;
    opt.field = i % 2 == 0 ? Field::Real : Field::Complex;
    opt.exponents = {exponents[(i / 2) % exponents.size()]};
    out.push_back({random_pair(opt, split_seed(seed, i)), "random", std::nullopt});
  }
  return out;
}

std::vector<SuiteInstance> random_compact_suite(std::size_t count, std::uint64_t seed) {
  const std::vector<double> exponents = {1.0, 1.5, 2.0, 4.0, kInf};
  std::vector<SuiteInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    RandomPairOptions opt;
    opt.all_unit = true;
    opt.max_index = 10;
    opt.max_face_dim = 1;
    opt.field = i % 2 == 0 ? Field::Real : Field::Complex;
    opt.exponents = {exponents[(i / 2) % exponents.size()]};
    out.push_back({random_pair(opt, split_seed(seed, i)), "random", std::nullopt});
  }
  return out;
}

std::vector<SuiteInstance> random_smooth_suite(std::size_t count, std::uint64_t seed) {
  const std::vector<double> exponents = {1.5, 2.0, 4.0};
  std::vector<SuiteInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    RandomPairOptions opt;
    opt.all_unit = true;
    opt.field = i % 2 == 0 ? Field::Real : Field::Complex;
    opt.exponents = {exponents[(i / 2) % exponents.size()]};
    out.push_back({random_pair(opt, split_seed(seed, i)), "random", std::nullopt});
  }
  return out;
}

SuiteInstance hilbert_instance(const Matrix& a, std::size_t samples, std::uint64_t seed) {
  if (a.rows() != a.cols() || a.rows() == 0) throw InputError("hilbert instance needs a square matrix");
  const SpaceSpec space(Field::Complex, static_cast<int>(a.rows()), 2.0);
  OperatorSpec op{a, static_cast<int>(a.cols())};
  OperatorSampling sampling{SphereScheme::QuasiRandom, samples, seed};
  return {from_operator(op, space, sampling), "operator", a};
}

VerificationReport verify_main(const std::vector<SuiteInstance>& instances, SuiteSettings settings) {
  settings = with_defaults(settings, 5e-2, 12, 64);
  VerificationReport report;
  report.suite = "main";
  report.seed = settings.seed;
  report.settings = settings.to_json();

  for (std::size_t i = 0; i < instances.size(); ++i) {
    const SuiteInstance& inst = instances[i];
    const IndexedPair& pair = inst.pair;
    InstanceReport r;
    r.index = i;
    r.descriptor = pair_descriptor(inst);
    const std::uint64_t seed = instance_seed(settings.seed, i, 0);
    r.descriptor["seed"] = seed;

    const RangeCloud cloud = approx_spatial_range(pair, approx_config(settings, seed));
    const std::vector<double> angles = angle_grid(pair.space.field, settings.angles);
    const IntrinsicRange v = intrinsic_range(pair, angles, IntrinsicMethod::Both);
    r.details["approx_cloud_size"] = cloud.size();
    r.details["states_converged"] = v.states_converged;
    r.details["normderiv_monotone"] = v.normderiv_monotone;

    auto compare = [&](const std::string& name, const SupportPolygon& poly) {
      if (cloud.empty()) {
        r.discrepancies.push_back({"hausdorff_hull_" + name, empty_penalty(pair), settings.tol});
        return;
      }
      const ConvexPolygon hull = convex_hull(cloud.values());
      const double hull_out = directed_hausdorff(hull, poly.polygon);
      const double v_out = directed_hausdorff(poly.polygon, hull);
      r.discrepancies.push_back({"hausdorff_hull_" + name, std::max(hull_out, v_out), settings.tol});
      // Positive: the hull of W̃ is too small; negative: the V polygon is too small.
      r.details["signed_gap_" + name] = v_out - hull_out;
      r.details["hull_outside_" + name] = hull_out;
      r.details[name + "_outside_hull"] = v_out;
    };
    compare("normderiv", *v.normderiv);
    if (v.states) {
      compare("states", *v.states);
      r.discrepancies.push_back({"cross_gap", v.cross_gap, settings.cross_tol});
    }
    if (inst.hilbert) {
      const SupportPolygon fov = fov_polygon_hilbert(*inst.hilbert, angles);
      r.discrepancies.push_back({"hilbert_gap_intrinsic", hausdorff(v.polygon.polygon, fov.polygon),
                                 settings.hilbert_tol});
      const double hull_gap =
          cloud.empty() ? empty_penalty(pair) : hausdorff(convex_hull(cloud.values()), fov.polygon);
      r.discrepancies.push_back({"hilbert_gap_hull", hull_gap, settings.hilbert_tol});
      const RangeCloud w = spatial_range(pair, settings.face_budget, instance_seed(settings.seed, i, 1),
                                         settings.phases);
      const PointSet wv = w.values();
      r.discrepancies.push_back(
          {"spatial_outside_fov", wv.empty() ? 0.0 : directed_hausdorff(wv, fov.polygon), 1e-6});
    }
    report.instances.push_back(std::move(r));
  }
  return report;
}

namespace {

// Smallest K >= 12 with sqrt(2 * 2^-K) * ‖f‖_inf <= tol / 2: the finest slice
// sits about that far from W on a round dual.
int smooth_levels(double f_sup, double tol) {
  int k = 12;
  while (k < 60 && std::sqrt(2.0 * std::ldexp(1.0, -k)) * f_sup > 0.5 * tol) ++k;
  return k;
}

VerificationReport spatial_vs_approx(const std::string& suite,
                                     const std::vector<SuiteInstance>& instances,
                                     const SuiteSettings& settings, bool match_faces,
                                     bool auto_levels = false) {
  VerificationReport report;
  report.suite = suite;
  report.seed = settings.seed;
  report.settings = settings.to_json();
  if (auto_levels) report.settings["levels"] = "auto";
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const SuiteInstance& inst = instances[i];
    InstanceReport r;
    r.index = i;
    r.descriptor = pair_descriptor(inst);
    const std::uint64_t seed = instance_seed(settings.seed, i, 0);
    r.descriptor["seed"] = seed;
    SuiteSettings local = settings;
    if (auto_levels) {
      local.levels = smooth_levels(inst.pair.f_sup, settings.tol);
      r.details["levels"] = local.levels;
    }
    const RangeCloud w = spatial_range(inst.pair, settings.face_budget, seed, settings.phases);
    const RangeCloud wt = approx_spatial_range(inst.pair, approx_config(local, seed, match_faces));
    r.details["spatial_size"] = w.size();
    r.details["approx_size"] = wt.size();
    double d = empty_penalty(inst.pair);
    if (!w.empty() && !wt.empty()) {
      const PointSet a = w.values(), b = wt.values();
      const double w_out = directed_hausdorff(a, b), wt_out = directed_hausdorff(b, a);
      r.details["spatial_outside_approx"] = w_out;
      r.details["approx_outside_spatial"] = wt_out;
      d = std::max(w_out, wt_out);
    }
    r.discrepancies.push_back({"hausdorff_spatial_approx", d, settings.tol});
    report.instances.push_back(std::move(r));
  }
  return report;
}

}  // namespace

VerificationReport verify_compact(const std::vector<SuiteInstance>& instances, SuiteSettings settings) {
  settings = with_defaults(settings, 1e-3, 28, 4096);
  for (const SuiteInstance& inst : instances) {
    if (inst.pair.is_generated()) throw InputError("compact suite needs finite index sets");
    for (const Vector& g : inst.pair.g)
      if (std::abs(norm(inst.pair.space, g) - 1.0) > kTolAttain)
        throw PreconditionError("compact suite needs every |g(t)| = 1");
  }
  return spatial_vs_approx("compact", instances, settings, true);
}

VerificationReport verify_smooth(const std::vector<SuiteInstance>& instances, SuiteSettings settings) {
  const bool auto_levels = settings.levels < 0;
  settings = with_defaults(settings, 5e-2, 12, 64);
  for (const SuiteInstance& inst : instances)
    if (!inst.pair.space.is_smooth())
      throw InputError("smooth suite needs 1 < p < inf; for p in {1, inf} run `demo nonsmooth`");
  return spatial_vs_approx("smooth", instances, settings, false, auto_levels);
}

std::vector<std::size_t> truncation_schedule(std::size_t n) {
  if (n < 2) throw InputError("truncation N must be at least 2");
  std::vector<std::size_t> out;
  for (std::size_t m : {n / 100, n / 10})
    if (m >= 2 && (out.empty() || m > out.back())) out.push_back(m);
  if (out.empty() || n > out.back()) out.push_back(n);
  return out;
}

namespace {

void check_truncations(const std::vector<std::size_t>& ns) {
  if (ns.empty()) throw InputError("truncation schedule must be nonempty");
  for (std::size_t k = 0; k < ns.size(); ++k) {
    if (ns[k] < 2) throw InputError("truncations must be at least 2");
    if (k > 0 && ns[k] <= ns[k - 1]) throw InputError("truncations must be increasing");
  }
}

// d_{k+1} <= d_k + slack along the truncation schedule.
Discrepancy monotone_check(const std::string& name, const std::vector<double>& d, double slack) {
  double worst = -kInf;
  for (std::size_t k = 1; k < d.size(); ++k) worst = std::max(worst, d[k] - d[k - 1]);
  if (d.size() < 2) worst = 0.0;
  return {name, worst, slack};
}

}  // namespace

VerificationReport demo_nonattained(DemoSettings settings) {
  check_truncations(settings.truncations);
  if (settings.tol < 0.0) settings.tol = 2e-2;
  SuiteSettings s = with_defaults(settings.suite, settings.tol, 12, 64);
  VerificationReport report;
  report.suite = "demo-nonattained";
  report.seed = s.seed;
  report.settings = s.to_json();
  report.settings["truncations"] = settings.truncations;
  report.settings["v"] = vector_json(settings.v);

  std::vector<double> d_approx, d_intrinsic;
  for (std::size_t k = 0; k < settings.truncations.size(); ++k) {
    const std::size_t n = settings.truncations[k];
    const IndexedPair pair = make_generated_pair({Family::Nonattained, n, settings.v});
    const Scalar target = settings.v(0);
    InstanceReport r;
    r.index = k;
    r.descriptor = pair_descriptor({pair, "generated", std::nullopt});
    const std::uint64_t seed = instance_seed(s.seed, k, 0);
    r.descriptor["seed"] = seed;
    r.descriptor["schedule"] = effective_schedule(pair, default_schedule(s.levels));

    const RangeCloud w = spatial_range(pair, s.face_budget, seed, s.phases);
    const RangeCloud wt = approx_spatial_range(pair, approx_config(s, seed));
    const IntrinsicRange v =
        intrinsic_range(pair, angle_grid(pair.space.field, s.angles), IntrinsicMethod::NormDerivative);
    const double da = wt.empty() ? empty_penalty(pair) : hausdorff(wt.values(), point_polygon(target));
    const double dv = hausdorff(v.polygon.polygon, point_polygon(target));
    d_approx.push_back(da);
    d_intrinsic.push_back(dv);

    r.discrepancies.push_back({"spatial_size", static_cast<double>(w.size()), 0.0});
    r.details["approx_size"] = wt.size();
    r.details["approx_to_v1"] = da;
    r.details["intrinsic_to_v1"] = dv;
    if (k + 1 == settings.truncations.size()) {
      r.discrepancies.push_back({"approx_to_v1", da, settings.tol});
      r.discrepancies.push_back({"intrinsic_to_v1", dv, settings.tol});
    }
    report.instances.push_back(std::move(r));
  }
  report.aggregate.push_back(monotone_check("approx_to_v1_increase", d_approx, 1e-9));
  report.aggregate.push_back(monotone_check("intrinsic_to_v1_increase", d_intrinsic, 1e-9));
  return report;
}

VerificationReport demo_nonsmooth(DemoSettings settings) {
  check_truncations(settings.truncations);
  if (settings.tol < 0.0) settings.tol = 5e-2;
  SuiteSettings s = with_defaults(settings.suite, settings.tol, 12, 64);
  const double v_tol = std::min(settings.tol, 1e-2);
  VerificationReport report;
  report.suite = "demo-nonsmooth";
  report.seed = s.seed;
  report.settings = s.to_json();
  report.settings["truncations"] = settings.truncations;

  std::vector<double> coverage;
  const ConvexPolygon segment = unit_segment();
  for (std::size_t k = 0; k < settings.truncations.size(); ++k) {
    const std::size_t n = settings.truncations[k];
    const IndexedPair pair = make_generated_pair({Family::NonsmoothCorner, n, Vector::Zero(2)});
    InstanceReport r;
    r.index = k;
    r.descriptor = pair_descriptor({pair, "generated", std::nullopt});
    const std::uint64_t seed = instance_seed(s.seed, k, 0);
    r.descriptor["seed"] = seed;
    r.descriptor["schedule"] = effective_schedule(pair, default_schedule(s.levels));

    const RangeCloud w = spatial_range(pair, s.face_budget, seed, s.phases);
    const RangeCloud wt = approx_spatial_range(pair, approx_config(s, seed));
    const IntrinsicRange v =
        intrinsic_range(pair, angle_grid(pair.space.field, s.angles), IntrinsicMethod::NormDerivative);
    const PointSet wv = w.values();
    const PointSet wtv = wt.values();
    const double penalty = empty_penalty(pair);
    const double spatial_off_zero = wv.empty() ? penalty : directed_hausdorff(wv, point_polygon(0.0));
    const double cover = wtv.empty() ? penalty : directed_hausdorff(segment, wtv);
    const double gap = wv.empty() || wtv.empty() ? 0.0 : hausdorff(wv, wtv);
    const double v_gap = hausdorff(v.polygon.polygon, segment);
    const double hull_gap = wtv.empty() ? penalty : hausdorff(convex_hull(wtv), v.polygon.polygon);
    coverage.push_back(cover);

    r.details["spatial_size"] = w.size();
    r.details["approx_size"] = wt.size();
    r.details["support_0"] = v.polygon.support[0];
    r.details["support_pi"] = v.polygon.support[1];
    r.details["coverage"] = cover;
    r.details["gap"] = gap;
    r.details["intrinsic_to_segment"] = v_gap;
    r.details["hull_to_intrinsic"] = hull_gap;
    r.discrepancies.push_back({"spatial_outside_zero", spatial_off_zero, 1e-6});
    if (k + 1 == settings.truncations.size()) {
      r.discrepancies.push_back({"coverage", cover, settings.tol});
      r.discrepancies.push_back({"gap", gap, 1.0 - settings.tol, true});
      r.discrepancies.push_back({"intrinsic_to_segment", v_gap, v_tol});
      r.discrepancies.push_back({"hull_to_intrinsic", hull_gap, settings.tol});
    }
    report.instances.push_back(std::move(r));
  }
  report.aggregate.push_back(monotone_check("coverage_increase", coverage, 1e-2));
  return report;
}

}  // namespace numrange
