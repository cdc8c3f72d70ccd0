#include "numrange/cli.hpp"

#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "numrange/hilbert.hpp"
#include "numrange/io.hpp"
#include "numrange/problem.hpp"
#include "numrange/verify.hpp"

namespace numrange {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory \"" + dir + "\"");
  return fs::path(dir);
}

int compute(const std::string& problem_path, const std::string& out_dir, std::ostream& out) {
  const ProblemFile problem = parse_problem(problem_path);
  if (!problem.pair) throw InputError("pair: missing (compute needs a pair)");
  const IndexedPair& pair = *problem.pair;
  const ComputeOptions& c = problem.compute;
  const fs::path dir = prepare_dir(out_dir);
  write_text((dir / "problem.json").string(), problem.resolved.dump(2) + "\n");

  json summary;
  summary["schema_version"] = kReportSchemaVersion;
  summary["index_size"] = pair.size();
  PlotLayers layers;
  if (c.spatial) {
    const RangeCloud w = spatial_range(pair, c.face_budget, c.seed, c.phases);
    write_text((dir / "spatial.csv").string(), cloud_csv(w, pair));
    summary["spatial_size"] = w.size();
    layers.spatial = w.values();
  }
  if (c.approx) {
    ApproxConfig ac;
    ac.schedule = c.schedule;
    ac.eta = c.eta;
    ac.slice.budget = c.budget;
    ac.slice.min_per_index = c.min_per_index;
    ac.slice.phases = c.phases;
    ac.slice.face_budget = c.face_budget;
    ac.slice.seed = c.seed;
    const RangeCloud wt = approx_spatial_range(pair, ac);
    write_text((dir / "approx.csv").string(), cloud_csv(wt, pair));
    summary["approx_size"] = wt.size();
    summary["effective_schedule"] = effective_schedule(pair, c.schedule);
    layers.approx = wt.values();
  }
  if (c.intrinsic) {
    const std::vector<double> angles = angle_grid(pair.space.field, c.angles);
    NormDerivConfig nd;
    nd.alpha_levels = c.alpha_levels;
    const IntrinsicRange v = intrinsic_range(pair, angles, c.method, nd);
    write_text((dir / "intrinsic.csv").string(), polygon_csv(v.polygon.polygon));
    write_text((dir / "intrinsic_support.csv").string(), support_csv(v.polygon));
    if (v.normderiv && v.states) {
      write_text((dir / "intrinsic_states.csv").string(), polygon_csv(v.states->polygon));
      summary["cross_gap"] = v.cross_gap;
    }
    if (v.states) summary["states_converged"] = v.states_converged;
    if (v.normderiv) summary["normderiv_monotone"] = v.normderiv_monotone;
    layers.intrinsic = v.polygon.polygon;
    if (problem.operator_matrix) {
      const SupportPolygon fov = fov_polygon_hilbert(*problem.operator_matrix, angles);
      write_text((dir / "fov.csv").string(), polygon_csv(fov.polygon));
      summary["hilbert_gap"] = hausdorff(v.polygon.polygon, fov.polygon);
    }
  }
  write_text((dir / "summary.json").string(), summary.dump(2) + "\n");
  write_text((dir / "plot.svg").string(), render_svg(layers));
  out << summary.dump() << "\n";
  return kExitPass;
}

int finish(const VerificationReport& report, const fs::path& dir, std::ostream& out) {
  write_text((dir / "report.json").string(), report.to_json().dump(2) + "\n");
  std::size_t passed = 0;
  for (const InstanceReport& r : report.instances) passed += r.pass() ? 1 : 0;
  out << report.suite << ": " << (report.pass() ? "pass" : "FAIL") << " (" << passed << "/"
      << report.instances.size() << " instances)\n";
  return report.pass() ? kExitPass : kExitFail;
}

int verify(const std::string& suite, const std::string& config, std::optional<std::uint64_t> seed,
           const std::string& out_dir, std::ostream& out) {
  if (suite != "main" && suite != "compact" && suite != "smooth")
    throw InputError("--suite must be main, compact or smooth");
  VerifyOptions options;
  std::vector<SuiteInstance> instances;
  json resolved;
  if (!config.empty()) {
    ProblemFile problem = parse_problem(config);
    options = problem.verify;
    if (problem.pair) instances.push_back({*problem.pair, "file", problem.operator_matrix});
    resolved = problem.resolved;
  }
  options.suite = suite;
  if (seed) options.settings.seed = *seed;
  const std::size_t count = options.count > 0 ? options.count : (suite == "main" ? 50 : 20);
  if (instances.empty()) {
    const std::uint64_t root = options.settings.seed;
    if (suite == "main") instances = random_main_suite(count, root);
    else if (suite == "compact") instances = random_compact_suite(count, root);
    else instances = random_smooth_suite(count, root);
  }
  const fs::path dir = prepare_dir(out_dir);
  resolved["verify"] = {{"suite", suite}, {"count", instances.size()}, {"seed", options.settings.seed},
                        {"settings", options.settings.to_json()}};
  write_text((dir / "problem.json").string(), resolved.dump(2) + "\n");

  VerificationReport report;
  if (suite == "main") report = verify_main(instances, options.settings);
  else if (suite == "compact") report = verify_compact(instances, options.settings);
  else report = verify_smooth(instances, options.settings);
  return finish(report, dir, out);
}

int demo(const std::string& name, std::size_t n, std::uint64_t seed, const std::string& out_dir, std::ostream& out) {
  DemoSettings settings;
  settings.truncations = truncation_schedule(n);
  settings.suite.seed = seed;
  VerificationReport report;
  if (name == "nonattained") report = demo_nonattained(settings);
  else if (name == "nonsmooth") report = demo_nonsmooth(settings);
  else throw InputError("demo must be nonattained or nonsmooth");
  return finish(report, prepare_dir(out_dir), out);
}

PointSet load_cloud(const fs::path& path) {
  PointSet out;
  for (const CsvRow& row : parse_cloud_csv(read_text(path.string()))) out.push_back(row.value);
  return out;
}

int plot(const std::string& in_dir, const std::string& out_file, std::ostream& out) {
  const fs::path dir(in_dir);
  PlotLayers layers;
  bool any = false;
  if (fs::exists(dir / "spatial.csv")) {
    layers.spatial = load_cloud(dir / "spatial.csv");
    any = true;
  }
  if (fs::exists(dir / "approx.csv")) {
    layers.approx = load_cloud(dir / "approx.csv");
    any = true;
  }
  if (fs::exists(dir / "intrinsic.csv")) {
    const PointSet v = load_cloud(dir / "intrinsic.csv");
    if (!v.empty()) layers.intrinsic = convex_hull(v);
    any = true;
  }
  if (!any) throw InputError("--in: no spatial.csv, approx.csv or intrinsic.csv in \"" + in_dir + "\"");
  write_text(out_file, render_svg(layers));
  out << "wrote " << out_file << "\n";
  return kExitPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical ranges of bounded vector-valued functions"};
  app.require_subcommand(1);

  std::string problem_path, out_dir;
  auto* c_compute = app.add_subcommand("compute", "Spatial, approximated spatial and intrinsic ranges of a pair");
  c_compute->add_option("--problem", problem_path, "Problem JSON file")->required();
  c_compute->add_option("--out", out_dir, "Output directory")->required();

  std::string suite, config;
  std::uint64_t seed = 0;
  auto* c_verify = app.add_subcommand("verify", "Run a verification suite");
  c_verify->add_option("--suite", suite, "main, compact or smooth")->required();
  c_verify->add_option("--config", config, "Problem JSON file with a verify block and optional pair");
  auto* verify_seed = c_verify->add_option("--seed", seed, "Root seed (overrides verify.seed)");
  c_verify->add_option("--out", out_dir, "Output directory")->required();

  std::string demo_name;
  std::size_t n = 1000;
  auto* c_demo = app.add_subcommand("demo", "Generated-family demonstrations");
  c_demo->add_option("name", demo_name, "nonattained or nonsmooth")->required();
  c_demo->add_option("--N", n, "Largest truncation");
  c_demo->add_option("--seed", seed, "Root seed");
  c_demo->add_option("--out", out_dir, "Output directory")->required();

  std::string in_dir, out_file;
  auto* c_plot = app.add_subcommand("plot", "SVG of the clouds and polygon in a compute directory");
  c_plot->add_option("--in", in_dir, "Directory written by compute")->required();
  c_plot->add_option("--out", out_file, "SVG file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    return kExitInput;
  }

  try {
    if (c_compute->parsed()) return compute(problem_path, out_dir, out);
    if (c_verify->parsed())
      return verify(suite, config, verify_seed->count() ? std::optional(seed) : std::nullopt, out_dir, out);
    if (c_demo->parsed()) return demo(demo_name, n, seed, out_dir, out);
    if (c_plot->parsed()) return plot(in_dir, out_file, out);
  } catch (const InputError& e) {
    report_error(err, "input", e.what());
    return kExitInput;
  } catch (const PreconditionError& e) {
    report_error(err, "precondition", e.what());
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace numrange
