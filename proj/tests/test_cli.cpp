#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "numrange/cli.hpp"
#include "numrange/io.hpp"
#include "numrange/problem.hpp"
#include "support.hpp"

using namespace numrange;
using numrange::test::vec;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_problem_text(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

struct Run {
  int status;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("numrange_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const char* kNilpotent = R"({
  "space": {"field": "complex", "p": 2, "dim": 2},
  "pair": {"kind": "operator", "matrix": [[0, 1], [0, 0]], "sampling": {"count": 2000}}
})";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("minimal operator problem gets the documented defaults") {
    const ProblemFile p = parse_problem_text(kNilpotent);
    REQUIRE(p.pair);
    REQUIRE(p.operator_matrix);
    const auto& c = p.resolved["compute"];
    CHECK(c["schedule"].size() == 12);
    CHECK(c["schedule"][0] == 0.5);
    CHECK(c["schedule"][11] == std::ldexp(1.0, -12));
    CHECK(c["angles"] == 64);
    CHECK(c["seed"] == 0);
    CHECK(p.resolved["pair"]["sampling"]["scheme"] == "quasi-random");
  }

  TEST_CASE("p below one is rejected by key") {
    CHECK(error_of(R"({"space": {"field": "real", "p": 0.5, "dim": 2}})") == "space.p: p must be in [1, ∞]");
  }

  TEST_CASE("infinite p is spelled inf") {
    const ProblemFile p = parse_problem_text(R"({"space": {"field": "real", "p": "inf", "dim": 2},
      "pair": {"kind": "finite", "g": [[1, 1]], "f": [[0, 1]]}})");
    CHECK(p.pair->space.p == kInf);
    CHECK(p.resolved["space"]["p"] == "inf");
  }

  TEST_CASE("g below the unit sphere is rejected with the measured sup") {
    const std::string e = error_of(R"({"space": {"field": "real", "p": 2, "dim": 2},
      "pair": {"kind": "finite", "g": [[0.9, 0], [0, 0.9]], "f": [[1, 0], [0, 1]]}})");
    CHECK(e.rfind("pair.g", 0) == 0);
    CHECK(e.find("0.9") != std::string::npos);
  }

  TEST_CASE("syntax errors carry line and column") {
    const std::string e = error_of("{\n  \"space\": {\n    \"p\": 2,,\n  }\n}");
    CHECK(e.find("line 3") != std::string::npos);
    CHECK(e.find("column") != std::string::npos);
  }

  TEST_CASE("unknown keys are rejected") {
    CHECK(error_of(R"({"spaces": {}})") == "spaces: unknown key");
    CHECK(error_of(R"({"space": {"field": "real", "p": 2, "dim": 2, "norm": 3}})") == "space.norm: unknown key");
  }

  TEST_CASE("complex entries need a complex space") {
    const std::string e = error_of(R"({"space": {"field": "real", "p": 2, "dim": 1},
      "pair": {"kind": "finite", "g": [[[1, 0.5]]], "f": [[0]]}})");
    CHECK(e.find("complex") != std::string::npos);
  }

  TEST_CASE("generated problems need no space block") {
    const ProblemFile p = parse_problem_text(R"({"pair": {"kind": "generated", "family": "nonsmooth-corner", "N": 50}})");
    CHECK(p.pair->size() == 50);
    CHECK(p.pair->space.p == kInf);
    CHECK_FALSE(error_of(R"({"space": {"field": "real", "p": 2, "dim": 2},
      "pair": {"kind": "generated", "family": "nonsmooth-corner"}})").empty());
  }

  TEST_CASE("csv rows round trip at full precision") {
    const IndexedPair pair =
        make_finite_pair({Field::Complex, 1, 2.0}, {"a,b", "c\"d"}, {vec({1}), vec({0.5})}, {vec({0.1}), vec({1.0 / 3})});
    RangeCloud cloud;
    cloud.points.push_back({Scalar(0.1, 1.0 / 7), 0, Functional(vec({1})), 0.25});
    cloud.points.push_back({Scalar(1.0 / 3, -1e-300), 1, Functional(vec({1})), 0.0});
    const std::string text = cloud_csv(cloud, pair);
    CHECK(text.rfind("re,im,source_label,stability_eps\n", 0) == 0);
    const auto rows = parse_cloud_csv(text);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].value == cloud.points[0].value);
    CHECK(rows[1].value == cloud.points[1].value);
    CHECK(rows[0].label == "a,b");
    CHECK(rows[1].label == "c\"d");
    CHECK(rows[0].stability_eps == 0.25);
    CHECK_THROWS_AS(parse_cloud_csv("x,y\n1,2\n"), InputError);
  }

  TEST_CASE("empty cloud csv still has its header") {
    const IndexedPair pair = make_finite_pair({Field::Real, 1, 2.0}, {"a"}, {vec({1})}, {vec({0})});
    CHECK(cloud_csv(RangeCloud{}, pair) == "re,im,source_label,stability_eps\n");
  }

  TEST_CASE("compute writes every artifact and a disk-like plot") {
    const fs::path dir = scratch("compute");
    write_text((dir / "problem.json").string(), kNilpotent);
    const Run r = cli({"compute", "--problem", (dir / "problem.json").string(), "--out", (dir / "out").string()});
    CHECK(r.status == kExitPass);
    for (const char* f : {"problem.json", "spatial.csv", "approx.csv", "intrinsic.csv", "intrinsic_support.csv",
                          "summary.json", "plot.svg", "fov.csv"})
      CHECK(fs::exists(dir / "out" / f));
    const auto summary = nlohmann::json::parse(read_text((dir / "out" / "summary.json").string()));
    CHECK(summary["hilbert_gap"].get<double>() <= 2e-2);
    const auto polygon = parse_cloud_csv(read_text((dir / "out" / "intrinsic.csv").string()));
    for (const CsvRow& row : polygon) CHECK(std::abs(row.value) == doctest::Approx(0.5).epsilon(3e-2));
    const std::string svg = read_text((dir / "out" / "plot.svg").string());
    CHECK(svg.find("<polygon") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
  }

  TEST_CASE("plot re-renders a compute directory") {
    const fs::path dir = scratch("plot");
    write_text((dir / "problem.json").string(), R"({"pair": {"kind": "generated", "family": "nonattained", "N": 100}})");
    REQUIRE(cli({"compute", "--problem", (dir / "problem.json").string(), "--out", (dir / "out").string()}).status == 0);
    CHECK(cli({"plot", "--in", (dir / "out").string(), "--out", (dir / "p.svg").string()}).status == kExitPass);
    CHECK(read_text((dir / "p.svg").string()).find("<svg") == 0);
    CHECK(cli({"plot", "--in", (dir / "nothing").string(), "--out", (dir / "q.svg").string()}).status == kExitInput);
  }

  TEST_CASE("verify with the same seed writes byte-identical reports") {
    const fs::path dir = scratch("verify");
    write_text((dir / "config.json").string(), R"({"verify": {"suite": "main", "count": 4}})");
    const auto args = [&](const char* out) {
      return std::vector<std::string>{"verify", "--suite", "main", "--config", (dir / "config.json").string(),
                                      "--seed", "7", "--out", (dir / out).string()};
    };
    CHECK(cli(args("a")).status == kExitPass);
    CHECK(cli(args("b")).status == kExitPass);
    const std::string a = read_text((dir / "a" / "report.json").string());
    CHECK(a == read_text((dir / "b" / "report.json").string()));
    const auto report = nlohmann::json::parse(a);
    CHECK(report["instance_count"] == 4);
    CHECK(report["seed"] == 7);
  }

  TEST_CASE("verify exits with 1 when a threshold is missed") {
    const fs::path dir = scratch("verify_fail");
    write_text((dir / "config.json").string(), R"({"verify": {"count": 2, "tol": 1e-12}})");
    const Run r =
        cli({"verify", "--suite", "main", "--config", (dir / "config.json").string(), "--out", (dir / "o").string()});
    CHECK(r.status == kExitFail);
    CHECK(nlohmann::json::parse(read_text((dir / "o" / "report.json").string()))["pass"] == false);
  }

  TEST_CASE("demo nonsmooth passes with a large gap") {
    const fs::path dir = scratch("demo");
    const Run r = cli({"demo", "nonsmooth", "--N", "1000", "--out", dir.string()});
    CHECK(r.status == kExitPass);
    const auto report = nlohmann::json::parse(read_text((dir / "report.json").string()));
    bool found = false;
    for (const auto& d : report["instances"].back()["discrepancies"])
      if (d["name"] == "gap") found = d["value"].get<double>() >= 0.95;
    CHECK(found);
  }

  TEST_CASE("input errors exit with 2 and a json message") {
    const fs::path dir = scratch("errors");
    write_text((dir / "bad.json").string(), R"({"space": {"field": "real", "p": 0.5, "dim": 2}})");
    Run r = cli({"compute", "--problem", (dir / "bad.json").string(), "--out", (dir / "o").string()});
    CHECK(r.status == kExitInput);
    const auto err = nlohmann::json::parse(r.err);
    CHECK(err["message"] == "space.p: p must be in [1, ∞]");
    CHECK(cli({"compute", "--problem", (dir / "missing.json").string(), "--out", dir.string()}).status == kExitInput);
    CHECK(cli({"verify", "--suite", "nope", "--out", dir.string()}).status == kExitInput);
    CHECK(cli({"demo", "spiral", "--out", dir.string()}).status == kExitInput);
    CHECK(cli({}).status == kExitInput);
    CHECK(cli({"compute"}).status == kExitInput);
    CHECK(cli({"--help"}).status == kExitPass);
  }

  TEST_CASE("smooth suite on an endpoint exponent is an input error") {
    const fs::path dir = scratch("smooth_refuse");
    write_text((dir / "c.json").string(), R"({"space": {"field": "real", "p": 1, "dim": 2},
      "pair": {"kind": "finite", "g": [[1, 0]], "f": [[0, 1]]}})");
    const Run r = cli({"verify", "--suite", "smooth", "--config", (dir / "c.json").string(), "--out", dir.string()});
    CHECK(r.status == kExitInput);
    CHECK(r.err.find("demo nonsmooth") != std::string::npos);
  }
}
