#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "numrange/indexed_pair.hpp"

namespace numrange {

inline constexpr int kReportSchemaVersion = 1;

/// One measured quantity and the bound it is held to.
struct Discrepancy {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool at_least = false;  // value >= threshold instead of value <= threshold

  bool pass() const { return at_least ? value >= threshold : value <= threshold; }
};

struct InstanceReport {
  std::size_t index = 0;
  nlohmann::json descriptor;
  std::vector<Discrepancy> discrepancies;
  /// Extra measurements that carry no verdict (signed distances, sizes).
  nlohmann::json details = nlohmann::json::object();

  bool pass() const;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  nlohmann::json settings = nlohmann::json::object();
  std::vector<InstanceReport> instances;
  /// Suite-level checks that span instances (monotone improvement over N).
  std::vector<Discrepancy> aggregate;

  bool pass() const;
  nlohmann::json to_json() const;
};

/// Knobs shared by the suites. Fields left at their sentinel take the
/// per-suite defaults listed in each suite function.
struct SuiteSettings {
  double tol = -1.0;
  double cross_tol = 2e-2;
  double hilbert_tol = 2e-2;
  int levels = -1;  // ε_k = 2^-k, k = 1..levels
  std::size_t budget = 10000;
  std::size_t face_budget = 0;
  int angles = 64;
  double eta = -1.0;
  std::size_t phases = 16;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

struct SuiteInstance {
  IndexedPair pair;
  std::string origin;             // "random", "operator", "file"
  std::optional<Matrix> hilbert;  // square operator for the field-of-values check
};

struct RandomPairOptions {
  std::vector<double> exponents = {1.0, 1.5, 2.0, 4.0, kInf};
  int max_dim = 3;
  std::size_t min_index = 2;
  std::size_t max_index = 20;
  /// Every g(t) on the unit sphere (otherwise only a random nonempty subset).
  bool all_unit = false;
  /// Chance that a unit g(t) is put on a corner of the ℓ_1 or ℓ_inf sphere.
  double corner_probability = 0.3;
  /// Largest real dimension of a duality face at a corner (segments: 1).
  int max_face_dim = 6;
  std::optional<Field> field;
};

/// Random finite pair with sup_t ‖g(t)‖ = 1 and ‖f‖_inf <= 1, a pure function of the seed.
IndexedPair random_pair(const RandomPairOptions& options, std::uint64_t seed);

/// Instances of the randomized main suite: `count` random pairs over all
/// exponents and both fields.
std::vector<SuiteInstance> random_main_suite(std::size_t count, std::uint64_t seed);
/// Random pairs with g(Γ) on the unit sphere and duality faces of dimension <= 1.
std::vector<SuiteInstance> random_compact_suite(std::size_t count, std::uint64_t seed);
/// Random attained pairs over p in {1.5, 2, 4}.
std::vector<SuiteInstance> random_smooth_suite(std::size_t count, std::uint64_t seed);

/// The operator pair of a square matrix on complex ℓ_2^n, with its
/// field-of-values oracle attached.
SuiteInstance hilbert_instance(const Matrix& a, std::size_t samples, std::uint64_t seed);

/// Hausdorff(conv W̃, V) per instance, V by both methods, plus the method
/// cross-check and, where attached, the field-of-values gap.
/// Defaults: tol 5e-2, levels 12, face budget 64.
VerificationReport verify_main(const std::vector<SuiteInstance>& instances, SuiteSettings settings);

/// Hausdorff(W, W̃) for pairs with g(Γ) on the unit sphere. The schedule runs
/// deep so that near-norming functionals settle onto the duality faces.
/// Defaults: tol 1e-3, levels 28, face budget 4096.
VerificationReport verify_compact(const std::vector<SuiteInstance>& instances, SuiteSettings settings);

/// Hausdorff(W, W̃) for smooth exponents. Throws InputError for p in {1, inf}.
/// Defaults: tol 5e-2, face budget 64, and per instance the smallest K >= 12
/// with sqrt(2 * 2^-K) ‖f‖_inf <= tol / 2.
VerificationReport verify_smooth(const std::vector<SuiteInstance>& instances, SuiteSettings settings);

struct DemoSettings {
  std::vector<std::size_t> truncations = {10, 100, 1000};
  Vector v = (Vector(2) << 0.3, 0.4).finished();  // nonattained only
  double tol = -1.0;
  SuiteSettings suite;
};

/// Truncations N/100, N/10, N (those >= 2).
std::vector<std::size_t> truncation_schedule(std::size_t n);

/// W empty at every N, W̃ and V converge to {v_1}, improving with N.
/// Default tol 2e-2.
VerificationReport demo_nonattained(DemoSettings settings);

/// W ⊆ {0}, W̃ covers [0, 1], Hausdorff(W, W̃) >= 1 - tol, V = [0, 1] and
/// conv W̃ = V. Default tol 5e-2 (1e-2 for V).
VerificationReport demo_nonsmooth(DemoSettings settings);

}  // namespace numrange
