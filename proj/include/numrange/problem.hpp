#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "numrange/intrinsic.hpp"
#include "numrange/ranges.hpp"
#include "numrange/verify.hpp"

namespace numrange {

/// Which clouds and polygons `compute` produces.
struct ComputeOptions {
  bool spatial = true;
  bool approx = true;
  bool intrinsic = true;
  std::vector<double> schedule = default_schedule(12);
  std::size_t budget = 10000;
  std::size_t min_per_index = 8;
  std::size_t face_budget = 64;
  std::size_t phases = 16;
  int angles = 64;
  IntrinsicMethod method = IntrinsicMethod::Both;
  int alpha_levels = 20;
  double eta = -1.0;  // negative: 1e-3 * ‖f‖_inf
  std::uint64_t seed = 0;
};

struct VerifyOptions {
  std::string suite = "main";
  std::size_t count = 0;  // 0: 50 for main, 20 otherwise
  SuiteSettings settings;
};

struct ProblemFile {
  std::optional<IndexedPair> pair;
  std::optional<Matrix> operator_matrix;  // square operators on complex ℓ_2 get the Hilbert check
  ComputeOptions compute;
  VerifyOptions verify;
  /// The input with every default filled in.
  nlohmann::json resolved;
};

/// Parses a problem document. Syntax errors carry line and column; semantic
/// errors name the offending key, e.g. "space.p: p must be in [1, ∞]".
ProblemFile parse_problem_text(const std::string& text);
ProblemFile parse_problem(const std::string& path);

}  // namespace numrange
