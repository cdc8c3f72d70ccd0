#pragma once

#include <optional>
#include <string>
#include <vector>

#include "numrange/geometry.hpp"
#include "numrange/harris.hpp"
#include "numrange/indexed_pair.hpp"

namespace numrange {

/// A compact convex set given by support values on an angle grid; the polygon
/// is the intersection of the half-planes Re(e^{-i phi_j} z) <= s(phi_j).
struct SupportPolygon {
  std::vector<double> angles;
  std::vector<double> support;
  ConvexPolygon polygon;
};

/// Real fields: {0, pi}. Complex fields: M equispaced angles, M >= 8.
std::vector<double> angle_grid(Field field, int count = 64);

/// Builds the polygon. With angles exactly {0, pi} the set is the real
/// interval [-s(pi), s(0)].
SupportPolygon support_polygon(std::vector<double> angles, std::vector<double> support);

struct NormDerivConfig {
  int alpha_levels = 20;  // α_j = 2^-j, j = 1..alpha_levels
  bool richardson = false;
};

struct NormDerivResult {
  double value = 0.0;
  std::vector<double> quotients;  // (‖g + α_j h‖ - ‖g‖) / α_j, j = 1..J
  bool monotone = true;           // nonincreasing as α decreases, up to rounding
};

/// max_t ‖g(t) + c f(t)‖ over the index set, including the tail limit.
double sup_norm_combination(const IndexedPair& pair, Scalar c);

/// s(φ) = inf_α (‖g + α e^{-iφ} f‖_inf - 1) / α, taken as the minimum over the α-grid.
NormDerivResult intrinsic_support_normderiv(const IndexedPair& pair, double phi,
                                            const NormDerivConfig& config = {});

struct StatesConfig {
  /// Constraint Re Φ(g) >= 1 - relaxation (ε-relaxed states).
  double relaxation = 1e-14;
  int max_iterations = 300;
  /// Stop once the dual bound is within tol of the primal value.
  double tol = 5e-7;
};

struct StateSolution {
  double value = 0.0;  // Re e^{-iφ} Φ(f)
  AtomicState state;
  double residual = 0.0;  // 1 - Re Φ(g)
  double gap = 0.0;       // dual bound minus value
  int iterations = 0;
  bool converged = false;
};

/// Maximizes Re Φ(e^{-iφ} f) over {‖Φ‖ <= 1, Re Φ(g) >= 1 - relaxation} in the
/// dual of ℓ_inf(Γ, Y) for finite Γ, identified with the ℓ_1-sum of copies of Y*.
///
/// Fully corrective conditional gradient: every iterate is the exact optimum
/// over the convex hull of the atoms generated so far (a planar problem in the
/// coordinates (Re Φ(h), Re Φ(g))). The linear oracle is called with the outward
/// normals (n_r, n_q), n_r > 0, of the hull edges through that optimum; it
/// returns the atom y* ⊗ δ_t maximizing ‖n_r h(t) + n_q g(t)‖ with y* norming
/// that vector (lowest index on ties).
StateSolution intrinsic_support_states(const IndexedPair& pair, double phi,
                                       const StatesConfig& config = {});

struct StatesRange {
  SupportPolygon polygon;
  std::vector<StateSolution> solutions;  // one per angle
  bool converged = true;
};

/// Throws InputError for generated index sets or when sup_t ‖g(t)‖ < 1.
StatesRange intrinsic_range_states(const IndexedPair& pair, const std::vector<double>& angles,
                                   const StatesConfig& config = {});

enum class IntrinsicMethod { NormDerivative, States, Both };

IntrinsicMethod intrinsic_method_from_string(const std::string& name);
std::string to_string(IntrinsicMethod method);

struct IntrinsicRange {
  SupportPolygon polygon;  // norm-derivative when available, states otherwise
  std::optional<SupportPolygon> normderiv;
  std::optional<SupportPolygon> states;
  double cross_gap = 0.0;  // max_j |s_nd(φ_j) - s_states(φ_j)| when both ran
  bool states_converged = true;
  bool normderiv_monotone = true;
};

IntrinsicRange intrinsic_range(const IndexedPair& pair, const std::vector<double>& angles,
                               IntrinsicMethod method, const NormDerivConfig& nd = {},
                               const StatesConfig& st = {});

}  // namespace numrange
