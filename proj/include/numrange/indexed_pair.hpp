#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "numrange/sampling.hpp"
#include "numrange/space.hpp"

namespace numrange {

enum class IndexKind { Finite, Generated };

/// Built-in generated families (index m = 1..N).
///
/// Nonattained:      Y = ℓ_2^2, g(m) = (1 - 1/m) e_1, f(m) = v.
/// NonsmoothCorner:  Y = ℓ_inf^2, g(m) = (1, 1 - 1/m), f(m) = (0, 1).
enum class Family { Nonattained, NonsmoothCorner };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

struct IndexSet {
  IndexKind kind = IndexKind::Finite;
  std::vector<std::string> labels;  // finite sets only
  Family family = Family::Nonattained;
  std::size_t truncation = 0;  // generated sets only
};

struct SupCertificate {
  bool attained = true;
  std::string label;        // an argmax label when attained
  std::string description;  // analytic statement for generated families
};

/// Closure point (g_inf, f_inf) of a generated family. Both families are affine
/// in c = 1 - 1/m, so for every convex functional of (g(m), f(m)) the supremum
/// over all m is the maximum over m <= N together with this limit.
struct TailLimit {
  Vector g;
  Vector f;
};

/// The data (Γ, g, f) with sup_t ‖g(t)‖ = 1.
struct IndexedPair {
  SpaceSpec space;
  IndexSet index;
  std::vector<Vector> g;
  std::vector<Vector> f;
  SupCertificate certificate;
  double f_sup = 0.0;
  std::optional<TailLimit> tail;

  std::size_t size() const { return g.size(); }
  std::string label(std::size_t i) const;
  /// Position of a label; throws InputError when unknown.
  std::size_t find(const std::string& label) const;
  bool is_generated() const { return index.kind == IndexKind::Generated; }
};

struct GeneratedParams {
  Family family = Family::Nonattained;
  std::size_t truncation = 100;
  Vector v = Vector::Zero(2);  // nonattained only
};

/// T maps the first `domain_dim` coordinates (the subspace X) into Y.
struct OperatorSpec {
  Matrix matrix;  // dim(Y) x domain_dim
  int domain_dim = 0;
};

struct OperatorSampling {
  SphereScheme scheme = SphereScheme::QuasiRandom;
  std::size_t count = 2000;
  std::uint64_t seed = 0;
};

struct NormalizationError : InputError {
  using InputError::InputError;
};

IndexedPair make_finite_pair(const SpaceSpec& space, std::vector<std::string> labels,
                             std::vector<Vector> g, std::vector<Vector> f);
IndexedPair make_generated_pair(const GeneratedParams& params);
/// Γ = sampled unit sphere of X, g = coordinate inclusion, f = T.
IndexedPair from_operator(const OperatorSpec& op, const SpaceSpec& space,
                          const OperatorSampling& sampling);

std::pair<Vector, Vector> evaluate(const IndexedPair& pair, const std::string& label);

/// The pair (Γ, g, theta f).
IndexedPair scale_f(const IndexedPair& pair, Scalar theta);

/// sup_t ‖g(t)‖, including the tail limit of generated families.
double g_sup_norm(const IndexedPair& pair);

/// Re-checks the pair invariants; throws NormalizationError when violated.
void check_invariants(const IndexedPair& pair);

}  // namespace numrange
