#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "numrange/space.hpp"

namespace numrange {

enum class FaceKind { Singleton, PolytopeFace };

/// The set of unit functionals y* with y*(u) = 1 at a unit vector u.
///
/// For 1 < p < inf this is the single functional conj(sgn u_i)|u_i|^(p-1).
/// For p = inf it is the simplex spanned by conj(sgn u_i) e_i over the peak
/// coordinates. For p = 1 the support coordinates are forced to conj(u_i)/|u_i|
/// and the remaining ones range over [-1, 1] (real) or the closed unit disk
/// (complex), whose extreme set is a torus sampled at `phases` phases per
/// free coordinate.
struct DualityFace {
  SpaceSpec space;
  Vector base;
  FaceKind kind = FaceKind::Singleton;
  /// Value-forced coordinates; zero on the free/peak coordinates.
  Vector fixed;
  /// p = 1: free coordinates. p = inf: peak coordinates.
  std::vector<int> free;
  /// p = inf: conj(sgn u_i) on each peak coordinate, aligned with `free`.
  std::vector<Scalar> peak_signs;
  std::size_t phases = 16;

  bool is_singleton() const { return kind == FaceKind::Singleton; }
  /// Number of extreme points when finite (always for real spaces and p = inf).
  std::optional<std::size_t> vertex_count() const;
  /// Extreme points (vertices, or the phase grid of a torus), at most max_count of them.
  std::vector<Functional> extreme_points(std::size_t max_count) const;
  /// Lowest-index extreme point; the canonical choice of norming functional.
  Functional first_vertex() const;
  /// Membership up to tol on both the norm and the attainment conditions.
  bool contains(const Functional& y, double tol = 1e-9) const;
};

/// Exact duality face at u; |‖u‖_p - 1| must be at most kTolAttain.
DualityFace duality_face(const SpaceSpec& space, const Vector& u, std::size_t phases = 16);

/// Canonical norming functional of a nonzero vector: first vertex of the face at v/‖v‖.
Functional norming_functional(const SpaceSpec& space, const Vector& v);

/// Finite sample of a duality face: extreme points first (all of them when
/// finitely many fit the budget), then the barycenter and quasi-random interior
/// or phase samples. A singleton face yields its functional once.
std::vector<Functional> sample_face(const DualityFace& face, std::size_t budget, std::uint64_t seed);

/// Unit functionals with Re y*(u) > 1 - eps, sampled from: the duality face at
/// u/‖u‖, the extreme points of the dual ball that pass the bound, normalized
/// chords between accepted points (polyhedral duals only), and boundary-seeking
/// perturbations of face points along quasi-random directions. Empty exactly
/// when ‖u‖_p <= 1 - eps. Non-singleton faces get a quarter of the budget, or
/// `face_budget` samples on top of the budget when that is positive. The face
/// sample is drawn with `face_seed` when given, so that callers can reproduce
/// it with sample_face.
std::vector<Functional> near_norming(const SpaceSpec& space, const Vector& u, double eps,
                                     std::size_t budget, std::uint64_t seed,
                                     std::size_t phases = 16, std::size_t face_budget = 0,
                                     std::optional<std::uint64_t> face_seed = std::nullopt);

/// Normalizes a nonzero functional to ‖y*‖_q = 1.
Functional normalize_dual(const SpaceSpec& space, const Vector& y);

}  // namespace numrange
