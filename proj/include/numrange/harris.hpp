#pragma once

#include <cstddef>
#include <vector>

#include "numrange/indexed_pair.hpp"

namespace numrange {

/// One term α · (y* ⊗ δ_t) of a state; acts on h by α y*(h(t)).
struct Atom {
  double alpha = 0.0;
  Functional functional;
  std::size_t source = 0;
};

/// Convex combination of point-evaluation functionals in the dual of ℓ_inf(Γ, Y).
struct AtomicState {
  std::vector<Atom> atoms;

  /// Φ(h) for h given by its values on the index set.
  Scalar apply(const std::vector<Vector>& h) const;
  /// δ = 1 - Re Φ(g).
  double quality(const IndexedPair& pair) const;
  /// Σα = 1 within 1e-12, unit functionals, sources in range, δ >= -1e-12.
  void validate(const IndexedPair& pair) const;
};

struct HarrisCertificate {
  std::size_t atom = 0;  // chosen k
  std::size_t source = 0;
  Functional functional;
  double eps = 0.0;
  double eps_prime = 0.0;
  double state_quality = 0.0;  // δ
  std::vector<std::size_t> j_set;
  std::vector<std::size_t> k_set;
  double k_weight = 0.0;  // Σ_{k in K} α_k
  double re_phi_f = 0.0;  // Re Φ(f)
  double re_atom_f = 0.0;  // Re y_k*(f(t_k))
  double re_atom_g = 0.0;  // Re y_k*(g(t_k))
  bool f_bound_holds = false;  // Re y_k*(f(t_k)) > Re Φ(f) - ε
  bool g_bound_holds = false;  // Re y_k*(g(t_k)) > 1 - ε' > 1 - ε
};

inline constexpr double kMaxEpsPrime = 0.5;

/// ε' = min(ε/2, ε / (2‖f‖_inf), 1/2).
double harris_eps_prime(double eps, double f_sup);

/// Smallest ε for which a state of quality δ is admissible (δ < ε'(ε)^2);
/// infinite when δ >= 1/4.
double harris_min_admissible_eps(double quality, double f_sup);

/// Extracts one atom (t, y*) of the state with Re y*(f(t)) > Re Φ(f) - ε and
/// Re y*(g(t)) > 1 - ε, by discarding the atoms K with Re y*(g(t)) <= 1 - ε' and
/// taking the best remaining atom. Throws PreconditionError when δ >= ε'^2.
HarrisCertificate harris_extract(const IndexedPair& pair, const AtomicState& state, double eps);

}  // namespace numrange
