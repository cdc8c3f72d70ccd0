#include "numrange/harris.hpp"

#include <cmath>
#include <sstream>

namespace numrange {

Scalar AtomicState::apply(const std::vector<Vector>& h) const {
  Scalar acc = 0.0;
  for (const Atom& a : atoms) acc += a.alpha * pairing(a.functional, h.at(a.source));
  return acc;
}

double AtomicState::quality(const IndexedPair& pair) const { return 1.0 - apply(pair.g).real(); }

void AtomicState::validate(const IndexedPair& pair) const {
  if (atoms.empty()) throw InputError("atomic state has no atoms");
  double total = 0.0;
  for (const Atom& a : atoms) {
    if (a.alpha < 0.0 || a.alpha > 1.0) throw InputError("atom weight outside [0, 1]");
    if (a.source >= pair.size()) throw InputError("atom source outside the index set");
    if (std::abs(dual_norm(pair.space, a.functional) - 1.0) > kTolUnit)
      throw InputError("atom functional is not a unit functional");
    total += a.alpha;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InputError("atom weights must sum to 1");
  if (quality(pair) < -1e-12) throw InputError("state quality is negative");
}

double harris_eps_prime(double eps, double f_sup) {
  // Capped at 1/2: the weight bound Σ_K α_k <= δ/ε' < ε' only leaves J
  // nonempty when ε' <= 1.
  double ep = std::min(0.5 * eps, kMaxEpsPrime);
  if (f_sup > 0.0) ep = std::min(ep, eps / (2.0 * f_sup));
  return ep;
}

double harris_min_admissible_eps(double quality, double f_sup) {
  // ε' = c ε with c = min(1/2, 1/(2‖f‖)) below the cap; need δ < ε'^2.
  if (std::max(quality, 0.0) >= kMaxEpsPrime * kMaxEpsPrime) return kInf;
  const double c = f_sup > 0.0 ? std::min(0.5, 0.5 / f_sup) : 0.5;
  return std::sqrt(std::max(quality, 0.0)) / c;
}

HarrisCertificate harris_extract(const IndexedPair& pair, const AtomicState& state, double eps) {
  if (!(eps > 0.0)) throw InputError("harris_extract needs eps > 0");
  state.validate(pair);
  HarrisCertificate cert;
  cert.eps = eps;
  cert.eps_prime = harris_eps_prime(eps, pair.f_sup);
  cert.state_quality = state.quality(pair);
  if (!(cert.state_quality < cert.eps_prime * cert.eps_prime)) {
    std::ostringstream os;
    os.precision(17);
    os << "state quality " << cert.state_quality << " too low for eps = " << eps
       << "; admissible eps must exceed " << harris_min_admissible_eps(cert.state_quality, pair.f_sup);
    throw PreconditionError(os.str());
  }
  cert.re_phi_f = state.apply(pair.f).real();

  bool found = false;
  for (std::size_t k = 0; k < state.atoms.size(); ++k) {
    const Atom& a = state.atoms[k];
    const double re_g = pairing(a.functional, pair.g[a.source]).real();
    if (re_g > 1.0 - cert.eps_prime) {
      cert.j_set.push_back(k);
      const double re_f = pairing(a.functional, pair.f[a.source]).real();
      if (!found || re_f > cert.re_atom_f) {
        found = true;
        cert.atom = k;
        cert.re_atom_f = re_f;
        cert.re_atom_g = re_g;
      }
    } else {
      cert.k_set.push_back(k);
      cert.k_weight += a.alpha;
    }
  }
  if (!found) throw PreconditionError("no atom passes the 1 - eps' filter");
  cert.source = state.atoms[cert.atom].source;
  cert.functional = state.atoms[cert.atom].functional;
  cert.f_bound_holds = cert.re_atom_f > cert.re_phi_f - eps;
  cert.g_bound_holds = cert.re_atom_g > 1.0 - cert.eps_prime && 1.0 - cert.eps_prime > 1.0 - eps;
  return cert;
}

}  // namespace numrange
