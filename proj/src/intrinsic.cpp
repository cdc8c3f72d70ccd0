#include "numrange/intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "numrange/duality.hpp"
#include "numrange/sampling.hpp"

namespace numrange {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTilt = 1e-7;
constexpr double kMaxLambda = 1e8;

bool is_real_grid(const std::vector<double>& angles) {
  return angles.size() == 2 && angles[0] == 0.0 && angles[1] == kPi;
}

Scalar rotation(const SpaceSpec& space, double phi) {
  if (phi == 0.0) return 1.0;
  if (phi == kPi) return -1.0;
  const Scalar rot = std::polar(1.0, -phi);
  return space.is_complex() ? rot : Scalar(rot.real());
}

std::vector<Scalar> clip(const std::vector<Scalar>& poly, double c, double s, double bound) {
  std::vector<Scalar> out;
  const std::size_t n = poly.size();
  auto value = [&](Scalar z) { return c * z.real() + s * z.imag() - bound; };
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar a = poly[i], b = poly[(i + 1) % n];
    const double va = value(a), vb = value(b);
    if (va <= 0.0) out.push_back(a);
    if ((va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0)) out.push_back(a + (b - a) * (va / (va - vb)));
  }
  return out;
}

}  // namespace

std::vector<double> angle_grid(Field field, int count) {
  if (field == Field::Real) return {0.0, kPi};
  if (count < 8) throw InputError("complex angle grids need at least 8 angles");
  std::vector<double> out(count);
  for (int j = 0; j < count; ++j) out[j] = 2.0 * kPi * j / count;
  return out;
}

SupportPolygon support_polygon(std::vector<double> angles, std::vector<double> support) {
  if (angles.size() != support.size() || angles.empty())
    throw InputError("support_polygon needs matching, nonempty angle and support lists");
  SupportPolygon out;
  if (is_real_grid(angles)) {
    double lo = -support[1], hi = support[0];
    if (lo > hi) lo = hi = 0.5 * (lo + hi);
    out.polygon.vertices = lo == hi ? std::vector<Scalar>{lo} : std::vector<Scalar>{lo, hi};
  } else {
    double bound = 1.0;
    for (double s : support) bound = std::max(bound, 2.0 * std::abs(s) + 1.0);
    // Degenerate sets (a point, a segment) have s(φ) + s(φ + π) = 0, so solver
    // error of either sign can empty the intersection; widen the slack until it
    // is not, but no further than 1e-6.
    std::vector<Scalar> poly;
    for (double slack = 1e-12; poly.empty() && slack <= 1e-6 * 1.01; slack *= 10.0) {
      poly = {{-bound, -bound}, {bound, -bound}, {bound, bound}, {-bound, bound}};
      for (std::size_t j = 0; j < angles.size() && !poly.empty(); ++j)
        poly = clip(poly, std::cos(angles[j]), std::sin(angles[j]), support[j] + slack);
    }
    if (poly.empty()) throw InputError("inconsistent support values: empty polygon");
    out.polygon = convex_hull(poly);
  }
  out.angles = std::move(angles);
  out.support = std::move(support);
  return out;
}

double sup_norm_combination(const IndexedPair& pair, Scalar c) {
  double sup = 0.0;
  Vector tmp(pair.space.dim);
  for (std::size_t t = 0; t < pair.size(); ++t) {
    tmp.noalias() = pair.g[t] + c * pair.f[t];
    sup = std::max(sup, lp_norm(tmp, pair.space.p));
  }
  if (pair.tail) {
    tmp.noalias() = pair.tail->g + c * pair.tail->f;
    sup = std::max(sup, lp_norm(tmp, pair.space.p));
  }
  return sup;
}

NormDerivResult intrinsic_support_normderiv(const IndexedPair& pair, double phi,
                                            const NormDerivConfig& config) {
  if (config.alpha_levels < 1) throw InputError("alpha grid needs at least one level");
  const Scalar rot = rotation(pair.space, phi);
  const double g_sup = g_sup_norm(pair);
  NormDerivResult out;
  for (int j = 1; j <= config.alpha_levels; ++j) {
    const double alpha = std::ldexp(1.0, -j);
    const double quotient = (sup_norm_combination(pair, alpha * rot) - g_sup) / alpha;
    if (!out.quotients.empty()) {
      const double slack = 1e-12 + 8.0 * std::numeric_limits<double>::epsilon() / alpha;
      if (quotient > out.quotients.back() + slack) out.monotone = false;
    }
    out.quotients.push_back(quotient);
  }
  out.value = *std::min_element(out.quotients.begin(), out.quotients.end());
  if (config.richardson && out.quotients.size() >= 2) {
    const std::size_t n = out.quotients.size();
    out.value = 2.0 * out.quotients[n - 1] - out.quotients[n - 2];
  }
  return out;
}

namespace {

struct CgAtom {
  std::size_t source = 0;
  Vector y;
  double r = 0.0;  // Re y*(h(t))
  double q = 0.0;  // Re y*(g(t))
};

// argmax of Re y(c) over the dual unit ball, with no coordinate tolerance:
// the solver resolves faces whose width is far below the duality-face cutoff.
Vector exact_maximizer(const SpaceSpec& space, const Vector& c) {
  Vector y = Vector::Zero(space.dim);
  const Eigen::Index n = c.size();
  if (space.p == 1.0) {
    for (Eigen::Index i = 0; i < n; ++i) y(i) = c(i) == 0.0 ? Scalar(1.0) : std::conj(c(i)) / std::abs(c(i));
  } else if (space.p == kInf) {
    Eigen::Index k = 0;
    for (Eigen::Index i = 1; i < n; ++i)
      if (std::abs(c(i)) > std::abs(c(k))) k = i;
    y(k) = c(k) == 0.0 ? Scalar(1.0) : std::conj(c(k)) / std::abs(c(k));
  } else {
    const double nc = lp_norm(c, space.p);
    if (nc == 0.0) {
      y(0) = 1.0;
      return y;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const double a = std::abs(c(i));
      if (a > 0.0) y(i) = std::conj(c(i)) / a * std::pow(a / nc, space.p - 1.0);
    }
  }
  return y;
}

}  // namespace

StateSolution intrinsic_support_states(const IndexedPair& pair, double phi,
                                       const StatesConfig& config) {
  if (pair.is_generated())
    throw InputError("the state method needs a finite index set");
  const SpaceSpec& space = pair.space;
  const Scalar rot = rotation(space, phi);
  std::vector<Vector> h(pair.size());
  for (std::size_t t = 0; t < pair.size(); ++t) h[t] = rot * pair.f[t];

  const double g_sup = g_sup_norm(pair);
  if (g_sup < 1.0 - kTolGNorm) throw InputError("no state exists: sup_t |g(t)| < 1");
  const double floor_q = 1.0 - (config.relaxation + std::max(0.0, 1.0 - g_sup));

  Vector c(space.dim);
  auto oracle = [&](double nr, double nq) {
    std::size_t best_t = 0;
    double best = -1.0;
    for (std::size_t t = 0; t < pair.size(); ++t) {
      c.noalias() = nr * h[t] + nq * pair.g[t];
      const double v = lp_norm(c, space.p);
      if (v > best) {
        best = v;
        best_t = t;
      }
    }
    CgAtom atom;
    atom.source = best_t;
    c.noalias() = nr * h[best_t] + nq * pair.g[best_t];
    atom.y = exact_maximizer(space, c);
    atom.r = (atom.y.array() * h[best_t].array()).sum().real();
    atom.q = (atom.y.array() * pair.g[best_t].array()).sum().real();
    return atom;
  };

  // Points of the planar image; index atoms.size() stands for the zero functional.
  std::vector<CgAtom> atoms;
  for (double b : {1e300, 0.0, 1.0, 10.0, 100.0, 1e3, 1e4}) {
    atoms.push_back(b == 1e300 ? oracle(0.0, 1.0) : oracle(1.0, b));
  }

  StateSolution sol;
  Scalar best_z;
  std::size_t id_a = 0, id_b = 0;
  double lambda = 1.0;  // weight of id_a
  double upper = std::numeric_limits<double>::infinity();
  for (sol.iterations = 0; sol.iterations < config.max_iterations; ++sol.iterations) {
    std::vector<Scalar> pts;
    for (const CgAtom& a : atoms) pts.emplace_back(a.r, a.q);
    pts.emplace_back(0.0, 0.0);
    const ConvexPolygon hull = convex_hull(pts);
    const std::size_t n = hull.vertices.size();
    std::vector<std::size_t> ids(n);
    for (std::size_t i = 0; i < n; ++i)
      ids[i] = static_cast<std::size_t>(std::find(pts.begin(), pts.end(), hull.vertices[i]) - pts.begin());

    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // CCW edges through the optimum
    auto edge_list = [&](std::size_t i) {
      std::vector<std::pair<std::size_t, std::size_t>> e;
      if (n == 2) {
        e = {{0, 1}, {1, 0}};
      } else if (n > 2) {
        e = {{(i + n - 1) % n, i}, {i, (i + 1) % n}};
      }
      return e;
    };
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar v = hull.vertices[i];
      if (v.imag() >= floor_q && v.real() > best) {
        best = v.real();
        best_z = v;
        id_a = id_b = ids[i];
        lambda = 1.0;
        edges = edge_list(i);
      }
    }
    const std::size_t n_edges = n == 2 ? 1 : (n > 2 ? n : 0);
    for (std::size_t i = 0; i < n_edges; ++i) {
      const std::size_t j = (i + 1) % n;
      const Scalar a = hull.vertices[i], b = hull.vertices[j];
      if ((a.imag() - floor_q) * (b.imag() - floor_q) >= 0.0) continue;
      const double w = (floor_q - a.imag()) / (b.imag() - a.imag());
      const Scalar z = a + w * (b - a);
      if (z.real() > best) {
        best = z.real();
        best_z = z;
        id_a = ids[i];
        id_b = ids[j];
        lambda = 1.0 - w;
        edges = n == 2 ? edge_list(0) : std::vector<std::pair<std::size_t, std::size_t>>{{i, j}};
      }
    }
    if (best == -std::numeric_limits<double>::infinity())
      throw InputError("state program infeasible");

    // Outward normals of the edges through the optimum, each also tilted by
    // ±kTilt so that flat faces of the image are resolved to their endpoints,
    // plus the unconstrained direction (1, 0).
    std::vector<double> directions = {0.0};
    for (const auto& [ia, ib] : edges) {
      const Scalar d = hull.vertices[ib] - hull.vertices[ia];
      if (std::abs(d) == 0.0) continue;
      const double psi = std::arg(Scalar(d.imag(), -d.real()));
      for (double tilt : {0.0, kTilt, -kTilt})
        if (std::cos(psi + tilt) > 1e-15) directions.push_back(psi + tilt);
    }
    // Any direction (1, λ) with λ >= 0 bounds the optimum by
    // max(R + λQ) - λ floor; stop once that bound meets the primal value.
    bool added = false;
    for (double psi : directions) {
      const double nr = std::cos(psi), nq = std::sin(psi);
      double level = -std::numeric_limits<double>::infinity();
      for (const Scalar& v : hull.vertices)
        level = std::max(level, nr * (v.real() - best_z.real()) + nq * (v.imag() - best_z.imag()));
      CgAtom atom = oracle(nr, nq);
      const double value = nr * (atom.r - best_z.real()) + nq * (atom.q - best_z.imag());
      if (nq >= 0.0) {
        // Past kMaxLambda the rounding of Q, times λ, would swamp the bound.
        const double lam = std::min(nq / nr, kMaxLambda);
        const CgAtom b = lam == nq / nr ? atom : oracle(1.0, lam);
        upper = std::min(upper, std::max(b.r + lam * (b.q - floor_q), -lam * floor_q));
      }
      if (value > level + 1e-15 * (std::abs(nr) + std::abs(nq))) {
        atoms.push_back(std::move(atom));
        added = true;
      }
    }
    if (upper - best > config.tol) {
      // The edge normals rarely hit the best multiplier; F(λ) is convex, so a
      // golden-section search over log λ tightens the bound, and its atom is a
      // useful cut.
      auto dual = [&](double lam) {
        CgAtom b = oracle(1.0, lam);
        const double v = std::max(b.r + lam * (b.q - floor_q), -lam * floor_q);
        return std::pair{v, std::move(b)};
      };
      const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
      double lo = -8.0, hi = std::log10(kMaxLambda);
      double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
      double f1 = dual(std::pow(10.0, x1)).first, f2 = dual(std::pow(10.0, x2)).first;
      for (int k = 0; k < 60; ++k) {
        if (f1 <= f2) {
          hi = x2, x2 = x1, f2 = f1;
          x1 = hi - gr * (hi - lo);
          f1 = dual(std::pow(10.0, x1)).first;
        } else {
          lo = x1, x1 = x2, f1 = f2;
          x2 = lo + gr * (hi - lo);
          f2 = dual(std::pow(10.0, x2)).first;
        }
      }
      const double lam = std::pow(10.0, f1 <= f2 ? x1 : x2);
      auto [v, atom] = dual(lam);
      upper = std::min(upper, v);
      const double nr = 1.0 / std::hypot(1.0, lam), nq = lam * nr;
      double level = -std::numeric_limits<double>::infinity();
      for (const Scalar& z : hull.vertices)
        level = std::max(level, nr * (z.real() - best_z.real()) + nq * (z.imag() - best_z.imag()));
      if (nr * (atom.r - best_z.real()) + nq * (atom.q - best_z.imag()) > level + 1e-15) {
        atoms.push_back(std::move(atom));
        added = true;
      }
    }
    sol.gap = upper - best;
    if (sol.gap <= config.tol) {
      sol.converged = true;
      break;
    }
    if (!added) break;
  }

  // Recover the state; the zero functional is split as (y - y)/2 on a real atom.
  const std::size_t zero_id = atoms.size();
  auto push = [&](std::size_t id, double w, std::size_t partner) {
    if (w <= 0.0) return;
    if (id != zero_id) {
      sol.state.atoms.push_back({w, Functional(atoms[id].y), atoms[id].source});
    } else {
      const CgAtom& other = atoms[partner == zero_id ? 0 : partner];
      sol.state.atoms.push_back({0.5 * w, Functional(other.y), other.source});
      sol.state.atoms.push_back({0.5 * w, Functional(-other.y), other.source});
    }
  };
  if (id_a == id_b) {
    push(id_a, 1.0, id_b);
  } else {
    push(id_a, lambda, id_b);
    push(id_b, 1.0 - lambda, id_a);
  }
  sol.value = sol.state.apply(h).real();
  sol.residual = sol.state.quality(pair);
  return sol;
}

StatesRange intrinsic_range_states(const IndexedPair& pair, const std::vector<double>& angles,
                                   const StatesConfig& config) {
  if (pair.is_generated()) throw InputError("the state method needs a finite index set");
  StatesRange out;
  out.solutions.resize(angles.size());
  parallel_for(angles.size(), [&](std::size_t j) {
    out.solutions[j] = intrinsic_support_states(pair, angles[j], config);
  });
  std::vector<double> support;
  for (const StateSolution& s : out.solutions) {
    support.push_back(s.value);
    out.converged = out.converged && s.converged;
  }
  out.polygon = support_polygon(angles, std::move(support));
  return out;
}

IntrinsicMethod intrinsic_method_from_string(const std::string& name) {
  if (name == "norm-derivative") return IntrinsicMethod::NormDerivative;
  if (name == "states") return IntrinsicMethod::States;
  if (name == "both") return IntrinsicMethod::Both;
  throw InputError("method must be norm-derivative, states or both; got \"" + name + "\"");
}

std::string to_string(IntrinsicMethod method) {
  switch (method) {
    case IntrinsicMethod::NormDerivative: return "norm-derivative";
    case IntrinsicMethod::States: return "states";
    case IntrinsicMethod::Both: return "both";
  }
  return "unknown";
}

IntrinsicRange intrinsic_range(const IndexedPair& pair, const std::vector<double>& angles,
                               IntrinsicMethod method, const NormDerivConfig& nd,
                               const StatesConfig& st) {
  if (!pair.space.is_complex() && !is_real_grid(angles))
    throw InputError("real pairs use the angle grid {0, pi}");
  if (pair.space.is_complex() && angles.size() < 8)
    throw InputError("complex pairs need at least 8 angles");
  IntrinsicRange out;
  if (method != IntrinsicMethod::States) {
    std::vector<double> support(angles.size());
    std::vector<char> monotone(angles.size(), 1);
    parallel_for(angles.size(), [&](std::size_t j) {
      const NormDerivResult r = intrinsic_support_normderiv(pair, angles[j], nd);
      support[j] = r.value;
      monotone[j] = r.monotone;
    });
    out.normderiv_monotone = std::all_of(monotone.begin(), monotone.end(), [](char m) { return m; });
    out.normderiv = support_polygon(angles, std::move(support));
  }
  if (method != IntrinsicMethod::NormDerivative && !pair.is_generated()) {
    StatesRange states = intrinsic_range_states(pair, angles, st);
    out.states_converged = states.converged;
    out.states = std::move(states.polygon);
  }
  if (!out.normderiv && !out.states) throw InputError("the state method needs a finite index set");
  out.polygon = out.normderiv ? *out.normderiv : *out.states;
  if (out.normderiv && out.states)
    for (std::size_t j = 0; j < angles.size(); ++j)
      out.cross_gap = std::max(out.cross_gap, std::abs(out.normderiv->support[j] - out.states->support[j]));
  return out;
}

}  // namespace numrange
