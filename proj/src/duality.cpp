#include "numrange/duality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "numrange/sampling.hpp"

namespace numrange {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Scalar phase(std::size_t k, std::size_t phases) {
  return std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(phases));
}

std::size_t ipow(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

// Extreme points of the dual unit ball (ℓ_1 or ℓ_inf), phase-sampled over C.
std::vector<Vector> dual_ball_extremes(const SpaceSpec& space, std::size_t phases,
                                       std::size_t max_count, std::uint64_t seed) {
  const int n = space.dim;
  std::vector<Vector> out;
  if (space.p == kInf) {
    // Dual is ℓ_1: rotated basis vectors.
    const std::size_t per = space.is_complex() ? phases : 2;
    for (int i = 0; i < n && out.size() < max_count; ++i)
      for (std::size_t k = 0; k < per && out.size() < max_count; ++k) {
        Vector e = Vector::Zero(n);
        e(i) = space.is_complex() ? phase(k, phases) : Scalar(k == 0 ? 1.0 : -1.0);
        out.push_back(std::move(e));
      }
    return out;
  }
  // Dual is ℓ_inf: unimodular vectors.
  const std::size_t per = space.is_complex() ? phases : 2;
  const std::size_t total = ipow(per, static_cast<std::size_t>(n), max_count);
  if (total <= max_count) {
    for (std::size_t k = 0; k < total; ++k) {
      Vector y(n);
      std::size_t code = k;
      for (int i = 0; i < n; ++i) {
        const std::size_t digit = code % per;
        code /= per;
        y(i) = space.is_complex() ? phase(digit, phases) : Scalar(digit == 0 ? 1.0 : -1.0);
      }
      out.push_back(std::move(y));
    }
    return out;
  }
  HaltonSequence seq(n, split_seed(seed, 0xe7));
  for (std::size_t k = 0; k < max_count; ++k) {
    Vector y(n);
    for (int i = 0; i < n; ++i) {
      const double u = seq.coord(k, i);
      y(i) = space.is_complex() ? std::polar(1.0, kTwoPi * u) : Scalar(u < 0.5 ? 1.0 : -1.0);
    }
    out.push_back(std::move(y));
  }
  return out;
}

}  // namespace

std::optional<std::size_t> DualityFace::vertex_count() const {
  if (is_singleton()) return 1;
  if (space.p == kInf) return free.size();
  if (space.is_complex()) return std::nullopt;
  if (free.size() >= 63) return std::nullopt;
  return std::size_t{1} << free.size();
}

std::vector<Functional> DualityFace::extreme_points(std::size_t max_count) const {
  std::vector<Functional> out;
  if (max_count == 0) return out;
  if (is_singleton()) {
    out.emplace_back(fixed);
    return out;
  }
  if (space.p == kInf) {
    for (std::size_t k = 0; k < free.size() && out.size() < max_count; ++k) {
      Vector y = Vector::Zero(space.dim);
      y(free[k]) = peak_signs[k];
      out.emplace_back(std::move(y));
    }
    return out;
  }
  const std::size_t per = space.is_complex() ? phases : 2;
  const std::size_t total = ipow(per, free.size(), max_count);
  for (std::size_t k = 0; k < std::min(total, max_count); ++k) {
    Vector y = fixed;
    std::size_t code = k;
    for (int idx : free) {
      const std::size_t digit = code % per;
      code /= per;
      y(idx) = space.is_complex() ? phase(digit, phases) : Scalar(digit == 0 ? 1.0 : -1.0);
    }
    out.emplace_back(std::move(y));
  }
  return out;
}

Functional DualityFace::first_vertex() const { return extreme_points(1).front(); }

bool DualityFace::contains(const Functional& y, double tol) const {
  return std::abs(lp_norm(y.coords, space.q()) - 1.0) <= tol &&
         std::abs(pairing(y, base) - 1.0) <= tol;
}

DualityFace duality_face(const SpaceSpec& space, const Vector& u, std::size_t phases) {
  const double nu = norm(space, u);
  if (std::abs(nu - 1.0) > kTolAttain)
    throw InputError("duality_face needs a unit vector, got norm " + std::to_string(nu));
  const Vector w = u / nu;
  const int n = space.dim;

  DualityFace face;
  face.space = space;
  face.base = u;
  face.phases = phases;
  face.fixed = Vector::Zero(n);

  if (space.is_smooth()) {
    for (int i = 0; i < n; ++i)
      face.fixed(i) = std::conj(sgn(w(i))) * std::pow(std::abs(w(i)), space.p - 1.0);
    face.kind = FaceKind::Singleton;
    return face;
  }
  if (space.p == kInf) {
    for (int i = 0; i < n; ++i)
      if (std::abs(w(i)) >= 1.0 - kTolPeak) {
        face.free.push_back(i);
        face.peak_signs.push_back(std::conj(sgn(w(i))));
      }
    if (face.free.size() == 1) {
      face.fixed(face.free[0]) = face.peak_signs[0];
      face.free.clear();
      face.peak_signs.clear();
      face.kind = FaceKind::Singleton;
    } else {
      face.kind = FaceKind::PolytopeFace;
    }
    return face;
  }
  // p = 1
  for (int i = 0; i < n; ++i) {
    if (std::abs(w(i)) > kTolPeak) face.fixed(i) = std::conj(sgn(w(i)));
    else face.free.push_back(i);
  }
  face.kind = face.free.empty() ? FaceKind::Singleton : FaceKind::PolytopeFace;
  return face;
}

Functional norming_functional(const SpaceSpec& space, const Vector& v) {
  const double nv = norm(space, v);
  if (nv == 0.0) throw InputError("norming_functional of the zero vector");
  return duality_face(space, v / nv).first_vertex();
}

Functional normalize_dual(const SpaceSpec& space, const Vector& y) {
  const double ny = lp_norm(y, space.q());
  if (ny == 0.0) throw InputError("cannot normalize the zero functional");
  return Functional(y / ny);
}

std::vector<Functional> sample_face(const DualityFace& face, std::size_t budget,
                                    std::uint64_t seed) {
  if (budget < 1) throw InputError("sample_face needs budget >= 1");
  std::vector<Functional> out = face.extreme_points(budget);
  if (face.is_singleton() || out.size() >= budget) return out;

  const std::size_t m = face.free.size();
  if (face.space.p == kInf) {
    // Barycenter, then uniform simplex weights as spacings of m - 1 sorted
    // quasi-random uniforms (a van der Corput sweep when the face is a segment).
    HaltonSequence seq(static_cast<int>(m - 1), seed);
    for (std::uint64_t i = 0; out.size() < budget; ++i) {
      std::vector<double> w(m, 1.0 / static_cast<double>(m));
      if (i > 0) {
        std::vector<double> cuts = {0.0, 1.0};
        for (std::size_t j = 0; j + 1 < m; ++j) cuts.push_back(seq.coord(i - 1, static_cast<int>(j)));
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t j = 0; j < m; ++j) w[j] = cuts[j + 1] - cuts[j];
      }
      Vector y = Vector::Zero(face.space.dim);
      for (std::size_t j = 0; j < m; ++j) y(face.free[j]) = face.peak_signs[j] * w[j];
      out.emplace_back(std::move(y));
    }
    return out;
  }

  // p = 1: free coordinates in [-1, 1] or in the unit disk.
  const bool cplx = face.space.is_complex();
  HaltonSequence seq(static_cast<int>(cplx ? 2 * m : m), seed);
  out.emplace_back(face.fixed);
  for (std::uint64_t i = 0; out.size() < budget; ++i) {
    Vector y = face.fixed;
    for (std::size_t j = 0; j < m; ++j) {
      if (cplx) {
        const double u1 = seq.coord(i, static_cast<int>(2 * j));
        const double u2 = seq.coord(i, static_cast<int>(2 * j + 1));
        // Alternate interior disk samples with torus (extreme) phase samples.
        const double radius = (i % 2 == 0) ? std::sqrt(u1) : 1.0;
        y(face.free[j]) = std::polar(radius, kTwoPi * u2);
      } else {
        y(face.free[j]) = 2.0 * seq.coord(i, static_cast<int>(j)) - 1.0;
      }
    }
    out.emplace_back(std::move(y));
  }
  return out;
}

std::vector<Functional> near_norming(const SpaceSpec& space, const Vector& u, double eps,
                                     std::size_t budget, std::uint64_t seed, std::size_t phases,
                                     std::size_t face_budget, std::optional<std::uint64_t> face_seed) {
  if (!(eps > 0.0)) throw InputError("near_norming needs eps > 0");
  std::vector<Functional> out;
  const double nu = norm(space, u);
  const double floor_value = 1.0 - eps;
  if (nu <= floor_value || budget == 0) return out;
  if (nu == 0.0) {
    // eps > 1: every unit functional qualifies.
    for (Vector& y : sphere_sample(space.dual(), SphereScheme::QuasiRandom, budget, split_seed(seed, 5)))
      out.emplace_back(std::move(y));
    return out;
  }

  const double q = space.q();
  auto accept = [&](const Vector& raw) {
    const double ny = lp_norm(raw, q);
    if (ny == 0.0 || out.size() >= budget) return false;
    Vector y = raw / ny;
    if ((y.array() * u.array()).sum().real() > floor_value) {
      out.emplace_back(std::move(y));
      return true;
    }
    return false;
  };

  const DualityFace face = duality_face(space, u / nu, phases);
  std::size_t n_face = face.is_singleton() ? 1 : std::max<std::size_t>(1, budget / 4);
  if (face_budget > 0 && !face.is_singleton()) {
    n_face = face_budget;
    budget += face_budget;
  }
  const std::vector<Functional> base = sample_face(face, n_face, face_seed.value_or(split_seed(seed, 1)));
  for (const Functional& y : base) accept(y.coords);

  if (!space.is_smooth()) {
    std::vector<Vector> accepted;
    for (const Functional& y : base) accepted.push_back(y.coords);
    for (const Vector& e : dual_ball_extremes(space, phases, std::max<std::size_t>(budget / 4, 1),
                                              split_seed(seed, 2)))
      if (accept(e)) accepted.push_back(e);
    // Chords between accepted points; on a common facet they stay on the sphere.
    if (accepted.size() >= 2) {
      HaltonSequence seq(3, split_seed(seed, 3));
      const std::size_t chords = budget / 4;
      const double count = static_cast<double>(accepted.size());
      for (std::size_t k = 0; k < chords && out.size() < budget; ++k) {
        std::size_t a = static_cast<std::size_t>(seq.coord(k, 0) * count);
        std::size_t b = static_cast<std::size_t>(seq.coord(k, 1) * count);
        if (a == b) b = (b + 1) % accepted.size();
        const double lambda = seq.coord(k, 2);
        const Vector mix = lambda * accepted[a] + (1.0 - lambda) * accepted[b];
        if (lp_norm(mix, q) > 1e-12) accept(mix);
      }
    }
  }

  // Boundary-seeking perturbations: along y(r) = normalize(y0 + r d), locate the
  // edge of the feasible arc by bisection (dyadic scale, then radius), then emit
  // the edge point and a quasi-random interior point of the arc.
  const int d_real = space.is_complex() ? 2 * space.dim : space.dim;
  HaltonSequence seq(d_real + 1, split_seed(seed, 4));
  Vector scratch(space.dim);
  auto feasible_at = [&](const Vector& y0, const Vector& dir, double r) {
    scratch.noalias() = y0 + r * dir;
    const double ny = lp_norm(scratch, q);
    return ny > 0.0 && (scratch.array() * u.array()).sum().real() / ny > floor_value;
  };
  // Feasible radii along a ray form an interval [0, r*): the feasible set is
  // convex and the ray starts inside it.
  std::size_t stalls = 0;
  for (std::uint64_t k = 0; out.size() < budget && stalls < 4 * budget + 16; ++k) {
    const Vector& y0 = base[k % base.size()].coords;
    Vector dir(space.dim);
    for (int i = 0; i < space.dim; ++i) {
      dir(i) = space.is_complex()
                   ? Scalar(2.0 * seq.coord(k, 2 * i) - 1.0, 2.0 * seq.coord(k, 2 * i + 1) - 1.0)
                   : Scalar(2.0 * seq.coord(k, i) - 1.0, 0.0);
    }
    const double nd = lp_norm(dir, q);
    if (nd < 1e-9) {
      ++stalls;
      continue;
    }
    dir /= nd;
    double hi = 2.0, lo = 0.0;
    if (!feasible_at(y0, dir, hi)) {
      // Smallest j in [1, 63] with 2^(1-j) feasible, by bisection on j.
      int bad = 0, good = 64;
      while (good - bad > 1) {
        const int mid = (bad + good) / 2;
        if (feasible_at(y0, dir, std::ldexp(2.0, -mid))) good = mid;
        else bad = mid;
      }
      if (good == 64) {
        ++stalls;
        continue;
      }
      lo = std::ldexp(2.0, -good);
      hi = 2.0 * lo;
      for (int it = 0; it < 24; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (feasible_at(y0, dir, mid)) lo = mid;
        else hi = mid;
      }
    } else {
      lo = hi;
    }
    const std::size_t before = out.size();
    accept(y0 + lo * dir);
    const double rho = seq.coord(k, d_real);
    accept(y0 + rho * lo * dir);
    if (out.size() == before) ++stalls;
  }
  return out;
}

}  // namespace numrange
