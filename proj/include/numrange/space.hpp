#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace numrange {

using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tolerance for detecting peak coordinates (p = inf) and support coordinates (p = 1).
inline constexpr double kTolPeak = 1e-9;
/// Tolerance on |‖u‖ - 1| for a vector to count as a point of the unit sphere.
inline constexpr double kTolAttain = 1e-9;
/// Tolerance on sup_t ‖g(t)‖ = 1 for indexed pairs.
inline constexpr double kTolGNorm = 1e-9;
/// Tolerance on ‖y*‖_q = 1 for functionals declared unit.
inline constexpr double kTolUnit = 1e-9;

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

enum class Field { Real, Complex };

std::string to_string(Field field);
Field field_from_string(const std::string& name);

/// Conjugate exponent, 1 <-> inf.
double dual_exponent(double p);

/// Finite-dimensional ℓ_p space over the reals or the complexes.
///
/// Vectors of a real space are stored as complex vectors with zero imaginary
/// parts; every operation keeps real inputs real.
struct SpaceSpec {
  Field field = Field::Real;
  int dim = 1;
  double p = 2.0;

  SpaceSpec() = default;
  SpaceSpec(Field f, int n, double exponent);

  double q() const { return dual_exponent(p); }
  bool is_complex() const { return field == Field::Complex; }
  /// Strictly convex and smooth: 1 < p < inf.
  bool is_smooth() const { return p > 1.0 && p < kInf; }
  /// The dual space ℓ_q of the same field and dimension.
  SpaceSpec dual() const { return {field, dim, q()}; }
  std::string describe() const;
};

bool operator==(const SpaceSpec& a, const SpaceSpec& b);

/// ℓ_p norm of any Eigen vector expression, real or complex.
template <typename Derived>
double lp_norm(const Eigen::MatrixBase<Derived>& v, double p) {
  if (v.size() == 0) return 0.0;
  if (p == kInf) return v.cwiseAbs().maxCoeff();
  if (p == 1.0) return v.cwiseAbs().sum();
  if (p == 2.0) return v.norm();
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v(i)) / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

/// A dual vector acting through the bilinear pairing y*(x) = Σ y_i x_i.
struct Functional {
  Vector coords;

  Functional() = default;
  explicit Functional(Vector c) : coords(std::move(c)) {}
  Eigen::Index size() const { return coords.size(); }
};

/// ℓ_p norm of v in the given space; throws InputError on dimension mismatch.
double norm(const SpaceSpec& space, const Vector& v);
/// ℓ_q norm of y* (the dual norm of the space).
double dual_norm(const SpaceSpec& space, const Functional& y);

Scalar pairing(const Functional& y, const Vector& x);

/// True when every imaginary part is within tol.
bool is_real(const Vector& v, double tol = 0.0);

/// Projects the imaginary parts away when the space is real.
Vector conform(const SpaceSpec& space, Vector v);

/// Unit-modulus sign, sgn(0) = 0.
inline Scalar sgn(Scalar z) {
  const double r = std::abs(z);
  return r == 0.0 ? Scalar(0.0) : z / r;
}

}  // namespace numrange
