#include "numrange/space.hpp"

#include <sstream>

namespace numrange {

std::string to_string(Field field) { return field == Field::Real ? "real" : "complex"; }

Field field_from_string(const std::string& name) {
  if (name == "real") return Field::Real;
  if (name == "complex") return Field::Complex;
  throw InputError("field must be \"real\" or \"complex\", got \"" + name + "\"");
}

double dual_exponent(double p) {
  if (!(p >= 1.0)) throw InputError("p must be in [1, inf]");
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

SpaceSpec::SpaceSpec(Field f, int n, double exponent) : field(f), dim(n), p(exponent) {
  if (n < 1) throw InputError("dim must be >= 1");
  if (!(exponent >= 1.0)) throw InputError("p must be in [1, inf]");
}

std::string SpaceSpec::describe() const {
  std::ostringstream os;
  os << to_string(field) << " l_";
  if (p == kInf) os << "inf";
  else os << p;
  os << "^" << dim;
  return os.str();
}

bool operator==(const SpaceSpec& a, const SpaceSpec& b) {
  return a.field == b.field && a.dim == b.dim && a.p == b.p;
}

double norm(const SpaceSpec& space, const Vector& v) {
  if (v.size() != space.dim)
    throw InputError("dimension mismatch: vector of length " + std::to_string(v.size()) +
                     " in a space of dimension " + std::to_string(space.dim));
  return lp_norm(v, space.p);
}

double dual_norm(const SpaceSpec& space, const Functional& y) {
  if (y.size() != space.dim)
    throw InputError("dimension mismatch: functional of length " + std::to_string(y.size()) +
                     " in a space of dimension " + std::to_string(space.dim));
  return lp_norm(y.coords, space.q());
}

Scalar pairing(const Functional& y, const Vector& x) {
  if (y.size() != x.size())
    throw InputError("dimension mismatch in pairing: " + std::to_string(y.size()) + " vs " +
                     std::to_string(x.size()));
  // Bilinear: no conjugation. The duality map carries it instead.
  return (y.coords.array() * x.array()).sum();
}

bool is_real(const Vector& v, double tol) {
  return v.size() == 0 || v.imag().cwiseAbs().maxCoeff() <= tol;
}

Vector conform(const SpaceSpec& space, Vector v) {
  if (!space.is_complex()) v = v.real().cast<Scalar>();
  return v;
}

}  // namespace numrange
