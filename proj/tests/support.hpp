#pragma once

#include <initializer_list>
#include <random>

#include "numrange/space.hpp"

namespace numrange::test {

inline Vector vec(std::initializer_list<Scalar> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Scalar x : xs) v(i++) = x;
  return v;
}

inline Vector random_vector(std::mt19937_64& rng, int dim, bool complex) {
  std::normal_distribution<double> n;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Scalar(n(rng), complex ? n(rng) : 0.0);
  return v;
}

inline Vector random_unit(std::mt19937_64& rng, const SpaceSpec& space) {
  Vector v = random_vector(rng, space.dim, space.is_complex());
  return v / norm(space, v);
}

}  // namespace numrange::test
