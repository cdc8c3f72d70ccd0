#pragma once

#include <vector>

#include "numrange/intrinsic.hpp"
#include "numrange/space.hpp"

namespace numrange {

struct JacobiResult {
  Eigen::VectorXd eigenvalues;  // ascending
  int sweeps = 0;
  bool converged = false;
};

/// Eigenvalues of a Hermitian matrix by the cyclic complex Jacobi method.
/// Deterministic: rotations run in row-major (p, q) order every sweep.
JacobiResult jacobi_eigenvalues(const Matrix& a, int max_sweeps = 50, double tol = 1e-15);

/// Support function of the field of values: λ_max((e^{-iφ}A + (e^{-iφ}A)^H) / 2).
double fov_support_hilbert(const Matrix& a, double phi);

/// Field-of-values polygon of A on the given angle grid.
SupportPolygon fov_polygon_hilbert(const Matrix& a, const std::vector<double>& angles);

}  // namespace numrange
