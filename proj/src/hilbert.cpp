#include "numrange/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace numrange {

JacobiResult jacobi_eigenvalues(const Matrix& a, int max_sweeps, double tol) {
  if (a.rows() != a.cols()) throw InputError("jacobi_eigenvalues needs a square matrix");
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()))
    throw InputError("jacobi_eigenvalues needs a Hermitian matrix");
  Matrix m = 0.5 * (a + a.adjoint());
  const Eigen::Index n = m.rows();
  JacobiResult out;

  auto off = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
  };
  const double scale = std::max(m.norm(), 1e-300);

  for (out.sweeps = 0; out.sweeps < max_sweeps; ++out.sweeps) {
    if (off() <= tol * scale) {
      out.converged = true;
      break;
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double r = std::abs(m(p, q));
        if (r == 0.0) continue;
        // Phase e^{iβ} of m(p, q); after the diagonal phase change the pivot is real.
        const Scalar e = m(p, q) / r;
        const double theta = 0.5 * (m(q, q).real() - m(p, p).real()) / r;
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Columns: G = U R with U = diag(1, conj(e)) at q.
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar mp = m(k, p), mq = m(k, q);
          m(k, p) = c * mp - s * std::conj(e) * mq;
          m(k, q) = s * mp + c * std::conj(e) * mq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar mp = m(p, k), mq = m(q, k);
          m(p, k) = c * mp - s * e * mq;
          m(q, k) = s * mp + c * e * mq;
        }
        m(p, q) = m(q, p) = 0.0;
        m(p, p) = m(p, p).real();
        m(q, q) = m(q, q).real();
      }
    }
  }
  if (!out.converged && off() <= tol * scale) out.converged = true;
  out.eigenvalues.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) out.eigenvalues(i) = m(i, i).real();
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

double fov_support_hilbert(const Matrix& a, double phi) {
  if (a.rows() != a.cols() || a.rows() == 0) throw InputError("field of values needs a square matrix");
  const Matrix r = std::polar(1.0, -phi) * a;
  const Matrix h = 0.5 * (r + r.adjoint());
  return jacobi_eigenvalues(h).eigenvalues.maxCoeff();
}

SupportPolygon fov_polygon_hilbert(const Matrix& a, const std::vector<double>& angles) {
  std::vector<double> support;
  support.reserve(angles.size());
  for (double phi : angles) support.push_back(fov_support_hilbert(a, phi));
  return support_polygon(angles, std::move(support));
}

}  // namespace numrange
