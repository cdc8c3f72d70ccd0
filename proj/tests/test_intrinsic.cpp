#include "doctest.h"
#include "numrange/hilbert.hpp"
#include "numrange/intrinsic.hpp"
#include "numrange/ranges.hpp"
#include "support.hpp"

using namespace numrange;
using numrange::test::vec;

namespace {

IndexedPair random_finite(std::mt19937_64& rng, const SpaceSpec& s, std::size_t n) {
  std::vector<std::string> labels;
  std::vector<Vector> g, f;
  std::uniform_real_distribution<double> u(0.2, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("t" + std::to_string(i));
    const Vector x = test::random_unit(rng, s);
    g.push_back(i == 0 ? x : Vector(x * u(rng)));
    f.push_back(test::random_vector(rng, s.dim, s.is_complex()) * 0.5);
  }
  return make_finite_pair(s, labels, g, f);
}

IndexedPair operator_pair(const Matrix& a, std::size_t samples = 2000) {
  return from_operator({a, static_cast<int>(a.cols())}, {Field::Complex, static_cast<int>(a.rows()), 2.0},
                       {SphereScheme::QuasiRandom, samples, 0});
}

}  // namespace

TEST_SUITE("intrinsic") {
  TEST_CASE("norm derivative with f equal to g gives cos phi") {
    std::mt19937_64 rng(20);
    IndexedPair pair = random_finite(rng, {Field::Complex, 2, 3.0}, 4);
    pair.f = pair.g;
    pair.f_sup = 1.0;
    for (double phi = 0; phi < 2 * M_PI; phi += 0.3)
      CHECK(intrinsic_support_normderiv(pair, phi).value == doctest::Approx(std::cos(phi)).epsilon(1e-4));
  }

  TEST_CASE("norm derivative with f zero is exactly zero") {
    std::mt19937_64 rng(21);
    IndexedPair pair = random_finite(rng, {Field::Complex, 2, kInf}, 4);
    for (Vector& f : pair.f) f.setZero();
    pair.f_sup = 0.0;
    for (double phi : {0.0, 1.0, 4.0}) CHECK(intrinsic_support_normderiv(pair, phi).value == 0.0);
  }

  TEST_CASE("norm derivative on the corner family uses the tail") {
    const auto pair = make_generated_pair({Family::NonsmoothCorner, 1000, Vector::Zero(2)});
    CHECK(intrinsic_support_normderiv(pair, 0.0).value == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(intrinsic_support_normderiv(pair, M_PI).value) <= 1e-3);
  }

  TEST_CASE("difference quotients are monotone in alpha") {
    std::mt19937_64 rng(22);
    int count = 0;
    for (auto field : {Field::Real, Field::Complex})
      for (double p : {1.0, 1.5, 2.0, 4.0, kInf})
        for (int k = 0; k < 100; ++k, ++count) {
          const IndexedPair pair = random_finite(rng, {field, 3, p}, 5);
          const NormDerivResult r = intrinsic_support_normderiv(pair, 0.37 * k);
          CHECK(r.monotone);
          // Quotients are indexed by decreasing alpha; they may only decrease.
          for (std::size_t j = 1; j < r.quotients.size(); ++j) {
            const double alpha = std::ldexp(1.0, -static_cast<int>(j + 1));
            CHECK(r.quotients[j] <= r.quotients[j - 1] + 1e-12 + 8 * 2.2e-16 / alpha);
          }
          CHECK(r.value == *std::min_element(r.quotients.begin(), r.quotients.end()));
        }
    CHECK(count == 1000);
  }

  TEST_CASE("states with f equal to g give cos phi") {
    std::mt19937_64 rng(23);
    IndexedPair pair = random_finite(rng, {Field::Complex, 2, 1.0}, 4);
    pair.f = pair.g;
    pair.f_sup = 1.0;
    for (double phi = 0; phi < 2 * M_PI; phi += 0.4) {
      const StateSolution s = intrinsic_support_states(pair, phi);
      CHECK(std::abs(s.value - std::cos(phi)) <= 1e-6);
      CHECK(s.converged);
    }
  }

  TEST_CASE("states on a single orthogonal atom give zero") {
    const auto pair = make_finite_pair({Field::Real, 2, 2.0}, {"a"}, {vec({1, 0})}, {vec({0, 1})});
    CHECK(std::abs(intrinsic_support_states(pair, 0.0).value) <= 1e-6);
    CHECK(std::abs(intrinsic_support_states(pair, M_PI).value) <= 1e-6);
    const auto v = intrinsic_range(pair, angle_grid(Field::Real), IntrinsicMethod::Both);
    CHECK(hausdorff(v.polygon.polygon, convex_hull(PointSet{0.0})) <= 1e-6);
  }

  TEST_CASE("states put all mass on the better of two atoms") {
    const auto pair = make_finite_pair({Field::Real, 2, 2.0}, {"a", "b"}, {vec({1, 0}), vec({1, 0})},
                                       {vec({1, 0}), vec({-1, 0})});
    const StateSolution s = intrinsic_support_states(pair, 0.0);
    CHECK(s.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(intrinsic_support_states(pair, M_PI).value == doctest::Approx(1.0).epsilon(1e-9));
    // The optimal state is a genuine state: unit mass on norming functionals.
    CHECK(s.residual <= 1e-9);
    CHECK_NOTHROW(s.state.validate(pair));
  }

  TEST_CASE("states need finite index sets") {
    const auto pair = make_generated_pair({Family::NonsmoothCorner, 10, Vector::Zero(2)});
    CHECK_THROWS_AS(intrinsic_support_states(pair, 0.0), InputError);
  }

  TEST_CASE("intrinsic range with f equal to g is the point one") {
    std::mt19937_64 rng(24);
    IndexedPair pair = random_finite(rng, {Field::Complex, 2, 2.0}, 3);
    pair.f = pair.g;
    pair.f_sup = 1.0;
    const auto v = intrinsic_range(pair, angle_grid(Field::Complex, 64), IntrinsicMethod::Both);
    CHECK(hausdorff(v.polygon.polygon, convex_hull(PointSet{1.0})) <= 1e-3);
    CHECK(v.cross_gap <= 1e-3);
  }

  TEST_CASE("intrinsic range of diag(0, 1) is the unit segment") {
    Matrix a = Matrix::Zero(2, 2);
    a(1, 1) = 1.0;
    const auto v = intrinsic_range(operator_pair(a), angle_grid(Field::Complex, 64), IntrinsicMethod::Both);
    CHECK(hausdorff(v.polygon.polygon, convex_hull(PointSet{0.0, 1.0})) <= 1e-2);
  }

  TEST_CASE("intrinsic range of the nilpotent 2x2 is the disk of radius one half") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 1) = 1.0;
    const auto angles = angle_grid(Field::Complex, 64);
    const auto v = intrinsic_range(operator_pair(a), angles, IntrinsicMethod::Both);
    CHECK(hausdorff(v.polygon.polygon, fov_polygon_hilbert(a, angles).polygon) <= 2e-2);
    for (double s : v.polygon.support) CHECK(s == doctest::Approx(0.5).epsilon(2e-2));
  }

  TEST_CASE("real pairs use the two-angle grid and give an interval") {
    CHECK(angle_grid(Field::Real) == std::vector<double>{0.0, M_PI});
    CHECK_THROWS_AS(angle_grid(Field::Complex, 4), InputError);
    std::mt19937_64 rng(25);
    const IndexedPair pair = random_finite(rng, {Field::Real, 2, 1.5}, 4);
    const auto v = intrinsic_range(pair, angle_grid(Field::Real), IntrinsicMethod::NormDerivative);
    REQUIRE(v.polygon.polygon.vertices.size() <= 2);
    for (Scalar z : v.polygon.polygon.vertices) CHECK(z.imag() == 0.0);
    CHECK(v.polygon.polygon.support(0.0) == doctest::Approx(v.polygon.support[0]));
    CHECK(v.polygon.polygon.support(M_PI) == doctest::Approx(v.polygon.support[1]));
  }

  TEST_CASE("support functions rotate with f") {
    std::mt19937_64 rng(26);
    const auto angles = angle_grid(Field::Complex, 64);
    for (double p : {1.0, 2.0, kInf}) {
      const IndexedPair pair = random_finite(rng, {Field::Complex, 2, p}, 4);
      // A grid-aligned rotation keeps the angle sets identical.
      const int shift = 5;
      const Scalar theta = std::polar(1.0, angles[shift]);
      const IndexedPair rotated = scale_f(pair, theta);
      for (std::size_t j = 0; j < angles.size(); ++j) {
        const double s_rot = intrinsic_support_normderiv(rotated, angles[j]).value;
        const double s = intrinsic_support_normderiv(pair, angles[(j + angles.size() - shift) % angles.size()]).value;
        CHECK(std::abs(s_rot - s) <= 1e-9);
      }
      // Off-grid angle: s_{θf}(φ) = s_f(φ - arg θ).
      const Scalar theta2 = std::polar(1.0, 0.123);
      const IndexedPair rotated2 = scale_f(pair, theta2);
      for (double phi : {0.3, 2.0, 5.1})
        CHECK(std::abs(intrinsic_support_normderiv(rotated2, phi).value -
                       intrinsic_support_normderiv(pair, phi - 0.123).value) <= 1e-9);
    }
  }

  TEST_CASE("the two intrinsic methods agree on random pairs") {
    std::mt19937_64 rng(27);
    for (auto field : {Field::Real, Field::Complex})
      for (double p : {1.0, 1.5, 2.0, 4.0, kInf}) {
        const IndexedPair pair = random_finite(rng, {field, 3, p}, 6);
        const auto v = intrinsic_range(pair, angle_grid(field, 32), IntrinsicMethod::Both);
        CHECK(v.cross_gap <= 2e-2);
        CHECK(v.states_converged);
      }
  }

  TEST_CASE("states resolve complex l_1 corners") {
    // g(t0) sits on a corner whose free coordinates the optimum must rotate onto h,
    // next to several smooth unit points competing for the top of the image.
    std::mt19937_64 rng(35);
    const SpaceSpec s(Field::Complex, 3, 1.0);
    std::vector<std::string> labels;
    std::vector<Vector> g, f;
    for (int t = 0; t < 8; ++t) {
      labels.push_back("t" + std::to_string(t));
      g.push_back(t == 0 ? Vector(Vector::Zero(3)) : test::random_unit(rng, s));
      f.push_back(test::random_vector(rng, 3, true) * 0.4);
    }
    g[0](0) = Scalar(-0.902, -0.432) / std::abs(Scalar(-0.902, -0.432));
    const IndexedPair pair = make_finite_pair(s, labels, g, f);
    // Difference quotients only overestimate; near-zero coordinates of g put
    // the alpha-grid floor of the norm derivative around 1e-5 here.
    for (double phi = 0; phi < 2 * M_PI; phi += 0.1) {
      const StateSolution st = intrinsic_support_states(pair, phi);
      const double nd = intrinsic_support_normderiv(pair, phi).value;
      CHECK(st.converged);
      CHECK(st.value <= nd + 1e-6);
      CHECK(nd - st.value <= 1e-4);
    }
  }

  TEST_CASE("support polygons of a point tolerate solver noise") {
    const Scalar z(0.3, -0.2);
    const auto angles = angle_grid(Field::Complex, 16);
    std::vector<double> support;
    for (std::size_t j = 0; j < angles.size(); ++j)
      support.push_back((std::polar(1.0, -angles[j]) * z).real() - (j % 2 ? 1e-8 : 0.0));
    const SupportPolygon poly = support_polygon(angles, support);
    CHECK(poly.polygon.distance(z) <= 1e-7);
    for (double& v : support) v -= 1e-3;
    CHECK_THROWS_AS(support_polygon(angles, support), InputError);
  }

  TEST_CASE("the relaxed state set forces genuine states") {
    // Feasible points of {sum ||y_t|| <= 1, Re Phi(g) >= 1} have norm one and Phi(g) = 1.
    std::mt19937_64 rng(28);
    for (double p : {1.0, 2.0, kInf}) {
      const IndexedPair pair = random_finite(rng, {Field::Complex, 2, p}, 5);
      for (double phi : {0.0, 1.3, 3.0}) {
        const StateSolution s = intrinsic_support_states(pair, phi);
        double mass = 0.0;
        for (const Atom& a : s.state.atoms) mass += a.alpha;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(s.state.apply(pair.g) - 1.0) <= 1e-6);
      }
    }
  }

  TEST_CASE("Jacobi eigenvalues agree with a reference solver") {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> n;
    for (int dim = 1; dim <= 7; ++dim)
      for (int k = 0; k < 5; ++k) {
        Matrix a(dim, dim);
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) a(i, j) = Scalar(n(rng), n(rng));
        a = ((a + a.adjoint()) / 2).eval();
        const JacobiResult r = jacobi_eigenvalues(a);
        CHECK(r.converged);
        const Eigen::SelfAdjointEigenSolver<Matrix> ref(a);
        CHECK((r.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-12);
      }
    CHECK_THROWS_AS(jacobi_eigenvalues(Matrix::Random(2, 2) + Matrix::Identity(2, 2) * Scalar(0, 5)), InputError);
  }

  TEST_CASE("field of values support examples") {
    Matrix d = Matrix::Zero(2, 2);
    d(1, 1) = 1.0;
    CHECK(fov_support_hilbert(d, 0.0) == doctest::Approx(1.0));
    Matrix nil = Matrix::Zero(2, 2);
    nil(0, 1) = 1.0;
    for (double phi : {0.0, 0.7, 2.0, 4.5}) CHECK(fov_support_hilbert(nil, phi) == doctest::Approx(0.5));
    for (double phi : {0.0, 0.7, 2.0, 4.5})
      CHECK(fov_support_hilbert(Matrix::Identity(3, 3), phi) == doctest::Approx(std::cos(phi)));
  }

  TEST_CASE("spatial cloud of a Hilbert operator lies in its field of values") {
    Matrix a(3, 3);
    a << Scalar(0.2, 0.1), 1.0, 0.0, 0.0, Scalar(-0.3, 0.4), 0.5, 0.2, 0.0, 0.7;
    const IndexedPair pair = operator_pair(a, 500);
    const auto fov = fov_polygon_hilbert(a, angle_grid(Field::Complex, 256));
    const RangeCloud w = spatial_range(pair, 16, 0);
    CHECK(directed_hausdorff(w.values(), fov.polygon) <= 1e-6);
  }
}
