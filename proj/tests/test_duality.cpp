#include <algorithm>

#include "doctest.h"
#include "numrange/duality.hpp"
#include "support.hpp"

using namespace numrange;
using numrange::test::vec;

namespace {

bool has(const std::vector<Functional>& ys, const Vector& target, double tol = 1e-12) {
  return std::any_of(ys.begin(), ys.end(), [&](const Functional& y) { return (y.coords - target).norm() <= tol; });
}

void check_face_member(const SpaceSpec& s, const Vector& u, const Functional& y) {
  CHECK(std::abs(dual_norm(s, y) - 1.0) <= 1e-9);
  CHECK(std::abs(pairing(y, u) - 1.0) <= 1e-9);
}

}  // namespace

TEST_SUITE("duality") {
  TEST_CASE("Hilbert face is the vector itself") {
    const SpaceSpec s(Field::Real, 2, 2.0);
    const DualityFace face = duality_face(s, vec({1, 0}));
    CHECK(face.is_singleton());
    CHECK((face.first_vertex().coords - vec({1, 0})).norm() == 0.0);
  }

  TEST_CASE("smooth face formula carries the conjugate") {
    const SpaceSpec s(Field::Complex, 2, 3.0);
    Vector u = vec({Scalar(0.6, 0.3), Scalar(-0.2, 0.5)});
    u /= norm(s, u);
    const Functional y = duality_face(s, u).first_vertex();
    for (int i = 0; i < 2; ++i) {
      const Scalar expected = std::conj(sgn(u(i))) * std::pow(std::abs(u(i)), 2.0);
      CHECK(std::abs(y.coords(i) - expected) < 1e-12);
    }
    check_face_member(s, u, y);
  }

  TEST_CASE("real l_inf corner face is the segment between the basis functionals") {
    const SpaceSpec s(Field::Real, 2, kInf);
    const DualityFace face = duality_face(s, vec({1, 1}));
    CHECK_FALSE(face.is_singleton());
    REQUIRE(face.vertex_count().has_value());
    CHECK(*face.vertex_count() == 2);
    const auto vertices = face.extreme_points(10);
    CHECK(has(vertices, vec({1, 0})));
    CHECK(has(vertices, vec({0, 1})));
  }

  TEST_CASE("real l_inf corner face agrees with a brute-force maximization over the dual sphere") {
    // Grid over the l_1 unit circle; maximizers of y(u) must be exactly the face members.
    const SpaceSpec s(Field::Real, 2, kInf);
    const Vector u = vec({1, 1});
    const DualityFace face = duality_face(s, u);
    const int n = 400;
    for (int k = 0; k < 4 * n; ++k) {
      const double t = static_cast<double>(k % n) / n;
      const int quadrant = k / n;
      const double a = (quadrant == 0 || quadrant == 3) ? 1 - t : -(1 - t);
      const double b = quadrant < 2 ? t : -t;
      const Functional y(vec({quadrant == 1 ? -t : a, quadrant == 1 ? 1 - t : b}));
      const bool maximizer = std::abs(pairing(y, u).real() - 1.0) <= 1e-12;
      CHECK(face.contains(y) == maximizer);
    }
  }

  TEST_CASE("real l_1 face at a basis vector leaves the other coordinate free") {
    const SpaceSpec s(Field::Real, 2, 1.0);
    const DualityFace face = duality_face(s, vec({1, 0}));
    for (double t = -1.0; t <= 1.0; t += 0.125) CHECK(face.contains(Functional(vec({1, t}))));
    CHECK_FALSE(face.contains(Functional(vec({1, 1.01}))));
    CHECK_FALSE(face.contains(Functional(vec({0.9, 0}))));
    const auto vertices = face.extreme_points(10);
    CHECK(vertices.size() == 2);
    CHECK(has(vertices, vec({1, 1})));
    CHECK(has(vertices, vec({1, -1})));
  }

  TEST_CASE("sample_face on a singleton returns it once") {
    const SpaceSpec s(Field::Real, 2, 2.0);
    const auto ys = sample_face(duality_face(s, vec({0.6, 0.8})), 5, 0);
    REQUIRE(ys.size() == 1);
    CHECK((ys[0].coords - vec({0.6, 0.8})).norm() < 1e-15);
  }

  TEST_CASE("sample_face on the l_inf corner lists vertices then the midpoint") {
    const SpaceSpec s(Field::Real, 2, kInf);
    const auto ys = sample_face(duality_face(s, vec({1, 1})), 3, 0);
    REQUIRE(ys.size() == 3);
    CHECK(has(ys, vec({1, 0})));
    CHECK(has(ys, vec({0, 1})));
    CHECK((ys[2].coords - vec({0.5, 0.5})).norm() < 1e-15);
  }

  TEST_CASE("sample_face on a complex l_1 face stays in the face") {
    const SpaceSpec s(Field::Complex, 3, 1.0);
    const Vector u = vec({1, 0, 0});
    const DualityFace face = duality_face(s, u);
    const auto ys = sample_face(face, 8, 5);
    CHECK(ys.size() == 8);
    for (const Functional& y : ys) {
      CHECK(std::abs(y.coords(0) - 1.0) < 1e-12);
      CHECK(std::abs(y.coords(1)) <= 1.0 + 1e-12);
      CHECK(std::abs(y.coords(2)) <= 1.0 + 1e-12);
      check_face_member(s, u, y);
      CHECK(face.contains(y));
    }
  }

  TEST_CASE("sample_face output always satisfies the face invariants") {
    std::mt19937_64 rng(3);
    for (auto field : {Field::Real, Field::Complex})
      for (double p : {1.0, kInf}) {
        const SpaceSpec s(field, 3, p);
        for (int k = 0; k < 30; ++k) {
          Vector u = test::random_unit(rng, s);
          if (k % 3 == 0) {
            // Push onto a lower-dimensional face.
            if (p == kInf) u(1) = u(0) = 1.0;
            else u(1) = u(2) = 0.0;
            u(0) = p == kInf ? Scalar(1.0) : u(0) / std::abs(u(0));
            u /= norm(s, u);
          }
          const auto ys = sample_face(duality_face(s, u), 40, k);
          CHECK_FALSE(ys.empty());
          for (const Functional& y : ys) check_face_member(s, u, y);
        }
      }
  }

  TEST_CASE("smooth faces are exact singletons and the unique maximizer") {
    std::mt19937_64 rng(4);
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
      const SpaceSpec s(Field::Complex, 3, p);
      for (int k = 0; k < 250; ++k) {
        const Vector u = test::random_unit(rng, s);
        const DualityFace face = duality_face(s, u);
        CHECK(face.is_singleton());
        check_face_member(s, u, face.first_vertex());
      }
    }
    // Uniqueness by a grid over the real l_3 dual circle.
    const SpaceSpec s(Field::Real, 2, 3.0);
    for (int k = 0; k < 50; ++k) {
      const Vector u = test::random_unit(rng, s);
      const Functional y = duality_face(s, u).first_vertex();
      double best = -kInf;
      Vector arg;
      const int n = 20000;
      for (int j = 0; j < n; ++j) {
        const double a = 2.0 * M_PI * j / n;
        const Vector z = normalize_dual(s, vec({std::cos(a), std::sin(a)})).coords;
        const double value = pairing(Functional(z), u).real();
        if (value > best) best = value, arg = z;
      }
      CHECK((arg - y.coords).norm() < 2e-3);
    }
  }

  TEST_CASE("duality_face rejects non-unit vectors") {
    CHECK_THROWS_AS(duality_face({Field::Real, 2, 2.0}, vec({0.5, 0})), InputError);
  }

  TEST_CASE("near_norming stays in the spherical cap") {
    const SpaceSpec s(Field::Real, 2, 2.0);
    const auto ys = near_norming(s, vec({1, 0}), 0.5, 500, 0);
    CHECK_FALSE(ys.empty());
    for (const Functional& y : ys) {
      CHECK(y.coords(0).real() > 0.5);
      CHECK(std::abs(dual_norm(s, y) - 1.0) <= 1e-9);
    }
  }

  TEST_CASE("near_norming is empty below the threshold") {
    const SpaceSpec s(Field::Real, 2, 2.0);
    CHECK(near_norming(s, vec({0.9, 0}), 0.05, 500, 0).empty());
    CHECK(near_norming(s, vec({0, 0}), 0.5, 500, 0).empty());
    CHECK_FALSE(near_norming(s, vec({0.9, 0}), 0.11, 500, 0).empty());
  }

  TEST_CASE("near_norming reaches the far end of the l_inf corner") {
    const SpaceSpec s(Field::Real, 2, kInf);
    for (double n : {4.0, 10.0, 100.0}) {
      const auto ys = near_norming(s, vec({1, 1 - 1 / n}), 1.5 / n, 2000, 1);
      CHECK(has(ys, vec({0, 1}), 1e-6));
    }
  }

  TEST_CASE("near_norming rejects nonpositive eps") {
    CHECK_THROWS_AS(near_norming({Field::Real, 2, 2.0}, vec({1, 0}), 0.0, 10, 0), InputError);
  }

  TEST_CASE("near_norming output satisfies the strict bound in every space") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (auto field : {Field::Real, Field::Complex})
      for (double p : {1.0, 1.5, 2.0, 4.0, kInf}) {
        const SpaceSpec s(field, 3, p);
        for (int k = 0; k < 10; ++k) {
          const Vector u = test::random_unit(rng, s) * (0.3 + 0.7 * unif(rng));
          const double eps = std::pow(2.0, -1.0 - 10.0 * unif(rng));
          const auto ys = near_norming(s, u, eps, 300, k);
          CHECK(ys.empty() == (norm(s, u) <= 1.0 - eps));
          for (const Functional& y : ys) {
            CHECK(pairing(y, u).real() > 1.0 - eps);
            CHECK(std::abs(dual_norm(s, y) - 1.0) <= 1e-9);
          }
        }
      }
  }

  TEST_CASE("near_norming is deterministic given the seed") {
    const SpaceSpec s(Field::Complex, 2, 1.0);
    const Vector u = vec({Scalar(0.5, 0.1), 0.3});
    const auto a = near_norming(s, u, 0.3, 200, 9), b = near_norming(s, u, 0.3, 200, 9);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].coords == b[i].coords);
  }
}
