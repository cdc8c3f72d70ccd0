#include <cmath>
#include "doctest.h"
#include "numrange/duality.hpp"
#include "numrange/harris.hpp"
#include "support.hpp"

using namespace numrange;
using numrange::test::vec;

TEST_SUITE("harris") {
  TEST_CASE("single norming atom is returned with slack") {
    const auto pair = make_finite_pair({Field::Real, 2, 2.0}, {"a"}, {vec({1, 0})}, {vec({0.3, 0.8})});
    AtomicState state{{{1.0, Functional(vec({1, 0})), 0}}};
    const HarrisCertificate c = harris_extract(pair, state, 0.1);
    CHECK(c.atom == 0);
    CHECK(c.f_bound_holds);
    CHECK(c.g_bound_holds);
    CHECK(c.state_quality == 0.0);
  }

  TEST_CASE("violating atom is filtered out") {
    const auto pair = make_finite_pair({Field::Real, 2, 2.0}, {"a", "b"}, {vec({1, 0}), vec({0, 0.2})},
                                       {vec({0.5, 0}), vec({0, 1})});
    AtomicState state{{{0.99, Functional(vec({1, 0})), 0}, {0.01, Functional(vec({0, 1})), 1}}};
    const double eps = 0.5;
    const HarrisCertificate c = harris_extract(pair, state, eps);
    CHECK(c.atom == 0);
    CHECK(c.k_set == std::vector<std::size_t>{1});
    CHECK(c.j_set == std::vector<std::size_t>{0});
    CHECK(c.k_weight < c.eps_prime);
    CHECK(c.f_bound_holds);
    CHECK(c.g_bound_holds);
  }

  TEST_CASE("low quality state reports the smallest admissible eps") {
    const auto pair = make_finite_pair({Field::Real, 2, 2.0}, {"a", "b"}, {vec({1, 0}), vec({0, 0.2})},
                                       {vec({0.5, 0}), vec({0, 1})});
    AtomicState state{{{0.85, Functional(vec({1, 0})), 0}, {0.15, Functional(vec({0, 1})), 1}}};
    try {
      harris_extract(pair, state, 0.1);
      FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
      const double needed = harris_min_admissible_eps(state.quality(pair), pair.f_sup);
      CHECK(std::string(e.what()).find("eps") != std::string::npos);
      CHECK(needed > 0.1);
      CHECK_NOTHROW(harris_extract(pair, state, needed * 1.01));
    }
  }

  TEST_CASE("quality of at least 1/4 is never admissible") {
    CHECK(std::isinf(harris_min_admissible_eps(0.25, 1.0)));
    CHECK(harris_eps_prime(10.0, 0.1) == doctest::Approx(0.5));
    const auto pair = make_finite_pair({Field::Real, 2, 2.0}, {"a", "b"}, {vec({1, 0}), vec({0, 0.2})},
                                       {vec({0.5, 0}), vec({0, 1})});
    AtomicState state{{{0.5, Functional(vec({1, 0})), 0}, {0.5, Functional(vec({0, 1})), 1}}};
    CHECK_THROWS_AS(harris_extract(pair, state, 100.0), PreconditionError);
  }

  TEST_CASE("eps prime follows the sup of f") {
    CHECK(harris_eps_prime(0.1, 0.5) == doctest::Approx(0.05));
    CHECK(harris_eps_prime(0.1, 4.0) == doctest::Approx(0.0125));
    CHECK(harris_eps_prime(0.1, 0.0) == doctest::Approx(0.05));
  }

  TEST_CASE("state validation") {
    const auto pair = make_finite_pair({Field::Real, 2, 2.0}, {"a"}, {vec({1, 0})}, {vec({0, 1})});
    CHECK_THROWS(AtomicState{{{0.9, Functional(vec({1, 0})), 0}}}.validate(pair));
    CHECK_THROWS(AtomicState{{{1.0, Functional(vec({2, 0})), 0}}}.validate(pair));
    CHECK_THROWS(AtomicState{{{1.0, Functional(vec({1, 0})), 3}}}.validate(pair));
    CHECK_NOTHROW(AtomicState{{{1.0, Functional(vec({1, 0})), 0}}}.validate(pair));
  }

  TEST_CASE("random admissible states satisfy both bounds") {
    std::mt19937_64 rng(30);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const SpaceSpec s(trial % 2 ? Field::Complex : Field::Real, 2 + trial % 2, trial % 3 == 0 ? kInf : 2.0);
      std::vector<std::string> labels;
      std::vector<Vector> g, f;
      for (int i = 0; i < 5; ++i) {
        labels.push_back("t" + std::to_string(i));
        const Vector x = test::random_unit(rng, s);
        g.push_back(i < 2 ? x : Vector(x * (0.5 + 0.5 * u(rng))));
        f.push_back(test::random_vector(rng, s.dim, s.is_complex()));
      }
      const IndexedPair pair = make_finite_pair(s, labels, g, f);
      const double eps = 0.05 + 0.3 * u(rng);
      const double ep = harris_eps_prime(eps, pair.f_sup);
      // Mostly norming atoms plus a light atom on an interior point, keeping delta < ep^2.
      AtomicState state;
      const double light = 0.5 * ep * ep;
      state.atoms.push_back({(1 - light) * 0.6, norming_functional(s, g[0]), 0});
      state.atoms.push_back({(1 - light) * 0.4, norming_functional(s, g[1]), 1});
      state.atoms.push_back({light, norming_functional(s, g[2 + trial % 3]), static_cast<std::size_t>(2 + trial % 3)});
      REQUIRE(state.quality(pair) < ep * ep);
      const HarrisCertificate c = harris_extract(pair, state, eps);
      const Scalar phi_f = state.apply(pair.f);
      const Functional& y = state.atoms[c.atom].functional;
      CHECK(pairing(y, pair.f[c.source]).real() > phi_f.real() - eps);
      CHECK(pairing(y, pair.g[c.source]).real() > 1 - eps);
      CHECK(c.f_bound_holds);
      CHECK(c.g_bound_holds);
      ++checked;
    }
    CHECK(checked == 100);
  }
}
