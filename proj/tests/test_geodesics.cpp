#include "hxray/geodesics.hpp"
#include "oracle_values.hpp"
#include "util.hpp"

#include <doctest.h>

using namespace hxray;
using namespace hxray::geodesics;
using testutil::vec;

TEST_CASE("flow from the origin matches an ODE integration") {
  for (const auto &c : oracle::kFlow) {
    const auto S = algebra::heisenberg(c.n);
    const Vec nu = Eigen::Map<const Vec>(c.nu, 2 * c.n);
    const auto p = flow_origin(S, nu, vec({c.lambda}), c.s);
    for (int i = 0; i < 2 * c.n; ++i) CHECK(p.x(i) == doctest::Approx(c.x[i]).epsilon(1e-10).scale(1.0));
    CHECK(p.u(0) == doctest::Approx(c.u).epsilon(1e-10));
  }
}

TEST_CASE("full loop returns to the center axis") {
  const auto S = algebra::heisenberg(1);
  const auto p = flow_origin(S, vec({1, 0}), vec({1}), 2 * kPi);
  CHECK(p.x.norm() <= 1e-14);
  CHECK(p.u(0) == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("helical identity") {
  const auto S = algebra::heisenberg(1);
  for (int k : {1, -2, 3}) {
    const auto [a, b] = helical_shift(S, vec({0.6, 0.8}), vec({1.0}), 0.37, k);
    CHECK((a.x - b.x).norm() <= 1e-12);
    CHECK((a.u - b.u).norm() <= 1e-12 * (1.0 + a.u.norm()));
  }
  const auto Q = algebra::quaternionic();
  const auto [a, b] = helical_shift(Q, vec({0.5, 0.5, 0.5, 0.5}), vec({0.3, -0.4, 1.2}), 1.1, 1);
  CHECK((a.x - b.x).norm() + (a.u - b.u).norm() <= 1e-12 * (1.0 + a.u.norm()));
}

TEST_CASE("geodesics have unit speed and horizontal velocity") {
  const auto S = algebra::quaternionic();
  const GeodesicSpec g{{vec({0.3, -0.1, 0.2, 0.5}), vec({1, 2, -1})}, vec({0.5, 0.5, 0.5, 0.5}),
                       vec({0.3, -0.4, 1.2})};
  check_spec(S, g);
  const double h = 1e-5;
  for (double s : {0.0, 1.3, 7.9}) {
    const auto a = geodesic_point(S, g, s - h), b = geodesic_point(S, g, s + h), p = geodesic_point(S, g, s);
    const Vec dx = (b.x - a.x) / (2 * h), du = (b.u - a.u) / (2 * h);
    CHECK(dx.norm() == doctest::Approx(1.0).epsilon(1e-8));
    // horizontal: du = (1/2) omega(x, dx)
    CHECK((du - 0.5 * algebra::omega(S, p.x, dx)).norm() <= 1e-8);
  }
}

TEST_CASE("momentum is conserved along translated geodesics") {
  const auto S = algebra::heisenberg(2);
  std::mt19937_64 rng(5);
  const Vec nu = testutil::unit(rng, 4), lam = vec({0.8});
  const algebra::GroupPoint base{testutil::random_vec(rng, 4), testutil::random_vec(rng, 1)};
  const GeodesicSpec g{base, nu, lam};
  MomentumPair m0;
  for (int i = 0; i <= 50; ++i) {
    const double s = 20.0 * i / 50;
    const auto p = geodesic_point(S, g, s);
    const auto m = momentum_left(S, p, {rotate(S, lam, s, nu), lam});
    if (i == 0) m0 = m;
    CHECK((m.nu - m0.nu).norm() <= 1e-11);
  }
}

TEST_CASE("small charge continuity") {
  const auto S = algebra::heisenberg(1);
  const Vec nu = vec({0.6, 0.8});
  for (double s : {0.5, 3.0, 5.0}) {
    const auto a = flow_origin(S, nu, vec({1e-8}), s);
    const auto b = flow_origin(S, nu, vec({0.0}), s);
    CHECK((a.x - b.x).norm() + (a.u - b.u).norm() <= 1e-6);
  }
}

TEST_CASE("guiding center on the centered curve") {
  const auto S = algebra::heisenberg(1);
  const Vec nu = vec({0.6, 0.8}), lam = vec({1.3});
  const auto p = gamma_centered(S, nu, lam, 0.9);
  CHECK(guiding_center(S, p, rotate(S, lam, 0.9, nu), lam).norm() <= 1e-12);
}

TEST_CASE("invalid specs are rejected") {
  const auto S = algebra::heisenberg(1);
  CHECK_THROWS_AS(check_spec(S, {algebra::identity(S), vec({1, 1}), vec({1})}), Error);
  CHECK_THROWS_AS(check_spec(S, {algebra::identity(S), vec({1, 0, 0}), vec({1})}), Error);
}
