#include "hxray/algebra.hpp"
#include "util.hpp"

#include <doctest.h>

using namespace hxray;
using namespace hxray::algebra;
using testutil::vec;

TEST_CASE("generators satisfy the Clifford relations") {
  std::mt19937_64 rng(1);
  for (const auto &S : {heisenberg(1), heisenberg(2), quaternionic()}) {
    for (int i = 0; i < 200; ++i) {
      const Vec mu = testutil::random_vec(rng, S.m, 2.0);
      const Mat J = j_map(S, mu);
      const Mat R = J * J + mu.squaredNorm() * Mat::Identity(S.dim_v(), S.dim_v());
      CHECK(R.norm() <= 1e-12 * mu.squaredNorm());
      CHECK((J + J.transpose()).norm() == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("custom structure validation") {
  const Mat J = standard_j(1);
  CHECK(custom(1, {J}).m == 1);
  CHECK_THROWS_AS(custom(1, {J, J}), Error);
  Mat bad = J;
  bad(0, 1) = -2.0;
  CHECK_THROWS_AS(custom(1, {bad}), Error);
}

TEST_CASE("group law") {
  const auto S = heisenberg(1);
  const auto p = group_mul(S, {vec({1, 0}), vec({0})}, {vec({0, 1}), vec({0})});
  CHECK(p.x(0) == 1.0);
  CHECK(p.x(1) == 1.0);
  CHECK(p.u(0) == doctest::Approx(0.5));

  std::mt19937_64 rng(2);
  for (const auto &T : {heisenberg(2), quaternionic()}) {
    for (int i = 0; i < 100; ++i) {
      auto r = [&] { return GroupPoint{testutil::random_vec(rng, T.dim_v()), testutil::random_vec(rng, T.m)}; };
      const auto a = r(), b = r(), c = r();
      const auto l = group_mul(T, group_mul(T, a, b), c), rr = group_mul(T, a, group_mul(T, b, c));
      CHECK((l.x - rr.x).norm() <= 1e-13);
      CHECK((l.u - rr.u).norm() <= 1e-13 * (1.0 + l.u.norm()));
      const auto e = group_mul(T, a, group_inv(T, a));
      CHECK(e.x.norm() + e.u.norm() <= 1e-14);
      const double eps = 1.7;
      const auto d1 = dilate(eps, group_mul(T, a, b));
      const auto d2 = group_mul(T, dilate(eps, a), dilate(eps, b));
      CHECK((d1.x - d2.x).norm() + (d1.u - d2.u).norm() <= 1e-13 * (1.0 + d1.u.norm()));
    }
  }
}

TEST_CASE("dilation") {
  const auto d = dilate(2.0, {vec({1, 2}), vec({3})});
  CHECK(d.x(1) == 4.0);
  CHECK(d.u(0) == 12.0);
}

TEST_CASE("rotation frame brings J_mu to standard form") {
  std::mt19937_64 rng(3);
  for (const auto &S : {heisenberg(2), quaternionic()}) {
    for (int i = 0; i < 20; ++i) {
      const Vec mu = testutil::random_vec(rng, S.m);
      const Mat R = rotation_frame(S, mu);
      CHECK((R.transpose() * R - Mat::Identity(S.dim_v(), S.dim_v())).norm() <= 1e-12);
      CHECK((j_map(S, mu) - mu.norm() * R * standard_j(S.n) * R.transpose()).norm() <= 1e-11);
    }
  }
}

TEST_CASE("alpha homomorphism") {
  std::mt19937_64 rng(4);
  const auto S = quaternionic();
  for (int i = 0; i < 20; ++i) {
    const Vec mu = testutil::random_vec(rng, 3);
    const GroupPoint p{testutil::random_vec(rng, 4), testutil::random_vec(rng, 3)};
    const GroupPoint q{testutil::random_vec(rng, 4), testutil::random_vec(rng, 3)};
    const auto a = alpha_homomorphism(S, mu, group_mul(S, p, q));
    const auto b = heisenberg_mul(alpha_homomorphism(S, mu, p), alpha_homomorphism(S, mu, q));
    CHECK((a.z - b.z).norm() <= 1e-12);
    CHECK(std::abs(a.t - b.t) <= 1e-12 * (1.0 + std::abs(a.t)));
  }
}

TEST_CASE("complex identification round trip") {
  const Vec z = vec({1, 2, 3, 4});
  const CVec c = to_complex(z);
  CHECK(c(0) == cplx(1, 3));
  CHECK(c(1) == cplx(2, 4));
  CHECK((from_complex(c) - z).norm() == 0.0);
}
