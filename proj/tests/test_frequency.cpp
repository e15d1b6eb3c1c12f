#include "hxray/frequency.hpp"
#include "oracle_values.hpp"
#include "util.hpp"

#include <doctest.h>

using namespace hxray;
using namespace hxray::frequency;
using testutil::vec;

TEST_CASE("compatibility") {
  CHECK(compatible(vec({1.0}), vec({2.0})) == 1);
  CHECK(compatible(vec({1.0}), vec({-4.0})) == -2);
  CHECK(compatible(vec({0.5}), vec({0.5})) == 1);
  CHECK_FALSE(compatible(vec({1.0}), vec({3.0})).has_value());
  const Vec l = vec({0.3, -0.4, 1.2});
  const auto p = parallel_pair(l, 3);
  CHECK(compatible(l, p.mu) == 3);
  // transverse components do not affect compatibility
  const Vec t = vec({0.4, 0.3, 0.0});
  CHECK(compatible(l, p.mu + t) == 3);
  const auto rc = relation_coords(make_pair(l, p.mu + t));
  CHECK(rc.two_k == 6);
  CHECK((from_relation_coords(rc, l.norm()).mu - (p.mu + t)).norm() <= 1e-12);
  CHECK_THROWS_AS(make_pair(vec({1.0}), vec({3.0})), Error);
  // mu = 2k for 0 < |k| <= 5
  CHECK(lattice_dual(vec({1.0}), 10.0).size() == 10);
}

TEST_CASE("group Fourier transform of a Gaussian") {
  const auto S = algebra::heisenberg(1);
  const auto f = TestFunction::gaussian(2, 1, 0.5, 0.5);
  const FockBasis B(1, 6);
  const auto F = gft(S, f, vec({2.0}), B, Quadrature{});
  CHECK(std::abs(F.entries(0, 0) - cplx(oracle::kGft00Re, oracle::kGft00Im)) <= 1e-8);
  // radial functions give diagonal transforms
  CHECK((F.entries - CMat(F.entries.diagonal().asDiagonal())).norm() <= 1e-12);
  const cplx s = gft_scalar(S, f, vec({0.3, -0.7}));
  CHECK(std::abs(s - cplx(oracle::kScalarFtRe, oracle::kScalarFtIm)) <= 1e-10);
}

TEST_CASE("Bessel multiplier") {
  const auto S = algebra::heisenberg(1);
  const Vec nu = vec({0.6, 0.8}), lam = vec({1.3});
  // eta orthogonal to the loop plane is impossible for n = 1; use eta = 0
  CHECK(bessel_multiplier(S, nu, lam, vec({0.0, 0.0})) == doctest::Approx(2 * kPi / 1.3));
  const Vec eta = oracle::kJ0FirstZero * 1.3 * nu;
  CHECK(std::abs(bessel_multiplier_projected(nu, lam, eta)) <= 1e-14);
  for (const Vec &e : {vec({0.4, -1.1}), vec({2.0, 0.5})}) {
    const cplx lq = bessel_loop_quadrature(S, nu, lam, e, 128);
    CHECK(std::abs(lq.real() - bessel_multiplier(S, nu, lam, e)) <= 1e-10);
  }
  const auto Q = algebra::quaternionic();
  const Vec qn = vec({0.5, 0.5, 0.5, 0.5}), ql = vec({0.3, -0.4, 1.2}), qe = vec({0.7, -0.2, 0.9, 0.1});
  CHECK(std::abs(bessel_loop_quadrature(Q, qn, ql, qe, 128).real() - bessel_multiplier(Q, qn, ql, qe)) <= 1e-10);
}

TEST_CASE("multiplier closed form agrees with loop quadrature") {
  const auto S = algebra::heisenberg(1);
  const FockBasis B(1, 12);
  const Vec nu = vec({0.6, 0.8}), lam = vec({1.0});
  for (int k : {1, 2}) {
    const auto p = parallel_pair(lam, k);
    const auto a = multiplier_J_quadrature(S, nu, lam, p, B, Quadrature{});
    const auto b = multiplier_J_spectral(S, nu, lam, p, B);
    const int I = B.interior_size(6);
    CHECK((a.entries - b.entries).topLeftCorner(I, I).norm() <= 1e-8);
    CHECK(b.off_block_mass(k) <= 1e-10);
    CHECK(a.off_block_mass(k) <= 1e-10);
  }
  const auto Q = algebra::quaternionic();
  const FockBasis BQ(2, 8);
  const Vec ql = vec({0.3, -0.4, 1.2});
  const auto pq = parallel_pair(ql, 1);
  const auto a = multiplier_J_quadrature(Q, vec({0.5, 0.5, 0.5, 0.5}), ql, pq, BQ, Quadrature{});
  const auto b = multiplier_J_spectral(Q, vec({0.5, 0.5, 0.5, 0.5}), ql, pq, BQ);
  const int I = BQ.interior_size(4);
  CHECK((a.entries - b.entries).topLeftCorner(I, I).norm() <= 1e-8);
  CHECK_FALSE(spectral_valid(ql, pq.mu + vec({0.4, 0.3, 0.0})));
}

TEST_CASE("small w limit of the spectral form") {
  const FockBasis B(1, 4);
  const double w = 1e-3;
  CVec wz(1);
  wz(0) = w;
  const auto A = spectral_form(2, wz, B);
  // (0 -> 2) entry ~ (2 pi)^{1/2} Phi_{02}(w) ~ (w / sqrt 2)^2 / sqrt(2!)
  CHECK(std::abs(A.entries(2, 0)) == doctest::Approx(w * w / 2 / std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("normal operator is positive and block diagonal") {
  const auto S = algebra::heisenberg(2);
  const FockBasis B(2, 5);
  const Vec lam = vec({1.0});
  const auto p = parallel_pair(lam, 1);
  const Vec nu = vec({0.5, -0.5, 0.5, 0.5});
  const auto N = normal_op(S, nu, lam, p, B, Quadrature{});
  const auto J = multiplier_J(S, nu, lam, p, B, Quadrature{});
  CHECK((N.entries - J.entries.adjoint() * J.entries).norm() <= 1e-12);
  Eigen::SelfAdjointEigenSolver<CMat> es(N.entries);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  CHECK(N.off_block_mass(0) <= 1e-10);
}

TEST_CASE("averaged eigenvalues") {
  for (const auto &c : oracle::kAveragedEigenN1) {
    const auto e = averaged_normal_eigenvalues(1, c.k, c.w, c.l);
    CHECK(std::abs(e[c.l] - c.value) <= 1e-12 * std::max(1.0, c.value));
    CHECK(averaged_normal_eigenvalue_reduced(1, c.l, c.k, c.w) == doctest::Approx(e[c.l]).epsilon(1e-12).scale(1e-14));
  }
  CHECK(std::abs(averaged_normal_eigenvalues(1, 0, std::sqrt(2.0), 3)[1]) <= 1e-12);
  for (int l = 0; l <= 5; ++l)
    CHECK(averaged_normal_eigenvalues(2, 2, 1.1, 5)[l] ==
          doctest::Approx(averaged_normal_eigenvalue_reduced(2, l, 2, 1.1)).epsilon(1e-12));
}

TEST_CASE("lower bound for n = 2") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ud(0.05, 4.0);
  for (int i = 0; i < 50; ++i) {
    const int l = static_cast<int>(rng() % 7), k = static_cast<int>(rng() % 5);
    const double w = ud(rng);
    const double lb = eigenvalue_lower_bound(2, l, k, w);
    CHECK(lb > 0.0);
    CHECK(lb <= averaged_normal_eigenvalues(2, k, w, l)[l] * (1 + 1e-12));
  }
  CHECK_THROWS_AS(eigenvalue_lower_bound(1, 0, 0, 1.0), Error);
}

TEST_CASE("Monte Carlo average matches the exact eigenvalues") {
  const auto S = algebra::heisenberg(2);
  const FockBasis B(2, 4);
  const Vec lam = vec({1.0});
  const auto p = parallel_pair(lam, 1);
  const auto r = averaged_normal_mc(S, lam, p, B, 2000, 7);
  for (int l = 0; l <= 2; ++l) CHECK(r.block_deviation[l] <= 3 * r.block_sigma[l] + 1e-12);
  const auto r1 = averaged_normal_mc(S, lam, p, B, 1, 7);
  const auto U = haar_unitary(2, 7, 0);
  CHECK((U.adjoint() * U - CMat::Identity(2, 2)).norm() <= 1e-13);
  CHECK(r1.samples == 1);
  // deterministic in the seed
  const auto r2 = averaged_normal_mc(S, lam, p, B, 50, 7);
  const auto r3 = averaged_normal_mc(S, lam, p, B, 50, 7, Quadrature{}, Exec{3});
  CHECK((r2.mean.entries - r3.mean.entries).norm() == 0.0);
}

TEST_CASE("invertibility certificates") {
  const auto c0 = invertibility_certificate(averaged_normal_eigenvalues(1, 0, std::sqrt(2.0), 6), 1e-12);
  CHECK_FALSE(c0.invertible);
  CHECK(c0.witness_degree == 1);
  const auto S = algebra::heisenberg(1);
  const FockBasis B(1, 6);
  for (int k : {1, 3, -1}) {
    const auto p = parallel_pair(vec({0.7}), k);
    CHECK(invertibility_certificate(S, vec({0.7}), p, B, 1e-12).invertible);
  }
  const auto H2 = algebra::heisenberg(2);
  const FockBasis B2(2, 4);
  CHECK(invertibility_certificate(H2, vec({1.0}), parallel_pair(vec({1.0}), 2), B2, 1e-12).invertible);
}

TEST_CASE("dilation lemma") {
  const auto S = algebra::heisenberg(1);
  CHECK(dilation_exponent(S) == 4.0);
  CHECK(dilation_exponent(algebra::quaternionic()) == 10.0);
  const auto f = TestFunction::gaussian(2, 1, 0.5, 0.5);
  const FockBasis B(1, 6);
  CHECK(dilation_lemma_check(S, f, vec({2.0}), 1.0, B, Quadrature{}) <= 1e-14);
  CHECK(dilation_lemma_check(S, f, vec({2.0}), 2.0, B, Quadrature{}) <= 1e-7);
}
