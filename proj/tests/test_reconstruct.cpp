#include "hxray/reconstruct.hpp"
#include "util.hpp"

#include <doctest.h>

using namespace hxray;
using namespace hxray::reconstruct;
using testutil::vec;

namespace {

Quadrature fast() {
  Quadrature q;
  q.grid_nodes = 25;
  q.grid_halfwidth = 5.0;
  q.period_nodes = 16;
  q.line_density = 4;
  return q;
}

}  // namespace

TEST_CASE("slice identity on the 3D group") {
  const auto S = algebra::heisenberg(1);
  const auto f = TestFunction::gaussian(2, 1, 0.5, 0.5);
  const FockBasis B(1, 8);
  const Vec nu = vec({0.6, 0.8}), lam = vec({1.0});
  SliceOptions o;
  o.interior_degree = 4;
  const auto r = slice_verify(S, f, nu, lam, frequency::parallel_pair(lam, 1), B, fast(), o);
  CHECK(r.residual <= 1e-3);
  o.method = LhsMethod::CentralAnalytic;
  const auto r2 = slice_verify(S, f, nu, lam, frequency::parallel_pair(lam, 1), B, fast(), o);
  CHECK(r2.residual <= 1e-3);
}

TEST_CASE("scalar slice") {
  const auto S = algebra::heisenberg(1);
  const auto f = TestFunction::gaussian(2, 1, 0.5, 0.5);
  Quadrature q = fast();
  q.grid_nodes = 35;
  q.grid_halfwidth = 7.0;
  const auto r = scalar_slice_verify(S, f, vec({0.6, 0.8}), vec({1.0}), {vec({0.5, 0.0}), vec({0.3, -0.7})}, q);
  CHECK(r.residual <= 1e-6);
  CHECK(r.residual_inner > 1e-3);
}

TEST_CASE("recovery from exact multipliers") {
  const auto S = algebra::heisenberg(1);
  const FockBasis B(1, 8);
  const Vec lam = vec({1.0});
  const auto p = frequency::parallel_pair(lam, 1);
  std::mt19937_64 rng(3);
  CMat X = CMat::Random(B.size(), B.size());
  const int u = B.L() - 1;
  X.bottomRows(B.size() - B.interior_size(u)).setZero();
  std::vector<FockOperator> J;
  std::vector<CMat> b;
  for (const auto &nu : sample_directions(S, lam, 8, 1)) {
    J.push_back(frequency::multiplier_J_spectral(S, nu, lam, p, B));
    b.push_back(J.back().entries * X);
  }
  const auto r = recover_from_multipliers(J, b, u, 1e-10);
  CHECK(r.invertible);
  CHECK((r.X.entries - X).norm() <= 1e-8 * X.norm());
  const auto ra = recover_from_multipliers(J, b, u, 1e-10, Solver::Averaged,
                                           frequency::averaged_normal_eigenvalues(1, 1, std::sqrt(2.0), B.L()));
  CHECK(ra.invertible);
}

TEST_CASE("degree 1 obstruction is reported") {
  const FockBasis B(1, 6);
  CVec w(1);
  std::vector<FockOperator> J;
  std::vector<CMat> b;
  for (int i = 0; i < 4; ++i) {
    w(0) = std::sqrt(2.0) * std::exp(cplx(0.0, 0.4 * i));
    J.push_back(frequency::spectral_form(0, w, B));
    b.push_back(CMat::Zero(B.size(), B.size()));
  }
  const auto r = recover_from_multipliers(J, b, B.L(), 1e-8);
  CHECK_FALSE(r.invertible);
  CHECK(r.witness_degree == 1);
}

TEST_CASE("direction samples are unit vectors") {
  const auto Q = algebra::quaternionic();
  const auto d = sample_directions(Q, vec({0.3, -0.4, 1.2}), 5, 2);
  CHECK(d.size() == 5);
  for (const auto &v : d) CHECK(v.norm() == doctest::Approx(1.0));
  CHECK((sample_directions(Q, vec({0.3, -0.4, 1.2}), 5, 2)[3] - d[3]).norm() == 0.0);
}

TEST_CASE("coverage of the frequency line") {
  const auto S = algebra::heisenberg(1);
  const auto g = line_grid(0.5, 4.0);
  CHECK(g.size() == 17);
  const auto m = charge_frequency_map(S, {vec({1.0})}, g, true);
  // reachable: mu = 2 k |lambda| lambda with k odd -> +-2
  CHECK(m.reachable_count == 2);
  CHECK(m.unreachable_radius == doctest::Approx(4.0));
  const auto m2 = charge_frequency_map(S, {vec({1.0})}, g, false);
  CHECK(m2.reachable_count == 4);
  // more charges reach more points
  const auto m3 = charge_frequency_map(S, {vec({1.0}), vec({0.5}), vec({1.0 / 3.0})}, g, true);
  CHECK(m3.reachable_count > m.reachable_count);
}

TEST_CASE("shell support experiment") {
  const auto r1 = shell_experiment(1.0, 0.5, 0.01, 20.0);
  CHECK(r1.threshold == doctest::Approx(r1.construction_radius).epsilon(1e-12));
  CHECK(r1.construction_radius == doctest::Approx(6.0));
  CHECK(r1.stated_bound == doctest::Approx(10.0));
  const auto r2 = shell_experiment(2.0, 0.5, 0.04, 80.0);
  CHECK(r2.threshold == doctest::Approx(4.0 * r1.threshold).epsilon(1e-12));
  CHECK(r2.constant == doctest::Approx(r1.constant).epsilon(1e-12));
  CHECK(shell_experiment(1.0, 2.0, 0.01, 20.0).threshold < r1.threshold);
}

TEST_CASE("sphere charges reach every frequency") {
  const auto g = shell_grid(3, 5.0, 10, 60);
  const auto r = sphere_experiment(1.0, g);
  CHECK(r.map.reachable_count == r.map.nonzero_count);
  const auto c = cap_experiment(vec({0.0, 0.0, 1.0}), 0.2, g);
  CHECK(c.map.reachable_count < c.map.nonzero_count);
}

TEST_CASE("injectivity experiment at desk scale") {
  const auto S = algebra::heisenberg(1);
  const auto f = TestFunction::gaussian(2, 1, 0.5, 0.5);
  const FockBasis B(1, 8);
  InjectivityOptions o;
  o.slice.interior_degree = 4;
  const auto r = injectivity_experiment(S, f, {vec({1.0})}, {vec({2.0})}, B, fast(), o);
  REQUIRE(r.points.size() == 1);
  CHECK(r.points[0].invertible);
  CHECK(r.max_error <= 1e-2);
  CHECK(r.max_null <= 1e-8);
}
