#include "hxray/reconstruct.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

namespace hxray::reconstruct {

namespace {

std::vector<quad::Rule1D> horizontal_rules(const HTypeStructure &S, const transform::Support &sp,
                                           double h, const Quadrature &q, bool uniform) {
  std::vector<quad::Rule1D> rules;
  for (int j = 0; j < S.dim_v(); ++j) {
    if (uniform) {
      rules.push_back(quad::trapezoid(sp.x_center(j) - q.grid_halfwidth, sp.x_center(j) + q.grid_halfwidth,
                                      q.grid_nodes));
    } else {
      const double c = sp.x_rate + 0.25 * h;
      rules.push_back(quad::gauss_hermite_plain(q.volume_order, sp.x_rate * sp.x_center(j) / c, c));
    }
  }
  return rules;
}

// Central nodes over G_lambda: one period along lambda-hat, Gauss-Hermite across.
void quotient_central(const Vec &lambda, const transform::Support &sp, const Quadrature &q,
                      std::vector<Vec> &us, std::vector<double> &ws) {
  const int m = static_cast<int>(lambda.size());
  Mat Bu(m, m);
  const Vec lh = lambda.normalized();
  Bu.col(0) = lh;
  if (m > 1) Bu.rightCols(m - 1) = transform::orth_complement(lh);
  std::vector<quad::Rule1D> ur{quad::periodic(transform::central_period(lambda), q.period_nodes)};
  const Vec uc = Bu.transpose() * sp.u_center;
  for (int j = 1; j < m; ++j) ur.push_back(quad::gauss_hermite_plain(q.central_order, uc(j), sp.u_rate));
  const quad::TensorGrid g = quad::tensor_grid(ur);
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    us.push_back(Bu * g.points[i]);
    ws.push_back(g.weights[i]);
  }
}

double rel_interior(const CMat &a, const CMat &b) {
  const double nb = b.norm();
  return nb > 0.0 ? (a - b).norm() / nb : (a - b).norm();
}

}  // namespace

FockOperator slice_lhs(const HTypeStructure &S, const TestFunction &f, const Vec &nu, const Vec &lambda,
                       const CompatiblePair &pair, const FockBasis &basis, const Quadrature &q,
                       const SliceOptions &opt, const Exec &ex) {
  require(std::abs(nu.norm() - 1.0) <= 1e-12, ErrorCode::Domain, "slice: |nu| must be 1");
  require(nu.size() == S.dim_v(), ErrorCode::Dimension, "slice: nu has wrong dimension");
  const transform::Support sp = f.support(q.line_tau);
  if (opt.method == LhsMethod::XrayQuadrature) {
    frequency::BatchEval be = [&](const Vec &x, const std::vector<Vec> &us, std::vector<cplx> &out) {
      out = transform::xray_batch_u(S, f, x, us, nu, lambda, q);
    };
    return frequency::gft_quotient(S, be, sp, lambda, pair, basis, q, opt.uniform_x, ex);
  }
  // (x,u) gamma(s) = (x + gx(s), u + gu(s) + omega(x, gx(s))/2); integrating u over G_lambda
  // against e^{-i mu.u} and s over the real line folds into one period of s with the
  // central factor in closed form.
  auto k = frequency::compatible(lambda, pair.mu);
  require(k.has_value() && *k == pair.k, ErrorCode::Incompatible, "slice: incompatible pair");
  const double r = lambda.norm();
  const quad::Rule1D loop = quad::periodic(2.0 * kPi / r, q.loop_nodes);
  std::vector<algebra::GroupPoint> gs;
  for (double s : loop.nodes) gs.push_back(geodesics::gamma_centered(S, nu, lambda, s));
  std::vector<cplx> cft;
  for (std::size_t p = 0; p < f.products().size(); ++p) cft.push_back(f.central_ft(p, pair.mu));
  auto g = [&](const Vec &x) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      const Vec y = x + gs[i].x;
      const Vec v = gs[i].u + 0.5 * algebra::omega(S, x, gs[i].x);
      cplx h = 0.0;
      for (std::size_t p = 0; p < cft.size(); ++p)
        if (cft[p] != cplx(0.0)) h += cft[p] * f.horizontal(p, y);
      acc += loop.weights[i] * h * std::exp(cplx(0.0, pair.mu.dot(v)));
    }
    return acc;
  };
  const auto rules = horizontal_rules(S, sp, pair.mu.norm(), q, opt.uniform_x);
  return frequency::gft_horizontal(S, g, rules, pair.mu, basis, ex);
}

FockOperator slice_rhs(const HTypeStructure &S, const TestFunction &f, const Vec &nu, const Vec &lambda,
                       const CompatiblePair &pair, const FockBasis &basis, const Quadrature &q,
                       const Exec &ex) {
  const FockOperator F = frequency::gft(S, f, pair.mu, basis, q, ex);
  const FockOperator J = frequency::multiplier_J(S, nu, lambda, pair, basis, q);
  return {basis, (2.0 * kPi / lambda.norm()) * J.entries * F.entries};
}

SliceReport slice_verify(const HTypeStructure &S, const TestFunction &f, const Vec &nu, const Vec &lambda,
                         const CompatiblePair &pair, const FockBasis &basis, const Quadrature &q,
                         const SliceOptions &opt, const Exec &ex) {
  SliceReport rep;
  rep.lhs = slice_lhs(S, f, nu, lambda, pair, basis, q, opt, ex);
  rep.rhs = slice_rhs(S, f, nu, lambda, pair, basis, q, ex);
  rep.interior_degree = opt.interior_degree >= 0 ? opt.interior_degree : std::max(0, basis.L() - 4);
  const CMat a = rep.lhs.interior(rep.interior_degree), b = rep.rhs.interior(rep.interior_degree);
  rep.lhs_norm = a.norm();
  rep.rhs_norm = b.norm();
  rep.residual = rel_interior(a, b);
  return rep;
}

ScalarSliceReport scalar_slice_verify(const HTypeStructure &S, const TestFunction &f, const Vec &nu,
                                      const Vec &lambda, const std::vector<Vec> &etas,
                                      const Quadrature &q, const Exec &ex) {
  require(lambda.norm() > 0.0, ErrorCode::Domain, "scalar slice: lambda must be nonzero");
  const transform::Support sp = f.support(q.line_tau);
  std::vector<Vec> us;
  std::vector<double> uw;
  quotient_central(lambda, sp, q, us, uw);
  const auto rules = horizontal_rules(S, sp, 0.0, q, true);
  // I f(x, .) integrated over the central quotient, tabulated on the horizontal grid
  const quad::TensorGrid xg = quad::tensor_grid(rules);
  std::vector<cplx> marg(xg.points.size());
  parallel_for(xg.points.size(), ex, [&](std::size_t i) {
    const auto v = transform::xray_batch_u(S, f, xg.points[i], us, nu, lambda, q);
    cplx a = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) a += uw[j] * v[j];
    marg[i] = a;
  });
  ScalarSliceReport rep;
  rep.etas = etas;
  double dmax = 0.0, dinner = 0.0, rmax = 0.0;
  for (const auto &eta : etas) {
    require(eta.size() == S.dim_v(), ErrorCode::Dimension, "scalar slice: eta has wrong dimension");
    cplx a = 0.0;
    for (std::size_t i = 0; i < xg.points.size(); ++i)
      a += xg.weights[i] * marg[i] * std::exp(cplx(0.0, -eta.dot(xg.points[i])));
    const cplx fs = frequency::gft_scalar(S, f, eta);
    const cplx b = frequency::bessel_multiplier(S, nu, lambda, eta) * fs;
    const cplx c = frequency::bessel_multiplier_projected(nu, lambda, eta) * fs;
    rep.lhs.push_back(a);
    rep.rhs.push_back(b);
    rep.rhs_inner.push_back(c);
    dmax = std::max(dmax, std::abs(a - b));
    dinner = std::max(dinner, std::abs(a - c));
    rmax = std::max(rmax, std::abs(b));
  }
  rep.residual = rmax > 0.0 ? dmax / rmax : dmax;
  rep.residual_inner = rmax > 0.0 ? dinner / rmax : dinner;
  return rep;
}

Recovery recover_from_multipliers(const std::vector<FockOperator> &J, const std::vector<CMat> &b,
                                  int unknown_degree, double tol, Solver solver,
                                  const std::vector<double> &averaged_eigenvalues) {
  require(!J.empty(), ErrorCode::InvalidArgument, "recover: need at least one sample");
  require(J.size() == b.size(), ErrorCode::Dimension, "recover: multiplier and data counts differ");
  require(tol > 0.0, ErrorCode::InvalidArgument, "recover: tol must be positive");
  const FockBasis &basis = J[0].basis;
  require(unknown_degree >= 0 && unknown_degree <= basis.L(), ErrorCode::InvalidArgument,
          "recover: unknown degree out of range");
  const int D = basis.size(), nu = basis.interior_size(unknown_degree);
  const double N = static_cast<double>(J.size());
  CMat Nm = CMat::Zero(nu, nu), rhs = CMat::Zero(nu, D);
  for (std::size_t i = 0; i < J.size(); ++i) {
    require(J[i].basis == basis && b[i].rows() == D && b[i].cols() == D, ErrorCode::Dimension,
            "recover: samples do not share one basis");
    const CMat A = J[i].entries.leftCols(nu);
    Nm.noalias() += A.adjoint() * A / N;
    rhs.noalias() += A.adjoint() * b[i] / N;
  }
  Recovery rec;
  rec.unknown_degree = unknown_degree;
  rec.X = FockOperator::zero(basis);
  Vec diag(nu);
  if (solver == Solver::Averaged) {
    require(static_cast<int>(averaged_eigenvalues.size()) > unknown_degree, ErrorCode::InvalidArgument,
            "recover: averaged solver needs one eigenvalue per degree");
    for (int i = 0; i < nu; ++i) diag(i) = averaged_eigenvalues[basis.degree_of(i)];
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (Nm + Nm.adjoint()));
  rec.max_eigenvalue = solver == Solver::Averaged ? diag.maxCoeff() : es.eigenvalues().maxCoeff();
  rec.clip_level = tol * rec.max_eigenvalue;
  for (int l = 0; l <= unknown_degree; ++l) {
    BlockReport br;
    br.degree = l;
    if (solver == Solver::Averaged) {
      br.min_eigenvalue = br.max_eigenvalue = averaged_eigenvalues[l];
      br.clipped = br.min_eigenvalue <= rec.clip_level ? basis.block_size(l) : 0;
    } else {
      const int s0 = basis.block_start(l), bs = basis.block_size(l);
      const CMat B = Nm.block(s0, s0, bs, bs);
      Eigen::SelfAdjointEigenSolver<CMat> eb(0.5 * (B + B.adjoint()), Eigen::EigenvaluesOnly);
      br.min_eigenvalue = eb.eigenvalues().minCoeff();
      br.max_eigenvalue = eb.eigenvalues().maxCoeff();
      for (int j = 0; j < bs; ++j) br.clipped += eb.eigenvalues()(j) <= rec.clip_level;
    }
    br.recoverable = br.clipped == 0;
    if (!br.recoverable && rec.invertible) {
      rec.invertible = false;
      rec.witness_degree = l;
    }
    rec.blocks.push_back(br);
  }
  if (solver == Solver::Averaged) {
    for (int i = 0; i < nu; ++i)
      if (diag(i) > rec.clip_level) rec.X.entries.row(i) = rhs.row(i) / diag(i);
    return rec;
  }
  Vec inv = Vec::Zero(nu);
  for (int i = 0; i < nu; ++i)
    if (es.eigenvalues()(i) > rec.clip_level) inv(i) = 1.0 / es.eigenvalues()(i);
  const CMat &V = es.eigenvectors();
  rec.X.entries.topRows(nu) = V * inv.cast<cplx>().asDiagonal() * (V.adjoint() * rhs);
  return rec;
}

Recovery recover_block(const HTypeStructure &S, const std::vector<SliceSample> &data, const Vec &mu,
                       const FockBasis &basis, const Quadrature &q, double tol, int unknown_degree,
                       Solver solver) {
  require(!data.empty(), ErrorCode::InvalidArgument, "recover_block: need at least one sample");
  std::vector<FockOperator> J;
  std::vector<CMat> b;
  int kmax = 0;
  for (const auto &d : data) {
    const CompatiblePair pair = frequency::make_pair(d.lambda, mu);
    kmax = std::max(kmax, std::abs(pair.k));
    J.push_back(frequency::multiplier_J(S, d.nu, d.lambda, pair, basis, q));
    b.push_back(d.lhs.entries * (d.lambda.norm() / (2.0 * kPi)));
  }
  if (unknown_degree < 0) unknown_degree = std::max(0, basis.L() - kmax);
  std::vector<double> eig;
  if (solver == Solver::Averaged) {
    for (const auto &d : data)
      require((d.lambda - data[0].lambda).norm() == 0.0, ErrorCode::InvalidArgument,
              "recover_block: averaged solver needs a single charge");
    const CompatiblePair pair = frequency::make_pair(data[0].lambda, mu);
    require(frequency::spectral_valid(pair.lambda, mu), ErrorCode::Domain,
            "recover_block: averaged solver needs mu parallel to lambda");
    eig = frequency::averaged_normal_eigenvalues(S.n, pair.k, std::sqrt(mu.norm()) / pair.lambda.norm(),
                                                 basis.L());
  }
  return recover_from_multipliers(J, b, unknown_degree, tol, solver, eig);
}

std::vector<Vec> sample_directions(const HTypeStructure &S, const Vec &lambda, int count,
                                   std::uint64_t seed) {
  require(count >= 1, ErrorCode::InvalidArgument, "sample_directions: count must be >= 1");
  const Mat R = algebra::rotation_frame(S, lambda);
  const int n = S.n;
  std::vector<Vec> out;
  if (n == 1) {
    // every direction lies on one orbit; spread the samples along it
    for (int i = 0; i < count; ++i) {
      const double t = 2.0 * kPi * i / count;
      out.push_back(R * (Vec(2) << std::cos(t), std::sin(t)).finished());
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int i = 0; i < count; ++i) {
    CVec z(n);
    for (int j = 0; j < n; ++j) z(j) = cplx(nd(rng), nd(rng));
    // fixing the phase of the first coordinate picks one point per orbit
    z(0) = std::abs(z(0));
    z.normalize();
    out.push_back(R * algebra::from_complex(z));
  }
  return out;
}

CoverageMap charge_frequency_map(const HTypeStructure &S, const std::vector<Vec> &Z,
                                 const std::vector<Vec> &grid, bool odd_only) {
  require(!Z.empty(), ErrorCode::InvalidArgument, "charge_frequency_map: Z is empty");
  for (const auto &l : Z) {
    require(l.size() == S.m, ErrorCode::Dimension, "charge_frequency_map: charge has wrong dimension");
    require(l.norm() > 0.0, ErrorCode::Domain, "charge_frequency_map: charges must be nonzero");
  }
  CoverageMap map;
  map.grid = grid;
  map.reachable.assign(grid.size(), false);
  map.k.assign(grid.size(), 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].norm() == 0.0) continue;
    ++map.nonzero_count;
    for (const auto &l : Z) {
      const auto k = frequency::compatible(l, grid[i]);
      if (k && (!odd_only || (*k % 2 != 0))) {
        map.reachable[i] = true;
        map.k[i] = *k;
        break;
      }
    }
    if (map.reachable[i])
      ++map.reachable_count;
    else
      map.unreachable_radius = std::max(map.unreachable_radius, grid[i].norm());
  }
  return map;
}

std::vector<Vec> line_grid(double h, double radius) {
  require(h > 0.0 && radius >= 0.0, ErrorCode::InvalidArgument, "line_grid: bad step or radius");
  const long N = static_cast<long>(std::floor(radius / h + 1e-9));
  std::vector<Vec> g;
  for (long i = -N; i <= N; ++i) g.push_back(Vec::Constant(1, h * double(i)));
  return g;
}

std::vector<Vec> shell_grid(int m, double r_max, int shells, int directions) {
  require(m >= 2 && shells >= 1 && directions >= 1, ErrorCode::InvalidArgument, "shell_grid: bad sizes");
  std::vector<Vec> dirs;
  if (m == 2) {
    for (int i = 0; i < directions; ++i) {
      const double t = 2.0 * kPi * i / directions;
      dirs.push_back((Vec(2) << std::cos(t), std::sin(t)).finished());
    }
  } else if (m == 3) {
    const double ga = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < directions; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / directions, rr = std::sqrt(1.0 - z * z);
      dirs.push_back((Vec(3) << rr * std::cos(ga * i), rr * std::sin(ga * i), z).finished());
    }
  } else {
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int i = 0; i < directions; ++i) {
      Vec v(m);
      for (int j = 0; j < m; ++j) v(j) = nd(rng);
      dirs.push_back(v.normalized());
    }
  }
  std::vector<Vec> g{Vec::Zero(m)};
  for (int s = 1; s <= shells; ++s)
    for (const auto &d : dirs) g.push_back(r_max * s / shells * d);
  return g;
}

namespace {

double threshold_of(const CoverageMap &map) {
  double t = 1e300;
  for (std::size_t i = 0; i < map.grid.size(); ++i) {
    const double r = map.grid[i].norm();
    if (map.reachable[i] && r > map.unreachable_radius) t = std::min(t, r);
  }
  return t == 1e300 ? map.unreachable_radius : t;
}

int smallest_at_least(double x, bool odd) {
  int k = std::max(1, static_cast<int>(std::ceil(x - 1e-12)));
  if (odd && k % 2 == 0) ++k;
  return k;
}

}  // namespace

SupportResult shell_experiment(double R, double eps, double h, double radius, bool odd_only) {
  require(R > 0.0 && eps > 0.0, ErrorCode::InvalidArgument, "shell_experiment: R and eps must be positive");
  SupportResult res;
  const std::vector<Vec> grid = line_grid(h, radius);
  const double lo = R * R, hi = R * R * (1.0 + eps) * (1.0 + eps);
  CoverageMap &map = res.map;
  map.grid = grid;
  map.reachable.assign(grid.size(), false);
  map.k.assign(grid.size(), 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = std::abs(grid[i](0));
    if (a == 0.0) continue;
    ++map.nonzero_count;
    // |mu| = 2 |k| |lambda|^2 for some |lambda| in [R, R(1+eps)]
    const long k0 = std::max(1L, static_cast<long>(std::ceil(a / (2.0 * hi) * (1.0 - 1e-12))));
    const long k1 = static_cast<long>(std::floor(a / (2.0 * lo) * (1.0 + 1e-12)));
    for (long k = k0; k <= k1; ++k) {
      if (odd_only && k % 2 == 0) continue;
      map.reachable[i] = true;
      map.k[i] = static_cast<int>(grid[i](0) > 0 ? k : -k);
      break;
    }
    if (map.reachable[i])
      ++map.reachable_count;
    else
      map.unreachable_radius = std::max(map.unreachable_radius, a);
  }
  res.threshold = threshold_of(map);
  const int step = odd_only ? 2 : 1;
  const int kstar = smallest_at_least(step / ((1.0 + eps) * (1.0 + eps) - 1.0), odd_only);
  res.construction_radius = 2.0 * kstar * R * R;
  res.stated_bound = 2.0 * smallest_at_least(2.0 / eps, true) * R * R;
  res.constant = res.threshold / (R * R);
  return res;
}

SupportResult cap_experiment(const Vec &lambda0, double eps, const std::vector<Vec> &grid) {
  const double R = lambda0.norm();
  require(R > 0.0 && eps > 0.0, ErrorCode::InvalidArgument, "cap_experiment: bad cap");
  require(lambda0.size() >= 2, ErrorCode::Dimension, "cap_experiment: needs a center of dimension >= 2");
  const double theta = eps >= 2.0 ? kPi : 2.0 * std::asin(0.5 * eps);
  const Vec l0 = lambda0 / R;
  SupportResult res;
  CoverageMap &map = res.map;
  map.grid = grid;
  map.reachable.assign(grid.size(), false);
  map.k.assign(grid.size(), 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = grid[i].norm();
    if (a == 0.0) continue;
    ++map.nonzero_count;
    // mu . lambda-hat sweeps [a cos(phi + theta), a cos(phi - theta)] over the cap
    const double phi = std::acos(std::clamp(grid[i].dot(l0) / a, -1.0, 1.0));
    const double lo = a * std::cos(std::min(kPi, phi + theta)), hi = a * std::cos(std::max(0.0, phi - theta));
    const double unit = 2.0 * R * R;
    const long k0 = static_cast<long>(std::ceil(lo / unit - 1e-12)),
               k1 = static_cast<long>(std::floor(hi / unit + 1e-12));
    if (k0 <= k1) {
      map.reachable[i] = true;
      map.k[i] = static_cast<int>(k0 <= 0 && 0 <= k1 ? 0 : k0);
      ++map.reachable_count;
    } else {
      map.unreachable_radius = std::max(map.unreachable_radius, a);
    }
  }
  res.threshold = threshold_of(map);
  res.constant = map.unreachable_radius / (R * R);
  return res;
}

SupportResult sphere_experiment(double R, const std::vector<Vec> &grid) {
  require(!grid.empty(), ErrorCode::InvalidArgument, "sphere_experiment: empty grid");
  Vec l0 = Vec::Zero(grid[0].size());
  l0(0) = R;
  return cap_experiment(l0, 2.0, grid);
}

InjectivityResult injectivity_experiment(const HTypeStructure &S, const TestFunction &f,
                                         const std::vector<Vec> &Z, const std::vector<Vec> &mus,
                                         const FockBasis &basis, const Quadrature &q,
                                         const InjectivityOptions &opt, const Exec &ex) {
  InjectivityResult res;
  res.coverage = charge_frequency_map(S, Z, mus, opt.odd_only);
  const TestFunction zero = TestFunction::zero(f.dim_x(), f.dim_u());
  for (std::size_t i = 0; i < mus.size(); ++i) {
    if (!res.coverage.reachable[i]) continue;
    InjectivityPoint pt;
    pt.mu = mus[i];
    std::vector<SliceSample> data, null;
    for (std::size_t z = 0; z < Z.size(); ++z) {
      const auto k = frequency::compatible(Z[z], mus[i]);
      if (!k || (opt.odd_only && *k % 2 == 0)) continue;
      pt.charges.push_back(static_cast<int>(z));
      pt.ks.push_back(*k);
      const CompatiblePair pair{Z[z], mus[i], *k};
      for (const auto &nu : sample_directions(S, Z[z], opt.nu_count, opt.seed)) {
        data.push_back({nu, Z[z], slice_lhs(S, f, nu, Z[z], pair, basis, q, opt.slice, ex)});
        null.push_back({nu, Z[z], slice_lhs(S, zero, nu, Z[z], pair, basis, q, opt.slice, ex)});
      }
    }
    const Recovery rec = recover_block(S, data, mus[i], basis, q, opt.tol, opt.unknown_degree, opt.solver);
    const Recovery rn = recover_block(S, null, mus[i], basis, q, opt.tol, opt.unknown_degree, opt.solver);
    const FockOperator F = frequency::gft(S, f, mus[i], basis, q, ex);
    const int c = std::min(opt.compare_degree, rec.unknown_degree);
    pt.reference_norm = F.interior(c).norm();
    pt.error = rel_interior(rec.X.interior(c), F.interior(c));
    pt.null_norm = rn.X.entries.norm();
    pt.invertible = rec.invertible;
    pt.witness_degree = rec.witness_degree;
    res.max_error = std::max(res.max_error, pt.error);
    res.max_null = std::max(res.max_null, pt.null_norm);
    res.points.push_back(pt);
  }
  return res;
}

}  // namespace hxray::reconstruct
