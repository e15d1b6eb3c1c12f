#include "hxray/frequency.hpp"

#include "hxray/special.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <random>

namespace hxray::frequency {

namespace {

double pow2pi(double e) { return std::pow(2.0 * kPi, e); }

// sum_i w_i g(x_i) pi_mu(x_i, 0)^* over a horizontal tensor rule, split along the
// first axis and reduced in index order.
template <class G>
CMat accumulate_horizontal(const std::vector<quad::Rule1D> &rules, double h, const Mat &R,
                           const FockBasis &basis, const Exec &ex, G &&g) {
  const quad::Rule1D &first = rules[0];
  std::vector<quad::Rule1D> rest(rules.begin() + 1, rules.end());
  const int D = basis.size();
  std::vector<CMat> part(first.size());
  parallel_for(first.size(), ex, [&](std::size_t i) {
    CMat acc = CMat::Zero(D, D);
    Vec x(static_cast<Eigen::Index>(rules.size()));
    quad::tensor_for_each(rest, [&](const Vec &p, double w) {
      x(0) = first.nodes[i];
      x.tail(x.size() - 1) = p;
      const cplx gv = g(x);
      if (gv == cplx(0.0)) return;
      const CMat M = fock::heisenberg_matrix(h, R.transpose() * x, basis);
      acc.noalias() += (w * gv) * M.adjoint();
    });
    part[i] = first.weights[i] * acc;
  });
  CMat F = CMat::Zero(D, D);
  for (const auto &p : part) F += p;
  return F;
}

void check_pair(const CompatiblePair &pair, const Vec &lambda) {
  require((pair.lambda - lambda).norm() <= 1e-12 * std::max(1.0, lambda.norm()), ErrorCode::Incompatible,
          "pair.lambda differs from lambda");
  auto k = compatible(pair.lambda, pair.mu);
  require(k.has_value() && *k == pair.k, ErrorCode::Incompatible,
          "(lambda, mu) is not a compatible pair with the stated k");
}

}  // namespace

std::optional<int> compatible(const Vec &lambda, const Vec &mu, double tol) {
  const double r = lambda.norm();
  if (r == 0.0 || mu.norm() == 0.0 || lambda.size() != mu.size()) return std::nullopt;
  const double x = mu.dot(lambda) / (2.0 * r * r * r);
  const double k = std::round(x);
  if (std::abs(x - k) > tol * std::max(1.0, std::abs(x))) return std::nullopt;
  return static_cast<int>(k);
}

CompatiblePair make_pair(const Vec &lambda, const Vec &mu, double tol) {
  auto k = compatible(lambda, mu, tol);
  require(k.has_value(), ErrorCode::Incompatible, "make_pair: lambda and mu are not compatible");
  return {lambda, mu, *k};
}

CompatiblePair parallel_pair(const Vec &lambda, int k) {
  require(k != 0, ErrorCode::InvalidArgument, "parallel_pair: k must be nonzero");
  return {lambda, 2.0 * k * lambda.norm() * lambda, k};
}

std::vector<CompatiblePair> lattice_dual(const Vec &lambda, double R, double step) {
  const double r = lambda.norm();
  require(r > 0.0, ErrorCode::Domain, "lattice_dual: lambda must be nonzero");
  require(step > 0.0, ErrorCode::InvalidArgument, "lattice_dual: step must be positive");
  const int m = static_cast<int>(lambda.size());
  const int K = static_cast<int>(std::floor(R / (2.0 * r * r) + 1e-12));
  std::vector<CompatiblePair> out;
  const Vec lh = lambda / r;
  const Mat B = m > 1 ? transform::orth_complement(lh) : Mat(m, 0);
  for (int k = -K; k <= K; ++k) {
    const Vec c = 2.0 * k * r * lambda;
    if (m == 1) {
      if (k != 0) out.push_back({lambda, c, k});
      continue;
    }
    const double rad2 = R * R - c.squaredNorm();
    if (rad2 < 0.0) continue;
    const int T = static_cast<int>(std::floor(std::sqrt(rad2) / step + 1e-12));
    std::vector<int> idx(m - 1, -T);
    while (true) {
      Vec t(m - 1);
      for (int j = 0; j < m - 1; ++j) t(j) = step * idx[j];
      const Vec mu = c + B * t;
      if (mu.norm() <= R + 1e-12 && mu.norm() > 0.0) out.push_back({lambda, mu, k});
      int j = 0;
      while (j < m - 1 && ++idx[j] > T) idx[j++] = -T;
      if (j == m - 1) break;
    }
  }
  return out;
}

RelationCoords relation_coords(const CompatiblePair &p) {
  const double r = p.lambda.norm();
  const Vec lh = p.lambda / r;
  return {lh, (p.mu - p.mu.dot(lh) * lh) / (r * r), 2 * p.k};
}

CompatiblePair from_relation_coords(const RelationCoords &rc, double lambda_norm) {
  const Vec lambda = lambda_norm * rc.lambda_hat;
  const Vec mu = lambda_norm * lambda_norm * (rc.mu_perp + double(rc.two_k) * rc.lambda_hat);
  return {lambda, mu, rc.two_k / 2};
}

FockOperator gft(const HTypeStructure &S, const TestFunction &f, const Vec &mu,
                 const FockBasis &basis, const Quadrature &q, const Exec &ex) {
  require(mu.size() == S.m, ErrorCode::Dimension, "gft: mu has wrong dimension");
  require(f.dim_x() == S.dim_v() && f.dim_u() == S.m, ErrorCode::Dimension,
          "gft: test function does not live on this group");
  const double h = mu.norm();
  require(h > 0.0, ErrorCode::Domain, "gft: mu must be nonzero");
  const Mat R = algebra::rotation_frame(S, mu);
  const int dx = S.dim_v();
  FockOperator F = FockOperator::zero(basis);
  for (std::size_t k = 0; k < f.products().size(); ++k) {
    const cplx cf = f.central_ft(k, mu);
    if (cf == cplx(0.0)) continue;
    for (const auto &t : f.products()[k].horizontal) {
      // e^{-a|x-x0|^2} e^{-h|x|^2/4} = const * e^{-c|x - xc|^2}; the rule is exact
      const double c = t.a + 0.25 * h;
      const Vec xc = t.a * t.x0 / c;
      const int N = std::max(q.volume_order, basis.L() + (t.P.degree() + 1) / 2 + 3);
      require(std::pow(double(N), dx) <= 5e6, ErrorCode::Quadrature,
              "gft: volume rule exceeds the point budget");
      std::vector<quad::Rule1D> rules;
      for (int j = 0; j < dx; ++j) rules.push_back(quad::gauss_hermite_plain(N, xc(j), c));
      F.entries += cf * accumulate_horizontal(rules, h, R, basis, ex, [&](const Vec &x) {
                     return t.c * t.P.eval(x) * std::exp(-t.a * (x - t.x0).squaredNorm());
                   });
    }
  }
  return F;
}

FockOperator gft_quotient(const HTypeStructure &S, const BatchEval &g, const transform::Support &sp,
                          const Vec &lambda, const CompatiblePair &pair, const FockBasis &basis,
                          const Quadrature &q, bool uniform_x, const Exec &ex) {
  check_pair(pair, lambda);
  const Vec &mu = pair.mu;
  const double h = mu.norm();
  const Mat R = algebra::rotation_frame(S, mu);
  const int dx = S.dim_v(), m = S.m;
  std::vector<quad::Rule1D> xr;
  for (int j = 0; j < dx; ++j) {
    if (uniform_x) {
      xr.push_back(quad::trapezoid(sp.x_center(j) - q.grid_halfwidth, sp.x_center(j) + q.grid_halfwidth,
                                   q.grid_nodes));
    } else {
      const double c = sp.x_rate + 0.25 * h;
      xr.push_back(quad::gauss_hermite_plain(q.volume_order, sp.x_rate * sp.x_center(j) / c, c));
    }
  }
  // central nodes: one period along lambda-hat, Gauss-Hermite across
  Mat Bu(m, m);
  const Vec lh = lambda.normalized();
  Bu.col(0) = lh;
  if (m > 1) Bu.rightCols(m - 1) = transform::orth_complement(lh);
  std::vector<quad::Rule1D> ur{quad::periodic(transform::central_period(lambda), q.period_nodes)};
  const Vec uc = Bu.transpose() * sp.u_center;
  for (int j = 1; j < m; ++j) ur.push_back(quad::gauss_hermite_plain(q.central_order, uc(j), sp.u_rate));
  const quad::TensorGrid ug = quad::tensor_grid(ur);
  std::vector<Vec> us;
  std::vector<cplx> uw;
  for (std::size_t i = 0; i < ug.points.size(); ++i) {
    const Vec u = Bu * ug.points[i];
    us.push_back(u);
    uw.push_back(ug.weights[i] * std::exp(cplx(0.0, -mu.dot(u))));
  }
  FockOperator F{basis, accumulate_horizontal(xr, h, R, basis, ex, [&](const Vec &x) {
                   std::vector<cplx> vals(us.size());
                   g(x, us, vals);
                   cplx a = 0.0;
                   for (std::size_t j = 0; j < us.size(); ++j) a += uw[j] * vals[j];
                   return a;
                 })};
  return F;
}

FockOperator gft_quotient(const HTypeStructure &S, const FunctionHandle &g, const Vec &lambda,
                          const CompatiblePair &pair, const FockBasis &basis, const Quadrature &q,
                          bool uniform_x, const Exec &ex) {
  BatchEval be = [&g](const Vec &x, const std::vector<Vec> &us, std::vector<cplx> &out) {
    for (std::size_t j = 0; j < us.size(); ++j) out[j] = g(x, us[j]);
  };
  return gft_quotient(S, be, g.support, lambda, pair, basis, q, uniform_x, ex);
}

FockOperator gft_horizontal(const HTypeStructure &S, const std::function<cplx(const Vec &)> &g,
                            const std::vector<quad::Rule1D> &rules, const Vec &mu,
                            const FockBasis &basis, const Exec &ex) {
  require(static_cast<int>(rules.size()) == S.dim_v(), ErrorCode::Dimension,
          "gft_horizontal: one rule per horizontal dimension");
  const Mat R = algebra::rotation_frame(S, mu);
  return {basis, accumulate_horizontal(rules, mu.norm(), R, basis, ex, g)};
}

cplx gft_scalar(const HTypeStructure &S, const TestFunction &f, const Vec &eta) {
  require(eta.size() == S.dim_v(), ErrorCode::Dimension, "gft_scalar: eta has wrong dimension");
  return f.horizontal_marginal_ft(eta);
}

double bessel_multiplier(const HTypeStructure &S, const Vec &nu, const Vec &lambda, const Vec &eta) {
  const double r = lambda.norm();
  require(r > 0.0, ErrorCode::Domain, "bessel_multiplier: lambda must be nonzero");
  const Vec e1 = nu.normalized();
  const Vec e2 = algebra::j_map(S, lambda / r) * e1;
  const double p = std::hypot(eta.dot(e1), eta.dot(e2));
  return 2.0 * kPi / r * special::bessel_j0(p / r);
}

double bessel_multiplier_projected(const Vec &nu, const Vec &lambda, const Vec &eta) {
  const double r = lambda.norm();
  require(r > 0.0, ErrorCode::Domain, "bessel_multiplier: lambda must be nonzero");
  return 2.0 * kPi / r * special::bessel_j0(eta.dot(nu) / r);
}

cplx bessel_loop_quadrature(const HTypeStructure &S, const Vec &nu, const Vec &lambda,
                            const Vec &eta, int nodes) {
  const double r = lambda.norm();
  require(r > 0.0, ErrorCode::Domain, "bessel_loop_quadrature: lambda must be nonzero");
  const quad::Rule1D rule = quad::periodic(2.0 * kPi / r, nodes);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Vec x = geodesics::gamma_centered(S, nu, lambda, rule.nodes[i]).x;
    acc += rule.weights[i] * std::exp(cplx(0.0, -eta.dot(x)));
  }
  return acc;
}

FockOperator multiplier_J_quadrature(const HTypeStructure &S, const Vec &nu, const Vec &lambda,
                                     const CompatiblePair &pair, const FockBasis &basis,
                                     const Quadrature &q) {
  check_pair(pair, lambda);
  require(std::abs(nu.norm() - 1.0) <= 1e-12, ErrorCode::Domain, "multiplier: |nu| must be 1");
  const double r = lambda.norm();
  // the integrand is a trigonometric polynomial of degree <= 2L + |k| for parallel pairs
  const int N = std::max(q.loop_nodes, 2 * basis.L() + std::abs(pair.k) + 2);
  const Mat R = algebra::rotation_frame(S, pair.mu);
  const double h = pair.mu.norm();
  CMat acc = CMat::Zero(basis.size(), basis.size());
  for (int j = 0; j < N; ++j) {
    const double s = 2.0 * kPi * j / N;
    const Vec x = geodesics::gamma_centered(S, nu, lambda, s / r).x;
    acc += std::exp(cplx(0.0, pair.k * s)) * fock::heisenberg_matrix(h, R.transpose() * x, basis);
  }
  return {basis, acc / double(N)};
}

bool spectral_valid(const Vec &lambda, const Vec &mu) {
  const Vec a = lambda.normalized(), b = mu.normalized();
  return (a - b).norm() <= 1e-9 || (a + b).norm() <= 1e-9;
}

FockOperator spectral_form(int k, const CVec &w, const FockBasis &basis) {
  const int n = basis.n(), L = basis.L(), ak = std::abs(k);
  require(w.size() == n, ErrorCode::Dimension, "spectral_form: w has wrong dimension");
  std::vector<CMat> T(n);
  for (int j = 0; j < n; ++j) T[j] = special::special_hermite_table(L, w(j));
  const cplx ik = std::pow(cplx(0.0, 1.0), ((k % 4) + 4) % 4);
  const cplx c = pow2pi(0.5 * n) * ik;
  FockOperator J = FockOperator::zero(basis);
  for (int col = 0; col < basis.size(); ++col) {
    const int l = basis.degree_of(col);
    if (l + ak > L) continue;
    const auto &a = basis.index(col);
    for (int row = basis.block_start(l + ak); row < basis.block_start(l + ak) + basis.block_size(l + ak);
         ++row) {
      const auto &b = basis.index(row);
      cplx v = c;
      for (int j = 0; j < n; ++j) v *= T[j](a[j], b[j]);
      J.entries(row, col) = v;
    }
  }
  return J;
}

FockOperator multiplier_J_spectral(const HTypeStructure &S, const Vec &nu, const Vec &lambda,
                                   const CompatiblePair &pair, const FockBasis &basis) {
  check_pair(pair, lambda);
  require(spectral_valid(lambda, pair.mu), ErrorCode::Domain,
          "multiplier_J_spectral: mu must be parallel or antiparallel to lambda");
  const Mat R = algebra::rotation_frame(S, pair.mu);
  const CVec w = std::sqrt(pair.mu.norm()) / lambda.norm() * algebra::to_complex(R.transpose() * nu);
  return spectral_form(pair.k, w, basis);
}

FockOperator multiplier_J(const HTypeStructure &S, const Vec &nu, const Vec &lambda,
                          const CompatiblePair &pair, const FockBasis &basis, const Quadrature &q) {
  if (spectral_valid(lambda, pair.mu)) return multiplier_J_spectral(S, nu, lambda, pair, basis);
  return multiplier_J_quadrature(S, nu, lambda, pair, basis, q);
}

FockOperator normal_op(const HTypeStructure &S, const Vec &nu, const Vec &lambda,
                       const CompatiblePair &pair, const FockBasis &basis, const Quadrature &q) {
  const FockOperator J = multiplier_J(S, nu, lambda, pair, basis, q);
  return {basis, J.entries.adjoint() * J.entries};
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

CMat haar_unitary(int n, std::uint64_t seed, std::uint64_t stream) {
  std::mt19937_64 rng(splitmix(seed ^ splitmix(stream)));
  std::normal_distribution<double> nd(0.0, 1.0);
  CMat Z(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) Z(r, c) = cplx(nd(rng), nd(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<CMat> qr(Z);
  CMat Q = qr.householderQ() * CMat::Identity(n, n);
  const CMat Rm = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const cplx d = Rm(j, j);
    if (std::abs(d) > 0.0) Q.col(j) *= d / std::abs(d);
  }
  return Q;
}

McResult averaged_normal_mc(const HTypeStructure &S, const Vec &lambda, const CompatiblePair &pair,
                            const FockBasis &basis, int N, std::uint64_t seed, const Quadrature &q,
                            const Exec &ex) {
  require(N >= 1, ErrorCode::InvalidArgument, "averaged_normal_mc: N must be >= 1");
  check_pair(pair, lambda);
  const Mat Rl = algebra::rotation_frame(S, lambda);
  const int D = basis.size();
  constexpr int kChunk = 256;
  const int chunks = (N + kChunk - 1) / kChunk;
  std::vector<CMat> s1(chunks);
  std::vector<Mat> s2(chunks);
  parallel_for(static_cast<std::size_t>(chunks), ex, [&](std::size_t c) {
    CMat a = CMat::Zero(D, D);
    Mat b = Mat::Zero(D, D);
    for (int i = static_cast<int>(c) * kChunk; i < std::min(N, static_cast<int>(c + 1) * kChunk); ++i) {
      const CMat U = haar_unitary(S.n, seed, static_cast<std::uint64_t>(i));
      const Vec nu = Rl * (fock::realify(U).col(0));
      const CMat Nn = normal_op(S, nu, lambda, pair, basis, q).entries;
      a += Nn;
      b += Nn.cwiseAbs2();
    }
    s1[c] = a;
    s2[c] = b;
  });
  CMat sum1 = CMat::Zero(D, D);
  Mat sum2 = Mat::Zero(D, D);
  for (int c = 0; c < chunks; ++c) {
    sum1 += s1[c];
    sum2 += s2[c];
  }
  McResult res;
  res.samples = N;
  res.mean = {basis, sum1 / double(N)};
  if (!spectral_valid(lambda, pair.mu)) return res;
  const double wn = std::sqrt(pair.mu.norm()) / lambda.norm();
  const auto eig = averaged_normal_eigenvalues(S.n, pair.k, wn, basis.L());
  for (int l = 0; l + std::abs(pair.k) <= basis.L(); ++l) {
    const int s0 = basis.block_start(l), bs = basis.block_size(l);
    double dev = 0.0, var = 0.0;
    for (int r = s0; r < s0 + bs; ++r)
      for (int c = s0; c < s0 + bs; ++c) {
        const cplx target = r == c ? cplx(eig[l]) : cplx(0.0);
        dev += std::norm(res.mean.entries(r, c) - target);
        const double v = N > 1 ? (sum2(r, c) / N - std::norm(res.mean.entries(r, c))) * N / (N - 1.0) : 0.0;
        var += std::max(v, 0.0) / N;
      }
    res.block_deviation.push_back(std::sqrt(dev));
    res.block_sigma.push_back(std::sqrt(var));
  }
  return res;
}

std::vector<double> averaged_normal_eigenvalues(int n, int k, double wnorm, int L) {
  require(n >= 1 && L >= 0, ErrorCode::InvalidArgument, "averaged_normal_eigenvalues: bad sizes");
  const int ak = std::abs(k);
  const FockBasis basis(n, L);
  const CMat T = special::special_hermite_table(L + ak, cplx(wnorm, 0.0));
  const double z0 = 1.0 / (2.0 * kPi);  // |Phi_{aa}(0)|^2 in the remaining coordinates
  std::vector<double> out(L + 1, 0.0);
  for (int l = 0; l <= L; ++l) {
    double s = 0.0;
    for (int i = basis.block_start(l); i < basis.block_start(l) + basis.block_size(l); ++i) {
      const int g1 = basis.index(i)[0];
      s += std::norm(T(g1, g1 + ak)) * std::pow(z0, n - 1);
    }
    out[l] = pow2pi(n) * s / basis.block_size(l);
  }
  return out;
}

double averaged_normal_eigenvalue_reduced(int n, int l, int k, double wnorm) {
  const int ak = std::abs(k);
  const double x = 0.5 * wnorm * wnorm;
  auto term = [&](int p) {
    const double lag = special::laguerre(p, ak, x);
    if (x == 0.0) return ak == 0 ? lag * lag : 0.0;
    return std::exp(special::log_factorial(p) - special::log_factorial(p + ak) + ak * std::log(x) - x) *
           lag * lag;
  };
  if (n == 1) return term(l);
  const double dl = special::binomial(l + n - 1, l);
  double s = 0.0;
  for (int p = 0; p <= l; ++p) s += special::binomial(l - p + n - 2, n - 2) * term(p);
  return s / dl;
}

MultiplierReport averaged_normal_exact(const HTypeStructure &S, const Vec &lambda,
                                       const CompatiblePair &pair, const FockBasis &basis) {
  check_pair(pair, lambda);
  require(spectral_valid(lambda, pair.mu), ErrorCode::Domain,
          "averaged_normal_exact: closed form needs mu parallel or antiparallel to lambda");
  (void)S;
  const double wn = std::sqrt(pair.mu.norm()) / lambda.norm();
  const auto eig = averaged_normal_eigenvalues(basis.n(), pair.k, wn, basis.L());
  MultiplierReport rep;
  rep.k = pair.k;
  rep.op = FockOperator::zero(basis);
  for (int i = 0; i < basis.size(); ++i) rep.op.entries(i, i) = eig[basis.degree_of(i)];
  rep.off_block_mass = rep.op.off_block_mass(0);
  rep.block_map_verified = rep.off_block_mass == 0.0;
  for (int l = 0; l <= basis.L(); ++l) rep.degrees.push_back({l, eig[l], eig[l], 1.0});
  return rep;
}

double eigenvalue_lower_bound(int n, int l, int k, double wnorm) {
  require(n > 1, ErrorCode::Domain, "eigenvalue_lower_bound: needs n > 1");
  require(l >= 0 && k >= 0, ErrorCode::Domain, "eigenvalue_lower_bound: l, k must be >= 0");
  const double x = 0.5 * wnorm * wnorm;
  const double dl = special::binomial(l + n - 1, l);
  const double lc = special::log_factorial(l + n - 2) - special::log_factorial(l) -
                    special::log_factorial(n - 2) - special::log_factorial(k);
  const double xk = k == 0 ? 1.0 : std::pow(x, k);
  return std::exp(lc) * xk * std::exp(-x) / dl;
}

Certificate invertibility_certificate(const std::vector<double> &eigenvalues, double tol) {
  Certificate c;
  c.invertible = true;
  c.min_eigenvalue = 1e300;
  for (std::size_t l = 0; l < eigenvalues.size(); ++l) {
    if (eigenvalues[l] < c.min_eigenvalue) {
      c.min_eigenvalue = eigenvalues[l];
      c.witness_degree = static_cast<int>(l);
    }
    if (!(eigenvalues[l] > tol)) c.invertible = false;
  }
  return c;
}

Certificate invertibility_certificate(const HTypeStructure &S, const Vec &lambda,
                                      const CompatiblePair &pair, const FockBasis &basis, double tol) {
  const MultiplierReport rep = averaged_normal_exact(S, lambda, pair, basis);
  std::vector<double> e;
  for (const auto &d : rep.degrees) e.push_back(d.eigenvalue);
  return invertibility_certificate(e, tol);
}

double dilation_exponent(const HTypeStructure &S) { return 2.0 * S.n + 2.0 * S.m; }

double dilation_lemma_check(const HTypeStructure &S, const TestFunction &f, const Vec &mu, double eps,
                            const FockBasis &basis, const Quadrature &q, const Exec &ex) {
  require(eps > 0.0, ErrorCode::Domain, "dilation_lemma_check: eps must be positive");
  const FockOperator a = gft(S, f.dilated(eps), mu, basis, q, ex);
  const FockOperator b = gft(S, f, mu / (eps * eps), basis, q, ex);
  const double Q = dilation_exponent(S);
  return (a.entries - std::pow(eps, -Q) * b.entries).cwiseAbs().maxCoeff();
}

std::vector<DegreeStats> block_spectrum(const FockOperator &A) {
  std::vector<DegreeStats> out;
  for (int l = 0; l <= A.basis.L(); ++l) {
    const CMat B = A.block(l, l);
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (B + B.adjoint()), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    out.push_back({l, lo, hi, lo > 0.0 ? hi / lo : INFINITY});
  }
  return out;
}

}  // namespace hxray::frequency
