#include "hxray/transform.hpp"

#include <cmath>

namespace hxray::transform {

namespace {

struct LineGrid {
  double s0 = 0.0, s1 = 0.0;
  int nodes = 0;
};

// Truncated parameter interval outside of which the integrand is below the
// support's tail level, plus the node count for the requested density.
LineGrid line_grid(const HTypeStructure &S, const Support &sp, const Vec &xb, const Vec &ub,
                   const Vec &nu, const Vec &lambda, const Quadrature &q) {
  const double r = lambda.norm();
  LineGrid lg;
  double speed_u;
  if (r == 0.0) {
    const double sc = (sp.x_center - xb).dot(nu);
    lg.s0 = sc - sp.x_radius;
    lg.s1 = sc + sp.x_radius;
    speed_u = 0.5 * xb.norm();
  } else {
    const Vec lh = lambda / r;
    const double wmax = 0.5 * xb.norm() / r;
    const double c = (sp.u_center - ub).dot(lh);
    lg.s0 = 2.0 * r * (c - sp.u_radius - wmax);
    lg.s1 = 2.0 * r * (c + sp.u_radius + wmax);
    speed_u = 0.5 / r + 0.5 * xb.norm();
  }
  (void)S;
  const double dens = q.line_density *
                      std::max({1.0, r, std::sqrt(sp.x_rate_max), std::sqrt(sp.u_rate_max) * speed_u});
  const double len = lg.s1 - lg.s0;
  const double want = std::ceil(len * dens) + 1.0;
  require(want <= q.line_max_nodes, ErrorCode::Quadrature,
          "xray: line rule needs " + std::to_string(static_cast<long long>(want)) +
              " nodes, budget is " + std::to_string(q.line_max_nodes));
  lg.nodes = std::max(q.line_min_nodes, static_cast<int>(want));
  return lg;
}

}  // namespace

FunctionHandle handle(const TestFunction &f, double tau) {
  FunctionHandle h;
  h.support = f.support(tau);
  h.eval = [f](const Vec &x, const Vec &u) { return f(x, u); };
  return h;
}

FunctionHandle zero_handle(const HTypeStructure &S) {
  FunctionHandle h;
  h.support.x_center = Vec::Zero(S.dim_v());
  h.support.u_center = Vec::Zero(S.m);
  h.eval = [](const Vec &, const Vec &) { return cplx(0.0); };
  return h;
}

FunctionHandle left_translate(const HTypeStructure &S, const FunctionHandle &f, const GroupPoint &p) {
  FunctionHandle g;
  g.eval = [S, f, p](const Vec &x, const Vec &u) {
    const GroupPoint r = algebra::group_mul(S, p, {x, u});
    return f(r.x, r.u);
  };
  Support s = f.support;
  s.x_center = f.support.x_center - p.x;
  s.u_center = f.support.u_center - p.u - 0.5 * algebra::omega(S, p.x, f.support.x_center);
  s.u_radius = f.support.u_radius + 0.5 * p.x.norm() * f.support.x_radius;
  g.support = s;
  return g;
}

FunctionHandle dilate_pullback(const FunctionHandle &f, double eps) {
  require(eps > 0.0, ErrorCode::Domain, "dilate_pullback: eps must be positive");
  FunctionHandle g;
  g.eval = [f, eps](const Vec &x, const Vec &u) { return f(eps * x, eps * eps * u); };
  Support s = f.support;
  s.x_center /= eps;
  s.x_radius /= eps;
  s.u_center /= eps * eps;
  s.u_radius /= eps * eps;
  s.x_rate *= eps * eps;
  s.x_rate_max *= eps * eps;
  s.u_rate *= std::pow(eps, 4);
  s.u_rate_max *= std::pow(eps, 4);
  g.support = s;
  return g;
}

XrayValue xray(const HTypeStructure &S, const FunctionHandle &f, const GeodesicSpec &g,
               const Quadrature &q) {
  geodesics::check_spec(S, g);
  const LineGrid lg = line_grid(S, f.support, g.base.x, g.base.u, g.nu, g.lambda, q);
  const quad::Rule1D rule = quad::trapezoid(lg.s0, lg.s1, lg.nodes);
  XrayValue out;
  out.nodes = lg.nodes;
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const GroupPoint p = geodesics::geodesic_point(S, g, rule.nodes[i]);
    acc += rule.weights[i] * f(p.x, p.u);
  }
  out.value = acc;
  const GroupPoint a = geodesics::geodesic_point(S, g, lg.s0);
  const GroupPoint b = geodesics::geodesic_point(S, g, lg.s1);
  out.tail_bound = (std::abs(f(a.x, a.u)) + std::abs(f(b.x, b.u))) /
                   std::sqrt(std::min(f.support.x_rate, f.support.u_rate));
  return out;
}

XrayValue xray(const HTypeStructure &S, const TestFunction &f, const GeodesicSpec &g,
               const Quadrature &q) {
  return xray(S, handle(f, q.line_tau), g, q);
}

XrayValue xray_line(const HTypeStructure &S, const TestFunction &f, const GroupPoint &base,
                    const Vec &nu, const Quadrature &q) {
  return xray(S, f, GeodesicSpec{base, nu, Vec::Zero(S.m)}, q);
}

std::vector<cplx> xray_batch_u(const HTypeStructure &S, const TestFunction &f, const Vec &x,
                               const std::vector<Vec> &us, const Vec &nu, const Vec &lambda,
                               const Quadrature &q) {
  std::vector<cplx> out(us.size(), 0.0);
  if (us.empty() || f.is_zero()) return out;
  const Support sp = f.support(q.line_tau);
  double s0 = 1e300, s1 = -1e300;
  int nodes = 0;
  double dens = 0.0;
  for (const auto &u : us) {
    const LineGrid lg = line_grid(S, sp, x, u, nu, lambda, q);
    s0 = std::min(s0, lg.s0);
    s1 = std::max(s1, lg.s1);
    dens = std::max(dens, (lg.nodes - 1) / std::max(lg.s1 - lg.s0, 1e-300));
    nodes = std::max(nodes, lg.nodes);
  }
  nodes = std::max(nodes, static_cast<int>(std::ceil((s1 - s0) * dens)) + 1);
  require(nodes <= q.line_max_nodes, ErrorCode::Quadrature, "xray_batch_u: line budget exceeded");
  const quad::Rule1D rule = quad::trapezoid(s0, s1, nodes);
  const GroupPoint base{x, Vec::Zero(S.m)};
  const std::size_t P = f.products().size();
  std::vector<cplx> hv(P);
  Vec u(S.m);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    // (x, u) gamma(s) = (x + gx, u + v) with v independent of u
    const GeodesicSpec g{base, nu, lambda};
    const GroupPoint p = geodesics::geodesic_point(S, g, rule.nodes[i]);
    bool any = false;
    for (std::size_t k = 0; k < P; ++k) {
      hv[k] = f.horizontal(k, p.x);
      any = any || std::abs(hv[k]) > 0.0;
    }
    if (!any) continue;
    for (std::size_t j = 0; j < us.size(); ++j) {
      u.noalias() = us[j] + p.u;
      cplx s = 0.0;
      for (std::size_t k = 0; k < P; ++k)
        if (hv[k] != cplx(0.0)) s += hv[k] * f.central(k, u);
      out[j] += rule.weights[i] * s;
    }
  }
  return out;
}

double central_period(const Vec &lambda) {
  const double r = lambda.norm();
  require(r > 0.0, ErrorCode::Domain, "central period needs lambda != 0");
  return kPi / (r * r);
}

namespace {

void needed_range(const Support &sp, const Vec &u, const Vec &lambda, long &kmin, long &kmax) {
  const double r = lambda.norm();
  const Vec lh = lambda / r;
  const double D = central_period(lambda);
  const double c = (sp.u_center - u).dot(lh);
  kmin = static_cast<long>(std::floor((c - sp.u_radius) / D));
  kmax = static_cast<long>(std::ceil((c + sp.u_radius) / D));
}

}  // namespace

cplx periodize(const HTypeStructure &S, const FunctionHandle &f, const Vec &lambda,
               const GroupPoint &p, int K) {
  algebra::check_point(S, p);
  require(lambda.norm() > 0.0, ErrorCode::Domain, "periodize: lambda must be nonzero");
  require(K >= 0, ErrorCode::InvalidArgument, "periodize: K must be >= 0");
  long kmin, kmax;
  needed_range(f.support, p.u, lambda, kmin, kmax);
  require(kmin >= -K && kmax <= K, ErrorCode::Quadrature,
          "periodize: K=" + std::to_string(K) + " too small, need [" + std::to_string(kmin) + "," +
              std::to_string(kmax) + "]");
  const Vec step = central_period(lambda) * lambda.normalized();
  cplx acc = 0.0;
  for (long k = -K; k <= K; ++k) acc += f(p.x, Vec(p.u + double(k) * step));
  return acc;
}

FunctionHandle periodized(const HTypeStructure &S, const FunctionHandle &f, const Vec &lambda) {
  require(lambda.norm() > 0.0, ErrorCode::Domain, "periodized: lambda must be nonzero");
  require(lambda.size() == S.m, ErrorCode::Dimension, "periodized: lambda has wrong dimension");
  FunctionHandle g;
  g.support = f.support;
  g.eval = [f, lambda](const Vec &x, const Vec &u) {
    long kmin, kmax;
    needed_range(f.support, u, lambda, kmin, kmax);
    const Vec step = central_period(lambda) * lambda.normalized();
    cplx acc = 0.0;
    for (long k = kmin; k <= kmax; ++k) acc += f(x, Vec(u + double(k) * step));
    return acc;
  };
  return g;
}

cplx holonomy(const HTypeStructure &S, const FunctionHandle &g, const GeodesicSpec &spec,
              const Quadrature &q) {
  geodesics::check_spec(S, spec);
  const double r = spec.lambda.norm();
  require(r > 0.0, ErrorCode::Domain, "holonomy: lambda must be nonzero");
  const quad::Rule1D rule = quad::periodic(2.0 * kPi / r, q.loop_nodes);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const GroupPoint p = geodesics::geodesic_point(S, spec, rule.nodes[i]);
    acc += rule.weights[i] * g(p.x, p.u);
  }
  return acc;
}

double homogeneity_check(const HTypeStructure &S, const TestFunction &f, const Vec &nu,
                         const Vec &lambda, double eps, const std::vector<GroupPoint> &points,
                         const Quadrature &q) {
  require(eps > 0.0, ErrorCode::Domain, "homogeneity_check: eps must be positive");
  require(lambda.norm() > 0.0, ErrorCode::Domain, "homogeneity_check: lambda must be nonzero");
  const FunctionHandle fh = handle(f, q.line_tau);
  const FunctionHandle fd = dilate_pullback(fh, eps);
  double worst = 0.0;
  for (const auto &p : points) {
    const cplx lhs = xray(S, fd, {p, nu, eps * lambda}, q).value;
    const cplx rhs = xray(S, fh, {algebra::dilate(eps, p), nu, lambda}, q).value / eps;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

Mat orth_complement(const Vec &unit) {
  const int d = static_cast<int>(unit.size());
  Mat B(d, d - 1);
  std::vector<Vec> basis{unit};
  std::vector<bool> used(d, false);
  for (int j = 0; j < d - 1; ++j) {
    int best = -1;
    double bn = -1.0;
    Vec bv;
    for (int c = 0; c < d; ++c) {
      if (used[c]) continue;
      Vec v = Vec::Unit(d, c);
      for (const auto &b : basis) v -= b.dot(v) * b;
      if (v.norm() > bn + 1e-9) {
        bn = v.norm();
        best = c;
        bv = v;
      }
    }
    used[best] = true;
    bv.normalize();
    for (const auto &b : basis) bv -= b.dot(bv) * b;
    bv.normalize();
    basis.push_back(bv);
    B.col(j) = bv;
  }
  return B;
}

namespace {

double grid_step(const Quadrature &q) { return 2.0 * q.grid_halfwidth / (q.grid_nodes - 1); }

quad::Rule1D box_rule(double center, double radius, double h) {
  const int N = std::max(8, static_cast<int>(std::ceil(2.0 * radius / h)) + 1);
  return quad::trapezoid(center - radius, center + radius, N);
}

// Sum over a tensor grid split across threads along its first axis; partial sums
// are reduced in index order.
template <class Fn>
double grid_sum(const std::vector<quad::Rule1D> &rules, const Exec &ex, Fn &&fn) {
  if (rules.empty()) return 0.0;
  const quad::Rule1D &first = rules[0];
  std::vector<quad::Rule1D> rest(rules.begin() + 1, rules.end());
  std::vector<double> part(first.size(), 0.0);
  parallel_for(first.size(), ex, [&](std::size_t i) {
    double acc = 0.0;
    Vec full(static_cast<Eigen::Index>(rules.size()));
    quad::tensor_for_each(rest, [&](const Vec &p, double w) {
      full(0) = first.nodes[i];
      full.tail(full.size() - 1) = p;
      acc += w * fn(full);
    });
    part[i] = first.weights[i] * acc;
  });
  double s = 0.0;
  for (double v : part) s += v;
  return s;
}

}  // namespace

double l1_norm_group(const HTypeStructure &S, const FunctionHandle &f, const Quadrature &q,
                     const Exec &ex) {
  const double h = grid_step(q);
  const int dx = S.dim_v(), du = S.m;
  std::vector<quad::Rule1D> rules;
  for (int j = 0; j < dx; ++j) rules.push_back(box_rule(f.support.x_center(j), f.support.x_radius, h));
  for (int j = 0; j < du; ++j) rules.push_back(box_rule(f.support.u_center(j), f.support.u_radius, h));
  return grid_sum(rules, ex, [&](const Vec &p) {
    return std::abs(f(p.head(dx), p.tail(du)));
  });
}

double l1_norm_line_transform(const HTypeStructure &S, const TestFunction &f, const Vec &nu,
                              const Quadrature &q, const Exec &ex) {
  // cosets of R nu are represented by (x_perp, u) with x_perp orthogonal to nu;
  // (x_perp, u)(s nu, 0) = (x_perp + s nu, u + s omega(x_perp, nu)/2) has unit Jacobian
  const double h = grid_step(q);
  const FunctionHandle fh = handle(f, q.line_tau);
  const Support &sp = fh.support;
  const Mat B = orth_complement(nu);
  const int dp = S.dim_v() - 1, du = S.m;
  const Vec pc = B.transpose() * sp.x_center;
  const double xr = sp.x_radius;
  const double ur = sp.u_radius + 0.5 * (sp.x_center.norm() + xr) * (sp.x_center.norm() + xr);
  std::vector<quad::Rule1D> rules;
  for (int j = 0; j < dp; ++j) rules.push_back(box_rule(pc(j), xr, h));
  for (int j = 0; j < du; ++j) rules.push_back(box_rule(sp.u_center(j), ur, h));
  return grid_sum(rules, ex, [&](const Vec &p) {
    const Vec x = B * p.head(dp);
    return std::abs(xray(S, fh, {{x, Vec(p.tail(du))}, nu, Vec::Zero(du)}, q).value);
  });
}

namespace {

// Rules over G_lambda: horizontal box, one central period along lambda-hat,
// transverse central box. Returns rules and the map to (x, u).
struct QuotientGrid {
  std::vector<quad::Rule1D> rules;
  Mat Bu;  // columns: lambda-hat then transverse basis
};

QuotientGrid quotient_grid(const HTypeStructure &S, const Support &sp, const Vec &lambda,
                           double xr, const Quadrature &q) {
  const double h = grid_step(q);
  QuotientGrid g;
  const Vec lh = lambda.normalized();
  g.Bu.resize(S.m, S.m);
  g.Bu.col(0) = lh;
  if (S.m > 1) g.Bu.rightCols(S.m - 1) = orth_complement(lh);
  for (int j = 0; j < S.dim_v(); ++j) g.rules.push_back(box_rule(sp.x_center(j), xr, h));
  g.rules.push_back(quad::periodic(central_period(lambda), q.period_nodes));
  const Vec uc = g.Bu.transpose() * sp.u_center;
  for (int j = 1; j < S.m; ++j) g.rules.push_back(box_rule(uc(j), sp.u_radius + xr * xr, h));
  return g;
}

}  // namespace

double l1_norm_quotient(const HTypeStructure &S, const FunctionHandle &g, const Vec &lambda,
                        const Quadrature &q, const Exec &ex) {
  const QuotientGrid G = quotient_grid(S, g.support, lambda, g.support.x_radius, q);
  const int dx = S.dim_v();
  return grid_sum(G.rules, ex, [&](const Vec &p) {
    return std::abs(g(p.head(dx), Vec(G.Bu * p.tail(S.m))));
  });
}

double l1_norm_xray(const HTypeStructure &S, const TestFunction &f, const Vec &nu,
                    const Vec &lambda, const Quadrature &q, const Exec &ex) {
  const Support sp = f.support(q.line_tau);
  const double xr = sp.x_radius + 2.0 / lambda.norm();
  const QuotientGrid G = quotient_grid(S, sp, lambda, xr, q);
  const int dx = S.dim_v();
  // horizontal nodes outside, all central nodes of one base batched along a shared line rule
  const std::vector<quad::Rule1D> hr(G.rules.begin(), G.rules.begin() + dx);
  const std::vector<quad::Rule1D> cr(G.rules.begin() + dx, G.rules.end());
  const quad::TensorGrid xg = quad::tensor_grid(hr), ug = quad::tensor_grid(cr);
  std::vector<Vec> us;
  for (const auto &t : ug.points) us.push_back(G.Bu * t);
  std::vector<double> part(xg.points.size(), 0.0);
  parallel_for(xg.points.size(), ex, [&](std::size_t i) {
    // the loop through x stays within 2/|lambda| of x
    if ((xg.points[i] - sp.x_center).norm() > xr) return;
    const auto v = xray_batch_u(S, f, xg.points[i], us, nu, lambda, q);
    double acc = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) acc += ug.weights[j] * std::abs(v[j]);
    part[i] = xg.weights[i] * acc;
  });
  double total = 0.0;
  for (double v : part) total += v;
  return total;
}

double l1_norm_holonomy(const HTypeStructure &S, const FunctionHandle &g, const Vec &nu,
                        const Vec &lambda, const Quadrature &q, const Exec &ex) {
  const double xr = g.support.x_radius + 2.0 / lambda.norm();
  const QuotientGrid G = quotient_grid(S, g.support, lambda, xr, q);
  const int dx = S.dim_v();
  return grid_sum(G.rules, ex, [&](const Vec &p) {
    if ((p.head(dx) - g.support.x_center).norm() > xr) return 0.0;
    const GroupPoint b{p.head(dx), G.Bu * p.tail(S.m)};
    return std::abs(holonomy(S, g, {b, nu, lambda}, q));
  });
}

}  // namespace hxray::transform
