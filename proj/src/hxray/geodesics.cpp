#include "hxray/geodesics.hpp"

#include <cmath>

namespace hxray::geodesics {

using algebra::j_map;

void check_spec(const HTypeStructure &S, const GeodesicSpec &g, double tol) {
  algebra::check_point(S, g.base);
  require(g.nu.size() == S.dim_v() && g.lambda.size() == S.m, ErrorCode::Dimension,
          "geodesic spec does not conform to the structure");
  require(std::abs(g.nu.norm() - 1.0) <= tol, ErrorCode::Domain, "geodesic spec: |nu| must be 1");
}

Vec rotate(const HTypeStructure &S, const Vec &lambda, double s, const Vec &v) {
  const double r = lambda.norm();
  if (r == 0.0) return v;
  const Mat Jh = j_map(S, lambda / r);
  return std::cos(r * s) * v + std::sin(r * s) * (Jh * v);
}

GroupPoint flow_origin(const HTypeStructure &S, const Vec &nu, const Vec &lambda, double s) {
  require(nu.size() == S.dim_v() && lambda.size() == S.m, ErrorCode::Dimension,
          "flow_origin: dimension mismatch");
  const double r = lambda.norm();
  const double nu2 = nu.squaredNorm();
  GroupPoint p{Vec::Zero(S.dim_v()), Vec::Zero(S.m)};
  if (r == 0.0) {
    p.x = s * nu;
    return p;
  }
  const double th = r * s;
  if (std::abs(th) < kSeriesThreshold) {
    // (e^{sJ}-1)/J = s(1 - th^2/6 + th^4/120) + s^2 J (1/2 - th^2/24 + th^4/720)
    const double t2 = th * th;
    const Mat Jl = j_map(S, lambda);
    p.x = s * (1.0 - t2 / 6.0 + t2 * t2 / 120.0) * nu +
          s * s * (0.5 - t2 / 24.0 + t2 * t2 / 720.0) * (Jl * nu);
    p.u = nu2 * s * s * s * 0.5 * (1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0) * lambda;
    return p;
  }
  const Mat Jh = j_map(S, lambda / r);
  p.x = (std::sin(th) * nu + (1.0 - std::cos(th)) * (Jh * nu)) / r;
  p.u = nu2 * (th - std::sin(th)) / (2.0 * r * r) * (lambda / r);
  return p;
}

Vec flow_momentum(const HTypeStructure &S, const Vec &nu, const Vec &lambda, double s) {
  return rotate(S, lambda, s, nu);
}

GroupPoint gamma_centered(const HTypeStructure &S, const Vec &nu, const Vec &lambda, double s) {
  require(nu.size() == S.dim_v() && lambda.size() == S.m, ErrorCode::Dimension,
          "gamma_centered: dimension mismatch");
  const double r = lambda.norm();
  require(r > 0.0, ErrorCode::Domain, "gamma_centered: lambda must be nonzero");
  const Mat Jh = j_map(S, lambda / r);
  const double th = r * s;
  GroupPoint p;
  p.x = (std::sin(th) * nu - std::cos(th) * (Jh * nu)) / r;
  p.u = s * nu.squaredNorm() / (2.0 * r * r) * lambda;
  return p;
}

GroupPoint translate_curve(const HTypeStructure &S, const GroupPoint &base, const GroupPoint &pt) {
  return algebra::group_mul(S, base, pt);
}

GroupPoint geodesic_point(const HTypeStructure &S, const GeodesicSpec &g, double s) {
  if (g.lambda.norm() == 0.0) {
    return algebra::group_mul(S, g.base, {s * g.nu, Vec::Zero(S.m)});
  }
  return algebra::group_mul(S, g.base, gamma_centered(S, g.nu, g.lambda, s));
}

std::pair<GroupPoint, GroupPoint> helical_shift(const HTypeStructure &S, const Vec &nu,
                                                const Vec &lambda, double s, int k) {
  const double r = lambda.norm();
  require(r > 0.0, ErrorCode::Domain, "helical_shift: lambda must be nonzero");
  GroupPoint a = gamma_centered(S, nu, lambda, s + 2.0 * kPi * k / r);
  GroupPoint shift{Vec::Zero(S.dim_v()), kPi * k / (r * r) * (lambda / r)};
  GroupPoint b = algebra::group_mul(S, shift, gamma_centered(S, nu, lambda, s));
  return {a, b};
}

MomentumPair momentum_left(const HTypeStructure &S, const GroupPoint &p, const MomentumPair &pm) {
  algebra::check_point(S, p);
  return {pm.nu - j_map(S, pm.zeta) * p.x, pm.zeta};
}

MomentumPair momentum_right(const HTypeStructure &S, const Vec &nu, const Vec &mu, double s) {
  return {rotate(S, mu, s, nu), mu};
}

Vec guiding_center(const HTypeStructure &S, const GroupPoint &p, const Vec &nu, const Vec &mu) {
  const double r2 = mu.squaredNorm();
  require(r2 > 0.0, ErrorCode::Domain, "guiding_center: mu must be nonzero");
  // J_mu^{-1} = -J_mu / |mu|^2
  return p.x + j_map(S, mu) * nu / r2;
}

}  // namespace hxray::geodesics
