#pragma once

#include "hxray/algebra.hpp"

#include <utility>

namespace hxray::geodesics {

using algebra::GroupPoint;
using algebra::HTypeStructure;

struct GeodesicSpec {
  GroupPoint base;
  Vec nu;
  Vec lambda;
};

struct MomentumPair {
  Vec nu;
  Vec zeta;
};

// Below this value of |lambda||s| the trigonometric forms switch to series.
inline constexpr double kSeriesThreshold = 1e-4;

void check_spec(const HTypeStructure &S, const GeodesicSpec &g, double tol = 1e-12);

GroupPoint flow_origin(const HTypeStructure &S, const Vec &nu, const Vec &lambda, double s);
// Horizontal momentum carried by the flow_origin trajectory at time s.
Vec flow_momentum(const HTypeStructure &S, const Vec &nu, const Vec &lambda, double s);
GroupPoint gamma_centered(const HTypeStructure &S, const Vec &nu, const Vec &lambda, double s);
GroupPoint translate_curve(const HTypeStructure &S, const GroupPoint &base, const GroupPoint &pt);
// Point (x,u) gamma(s) of the family member; the lambda = 0 member is the line (s nu, 0).
GroupPoint geodesic_point(const HTypeStructure &S, const GeodesicSpec &g, double s);
std::pair<GroupPoint, GroupPoint> helical_shift(const HTypeStructure &S, const Vec &nu,
                                                const Vec &lambda, double s, int k);

MomentumPair momentum_left(const HTypeStructure &S, const GroupPoint &p, const MomentumPair &pm);
MomentumPair momentum_right(const HTypeStructure &S, const Vec &nu, const Vec &mu, double s);
Vec guiding_center(const HTypeStructure &S, const GroupPoint &p, const Vec &nu, const Vec &mu);

// e^{s J_lambda} applied to v.
Vec rotate(const HTypeStructure &S, const Vec &lambda, double s, const Vec &v);

}  // namespace hxray::geodesics
