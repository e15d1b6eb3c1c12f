#pragma once

#include "hxray/common.hpp"

namespace hxray::algebra {

// Step-2 group with Clifford generators J_1..J_m acting on R^{2n}.
struct HTypeStructure {
  int n = 0;
  int m = 0;
  std::vector<Mat> generators;
  std::string family;

  int dim_v() const { return 2 * n; }
};

struct GroupPoint {
  Vec x;
  Vec u;
};

struct Covector {
  Vec nu;
  Vec zeta;
  double nu_norm() const { return nu.norm(); }
  double zeta_norm() const { return zeta.norm(); }
};

// Point of the (2n+1)-dimensional Heisenberg group in (z, t) coordinates.
struct HeisenbergPoint {
  Vec z;
  double t = 0.0;
};

// Standard block form [[0,-I],[I,0]].
Mat standard_j(int n);

HTypeStructure heisenberg(int n);
HTypeStructure quaternionic();
// Throws unless every generator is skew, orthogonal and the set anticommutes.
HTypeStructure custom(int n, const std::vector<Mat> &generators, double tol = 1e-12);

Mat j_map(const HTypeStructure &S, const Vec &mu);
// omega_k(x, x') = <J_k x, x'>
Vec omega(const HTypeStructure &S, const Vec &x, const Vec &xp);

GroupPoint identity(const HTypeStructure &S);
void check_point(const HTypeStructure &S, const GroupPoint &p);
GroupPoint group_mul(const HTypeStructure &S, const GroupPoint &p, const GroupPoint &q);
GroupPoint group_inv(const HTypeStructure &S, const GroupPoint &p);
GroupPoint dilate(double eps, const GroupPoint &p);

Mat rotation_frame(const HTypeStructure &S, const Vec &mu);
HeisenbergPoint alpha_homomorphism(const HTypeStructure &S, const Vec &mu, const GroupPoint &p);

HeisenbergPoint heisenberg_mul(const HeisenbergPoint &a, const HeisenbergPoint &b);
HeisenbergPoint heisenberg_dilate(double eps, const HeisenbergPoint &a);

// Complex identification z = x + i y of (x_1..x_n, y_1..y_n).
CVec to_complex(const Vec &z);
Vec from_complex(const CVec &z);

}  // namespace hxray::algebra
