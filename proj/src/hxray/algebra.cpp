#include "hxray/algebra.hpp"

#include <cmath>

namespace hxray::algebra {

Mat standard_j(int n) {
  Mat J = Mat::Zero(2 * n, 2 * n);
  J.block(0, n, n, n) = -Mat::Identity(n, n);
  J.block(n, 0, n, n) = Mat::Identity(n, n);
  return J;
}

HTypeStructure heisenberg(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "heisenberg: n must be >= 1");
  HTypeStructure S;
  S.n = n;
  S.m = 1;
  S.family = "heisenberg";
  S.generators.push_back(standard_j(n));
  return S;
}

HTypeStructure quaternionic() {
  // left multiplication by i, j, k on q = a + b i + c j + d k
  Mat Ji(4, 4), Jj(4, 4), Jk(4, 4);
  Ji << 0, -1, 0, 0,
        1, 0, 0, 0,
        0, 0, 0, -1,
        0, 0, 1, 0;
  Jj << 0, 0, -1, 0,
        0, 0, 0, 1,
        1, 0, 0, 0,
        0, -1, 0, 0;
  Jk << 0, 0, 0, -1,
        0, 0, -1, 0,
        0, 1, 0, 0,
        1, 0, 0, 0;
  HTypeStructure S;
  S.n = 2;
  S.m = 3;
  S.family = "quaternionic";
  S.generators = {Ji, Jj, Jk};
  return S;
}

HTypeStructure custom(int n, const std::vector<Mat> &generators, double tol) {
  require(n >= 1, ErrorCode::InvalidArgument, "custom: n must be >= 1");
  require(!generators.empty(), ErrorCode::InvalidArgument, "custom: no generators");
  const int d = 2 * n;
  const Mat I = Mat::Identity(d, d);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Mat &Ji = generators[i];
    require(Ji.rows() == d && Ji.cols() == d, ErrorCode::Dimension,
            "custom: generator " + std::to_string(i) + " is not 2n x 2n");
    require((Ji + Ji.transpose()).norm() <= tol, ErrorCode::InvalidArgument,
            "custom: generator " + std::to_string(i) + " is not skew-symmetric");
    require((Ji.transpose() * Ji - I).norm() <= tol, ErrorCode::InvalidArgument,
            "custom: generator " + std::to_string(i) + " is not orthogonal");
    for (std::size_t j = 0; j < i; ++j) {
      const Mat &Jj = generators[j];
      require((Ji * Jj + Jj * Ji).norm() <= tol, ErrorCode::InvalidArgument,
              "custom: generators " + std::to_string(j) + "," + std::to_string(i) +
                  " do not anticommute");
    }
  }
  HTypeStructure S;
  S.n = n;
  S.m = static_cast<int>(generators.size());
  S.family = "custom";
  S.generators = generators;
  return S;
}

Mat j_map(const HTypeStructure &S, const Vec &mu) {
  require(mu.size() == S.m, ErrorCode::Dimension, "j_map: mu has wrong dimension");
  Mat J = Mat::Zero(S.dim_v(), S.dim_v());
  for (int k = 0; k < S.m; ++k) J += mu(k) * S.generators[k];
  return J;
}

Vec omega(const HTypeStructure &S, const Vec &x, const Vec &xp) {
  Vec w(S.m);
  for (int k = 0; k < S.m; ++k) w(k) = (S.generators[k] * x).dot(xp);
  return w;
}

GroupPoint identity(const HTypeStructure &S) {
  return {Vec::Zero(S.dim_v()), Vec::Zero(S.m)};
}

void check_point(const HTypeStructure &S, const GroupPoint &p) {
  require(p.x.size() == S.dim_v() && p.u.size() == S.m, ErrorCode::Dimension,
          "group point does not conform to the structure");
}

GroupPoint group_mul(const HTypeStructure &S, const GroupPoint &p, const GroupPoint &q) {
  check_point(S, p);
  check_point(S, q);
  return {p.x + q.x, p.u + q.u + 0.5 * omega(S, p.x, q.x)};
}

GroupPoint group_inv(const HTypeStructure &S, const GroupPoint &p) {
  check_point(S, p);
  return {-p.x, -p.u};
}

GroupPoint dilate(double eps, const GroupPoint &p) {
  require(eps > 0.0, ErrorCode::Domain, "dilate: eps must be positive");
  return {eps * p.x, eps * eps * p.u};
}

Mat rotation_frame(const HTypeStructure &S, const Vec &mu) {
  require(mu.size() == S.m, ErrorCode::Dimension, "rotation_frame: mu has wrong dimension");
  const double r = mu.norm();
  require(r > 0.0, ErrorCode::Domain, "rotation_frame: mu must be nonzero");
  const int n = S.n, d = 2 * n;
  const Mat Jh = j_map(S, mu / r);
  Mat R = Mat::Zero(d, d);
  std::vector<bool> used(d, false);
  // Symplectic Gram-Schmidt over the standard basis. Each step takes the
  // basis vector with the largest residual (first index wins ties up to 1e-9)
  // so the output is a fixed function of mu.
  for (int j = 0; j < n; ++j) {
    int best = -1;
    double best_norm = -1.0;
    Vec best_res;
    for (int c = 0; c < d; ++c) {
      if (used[c]) continue;
      Vec v = Vec::Unit(d, c);
      for (int i = 0; i < j; ++i) {
        v -= R.col(i).dot(v) * R.col(i);
        v -= R.col(n + i).dot(v) * R.col(n + i);
      }
      const double nv = v.norm();
      if (nv > best_norm + 1e-9) {
        best = c;
        best_norm = nv;
        best_res = v;
      }
    }
    used[best] = true;
    Vec p = best_res / best_norm;
    // one reorthogonalization pass
    for (int i = 0; i < j; ++i) {
      p -= R.col(i).dot(p) * R.col(i);
      p -= R.col(n + i).dot(p) * R.col(n + i);
    }
    p.normalize();
    R.col(j) = p;
    R.col(n + j) = Jh * p;
  }
  return R;
}

HeisenbergPoint alpha_homomorphism(const HTypeStructure &S, const Vec &mu, const GroupPoint &p) {
  check_point(S, p);
  const Mat R = rotation_frame(S, mu);
  return {R.transpose() * p.x, mu.dot(p.u) / mu.norm()};
}

HeisenbergPoint heisenberg_mul(const HeisenbergPoint &a, const HeisenbergPoint &b) {
  const int n = static_cast<int>(a.z.size() / 2);
  const Vec Jz = standard_j(n) * a.z;
  return {a.z + b.z, a.t + b.t + 0.5 * Jz.dot(b.z)};
}

HeisenbergPoint heisenberg_dilate(double eps, const HeisenbergPoint &a) {
  require(eps > 0.0, ErrorCode::Domain, "dilate: eps must be positive");
  return {eps * a.z, eps * eps * a.t};
}

CVec to_complex(const Vec &z) {
  const int n = static_cast<int>(z.size() / 2);
  CVec w(n);
  for (int j = 0; j < n; ++j) w(j) = cplx(z(j), z(n + j));
  return w;
}

Vec from_complex(const CVec &z) {
  const int n = static_cast<int>(z.size());
  Vec w(2 * n);
  for (int j = 0; j < n; ++j) {
    w(j) = z(j).real();
    w(n + j) = z(j).imag();
  }
  return w;
}

}  // namespace hxray::algebra
