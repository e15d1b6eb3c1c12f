#pragma once

#include "hxray/algebra.hpp"

#include <map>

namespace hxray::fock {

using algebra::GroupPoint;
using algebra::HTypeStructure;

using MultiIndex = std::vector<int>;

inline int degree(const MultiIndex &a) {
  int d = 0;
  for (int v : a) d += v;
  return d;
}

// Multi-indices {|alpha| <= L}, graded by degree then ascending lexicographic.
class FockBasis {
 public:
  FockBasis() = default;
  FockBasis(int n, int L);

  int n() const { return n_; }
  int L() const { return L_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const MultiIndex &index(int i) const { return indices_[i]; }
  const std::vector<MultiIndex> &indices() const { return indices_; }
  int degree_of(int i) const { return degree(indices_[i]); }
  int find(const MultiIndex &a) const;
  // First position and length of the degree-l block.
  int block_start(int l) const { return starts_[l]; }
  int block_size(int l) const { return starts_[l + 1] - starts_[l]; }
  // Number of positions with degree <= l.
  int interior_size(int l) const { return starts_[std::min(l, L_) + 1]; }

  bool operator==(const FockBasis &o) const { return n_ == o.n_ && L_ == o.L_; }

 private:
  int n_ = 0, L_ = 0;
  std::vector<MultiIndex> indices_;
  std::vector<int> starts_;
  std::map<MultiIndex, int> lookup_;
};

// entry(row beta, col alpha) = <A omega_alpha, omega_beta>
struct FockOperator {
  FockBasis basis;
  CMat entries;

  static FockOperator zero(const FockBasis &b) { return {b, CMat::Zero(b.size(), b.size())}; }
  static FockOperator identity(const FockBasis &b) { return {b, CMat::Identity(b.size(), b.size())}; }
  CMat block(int row_deg, int col_deg) const;
  // Leading submatrix on degrees <= l.
  CMat interior(int l) const;
  // Frobenius mass of entries with |beta| != |alpha| + shift.
  double off_block_mass(int shift) const;
};

void save_operator(const FockOperator &A, const std::string &path);
FockOperator load_operator(const std::string &path);
void save_operator_csv(const FockOperator &A, const std::string &path);
std::string operator_text(const FockOperator &A);
FockOperator parse_operator_text(const std::string &text);

// Multi-dimensional special Hermite function Phi_{ab}(z), z in C^n.
cplx special_hermite(const MultiIndex &a, const MultiIndex &b, const CVec &z);
// E^h_{ab}(z, t) = (2 pi)^{n/2} Phi_{ab}(sqrt(h) z) e^{iht}; z real of length 2n.
cplx entry_function(double h, const MultiIndex &a, const MultiIndex &b, const Vec &z, double t);
// Matrix of rho_h(z, 0) on the basis: entry(beta, alpha) = E^h_{alpha beta}(z, 0).
CMat heisenberg_matrix(double h, const Vec &z, const FockBasis &basis);

FockOperator rep_matrix(const HTypeStructure &S, const Vec &mu, const GroupPoint &p,
                        const FockBasis &basis);
cplx scalar_rep(const HTypeStructure &S, const Vec &eta, const GroupPoint &p);

// Matrix of F -> F(U^* zeta) on normalized monomials.
FockOperator intertwiner_tau(const CMat &U, const FockBasis &basis, double tol = 1e-12);
// Complex n x n matrix of a real 2n x 2n map commuting with the standard J.
CMat complexify(const Mat &O, double tol = 1e-10);
// Realification of a complex n x n matrix.
Mat realify(const CMat &U);
FockOperator intertwiner_U(const HTypeStructure &S, const Vec &mu, const Vec &lambda,
                           const FockBasis &basis);

cplx spherical_function(int l, int n, const CVec &z, double t);

// Samples of a function on the tensor grid [-a, a)^n with N points per axis
// (row-major, last axis fastest).
struct SampledFunction {
  int n = 1;
  int N = 0;
  double a = 0.0;
  std::vector<cplx> values;
  double step() const { return 2.0 * a / N; }
  double node(int i) const { return -a + step() * i; }
};

SampledFunction sample_hermite(const MultiIndex &alpha, int N, double a);
// [rho_h(x, y, t) phi](xi) = e^{ih(t + x.y/2)} e^{i sqrt(h) y.xi} phi(xi + sqrt(h) x); the
// shift uses trigonometric interpolation of the samples.
SampledFunction schrodinger_apply(double h, const Vec &z, double t, const SampledFunction &phi);
cplx grid_inner(const SampledFunction &f, const SampledFunction &g);

}  // namespace hxray::fock
