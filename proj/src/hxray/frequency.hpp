#pragma once

#include "hxray/fock.hpp"
#include "hxray/transform.hpp"

#include <cstdint>
#include <optional>

namespace hxray::frequency {

using algebra::GroupPoint;
using algebra::HTypeStructure;
using fock::FockBasis;
using fock::FockOperator;
using quad::Quadrature;
using transform::FunctionHandle;
using transform::TestFunction;

inline constexpr double kCompatTol = 1e-9;

struct CompatiblePair {
  Vec lambda;
  Vec mu;
  int k = 0;
};

struct RelationCoords {
  Vec lambda_hat;
  Vec mu_perp;
  int two_k = 0;
};

struct DegreeStats {
  int degree = 0;
  double eigenvalue = 0.0;  // min eigenvalue of the degree block
  double max_eigenvalue = 0.0;
  double condition = 0.0;
};

struct MultiplierReport {
  FockOperator op;
  int k = 0;
  bool block_map_verified = false;
  double off_block_mass = 0.0;
  std::vector<DegreeStats> degrees;
};

std::optional<int> compatible(const Vec &lambda, const Vec &mu, double tol = kCompatTol);
CompatiblePair make_pair(const Vec &lambda, const Vec &mu, double tol = kCompatTol);
// mu = 2 k |lambda| lambda
CompatiblePair parallel_pair(const Vec &lambda, int k);
std::vector<CompatiblePair> lattice_dual(const Vec &lambda, double R, double transverse_step = 1.0);
RelationCoords relation_coords(const CompatiblePair &p);
CompatiblePair from_relation_coords(const RelationCoords &rc, double lambda_norm);

FockOperator gft(const HTypeStructure &S, const TestFunction &f, const Vec &mu,
                 const FockBasis &basis, const Quadrature &q, const Exec &ex = {});
// Fills out[j] = g(x, us[j]); lets separable inputs share work across central nodes.
using BatchEval = std::function<void(const Vec &x, const std::vector<Vec> &us, std::vector<cplx> &out)>;

// Integral over G_lambda of g(x,u) pi_mu(x,u)^*. Horizontal rule is Gauss-Hermite
// matched to the support unless `uniform_x` is set.
FockOperator gft_quotient(const HTypeStructure &S, const BatchEval &g, const transform::Support &sp,
                          const Vec &lambda, const CompatiblePair &pair, const FockBasis &basis,
                          const Quadrature &q, bool uniform_x = false, const Exec &ex = {});
FockOperator gft_quotient(const HTypeStructure &S, const FunctionHandle &g, const Vec &lambda,
                          const CompatiblePair &pair, const FockBasis &basis, const Quadrature &q,
                          bool uniform_x = false, const Exec &ex = {});
// sum_i w_i g(x_i) pi_mu(x_i, 0)^* over the tensor rule, in the frame of mu.
FockOperator gft_horizontal(const HTypeStructure &S, const std::function<cplx(const Vec &)> &g,
                            const std::vector<quad::Rule1D> &rules, const Vec &mu,
                            const FockBasis &basis, const Exec &ex = {});
cplx gft_scalar(const HTypeStructure &S, const TestFunction &f, const Vec &eta);

// 2 pi |lambda|^{-1} J_0(|Pr_V eta| / |lambda|), V = span{nu, J_lambda-hat nu}.
double bessel_multiplier(const HTypeStructure &S, const Vec &nu, const Vec &lambda, const Vec &eta);
// 2 pi |lambda|^{-1} J_0(<eta, nu> / |lambda|)
double bessel_multiplier_projected(const Vec &nu, const Vec &lambda, const Vec &eta);
// Periodic trapezoid of e^{-i<eta, gamma_x(s)>} over one period.
cplx bessel_loop_quadrature(const HTypeStructure &S, const Vec &nu, const Vec &lambda,
                            const Vec &eta, int nodes);

FockOperator multiplier_J_quadrature(const HTypeStructure &S, const Vec &nu, const Vec &lambda,
                                     const CompatiblePair &pair, const FockBasis &basis,
                                     const Quadrature &q);
// Closed form; requires mu parallel or antiparallel to lambda.
FockOperator multiplier_J_spectral(const HTypeStructure &S, const Vec &nu, const Vec &lambda,
                                   const CompatiblePair &pair, const FockBasis &basis);
// Spectral form from its parameters: entry(beta, alpha) = (2pi)^{n/2} i^k Phi_{alpha beta}(w)
// on |beta| = |alpha| + |k|.
FockOperator spectral_form(int k, const CVec &w, const FockBasis &basis);
bool spectral_valid(const Vec &lambda, const Vec &mu);
// Spectral form when valid, quadrature otherwise.
FockOperator multiplier_J(const HTypeStructure &S, const Vec &nu, const Vec &lambda,
                          const CompatiblePair &pair, const FockBasis &basis, const Quadrature &q);

FockOperator normal_op(const HTypeStructure &S, const Vec &nu, const Vec &lambda,
                       const CompatiblePair &pair, const FockBasis &basis, const Quadrature &q);

struct McResult {
  FockOperator mean;
  int samples = 0;
  // per degree: ||block mean - c_l I||_F and the matching MC standard error
  std::vector<double> block_deviation;
  std::vector<double> block_sigma;
};

// Haar-distributed n x n unitary from a seed stream.
CMat haar_unitary(int n, std::uint64_t seed, std::uint64_t stream);
McResult averaged_normal_mc(const HTypeStructure &S, const Vec &lambda, const CompatiblePair &pair,
                            const FockBasis &basis, int N, std::uint64_t seed,
                            const Quadrature &q = {}, const Exec &ex = {});
// Eigenvalue on degree l of the averaged normal operator, l = 0..L.
std::vector<double> averaged_normal_eigenvalues(int n, int k, double wnorm, int L);
// Reduced single-sum form used as an independent cross-check.
double averaged_normal_eigenvalue_reduced(int n, int l, int k, double wnorm);
MultiplierReport averaged_normal_exact(const HTypeStructure &S, const Vec &lambda,
                                       const CompatiblePair &pair, const FockBasis &basis);
double eigenvalue_lower_bound(int n, int l, int k, double wnorm);

struct Certificate {
  bool invertible = false;
  double min_eigenvalue = 0.0;
  int witness_degree = -1;
};
Certificate invertibility_certificate(const std::vector<double> &eigenvalues, double tol);
Certificate invertibility_certificate(const HTypeStructure &S, const Vec &lambda,
                                      const CompatiblePair &pair, const FockBasis &basis, double tol);

double dilation_exponent(const HTypeStructure &S);
double dilation_lemma_check(const HTypeStructure &S, const TestFunction &f, const Vec &mu, double eps,
                            const FockBasis &basis, const Quadrature &q, const Exec &ex = {});

// Per-degree min/max eigenvalues of a Hermitian operator's diagonal blocks.
std::vector<DegreeStats> block_spectrum(const FockOperator &A);

}  // namespace hxray::frequency
