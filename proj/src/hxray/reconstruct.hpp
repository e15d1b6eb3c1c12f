#pragma once

#include "hxray/frequency.hpp"

namespace hxray::reconstruct {

using algebra::HTypeStructure;
using fock::FockBasis;
using fock::FockOperator;
using frequency::CompatiblePair;
using quad::Quadrature;
using transform::TestFunction;

enum class LhsMethod {
  // quadrature over G_lambda of sampled X-ray values
  XrayQuadrature,
  // central integral done in closed form, loop integral by quadrature
  CentralAnalytic,
};

struct SliceOptions {
  LhsMethod method = LhsMethod::XrayQuadrature;
  bool uniform_x = true;
  // residual is measured on degrees <= interior_degree; negative means L - 4
  int interior_degree = -1;
};

struct SliceReport {
  FockOperator lhs;
  FockOperator rhs;
  int interior_degree = 0;
  double residual = 0.0;  // ||lhs - rhs||_F / ||rhs||_F on the interior block
  double lhs_norm = 0.0;
  double rhs_norm = 0.0;
};

// Fourier coefficient on G_lambda of the X-ray transform of f at pair.mu.
FockOperator slice_lhs(const HTypeStructure &S, const TestFunction &f, const Vec &nu, const Vec &lambda,
                       const CompatiblePair &pair, const FockBasis &basis, const Quadrature &q,
                       const SliceOptions &opt = {}, const Exec &ex = {});
// 2 pi |lambda|^{-1} J(mu) F(f)(mu)
FockOperator slice_rhs(const HTypeStructure &S, const TestFunction &f, const Vec &nu, const Vec &lambda,
                       const CompatiblePair &pair, const FockBasis &basis, const Quadrature &q,
                       const Exec &ex = {});
SliceReport slice_verify(const HTypeStructure &S, const TestFunction &f, const Vec &nu, const Vec &lambda,
                         const CompatiblePair &pair, const FockBasis &basis, const Quadrature &q,
                         const SliceOptions &opt = {}, const Exec &ex = {});

struct ScalarSliceReport {
  std::vector<Vec> etas;
  std::vector<cplx> lhs;
  std::vector<cplx> rhs;            // projected-plane Bessel factor
  std::vector<cplx> rhs_inner;      // Bessel factor with <eta, nu>
  double residual = 0.0;            // max |lhs - rhs| / max |rhs|
  double residual_inner = 0.0;
};

// Integral over G_lambda of the X-ray transform against e^{-i<eta, x>}.
ScalarSliceReport scalar_slice_verify(const HTypeStructure &S, const TestFunction &f, const Vec &nu,
                                      const Vec &lambda, const std::vector<Vec> &etas,
                                      const Quadrature &q, const Exec &ex = {});

enum class Solver { Stacked, Averaged };

struct BlockReport {
  int degree = 0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  int clipped = 0;
  bool recoverable = true;
};

struct Recovery {
  FockOperator X;
  int unknown_degree = 0;
  double max_eigenvalue = 0.0;
  double clip_level = 0.0;
  std::vector<BlockReport> blocks;
  bool invertible = true;
  int witness_degree = -1;
};

// Solves J_i X = b_i for the rows of X with degree <= unknown_degree. The
// averaged solver divides by the given per-degree eigenvalues instead of
// forming the sample normal matrix.
Recovery recover_from_multipliers(const std::vector<FockOperator> &J, const std::vector<CMat> &b,
                                  int unknown_degree, double tol, Solver solver = Solver::Stacked,
                                  const std::vector<double> &averaged_eigenvalues = {});

struct SliceSample {
  Vec nu;
  Vec lambda;
  FockOperator lhs;
};

// Recovers F(f)(mu) from Fourier slice data at one frequency.
Recovery recover_block(const HTypeStructure &S, const std::vector<SliceSample> &data, const Vec &mu,
                       const FockBasis &basis, const Quadrature &q, double tol, int unknown_degree = -1,
                       Solver solver = Solver::Stacked);

// Representatives of unit directions modulo the e^{sJ_lambda} orbit.
std::vector<Vec> sample_directions(const HTypeStructure &S, const Vec &lambda, int count,
                                   std::uint64_t seed);

struct CoverageMap {
  std::vector<Vec> grid;
  std::vector<bool> reachable;
  std::vector<int> k;  // witness k for reachable points
  int reachable_count = 0;
  int nonzero_count = 0;
  double unreachable_radius = 0.0;  // largest |mu| of an unreachable nonzero point
  double fraction() const { return nonzero_count ? double(reachable_count) / nonzero_count : 0.0; }
};

CoverageMap charge_frequency_map(const HTypeStructure &S, const std::vector<Vec> &Z,
                                 const std::vector<Vec> &grid, bool odd_only);

// m = 1 grid {i h : |i h| <= radius}.
std::vector<Vec> line_grid(double h, double radius);
// m > 1 grid of radial shells times quasi-uniform sphere directions.
std::vector<Vec> shell_grid(int m, double r_max, int shells, int directions);

struct SupportResult {
  CoverageMap map;
  // smallest grid radius beyond which every grid point is reachable
  double threshold = 0.0;
  double construction_radius = 0.0;  // closed-form lattice construction
  double stated_bound = 0.0;         // bound with k0 the smallest odd integer >= 2/eps
  double constant = 0.0;             // threshold / R^2
};

// Charges with |lambda| in [R, R(1 + eps)].
SupportResult shell_experiment(double R, double eps, double h, double radius, bool odd_only = true);
// Charges on the cap {|lambda| = |lambda0|, |lambda - lambda0| < eps |lambda0|}.
SupportResult cap_experiment(const Vec &lambda0, double eps, const std::vector<Vec> &grid);
SupportResult sphere_experiment(double R, const std::vector<Vec> &grid);

struct InjectivityPoint {
  Vec mu;
  std::vector<int> charges;  // indices into Z
  std::vector<int> ks;
  double error = 0.0;  // relative error on degrees <= compare_degree
  double reference_norm = 0.0;
  double null_norm = 0.0;
  bool invertible = true;
  int witness_degree = -1;
};

struct InjectivityOptions {
  int nu_count = 8;
  int unknown_degree = -1;
  int compare_degree = 4;
  double tol = 1e-8;
  bool odd_only = false;
  std::uint64_t seed = 1;
  Solver solver = Solver::Stacked;
  SliceOptions slice;
};

struct InjectivityResult {
  std::vector<InjectivityPoint> points;
  CoverageMap coverage;
  double max_error = 0.0;
  double max_null = 0.0;
};

// Synthesizes slice data of f for each frequency in mus from every compatible
// charge in Z and recovers F(f)(mu); repeats with f = 0 for the null test.
InjectivityResult injectivity_experiment(const HTypeStructure &S, const TestFunction &f,
                                         const std::vector<Vec> &Z, const std::vector<Vec> &mus,
                                         const FockBasis &basis, const Quadrature &q,
                                         const InjectivityOptions &opt, const Exec &ex = {});

}  // namespace hxray::reconstruct
