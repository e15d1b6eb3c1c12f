#pragma once

#include "hxray/geodesics.hpp"
#include "hxray/quadrature.hpp"
#include "hxray/test_function.hpp"

namespace hxray::transform {

using algebra::GroupPoint;
using algebra::HTypeStructure;
using geodesics::GeodesicSpec;
using quad::Quadrature;

// Pointwise function on G (or on G_lambda when periodic) with decay bounds.
struct FunctionHandle {
  std::function<cplx(const Vec &, const Vec &)> eval;
  Support support;
  cplx operator()(const Vec &x, const Vec &u) const { return eval(x, u); }
};

FunctionHandle handle(const TestFunction &f, double tau = 1e-14);
FunctionHandle zero_handle(const HTypeStructure &S);
// q -> f(p q)
FunctionHandle left_translate(const HTypeStructure &S, const FunctionHandle &f, const GroupPoint &p);
// q -> f(delta_eps q)
FunctionHandle dilate_pullback(const FunctionHandle &f, double eps);

struct XrayValue {
  cplx value;
  double tail_bound = 0.0;
  int nodes = 0;
};

XrayValue xray(const HTypeStructure &S, const FunctionHandle &f, const GeodesicSpec &g,
               const Quadrature &q);
XrayValue xray(const HTypeStructure &S, const TestFunction &f, const GeodesicSpec &g,
               const Quadrature &q);
XrayValue xray_line(const HTypeStructure &S, const TestFunction &f, const GroupPoint &base,
                    const Vec &nu, const Quadrature &q);
// I f((x, u_j)) for one horizontal base x and many central coordinates, using the
// separable structure of f so the horizontal factor is evaluated once per node.
std::vector<cplx> xray_batch_u(const HTypeStructure &S, const TestFunction &f, const Vec &x,
                               const std::vector<Vec> &us, const Vec &nu, const Vec &lambda,
                               const Quadrature &q);

double central_period(const Vec &lambda);
cplx periodize(const HTypeStructure &S, const FunctionHandle &f, const Vec &lambda,
               const GroupPoint &p, int K);
// P_lambda f with the number of terms chosen per point from the central support.
FunctionHandle periodized(const HTypeStructure &S, const FunctionHandle &f, const Vec &lambda);
cplx holonomy(const HTypeStructure &S, const FunctionHandle &g, const GeodesicSpec &spec,
              const Quadrature &q);

double homogeneity_check(const HTypeStructure &S, const TestFunction &f, const Vec &nu,
                         const Vec &lambda, double eps, const std::vector<GroupPoint> &points,
                         const Quadrature &q);

// Orthonormal basis of the complement of a unit vector (columns), deterministic.
Mat orth_complement(const Vec &unit);

// Grid-discretized L1 norms. Spacing comes from q.grid_halfwidth / q.grid_nodes.
double l1_norm_group(const HTypeStructure &S, const FunctionHandle &f, const Quadrature &q,
                     const Exec &ex = {});
double l1_norm_line_transform(const HTypeStructure &S, const TestFunction &f, const Vec &nu,
                              const Quadrature &q, const Exec &ex = {});
// L1 over G_lambda of a Gamma_lambda-periodic function given on representatives.
double l1_norm_quotient(const HTypeStructure &S, const FunctionHandle &g, const Vec &lambda,
                        const Quadrature &q, const Exec &ex = {});
// L1 over G_lambda of the X-ray transform of f.
double l1_norm_xray(const HTypeStructure &S, const TestFunction &f, const Vec &nu,
                    const Vec &lambda, const Quadrature &q, const Exec &ex = {});
// L1 over G_lambda of the holonomy transform of g.
double l1_norm_holonomy(const HTypeStructure &S, const FunctionHandle &g, const Vec &nu,
                        const Vec &lambda, const Quadrature &q, const Exec &ex = {});

}  // namespace hxray::transform
