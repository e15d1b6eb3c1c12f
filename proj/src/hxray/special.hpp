#pragma once

#include "hxray/common.hpp"

namespace hxray::special {

// Normalized Hermite functions phi_0..phi_kmax at x.
std::vector<double> hermite_all(int kmax, double x);
double hermite(int k, double x);

// Generalized Laguerre L_a^{(b)}(x), a >= 0, a + b >= 0.
double laguerre(int a, int b, double x);
// L_0^{(b)}(x) .. L_amax^{(b)}(x)
std::vector<double> laguerre_all(int amax, int b, double x);

double log_factorial(int k);
double binomial(int a, int b);

// One-variable special Hermite function Phi_{ab}(z) with decaying e^{-|z|^2/4}.
cplx special_hermite_1d(int a, int b, cplx z);
// Table T(a, b) = Phi_{ab}(z) for 0 <= a, b <= L.
CMat special_hermite_table(int L, cplx z);

double bessel_j0(double x);

}  // namespace hxray::special
