#include "hxray/special.hpp"

#include <cmath>

namespace hxray::special {

namespace {
constexpr double kBig = 1e150;
constexpr double kLogBig = 345.38776394910684;  // log(1e150)
}  // namespace

std::vector<double> hermite_all(int kmax, double x) {
  require(kmax >= 0, ErrorCode::Domain, "hermite: degree must be >= 0");
  std::vector<double> out(kmax + 1);
  // Recurrence without the Gaussian; overflow is pushed into a running log scale
  // which is folded back together with e^{-x^2/2} per entry.
  std::vector<double> logscale(kmax + 1, 0.0);
  double pm1 = 0.0, p = std::pow(kPi, -0.25);
  double ls = 0.0;
  out[0] = p;
  for (int k = 0; k < kmax; ++k) {
    double pn = std::sqrt(2.0 / (k + 1)) * x * p - std::sqrt(double(k) / (k + 1)) * pm1;
    pm1 = p;
    p = pn;
    if (std::abs(p) > kBig) {
      p /= kBig;
      pm1 /= kBig;
      ls += kLogBig;
    }
    out[k + 1] = p;
    logscale[k + 1] = ls;
  }
  const double g = -0.5 * x * x;
  for (int k = 0; k <= kmax; ++k) out[k] *= std::exp(g + logscale[k]);
  return out;
}

double hermite(int k, double x) { return hermite_all(k, x)[k]; }

std::vector<double> laguerre_all(int amax, int b, double x) {
  require(amax >= 0, ErrorCode::Domain, "laguerre: degree must be >= 0");
  std::vector<double> out(amax + 1);
  out[0] = 1.0;
  if (amax >= 1) out[1] = 1.0 + b - x;
  for (int k = 1; k < amax; ++k) {
    out[k + 1] = ((2.0 * k + 1.0 + b - x) * out[k] - (k + b) * out[k - 1]) / (k + 1.0);
  }
  return out;
}

double laguerre(int a, int b, double x) {
  require(a >= 0 && a + b >= 0, ErrorCode::Domain, "laguerre: invalid indices");
  return laguerre_all(a, b, x)[a];
}

double log_factorial(int k) { return std::lgamma(k + 1.0); }

double binomial(int a, int b) {
  if (b < 0 || b > a) return 0.0;
  return std::round(std::exp(log_factorial(a) - log_factorial(b) - log_factorial(a - b)));
}

cplx special_hermite_1d(int a, int b, cplx z) {
  require(a >= 0 && b >= 0, ErrorCode::Domain, "special_hermite: negative index");
  const double r = std::abs(z);
  const double x = 0.5 * r * r;
  const int d = std::abs(a - b);
  const int lo = std::min(a, b);
  const double norm = 1.0 / std::sqrt(2.0 * kPi);
  if (r == 0.0) return d == 0 ? cplx(norm, 0.0) : cplx(0.0, 0.0);
  const double lag = laguerre(lo, d, x);
  const double logmag = 0.5 * (log_factorial(lo) - log_factorial(lo + d)) +
                        d * std::log(r / std::sqrt(2.0)) - 0.25 * r * r;
  // phase of z^d for a >= b, of (-conj z)^d otherwise
  const cplx unit = a >= b ? z / r : -std::conj(z) / r;
  return norm * lag * std::exp(logmag) * std::pow(unit, d);
}

CMat special_hermite_table(int L, cplx z) {
  CMat T = CMat::Zero(L + 1, L + 1);
  const double r = std::abs(z);
  const double norm = 1.0 / std::sqrt(2.0 * kPi);
  if (r == 0.0) {
    for (int a = 0; a <= L; ++a) T(a, a) = norm;
    return T;
  }
  const double x = 0.5 * r * r;
  const double lr = std::log(r / std::sqrt(2.0));
  const cplx up = z / r, dn = -std::conj(z) / r;
  std::vector<double> lf(L + 1);
  for (int k = 0; k <= L; ++k) lf[k] = log_factorial(k);
  cplx pu = 1.0, pd = 1.0;
  for (int d = 0; d <= L; ++d) {
    std::vector<double> lag = laguerre_all(L - d, d, x);
    for (int lo = 0; lo + d <= L; ++lo) {
      const double mag =
          norm * lag[lo] * std::exp(0.5 * (lf[lo] - lf[lo + d]) + d * lr - 0.25 * r * r);
      T(lo + d, lo) = mag * pu;
      if (d > 0) T(lo, lo + d) = mag * pd;
    }
    pu *= up;
    pd *= dn;
  }
  return T;
}

double bessel_j0(double x) { return std::cyl_bessel_j(0.0, std::abs(x)); }

}  // namespace hxray::special
