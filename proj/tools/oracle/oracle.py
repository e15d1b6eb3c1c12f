"""Independent reference values for the unit tests.

Computes everything from first principles with scipy/mpmath and writes
tests/oracle_values.hpp. Run from the repository root:

    python3 tools/oracle/oracle.py > tests/oracle_values.hpp
"""

import math

import mpmath as mp
import numpy as np
from scipy import integrate, special

mp.mp.dps = 30


def hermite_fn(k, x):
    """Normalized Hermite function phi_k(x)."""
    c = 1 / mp.sqrt(2**k * mp.factorial(k) * mp.sqrt(mp.pi))
    return c * mp.hermite(k, x) * mp.exp(-x * x / 2)


def special_hermite(a, b, z):
    """(2 pi)^{-1/2} <rho(x, y, 0) phi_a, phi_b> with z = x + i y, by 1D quadrature."""
    x, y = mp.mpf(z.real), mp.mpf(z.imag)

    def f(xi):
        return mp.expj(x * y / 2 + y * xi) * hermite_fn(a, xi + x) * hermite_fn(b, xi)

    v = mp.quad(f, [-mp.inf, -x - 4, -x, -x + 4, 0, 4, mp.inf])
    return complex(v / mp.sqrt(2 * mp.pi))


def laguerre(a, b, x):
    """Generalized Laguerre polynomial from its explicit sum."""
    x = mp.mpf(x)
    return sum((-1) ** j * mp.binomial(a + b, a - j) * x**j / mp.factorial(j) for j in range(a + 1))


def averaged_eig_n1(l, k, w):
    """n = 1 eigenvalue: (l!/(l+k)!) (w^2/2)^k L_l^{(k)}(w^2/2)^2 e^{-w^2/2}, k >= 0."""
    r = mp.mpf(w) ** 2 / 2
    v = mp.factorial(l) / mp.factorial(l + k) * r**k * laguerre(l, k, r) ** 2 * mp.exp(-r)
    return float(v)


def std_j(n):
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = -np.eye(n)
    J[n:, :n] = np.eye(n)
    return J


def flow_ode(n, nu, lam, s):
    """Integrates x' = e^{t lam J} nu, u' = (1/2) <J x, x'> from the origin (m = 1)."""
    J = std_j(n)
    nu = np.asarray(nu, float)

    def rhs(t, y):
        x = y[: 2 * n]
        th = lam * t
        v = math.cos(th) * nu + math.sin(th) * (J @ nu)
        return np.concatenate([v, [0.5 * (J @ x) @ v]])

    sol = integrate.solve_ivp(rhs, (0.0, s), np.zeros(2 * n + 1), method="DOP853", rtol=1e-13, atol=1e-14)
    return sol.y[:, -1]


def gft00_gaussian(a, b, mu):
    """(0,0) entry of the Fourier transform of e^{-a|x|^2 - b u^2} on the 3D group, brute force."""
    h = abs(mu)

    def g(x1, x2, u, part):
        e00 = math.exp(-h * (x1 * x1 + x2 * x2) / 4.0)
        f = math.exp(-a * (x1 * x1 + x2 * x2) - b * u * u)
        ph = -mu * u
        return f * e00 * (math.cos(ph) if part == 0 else math.sin(ph))

    opts = {"epsabs": 1e-13, "epsrel": 1e-12, "limit": 200}
    rng = [[-9, 9], [-9, 9], [-12, 12]]
    re = integrate.nquad(g, rng, args=(0,), opts=opts)[0]
    im = integrate.nquad(g, rng, args=(1,), opts=opts)[0]
    return complex(re, im)


def scalar_ft_gaussian(a, b, eta):
    """int e^{-a|x|^2 - b u^2} e^{-i eta.x} dx du on the 3D group, by quadrature."""

    def g(x, e, part):
        ph = -e * x
        return math.exp(-a * x * x) * (math.cos(ph) if part == 0 else math.sin(ph))

    val = 1.0 + 0.0j
    for e in eta:
        re = integrate.quad(g, -15, 15, args=(e, 0), epsabs=1e-15, epsrel=1e-13)[0]
        im = integrate.quad(g, -15, 15, args=(e, 1), epsabs=1e-15, epsrel=1e-13)[0]
        val *= complex(re, im)
    cu = integrate.quad(lambda u: math.exp(-b * u * u), -15, 15, epsabs=1e-15, epsrel=1e-13)[0]
    return val * cu


def fmt(v):
    return repr(float(v))


def main():
    out = []
    out.append("#pragma once")
    out.append("// Generated by tools/oracle/oracle.py; do not edit by hand.")
    out.append("")
    out.append("namespace oracle {")
    out.append("")

    out.append("struct SpecialHermiteCase { int a, b; double zr, zi, re, im; };")
    out.append("inline constexpr SpecialHermiteCase kSpecialHermite[] = {")
    cases = [(0, 0, 1.0 + 0.0j), (1, 0, 0.7 - 0.4j), (0, 2, 1.3 + 0.9j), (3, 1, -0.5 + 1.1j),
             (2, 5, 2.1 - 0.3j), (4, 4, 0.9 + 0.9j), (6, 3, -1.7 - 1.2j), (8, 8, 2.5 + 0.5j),
             (5, 8, 0.2 - 2.9j), (7, 2, 1.0 + 1.0j)]
    for a, b, z in cases:
        v = special_hermite(a, b, z)
        out.append(f"    {{{a}, {b}, {fmt(z.real)}, {fmt(z.imag)}, {fmt(v.real)}, {fmt(v.imag)}}},")
    out.append("};")
    out.append("")

    out.append("struct LaguerreCase { int a, b; double x, value; };")
    out.append("inline constexpr LaguerreCase kLaguerre[] = {")
    for a, b, x in [(0, 0, 1.0), (1, 0, 1.0), (3, 2, 0.7), (5, 0, 2.5), (8, 3, 4.0), (12, 1, 9.5), (20, 0, 1.5)]:
        out.append(f"    {{{a}, {b}, {fmt(x)}, {fmt(laguerre(a, b, x))}}},")
    out.append("};")
    out.append("")

    out.append("struct BesselCase { double x, value; };")
    out.append("inline constexpr BesselCase kBesselJ0[] = {")
    for x in [0.0, 0.5, 1.0, 2.404825557695773, 3.7, 8.0, 15.25]:
        out.append(f"    {{{fmt(x)}, {fmt(mp.besselj(0, x))}}},")
    out.append("};")
    out.append(f"inline constexpr double kJ0FirstZero = {fmt(special.jn_zeros(0, 1)[0])};")
    out.append("")

    out.append("struct EigenCase { int l, k; double w, value; };")
    out.append("inline constexpr EigenCase kAveragedEigenN1[] = {")
    for l, k, w in [(0, 1, 1.0), (1, 0, math.sqrt(2.0)), (2, 1, 1.3), (3, 2, 0.8), (0, 3, 2.2), (4, 1, 1.7),
                    (1, 1, 3.0), (5, 0, 0.9)]:
        out.append(f"    {{{l}, {k}, {fmt(w)}, {fmt(averaged_eig_n1(l, k, w))}}},")
    out.append("};")
    out.append("")

    out.append("struct FlowCase { int n; double nu[4]; double lambda, s; double x[4]; double u; };")
    out.append("inline constexpr FlowCase kFlow[] = {")
    flows = [(1, [0.6, 0.8], 1.0, 2.0), (1, [1.0, 0.0], 1.0, 2 * math.pi), (1, [0.0, 1.0], -0.7, 3.3),
             (2, [0.5, 0.5, 0.5, 0.5], 1.4, 1.9), (2, [0.1, -0.7, 0.7, 0.1], -0.3, 7.0)]
    for n, nu, lam, s in flows:
        y = flow_ode(n, nu, lam, s)
        nus = ", ".join(fmt(v) for v in nu + [0.0] * (4 - len(nu)))
        xs = ", ".join(fmt(v) for v in list(y[: 2 * n]) + [0.0] * (4 - 2 * n))
        out.append(f"    {{{n}, {{{nus}}}, {fmt(lam)}, {fmt(s)}, {{{xs}}}, {fmt(y[2 * n])}}},")
    out.append("};")
    out.append("")

    g = gft00_gaussian(0.5, 0.5, 2.0)
    out.append("// (0,0) entry of the transform of e^{-|x|^2/2 - u^2/2} at mu = 2.")
    out.append(f"inline constexpr double kGft00Re = {fmt(g.real)};")
    out.append(f"inline constexpr double kGft00Im = {fmt(g.imag)};")
    s = scalar_ft_gaussian(0.5, 0.5, [0.3, -0.7])
    out.append("// Scalar transform of the same Gaussian at eta = (0.3, -0.7).")
    out.append(f"inline constexpr double kScalarFtRe = {fmt(s.real)};")
    out.append(f"inline constexpr double kScalarFtIm = {fmt(s.imag)};")
    out.append("")
    out.append("}  // namespace oracle")
    print("\n".join(out))


if __name__ == "__main__":
    main()
