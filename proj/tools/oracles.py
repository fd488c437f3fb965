#!/usr/bin/env python3
"""Regenerates tests/oracles.hpp from closed forms and scipy/mpmath quadrature.

Nothing here shares code with the C++ library.
"""
import math
import sys

import mpmath as mp
import numpy as np
from scipy import integrate, special

mp.mp.dps = 30
SQPI = math.sqrt(math.pi)


def F(x):
    # Boundary value of int pi^-1/2 e^{-k^2} / (k - z) dk at z = x + i0.
    return complex(-2.0 * special.dawsn(x), SQPI * math.exp(-x * x))


def dF(x):
    # d/dx of F(x + i0); Dawson' = 1 - 2 x D.
    return complex(-2.0 * (1.0 - 2.0 * x * special.dawsn(x)), -2.0 * x * SQPI * math.exp(-x * x))


def S(x, lam=1.0):
    f = F(x)
    return (1.0 + lam * f.conjugate()) / (1.0 + lam * f)


def Sp(x, lam=1.0):
    f, fp = F(x), dF(x)
    num, den = 1.0 + lam * f.conjugate(), 1.0 + lam * f
    return (lam * fp.conjugate() * den - num * lam * fp) / den**2


def theta_p(x, lam=1.0):
    return (-1j * S(x, lam).conjugate() * Sp(x, lam)).real


def bump(x, a=0.25, b=0.75, beta=8.0):
    u = (2 * x - a - b) / (b - a)
    return math.exp(-beta / (1 - u * u)) if abs(u) < 1 else 0.0


def ew_bump():
    n2 = integrate.quad(lambda x: bump(x) ** 2, 0.25, 0.75, epsabs=1e-15, epsrel=1e-13, limit=200)[0]
    t = integrate.quad(lambda x: bump(x) ** 2 * theta_p(x), 0.25, 0.75, epsabs=1e-15, epsrel=1e-13, limit=200)[0]
    return t / n2


def smooth_bump_integral(delta, width, rho):
    return 2 * delta + width * SQPI * math.gamma((rho - 1) / 2) / math.gamma(rho / 2)


def gaussian_propagation_gap(r):
    # rho(k) = pi^-1/2 e^{-(k-1)^2}, f = indicator[-1, 1]:
    # I_r = 2 r int rho sgn(k) F(|k|/r), F(u) = min(u, 1) on the indicator.
    # With 2<P> = 2 the gap is 2 int_{|k|>r} rho (r - |k|) sgn(k) dk.
    rho = lambda k: mp.exp(-(k - 1) ** 2) / mp.sqrt(mp.pi)
    hi = mp.quad(lambda k: rho(k) * (r - k), [r, mp.inf])
    lo = mp.quad(lambda k: rho(k) * (r + k), [-mp.inf, -r])
    return float(2 * (hi - lo))


def main():
    out = sys.stdout
    out.write("#pragma once\n// Generated by tools/oracles.py. Do not edit by hand.\n\nnamespace oracle {\n\n")

    def c(name, z):
        out.write(f"inline constexpr double {name}_re = {z.real!r};\ninline constexpr double {name}_im = {z.imag!r};\n")

    def d(name, v):
        out.write(f"inline constexpr double {name} = {v!r};\n")

    for tag, x in (("0", 0.0), ("05", 0.5), ("1", 1.0), ("m13", -1.3)):
        c(f"F_{tag}", F(x))
    c("dF_05", dF(0.5))
    for tag, x in (("0", 0.0), ("05", 0.5)):
        c(f"S_{tag}", S(x))
        c(f"Sp_{tag}", Sp(x))
        d(f"theta_p_{tag}", theta_p(x))
    d("ew_bump", ew_bump())
    d("smooth_bump_1_1_2", smooth_bump_integral(1, 1, 2))
    d("smooth_bump_1_1_4", smooth_bump_integral(1, 1, 4))
    d("smooth_bump_05_2_3", smooth_bump_integral(0.5, 2, 3))
    for r in (1, 2, 4, 8, 32):
        d(f"gauss_gap_r{r}", gaussian_propagation_gap(r))
    # v ~ (x - x0) e^{-x^2/2}: Re F(x0 + i0) = -x0 / (1/2 + x0^2) after normalization.
    x0 = 0.3
    d("embedded_x0", x0)
    d("embedded_lambda", (0.5 + x0 * x0) / x0)
    out.write("\n}  // namespace oracle\n")


if __name__ == "__main__":
    main()
