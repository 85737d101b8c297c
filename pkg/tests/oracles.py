"""Slow arbitrary-precision oracles for the test suite.

These never touch the runtime code paths: Bessel values come from mpmath's
own implementations, the regular Coulomb function from a hand-rolled power
series, quadratures from composite Simpson sums.
"""

from __future__ import annotations

import mpmath as mp


def mp_bessel(kind: str, nu: float, x: float, dps: int = 40) -> float:
    with mp.workdps(dps):
        fn = {"J": mp.besselj, "Y": mp.bessely, "I": mp.besseli, "K": mp.besselk}[kind]
        return float(fn(mp.mpf(nu), mp.mpf(x)))


def mp_si(x: float, dps: int = 40) -> float:
    with mp.workdps(dps):
        return float(mp.si(x))


def mp_ci(x: float, dps: int = 40) -> float:
    with mp.workdps(dps):
        return float(mp.ci(x))


def series_bessel_j(nu: float, x: float, dps: int = 50) -> float:
    """Plain ascending series for J_nu, summed at high precision."""
    with mp.workdps(dps):
        nu_, x_ = mp.mpf(nu), mp.mpf(x)
        q = -(x_ * x_) / 4
        term = (x_ / 2) ** nu_ / mp.gamma(nu_ + 1)
        total = term
        for m in range(1, 400):
            term *= q / (m * (nu_ + m))
            total += term
            if abs(term) < mp.mpf(10) ** (-dps) * (abs(total) + 1):
                break
        return float(total)


def series_coulomb_f(L: int, eta: float, rho: float, dps: int = 50) -> float:
    """Regular Coulomb wave function from the normalized power series.

    F_L = C_L(eta) rho^{L+1} sum a_k rho^k with
    a_0 = 1, a_1 = eta/(L+1), and
    (k+L)(k-L-1) a_k ... recurrence written for offsets k >= 2:
        a_k = (2 eta a_{k-1} - a_{k-2}) / (k (k + 2L + 1)).
    """
    with mp.workdps(dps):
        e, r = mp.mpf(eta), mp.mpf(rho)
        cl = (
            mp.mpf(2) ** L
            * mp.e ** (-mp.pi * e / 2)
            * abs(mp.gamma(L + 1 + 1j * e))
            / mp.factorial(2 * L + 1)
        )
        a_prev2 = mp.mpf(1)
        a_prev1 = e / (L + 1)
        total = a_prev2 + a_prev1 * r
        rk = r
        for k in range(2, 2000):
            a_k = (2 * e * a_prev1 - a_prev2) / (k * (k + 2 * L + 1))
            rk *= r
            total += a_k * rk
            if abs(a_k * rk) < mp.mpf(10) ** (-dps) * (abs(total) + 1):
                break
            a_prev2, a_prev1 = a_prev1, a_k
        return float(cl * r ** (L + 1) * total)


def simpson(f, a: float, b: float, n: int = 4000) -> float:
    if n % 2:
        n += 1
    h = (b - a) / n
    s = f(a) + f(b)
    s += 4.0 * sum(f(a + (2 * i - 1) * h) for i in range(1, n // 2 + 1))
    s += 2.0 * sum(f(a + 2 * i * h) for i in range(1, n // 2))
    return s * h / 3.0


def mp_quad_si_integrand(x: float, dps: int = 30) -> float:
    """Direct adaptive quadrature of sin(t)/t from 0 to x."""
    with mp.workdps(dps):
        return float(mp.quad(lambda t: mp.sin(t) / t if t != 0 else mp.mpf(1), [0, mp.mpf(x)]))


def mp_ci_series(x: float, dps: int = 30) -> float:
    """gamma + ln x + integral_0^x (cos t - 1)/t dt."""
    with mp.workdps(dps):
        xm = mp.mpf(x)
        tail = mp.quad(lambda t: (mp.cos(t) - 1) / t if t != 0 else mp.mpf(0), [0, xm])
        return float(mp.euler + mp.log(xm) + tail)
