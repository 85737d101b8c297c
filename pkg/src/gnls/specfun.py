"""Real-order special functions behind the closed-form solution catalog.

Bessel J/Y/I/K and the sine/cosine integrals are delegated to scipy.special;
the regular and irregular Coulomb wave functions (absent from scipy) are
evaluated through mpmath at fixed working precision and exposed both as
scalar calls and as Chebyshev-cached tables for grid verification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import mpmath as mp
import numpy as np
from scipy import integrate
from scipy import special as _sc

from .chebfit import Cheb, cheb_fit
from .params import ConvergenceError, DomainError

mp.mp.dps = 30  # fixed at import; never mutated at runtime (thread safety)

_SUPPORTED_NU = 10.0
_SUPPORTED_X = 100.0


def _check_order_arg(nu: float, x: float) -> None:
    if not (math.isfinite(nu) and math.isfinite(x)):
        raise DomainError(f"non-finite arguments nu={nu!r}, x={x!r}")
    if nu < 0.0:
        raise DomainError(f"order must be >= 0, got {nu}")
    if x <= 0.0:
        raise DomainError(f"argument must be > 0, got {x}")


def bessel_j(nu: float, x: float) -> float:
    """J_nu(x) for real order nu >= 0, x > 0."""
    _check_order_arg(nu, x)
    return float(_sc.jv(nu, x))


def bessel_y(nu: float, x: float) -> float:
    """Y_nu(x) for real order nu >= 0, x > 0."""
    _check_order_arg(nu, x)
    return float(_sc.yv(nu, x))


def bessel_i(nu: float, x: float) -> float:
    """I_nu(x) for real order nu >= 0, x > 0."""
    _check_order_arg(nu, x)
    return float(_sc.iv(nu, x))


def bessel_k(nu: float, x: float) -> float:
    """K_nu(x) for real order nu >= 0, x > 0."""
    _check_order_arg(nu, x)
    return float(_sc.kv(nu, x))


# Signed-order variants, reduced to nu >= 0 by the reflection formulas.
# The public operations take nu >= 0 only; the catalog needs J_{-n/2} etc.
def cyl_j(nu: float, x: float) -> float:
    if nu >= 0.0:
        return bessel_j(nu, x)
    a = -nu
    if abs(a - round(a)) < 1e-12:
        sgn = -1.0 if int(round(a)) % 2 else 1.0
        return sgn * bessel_j(a, x)
    return math.cos(a * math.pi) * bessel_j(a, x) - math.sin(a * math.pi) * bessel_y(a, x)


def cyl_y(nu: float, x: float) -> float:
    if nu >= 0.0:
        return bessel_y(nu, x)
    a = -nu
    if abs(a - round(a)) < 1e-12:
        sgn = -1.0 if int(round(a)) % 2 else 1.0
        return sgn * bessel_y(a, x)
    return math.sin(a * math.pi) * bessel_j(a, x) + math.cos(a * math.pi) * bessel_y(a, x)


def cyl_i(nu: float, x: float) -> float:
    if nu >= 0.0:
        return bessel_i(nu, x)
    a = -nu
    if abs(a - round(a)) < 1e-12:
        return bessel_i(a, x)
    return bessel_i(a, x) + (2.0 / math.pi) * math.sin(a * math.pi) * bessel_k(a, x)


def cyl_k(nu: float, x: float) -> float:
    return bessel_k(abs(nu), x)  # K is even in the order


def sine_integral(x: float) -> float:
    """Si(x); odd in x."""
    if not math.isfinite(x):
        raise DomainError(f"non-finite argument {x!r}")
    s = float(_sc.sici(abs(x))[0])
    return math.copysign(s, x) if x != 0.0 else 0.0


def cosine_integral(x: float) -> float:
    """Ci(x) for x > 0."""
    if not (math.isfinite(x) and x > 0.0):
        raise DomainError(f"Ci requires x > 0, got {x!r}")
    return float(_sc.sici(x)[1])


def _check_coulomb_args(L: int, eta: float, rho: float) -> None:
    if L not in (0, 1):
        raise DomainError(f"only L in {{0, 1}} supported, got {L!r}")
    if not (math.isfinite(eta) and math.isfinite(rho)):
        raise DomainError(f"non-finite arguments eta={eta!r}, rho={rho!r}")
    if rho <= 0.0:
        raise DomainError(f"rho must be > 0, got {rho}")


@lru_cache(maxsize=200000)
def _coulomb_pair_cached(L: int, eta: float, rho: float, kind: str) -> float:
    try:
        if kind == "F":
            v = mp.coulombf(L, eta, rho)
        else:
            v = mp.coulombg(L, eta, rho)
    except (mp.libmp.NoConvergence, ValueError) as exc:  # pragma: no cover
        raise ConvergenceError(f"Coulomb {kind}_{L}({eta}, {rho}) did not stabilize: {exc}")
    out = float(v)
    if not math.isfinite(out):
        raise ConvergenceError(f"Coulomb {kind}_{L}({eta}, {rho}) overflowed double range")
    return out


def coulomb_f(L: int, eta: float, rho: float) -> float:
    """Regular Coulomb wave function F_L(eta, rho), L in {0, 1}."""
    _check_coulomb_args(L, eta, rho)
    return _coulomb_pair_cached(L, float(eta), float(rho), "F")


def coulomb_g(L: int, eta: float, rho: float) -> float:
    """Irregular Coulomb wave function G_L(eta, rho), L in {0, 1}."""
    _check_coulomb_args(L, eta, rho)
    return _coulomb_pair_cached(L, float(eta), float(rho), "G")


def coulomb_primitive(kind: str, L: int, eta: float, xi: float, xi0: float) -> float:
    """Running integral of z^{-2} F_L or z^{-2} G_L from xi0 to xi.

    Both endpoints must be positive: for kind="G" the integrand behaves like
    z^{-2-L} near 0 and the primitive is not integrable there.
    """
    if kind not in ("F", "G"):
        raise DomainError(f"kind must be 'F' or 'G', got {kind!r}")
    _check_coulomb_args(L, eta, max(min(xi, xi0), 1e-300))
    if xi <= 0.0 or xi0 <= 0.0:
        raise DomainError("integration endpoints must be > 0")
    if xi == xi0:
        return 0.0
    fn = coulomb_f if kind == "F" else coulomb_g
    val, err = integrate.quad(
        lambda z: fn(L, eta, z) / (z * z), xi0, xi, epsabs=1e-10, epsrel=1e-12, limit=200
    )
    if not math.isfinite(val) or err > 1e-8 * max(1.0, abs(val)):
        raise ConvergenceError(f"primitive of {kind}_{L} on [{xi0}, {xi}] did not converge")
    return val


class CoulombTable:
    """Chebyshev tables of F_0, F_1, G_0, G_1 at fixed eta over [lo, hi].

    Built once per catalog instance (single-threaded), then read concurrently;
    out-of-range arguments fall back to direct evaluation.
    """

    def __init__(self, eta: float, lo: float, hi: float):
        if not (0.0 < lo < hi):
            raise DomainError(f"bad Coulomb table range [{lo}, {hi}]")
        self.eta = float(eta)
        self.lo, self.hi = float(lo), float(hi)
        self._fits: dict[tuple[str, int], Cheb] = {}
        for kind in ("F", "G"):
            for L in (0, 1):
                fn = coulomb_f if kind == "F" else coulomb_g
                scalar = lambda z, L=L, fn=fn: fn(L, self.eta, float(z))
                vec = lambda zs, s=scalar: np.array([s(z) for z in np.atleast_1d(zs)])
                self._fits[(kind, L)] = cheb_fit(vec, self.lo, self.hi, n0=96)

    def _eval(self, kind: str, L: int, rho: float) -> float:
        fit = self._fits[(kind, L)]
        if fit.in_range(rho):
            return float(fit(rho))
        return (coulomb_f if kind == "F" else coulomb_g)(L, self.eta, rho)

    def F(self, L: int, rho: float) -> float:
        return self._eval("F", L, rho)

    def G(self, L: int, rho: float) -> float:
        return self._eval("G", L, rho)


@dataclass(frozen=True)
class SpecialValue:
    """Function value with a crude relative-error bound estimate."""

    value: float
    condition_estimate: float


_EVAL_TABLE: dict[str, tuple[Callable[..., float], int]] = {
    "bessel_j": (bessel_j, 2),
    "bessel_y": (bessel_y, 2),
    "bessel_i": (bessel_i, 2),
    "bessel_k": (bessel_k, 2),
    "sine_integral": (sine_integral, 1),
    "cosine_integral": (cosine_integral, 1),
    "coulomb_f": (lambda L, eta, rho: coulomb_f(int(L), eta, rho), 3),
    "coulomb_g": (lambda L, eta, rho: coulomb_g(int(L), eta, rho), 3),
    "coulomb_primitive_f": (lambda L, eta, xi, xi0: coulomb_primitive("F", int(L), eta, xi, xi0), 4),
    "coulomb_primitive_g": (lambda L, eta, xi, xi0: coulomb_primitive("G", int(L), eta, xi, xi0), 4),
}


def evaluate(name: str, *args: float) -> SpecialValue:
    """Evaluate a named special function with a sensitivity-based condition estimate."""
    if name not in _EVAL_TABLE:
        raise DomainError(f"unknown function {name!r}; known: {sorted(_EVAL_TABLE)}")
    fn, arity = _EVAL_TABLE[name]
    if len(args) != arity:
        raise DomainError(f"{name} takes {arity} arguments, got {len(args)}")
    value = fn(*args)
    eps = np.finfo(float).eps
    cond = eps
    if value != 0.0:
        for i, a in enumerate(args):
            if name.startswith("coulomb") and i == 0:
                continue  # integer L carries no rounding
            h = 1e-6 * max(abs(a), 1e-3)
            lo_args = list(args)
            hi_args = list(args)
            lo_args[i] = a - h
            hi_args[i] = a + h
            try:
                df = (fn(*hi_args) - fn(*lo_args)) / (2 * h)
            except (DomainError, ConvergenceError):
                continue
            cond += eps * abs(df * a / value)
    return SpecialValue(value=value, condition_estimate=float(cond))
