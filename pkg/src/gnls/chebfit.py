"""Chebyshev interpolation on an interval, with spectral antiderivatives.

Used to cache smooth 1-D kernels (special-function combinations and their
running integrals) so that finite-difference verification sees interpolation
noise far below the residual tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial import chebyshev as C

from .params import ConvergenceError


def _vals_to_coeffs(v: np.ndarray) -> np.ndarray:
    # v sampled at x_j = cos(j pi / N), j = 0..N
    N = len(v) - 1
    ext = np.concatenate([v, v[-2:0:-1]])
    c = np.fft.rfft(ext).real / N
    c[0] /= 2.0
    c[-1] /= 2.0
    return c[: N + 1]


@dataclass(frozen=True)
class Cheb:
    lo: float
    hi: float
    coef: np.ndarray  # plain T_k coefficients on [-1, 1]

    def _to_unit(self, x):
        return (2.0 * np.asarray(x, dtype=float) - (self.lo + self.hi)) / (self.hi - self.lo)

    def __call__(self, x):
        y = C.chebval(self._to_unit(x), self.coef)
        return float(y) if np.isscalar(x) else y

    def in_range(self, x: float, pad: float = 0.0) -> bool:
        return self.lo - pad <= x <= self.hi + pad

    def antiderivative(self) -> "Cheb":
        ic = C.chebint(self.coef, m=1, lbnd=-1.0, scl=(self.hi - self.lo) / 2.0)
        return Cheb(self.lo, self.hi, ic)


class CachedIntegral:
    """Running integral I(s) = int_{s0}^{s} w(z) dz of a smooth 1-D kernel.

    Inside [lo, hi] (which must contain s0 and be free of kernel
    singularities) values come from the spectral antiderivative of a
    Chebyshev fit; outside, from adaptive quadrature anchored at the nearest
    already-known point, so slow kernels are never re-integrated from s0.
    """

    def __init__(self, w: Callable[[float], float], s0: float, lo: float, hi: float,
                 n0: int = 64, vectorized: bool = False):
        self.w = w
        self.s0 = float(s0)
        if vectorized:
            wv = w
        else:
            wv = lambda zs: np.array([w(float(z)) for z in np.atleast_1d(zs)])
        self._anti = cheb_fit(wv, lo, hi, n0=n0).antiderivative()
        clip = min(max(self.s0, lo), hi)
        bridge = 0.0
        if clip != self.s0:  # lower limit outside the cached range: bridge by quadrature
            from scipy import integrate

            bridge = integrate.quad(w, self.s0, clip, epsabs=1e-11, epsrel=1e-11, limit=300)[0]
        self._base = float(self._anti(clip)) - bridge
        self._anchors: list[tuple[float, float]] = [(lo, self(lo)), (hi, self(hi))]

    def __call__(self, s: float) -> float:
        if self._anti.in_range(s):
            return float(self._anti(s)) - self._base
        import warnings

        from scipy import integrate

        a, va = min(self._anchors, key=lambda p: abs(p[0] - s))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            seg = integrate.quad(self.w, a, s, epsabs=1e-11, epsrel=1e-11, limit=200)[0]
        val = va + seg
        self._anchors.append((s, val))
        return val


def cheb_fit(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    n0: int = 64,
    max_n: int = 4096,
    rtol: float = 5e-14,
    check_points: int = 5,
) -> Cheb:
    """Adaptively fit f on [lo, hi] until the coefficient tail is negligible.

    f must accept a numpy array (scalar fallbacks are wrapped by callers).
    Raises ConvergenceError when max_n nodes cannot resolve f, instead of
    returning a silently inaccurate table.
    """
    if not (np.isfinite(lo) and np.isfinite(hi) and hi > lo):
        raise ValueError(f"bad interval [{lo}, {hi}]")
    n = n0
    while True:
        xj = np.cos(np.arange(n + 1) * np.pi / n)  # [-1, 1] nodes, decreasing
        xs = 0.5 * ((hi - lo) * xj + (hi + lo))
        vals = np.asarray(f(xs), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise ConvergenceError(f"non-finite kernel values on [{lo}, {hi}]")
        coef = _vals_to_coeffs(vals)
        scale = np.max(np.abs(coef)) or 1.0
        tail = np.max(np.abs(coef[-max(3, n // 16):]))
        if tail <= rtol * scale:
            fit = Cheb(lo, hi, coef)
            # off-node spot check guards against aliasing
            xt = lo + (hi - lo) * (0.5 + 0.5 * np.sin(np.arange(1, check_points + 1)))
            ref = np.asarray(f(xt), dtype=float)
            err = np.max(np.abs(fit(xt) - ref))
            if err <= 2e-13 * max(1.0, float(np.max(np.abs(ref))), float(np.max(np.abs(coef)))):
                return fit
        if n >= max_n:
            raise ConvergenceError(
                f"Chebyshev fit on [{lo}, {hi}] did not converge at {max_n} nodes"
            )
        n *= 2
