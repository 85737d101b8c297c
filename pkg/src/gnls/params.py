"""Equation-family parameters for the radial gNLS equation i u_t = u_rr + (n-1) u_r/r + k|u|^p u."""

from __future__ import annotations

import math
from dataclasses import dataclass

ROOT17 = math.sqrt(17.0)
# Roots of n^2 - n - 4 = 0: the only dimensions admitting both the critical power
# p = 4/n and the static power p = 2(3-n)/(n-2) simultaneously.
N_PLUS = (1.0 + ROOT17) / 2.0
N_MINUS = (1.0 - ROOT17) / 2.0


class DomainError(ValueError):
    """Evaluation requested outside an operation's declared domain."""


class ConstraintError(ValueError):
    """Parameters or constants violate an entry's printed constraints."""


class ConvergenceError(ArithmeticError):
    """A numerical evaluation failed to stabilize; result withheld."""


@dataclass(frozen=True)
class GnlsParams:
    """The triple (n, p, k) fixing one member of the equation family.

    n is the effective dimension (source coefficient m = n - 1), p the
    nonlinearity power, k the nonlinearity coefficient.
    """

    n: float
    p: float
    k: float

    def __post_init__(self) -> None:
        for name in ("n", "p", "k"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ConstraintError(f"{name} must be finite, got {v!r}")
        if self.p == 0.0:
            raise ConstraintError("p = 0 is excluded")
        if self.k == 0.0:
            raise ConstraintError("k = 0 is excluded")

    @property
    def m(self) -> float:
        return self.n - 1.0

    @property
    def is_critical(self) -> bool:
        """True when p = 4/n (the pseudo-conformal power)."""
        return self.n != 0.0 and abs(self.p - 4.0 / self.n) < 1e-12 * max(1.0, abs(self.p))
