"""Verification-grade exact-solution catalog and audits for the radial gNLS equation."""

from .params import ConstraintError, ConvergenceError, DomainError, GnlsParams, N_MINUS, N_PLUS

__all__ = [
    "ConstraintError",
    "ConvergenceError",
    "DomainError",
    "GnlsParams",
    "N_MINUS",
    "N_PLUS",
]

__version__ = "0.1.0"
