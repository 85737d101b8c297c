"""Deterministic low-discrepancy sampling for verification grids."""

from __future__ import annotations

import hashlib
from typing import Iterator


def _halton_scalar(index: int, base: int) -> float:
    f, r = 1.0, 0.0
    i = index
    while i > 0:
        f /= base
        r += f * (i % base)
        i //= base
    return r


def seed_offset(tag: str, seed: int) -> int:
    """Stable start index into the Halton sequence for a (tag, seed) pair."""
    h = hashlib.sha256(f"{tag}:{seed}".encode()).digest()
    return 1000 + int.from_bytes(h[:4], "big") % 100000


def halton_points(m: int, start: int, bases: tuple[int, ...] = (2, 3)) -> Iterator[tuple[float, ...]]:
    """m points of the (unscrambled) Halton sequence in [0,1)^d, starting at `start`."""
    for j in range(m):
        yield tuple(_halton_scalar(start + j, b) for b in bases)


def box_points(m: int, tag: str, seed: int, *ranges: tuple[float, float]) -> list[tuple[float, ...]]:
    """m deterministic points inside the product of the given open ranges."""
    bases = (2, 3, 5, 7)[: len(ranges)]
    start = seed_offset(tag, seed)
    out = []
    for pt in halton_points(m, start, bases):
        out.append(tuple(lo + (hi - lo) * u for u, (lo, hi) in zip(pt, ranges)))
    return out
