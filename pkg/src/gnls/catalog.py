"""Executable catalog of the closed-form radial gNLS solutions.

Every entry evaluates as amplitude(t, r) * exp(i * phase(t, r)) with a real
amplitude bracket. For the p < 0 entries the bracket must stay positive on
the validity region (the k|u|^p u term otherwise flips sign and the formula
stops solving the equation), so positivity enters the domain guards, not
just aesthetics. Fractional powers of negative bases raise DomainError
rather than silently complexifying.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .chebfit import CachedIntegral
from .params import ConstraintError, DomainError, GnlsParams, N_MINUS, N_PLUS
from .sampling import box_points, seed_offset
from .specfun import CoulombTable, cyl_i, cyl_j, cyl_k, cyl_y

LN = math.log
SQ = math.sqrt


def rpow(base: float, expo: float) -> float:
    """Principal real power; integer exponents tolerate negative bases."""
    if base > 0.0:
        return base**expo
    if abs(expo - round(expo)) < 1e-9:
        e = int(round(expo))
        if base == 0.0:
            if e > 0:
                return 0.0
            raise DomainError("0 raised to non-positive power")
        return float(base**e)
    raise DomainError(f"negative base {base!r} for fractional power {expo!r}")


def bracket_roots(fn: Callable[[float], float], lo: float, hi: float, n: int = 400) -> list[float]:
    """Sign-change bisection roots of fn on [lo, hi]."""
    from scipy.optimize import brentq

    xs = [lo + (hi - lo) * i / n for i in range(n + 1)]
    vals = []
    for x in xs:
        try:
            vals.append(fn(x))
        except (DomainError, ValueError, OverflowError, ZeroDivisionError):
            vals.append(math.nan)
    roots = []
    for a, b, fa, fb in zip(xs, xs[1:], vals, vals[1:]):
        if math.isfinite(fa) and math.isfinite(fb) and fa * fb < 0:
            roots.append(float(brentq(fn, a, b, xtol=1e-13)))
    return roots


@dataclass
class DomainRegion:
    """Open (t, r) box on which an instance is a verified-clean solution."""

    t_interval: tuple[float, float]
    r_interval: tuple[float, float]
    excluded_loci: list[str]
    anchor: tuple[float, float]
    guards: list[tuple[str, Callable[[float, float], float]]] = field(repr=False, default_factory=list)

    def contains(self, t: float, r: float, halo: float = 0.0) -> bool:
        (t0, t1), (r0, r1) = self.t_interval, self.r_interval
        hr = halo * min(1.0, r)
        if not (t0 + halo <= t <= t1 - halo and r0 + hr <= r <= r1 - hr):
            return False
        for dt in (-halo, 0.0, halo):
            for dr in (-hr, 0.0, hr):
                for _, g in self.guards:
                    try:
                        if not g(t + dt, r + dr) > 0.0:
                            return False
                    except (DomainError, ValueError, OverflowError):
                        return False
        return True

    def sample(self, m: int, seed: int = 0, halo: float = 0.0) -> list[tuple[float, float]]:
        (t0, t1), (r0, r1) = self.t_interval, self.r_interval
        pts: list[tuple[float, float]] = []
        budget = 60 * m
        tag = f"dom:{t0:.6g}:{r0:.6g}"
        for (t, r) in box_points(budget, tag, seed, (t0, t1), (r0, r1)):
            if self.contains(t, r, halo=halo):
                pts.append((t, r))
                if len(pts) == m:
                    return pts
        raise ConstraintError(
            f"could not draw {m} admissible points (got {len(pts)}) from {self.t_interval}x{self.r_interval}"
        )

    def to_dict(self) -> dict:
        return {
            "t_interval": list(self.t_interval),
            "r_interval": list(self.r_interval),
            "excluded_loci": list(self.excluded_loci),
            "anchor": list(self.anchor),
        }


@dataclass
class _Bundle:
    amp: Callable[[float, float], float]
    phase: Callable[[float, float], float]
    guards: list[tuple[str, Callable[[float, float], float]]]
    loci: list[str]
    modulus: Callable[[float, float], float] | None = None


@dataclass(frozen=True)
class SolutionEntry:
    id: str
    label: str
    provenance: str
    constraint_text: str
    constants: tuple[str, ...]
    default_params: GnlsParams
    default_constants: dict
    box: tuple[tuple[float, float], tuple[float, float]]
    anchor: tuple[float, float]
    validate: Callable[[GnlsParams, dict, int], list[str]]
    build: Callable[["SolutionInstance"], _Bundle]
    default_branch: int = 1
    fd_step: float = 0.02
    jitter: tuple[str, ...] = ()


_REGISTRY: dict[str, SolutionEntry] = {}
_ORDER: list[str] = []


def _register(entry: SolutionEntry) -> None:
    _REGISTRY[entry.id] = entry
    _ORDER.append(entry.id)


class SolutionInstance:
    """One member of a catalog family: entry id + parameters + constants.

    Treated as immutable after construction; the evaluation caches are built
    on first use (single-threaded) and read-only afterwards.
    """

    def __init__(
        self,
        entry_id: str,
        params: GnlsParams,
        constants: dict,
        branch: int = 1,
        detune: float = 1.0,
    ):
        if entry_id not in _REGISTRY:
            raise ConstraintError(f"unknown catalog id {entry_id!r}")
        entry = _REGISTRY[entry_id]
        missing = [c for c in entry.constants if c not in constants]
        extra = [c for c in constants if c not in entry.constants]
        if missing or extra:
            raise ConstraintError(f"{entry_id}: constants mismatch (missing {missing}, extra {extra})")
        problems = entry.validate(params, constants, branch)
        if problems:
            raise ConstraintError(f"{entry_id}: " + "; ".join(problems))
        self.entry_id = entry_id
        self.params = params
        self.constants = dict(constants)
        self.branch = branch
        self.detune = detune
        self._bundle: _Bundle | None = None
        self._region: DomainRegion | None = None

    @property
    def entry(self) -> SolutionEntry:
        return _REGISTRY[self.entry_id]

    def _ensure(self) -> _Bundle:
        if self._bundle is None:
            self._bundle = self.entry.build(self)
        return self._bundle

    def amplitude(self, t: float, r: float) -> float:
        return self.detune * self._ensure().amp(t, r)

    def phase(self, t: float, r: float) -> float:
        return self._ensure().phase(t, r)

    def evaluate(self, t: float, r: float) -> complex:
        b = self._ensure()
        return self.detune * b.amp(t, r) * complex(math.cos(b.phase(t, r)), math.sin(b.phase(t, r)))

    def modulus(self, t: float, r: float) -> float:
        """|u|; for sign-grouped amplitude entries this extends across the
        branch boundary (the modulus is branch-independent)."""
        b = self._ensure()
        if b.modulus is not None:
            return abs(self.detune) * b.modulus(t, r)
        return abs(self.detune * b.amp(t, r))

    __call__ = evaluate

    def domain(self) -> DomainRegion:
        if self._region is None:
            self._region = _fit_region(self)
        return self._region

    def detuned(self, factor: float) -> "SolutionInstance":
        return SolutionInstance(self.entry_id, self.params, self.constants, self.branch, detune=factor)

    def with_updates(self, params: GnlsParams | None = None, branch: int | None = None, **consts) -> "SolutionInstance":
        c = dict(self.constants)
        c.update(consts)
        return SolutionInstance(
            self.entry_id,
            params if params is not None else self.params,
            c,
            self.branch if branch is None else branch,
            detune=self.detune,
        )

    def to_dict(self) -> dict:
        return {
            "id": self.entry_id,
            "params": {"n": self.params.n, "p": self.params.p, "k": self.params.k},
            "constants": dict(sorted(self.constants.items())),
            "branch": self.branch,
            "detune": self.detune,
        }


def _fit_region(inst: SolutionInstance) -> DomainRegion:
    """Shrink the entry's candidate box toward the anchor until guard-clean."""
    bundle = inst._ensure()
    (t0, t1), (r0, r1) = inst.entry.box
    ta, ra = inst.entry.anchor

    def box_ok(tt0, tt1, rr0, rr1) -> bool:
        for i in range(13):
            for j in range(13):
                t = tt0 + (tt1 - tt0) * i / 12
                r = rr0 + (rr1 - rr0) * j / 12
                try:
                    if not all(g(t, r) > 0.0 for _, g in bundle.guards):
                        return False
                    a = bundle.amp(t, r)
                    ph = bundle.phase(t, r)
                    if not (math.isfinite(a) and math.isfinite(ph)):
                        return False
                except (DomainError, ValueError, OverflowError, ZeroDivisionError):
                    return False
        return True

    for _ in range(60):
        if box_ok(t0, t1, r0, r1):
            return DomainRegion(
                t_interval=(t0, t1),
                r_interval=(r0, r1),
                excluded_loci=list(bundle.loci),
                anchor=(ta, ra),
                guards=list(bundle.guards),
            )
        t0 = ta + (t0 - ta) * 0.92
        t1 = ta + (t1 - ta) * 0.92
        r0 = ra + (r0 - ra) * 0.92
        r1 = ra + (r1 - ra) * 0.92
    raise ConstraintError(f"{inst.entry_id}: no guard-clean box around anchor {inst.entry.anchor}")


# --------------------------------------------------------------------------
# entry definitions
# --------------------------------------------------------------------------

def _near(a: float, b: float, rel: float = 1e-9) -> bool:
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def _def(nu: float, p: float, k: float) -> GnlsParams:
    return GnlsParams(n=nu, p=p, k=k)


def _e_trans_sol1() -> SolutionEntry:
    def validate(par, c, br):
        out = []
        if c["c2"] == 0 or c["c2"] / par.k <= 0:
            out.append("requires c2/k > 0")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        amp0 = rpow(c["c2"] / par.k, 1.0 / par.p)
        return _Bundle(
            amp=lambda t, r: amp0,
            phase=lambda t, r: c["c1"] - c["c2"] * t,
            guards=[],
            loci=["r = 0 (coordinate axis)"],
        )

    return SolutionEntry(
        id="trans-rnls-sol1",
        label="trans-rnls-sol1",
        provenance="time-translation + scaling",
        constraint_text="c2/k > 0",
        constants=("c1", "c2"),
        default_params=_def(2.0, 2.0, 1.0),
        default_constants={"c1": 0.0, "c2": 4.0},
        box=((-1.0, 1.5), (0.4, 3.0)),
        anchor=(0.2, 1.0),
        validate=validate,
        build=build,
        jitter=("c1", "c2"),
    )


def _sol2_like(entry_id: str, label: str, crit: bool) -> SolutionEntry:
    def validate(par, c, br):
        out = []
        if par.n == 0:
            out.append("n = 0 excluded")
        if c["c3"] == 0:
            out.append("c3 = 0 excluded")
        if crit:
            if not _near(par.p, 4.0 / par.n):
                out.append("critical branch requires p = 4/n")
        else:
            if par.n != 0 and (_near(par.p, 2.0 / par.n) or _near(par.p, 4.0 / par.n)):
                out.append("generic branch requires p != 2/n, 4/n")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        n, p, k = par.n, par.p, par.k
        c1, c2, c3 = c["c1"], c["c2"], c["c3"]
        coef = 2.0 * k / (c3 * (n * p - 2.0))

        def S(t):
            return c2 + c3 * t

        return _Bundle(
            amp=lambda t, r: rpow(S(t), -n / 2.0),
            phase=lambda t, r: c1 - c3 * r * r / (4.0 * S(t)) + coef * rpow(S(t), 1.0 - n * p / 2.0),
            guards=[("c2+c3*t > 0", lambda t, r: S(t))],
            loci=[f"t = {-c2 / c3:.12g} (zero of c2 + c3 t)"],
        )

    return SolutionEntry(
        id=entry_id,
        label=label,
        provenance="time-translation",
        constraint_text="p != 2/n" + (", p = 4/n" if crit else ", p != 4/n") + ", n != 0, c3 != 0",
        constants=("c1", "c2", "c3"),
        default_params=_def(2.0, 2.0, 1.0) if crit else _def(3.0, 1.0, 1.0),
        default_constants={"c1": 0.0, "c2": 1.0, "c3": 1.0},
        box=((-0.4, 0.8), (0.5, 2.5)),
        anchor=(0.2, 1.2),
        validate=validate,
        build=build,
        jitter=("c1", "c2", "c3"),
    )


def _e_trans_sol3() -> SolutionEntry:
    def validate(par, c, br):
        out = []
        if par.n == 0:
            out.append("n = 0 excluded")
        elif not _near(par.p, 2.0 / par.n):
            out.append("requires p = 2/n")
        if c["c3"] == 0:
            out.append("c3 = 0 excluded")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        n, k = par.n, par.k
        c1, c2, c3 = c["c1"], c["c2"], c["c3"]

        def S(t):
            return c2 + c3 * t

        return _Bundle(
            amp=lambda t, r: rpow(S(t), -n / 2.0),
            phase=lambda t, r: c1 - c3 * r * r / (4.0 * S(t)) - (k / c3) * LN(abs(S(t))),
            guards=[("c2+c3*t > 0", lambda t, r: S(t))],
            loci=[f"t = {-c2 / c3:.12g} (zero of c2 + c3 t)"],
        )

    return SolutionEntry(
        id="trans-rnls-sol3",
        label="trans-rnls-sol3",
        provenance="time-translation + scaling",
        constraint_text="p = 2/n, n != 0, c3 != 0",
        constants=("c1", "c2", "c3"),
        default_params=_def(2.0, 1.0, 1.0),
        default_constants={"c1": 0.0, "c2": 1.0, "c3": 1.0},
        box=((-0.4, 0.8), (0.5, 2.5)),
        anchor=(0.2, 1.2),
        validate=validate,
        build=build,
        jitter=("c1", "c2", "c3"),
    )


def _e_scal_sol2() -> SolutionEntry:
    def validate(par, c, br):
        out = []
        n, k = par.n, par.k
        if n == 2:
            out.append("n = 2 excluded")
        elif not _near(par.p, 2.0 / (2.0 - n)):
            out.append("requires p = 2/(2-n)")
        if n * (n - 2.0) / k <= 0:
            out.append("requires n(n-2)/k > 0")
        if br not in (1, -1):
            out.append("branch must be +-1")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        n = par.n
        c1, c2 = c["c1"], c["c2"]
        root = SQ(par.n * (par.n - 2.0) / (2.0 * par.k))
        s = float(inst.branch)

        def base(t, r):
            # (s*sqrt(alpha))^{2-n} ((c2+(n-4)t)/r)^{n-2} grouped into one real power
            return (c2 + (n - 4.0) * t) / (s * root * r)

        return _Bundle(
            amp=lambda t, r: rpow(base(t, r), n - 2.0),
            phase=lambda t, r: c1 + (1.0 - n / 2.0) * r * r / (c2 + (n - 4.0) * t),
            modulus=lambda t, r: rpow(abs(base(t, r)), n - 2.0),
            guards=[("similarity base > 0", base)],
            loci=(
                [f"t = {-c2 / (n - 4.0):.12g} (zero of c2 + (n-4) t)"] if n != 4.0 else []
            ),
        )

    return SolutionEntry(
        id="scal-rnls-sol2",
        label="scal-rnls-sol2",
        provenance="time-translation + scaling",
        constraint_text="p = 2/(2-n), n(n-2)/k > 0, n != 2",
        constants=("c1", "c2"),
        default_params=_def(3.0, -2.0, 1.5),
        default_constants={"c1": 0.0, "c2": 1.0},
        box=((-0.8, 0.45), (0.5, 2.5)),
        anchor=(0.0, 1.2),
        validate=validate,
        build=build,
        fd_step=0.015,
        jitter=("c1", "c2"),
    )


def _e_trans_sol4() -> SolutionEntry:
    def validate(par, c, br):
        out = []
        n, k = par.n, par.k
        if n in (2.0, 3.0):
            out.append("n = 2, 3 excluded")
        elif not _near(par.p, 2.0 * (3.0 - n) / (n - 2.0)):
            out.append("requires p = 2(3-n)/(n-2)")
        if k * (2.0 - n) <= 0:
            out.append("requires k(2-n) > 0")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        n, k = par.n, par.k
        c1, c2 = c["c1"], c["c2"]
        M = rpow(k * (n - 3.0) ** 2 / (2.0 - n) ** 3, (2.0 - n) / (6.0 - 2.0 * n))

        def bracket(t, r):
            return r + c2 * rpow(r, 3.0 - n)

        return _Bundle(
            amp=lambda t, r: M * rpow(bracket(t, r), (2.0 - n) / (3.0 - n)),
            phase=lambda t, r: c1,
            guards=[("r + c2 r^(3-n) > 0", bracket)],
            loci=["r = 0"],
        )

    return SolutionEntry(
        id="trans-rnls-sol4",
        label="trans-rnls-sol4",
        provenance="time-translation + scaling",
        constraint_text="p = 2(3-n)/(n-2), k(2-n) > 0, n != 2, 3",
        constants=("c1", "c2"),
        default_params=_def(4.0, -1.0, -1.0),
        default_constants={"c1": 0.0, "c2": 1.0},
        box=((-1.0, 1.0), (0.5, 2.5)),
        anchor=(0.0, 1.1),
        validate=validate,
        build=build,
        jitter=("c1", "c2"),
    )


def _e_scal_sol3() -> SolutionEntry:
    def validate(par, c, br):
        out = []
        n, k = par.n, par.k
        if n in (2.0, 3.0):
            out.append("n = 2, 3 excluded")
        elif not _near(par.p, 2.0 * (3.0 - n) / (n - 2.0)):
            out.append("requires p = 2(3-n)/(n-2)")
        if k <= 0:
            out.append("requires k > 0")
        if c["c2"] == 0:
            out.append("c2 = 0 excluded")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        n, k = par.n, par.k
        c1, c2 = c["c1"], c["c2"]
        A0 = rpow(c2 * c2 * (n - 2.0) ** 2 / k, (n - 2.0) / (6.0 - 2.0 * n))
        return _Bundle(
            amp=lambda t, r: A0 * rpow(r, 2.0 - n),
            phase=lambda t, r: c1 + c2 * rpow(r, n - 2.0),
            guards=[],
            loci=["r = 0"],
        )

    return SolutionEntry(
        id="scal-rnls-sol3",
        label="scal-rnls-sol3",
        provenance="time-translation + scaling",
        constraint_text="p = 2(3-n)/(n-2), k > 0, n != 2, 3, c2 != 0",
        constants=("c1", "c2"),
        default_params=_def(4.0, -1.0, 1.0),
        default_constants={"c1": 0.0, "c2": 1.0},
        box=((-1.0, 1.0), (0.5, 2.5)),
        anchor=(0.0, 1.1),
        validate=validate,
        build=build,
        jitter=("c1", "c2"),
    )


def _bessel_chain(entry_id, label, modified, n_def, consts, box, anchor, amp_sign_term, phase_sign):
    """Shared builder for the Bessel-bracket monopole families (p = -1)."""

    def validate(par, c, br):
        out = []
        if not _near(par.p, -1.0):
            out.append("requires p = -1")
        if c["c6"] <= 0:
            out.append("requires c6 > 0")
        if c["c2"] == 0 and c["c3"] == 0:
            out.append("c2 = c3 = 0 gives the trivial bracket")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        n, k = par.n, par.k
        c1, c2, c3, c4, c5, c6 = (c[f"c{i}"] for i in range(1, 7))
        nu = abs(1.0 - n / 2.0)
        root = SQ(c6)
        if modified:
            f = lambda z: c2 * cyl_i(nu, root * z) + c3 * cyl_k(nu, root * z)
        else:
            f = lambda z: c2 * cyl_j(nu, root * z) + c3 * cyl_y(nu, root * z)
        (t_box, r_box) = box
        scan_lo, scan_hi = 0.02, r_box[1] * 1.6 + 0.5
        zeros = bracket_roots(f, scan_lo, scan_hi)
        lo = max([scan_lo] + [z for z in zeros if z < min(c4, r_box[0])]) * 1.02 + 1e-6
        hi_c = [z for z in zeros if z > max(c4, r_box[1])]
        hi = (min(hi_c) * 0.98) if hi_c else scan_hi
        if not (lo < c4 < hi):
            raise ConstraintError(f"{entry_id}: c4 = {c4} not inside a pole-free interval ({lo}, {hi})")
        inside = [z for z in zeros if lo < z < hi]
        if inside:
            raise ConstraintError(f"{entry_id}: Bessel-bracket zeros {inside} inside quadrature range")
        integral = CachedIntegral(lambda z: 1.0 / (z * f(z) ** 2), c4, lo, hi, n0=128)
        part = amp_sign_term * k / c6

        def amp(t, r):
            return part + rpow(r, 1.0 - n / 2.0) * f(r) * (1.0 + c5 * integral(r))

        loci = ["r = 0"] + [f"r = {z:.12g} (zero of the Bessel bracket)" for z in zeros]
        return _Bundle(
            amp=amp,
            phase=lambda t, r: c1 + phase_sign * c6 * t,
            guards=[("bracket > 0", amp), ("Bessel combination > 0", lambda t, r: f(r))],
            loci=loci,
        )

    return SolutionEntry(
        id=entry_id,
        label=label,
        provenance="time-translation",
        constraint_text="p = -1, c6 > 0",
        constants=("c1", "c2", "c3", "c4", "c5", "c6"),
        default_params=_def(n_def, -1.0, 1.0),
        default_constants=consts,
        box=box,
        anchor=anchor,
        validate=validate,
        build=build,
        fd_step=0.06,
        jitter=("c1", "c2", "c3", "c5", "c6"),
    )


def _e_trans_sol5() -> SolutionEntry:
    def validate(par, c, br):
        out = []
        if not _near(par.p, -1.0):
            out.append("requires p = -1")
        if par.n in (0.0, 2.0):
            out.append("n = 0, 2 excluded")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        n, k = par.n, par.k
        c1, c2, c3 = c["c1"], c["c2"], c["c3"]

        def w(t, r):
            return -k * r * r / (2.0 * n) + c3 * rpow(r, 2.0 - n) + c2

        return _Bundle(
            amp=w,
            phase=lambda t, r: c1,
            guards=[("bracket > 0", w)],
            loci=["r = 0"] + [f"r = {z:.12g} (bracket zero)" for z in bracket_roots(lambda r: w(0.0, r), 0.05, 6.0)],
        )

    return SolutionEntry(
        id="trans-rnls-sol5",
        label="trans-rnls-sol5",
        provenance="time-translation",
        constraint_text="p = -1, n != 0, 2",
        constants=("c1", "c2", "c3"),
        default_params=_def(3.0, -1.0, 6.0),
        default_constants={"c1": 0.0, "c2": 5.0, "c3": 1.0},
        box=((-1.0, 1.0), (0.45, 2.0)),
        anchor=(0.0, 1.0),
        validate=validate,
        build=build,
        jitter=("c1", "c2", "c3"),
    )


def _static_log_entry(entry_id, n_val, amp_fn_factory, consts, box, constraint_text):
    def validate(par, c, br):
        out = []
        if not _near(par.p, -1.0):
            out.append("requires p = -1")
        if par.n != n_val:
            out.append(f"requires n = {n_val}")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        w = amp_fn_factory(par.k, c)
        return _Bundle(
            amp=w,
            phase=lambda t, r: c["c1"],
            guards=[("bracket > 0", w)],
            loci=["r = 0"] + [f"r = {z:.12g} (bracket zero)" for z in bracket_roots(lambda r: w(0.0, r), 0.03, 9.0)],
        )

    return SolutionEntry(
        id=entry_id,
        label=entry_id,
        provenance="time-translation",
        constraint_text=constraint_text,
        constants=("c1", "c2", "c3"),
        default_params=_def(n_val, -1.0, 1.0),
        default_constants=consts,
        box=box,
        anchor=(0.0, 1.0),
        validate=validate,
        build=build,
        fd_step=0.02 if n_val == 2.0 else 0.06,
        jitter=("c1", "c2", "c3"),
    )


def _e_scal_sol7() -> SolutionEntry:
    def validate(par, c, br):
        out = []
        if not _near(par.p, -1.0):
            out.append("requires p = -1")
        if par.n != 3.0:
            out.append("requires n = 3")
        if c["c2"] <= 0:
            out.append("requires c2 > 0 (positive amplitude)")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        k = par.k
        c1, c2 = c["c1"], c["c2"]
        return _Bundle(
            amp=lambda t, r: c2 / (r * SQ(t)),
            phase=lambda t, r: c1
            - r * r / (4.0 * t)
            - 2.0 * k * r * t**1.5 / (5.0 * c2)
            + k * k * t**4 / (25.0 * c2 * c2),
            guards=[("t > 0", lambda t, r: t)],
            loci=["t = 0", "r = 0"],
        )

    return SolutionEntry(
        id="scal-rnls-sol7",
        label="scal-rnls-sol7",
        provenance="scaling",
        constraint_text="p = -1, n = 3",
        constants=("c1", "c2"),
        default_params=_def(3.0, -1.0, 1.0),
        default_constants={"c1": 0.0, "c2": 1.0},
        box=((0.4, 1.5), (0.5, 2.5)),
        anchor=(0.8, 1.2),
        validate=validate,
        build=build,
        jitter=("c1", "c2"),
    )


def _e_scal_sol4() -> SolutionEntry:
    def validate(par, c, br):
        out = []
        if not _near(par.p, -1.0):
            out.append("requires p = -1")
        if par.n != 3.0:
            out.append("requires n = 3")
        if c["c2"] <= 0:
            out.append("requires c2 > 0 (positive amplitude)")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        k = par.k
        c1, c2 = c["c1"], c["c2"]
        return _Bundle(
            amp=lambda t, r: c2 / r,
            phase=lambda t, r: c1 - k * t * r / c2 + k * k * t**3 / (3.0 * c2 * c2),
            guards=[],
            loci=["r = 0"],
        )

    return SolutionEntry(
        id="scal-rnls-sol4",
        label="scal-rnls-sol4",
        provenance="scaling",
        constraint_text="p = -1, n = 3",
        constants=("c1", "c2"),
        default_params=_def(3.0, -1.0, 1.0),
        default_constants={"c1": 0.0, "c2": 1.0},
        box=((-1.0, 1.2), (0.5, 2.5)),
        anchor=(0.2, 1.2),
        validate=validate,
        build=build,
        jitter=("c1", "c2"),
    )


def _sol5_inver_family(entry_id, with_shift):
    def validate(par, c, br):
        out = []
        if not _near(par.p, 3.0):
            out.append("requires p = 3")
        if not _near(par.n, 4.0 / 3.0):
            out.append("requires n = 4/3")
        if par.k >= 0:
            out.append("requires k < 0")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        k = par.k
        c1 = c["c1"]
        sigma = c["c2"] + (c["c3"] if with_shift else 0.0)
        pref = rpow(-16.0 * k, -1.0 / 3.0)

        def tt(t):
            return t * (1.0 + sigma * t)

        return _Bundle(
            amp=lambda t, r: pref * rpow(r, 2.0 / 3.0) * rpow(tt(t), -2.0 / 3.0),
            phase=lambda t, r: c1 - r * r * (1.0 + 2.0 * sigma * t) / (8.0 * tt(t)),
            guards=[("t > 0", lambda t, r: t), ("1 + sigma t > 0", lambda t, r: 1.0 + sigma * t)],
            loci=["t = 0"] + ([f"t = {-1.0 / sigma:.12g} (zero of 1 + sigma t)"] if sigma != 0 else []),
        )

    consts = {"c1": 0.0, "c2": 0.5, "c3": 0.5} if with_shift else {"c1": 0.0, "c2": 1.0}
    return SolutionEntry(
        id=entry_id,
        label=entry_id,
        provenance="inversion applied to scal-rnls-sol5" if with_shift else "inversion + scaling",
        constraint_text="p = 3, n = 4/3, k < 0",
        constants=tuple(consts),
        default_params=_def(4.0 / 3.0, 3.0, -1.0),
        default_constants=consts,
        box=((0.4, 1.4), (0.5, 2.2)),
        anchor=(0.8, 1.2),
        validate=validate,
        build=build,
        jitter=tuple(consts),
    )


def _sol6_family(entry_id, n_val):
    def validate(par, c, br):
        out = []
        if not _near(par.n, n_val):
            out.append(f"requires n = {n_val}")
        if not _near(par.p, 4.0 / n_val):
            out.append("requires p = 4/n")
        if par.k <= 0:
            out.append("requires k > 0")
        if c["c2"] == 0:
            out.append("c2 = 0 gives the zero solution")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        n, k = par.n, par.k
        c1, c2 = c["c1"], c["c2"]
        A6 = rpow(c2 * c2 * (8.0 - 3.0 * n) / k, n / 4.0)
        return _Bundle(
            amp=lambda t, r: A6 * rpow(r, 2.0 - n) * rpow(t, -2.0 + n / 2.0),
            phase=lambda t, r: c1 - r * r / (4.0 * t) + c2 * rpow(r, n - 2.0) * rpow(t, 2.0 - n),
            guards=[("t > 0", lambda t, r: t)],
            loci=["t = 0", "r = 0"],
        )

    plus = n_val > 0
    return SolutionEntry(
        id=entry_id,
        label=entry_id,
        provenance="inversion + scaling",
        constraint_text="p = 8/(1±sqrt17), n = (1±sqrt17)/2, k > 0",
        constants=("c1", "c2"),
        default_params=_def(n_val, 4.0 / n_val, 1.0),
        default_constants={"c1": 0.0, "c2": 1.0},
        box=((0.5, 1.8), (0.5, 2.5)) if plus else ((0.75, 1.15), (1.3, 1.9)),
        anchor=(0.9, 1.2) if plus else (0.95, 1.55),
        validate=validate,
        build=build,
        fd_step=0.02 if plus else 0.012,
        jitter=("c1", "c2"),
    )


def _sol3_inver_family(entry_id, n_val):
    def validate(par, c, br):
        out = []
        if not _near(par.n, n_val):
            out.append(f"requires n = {n_val}")
        if not _near(par.p, 4.0 / n_val):
            out.append("requires p = 4/n")
        if par.k * par.n >= 0:
            out.append("requires k n < 0")
        if br not in (1, -1):
            out.append("branch must be +-1")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        n, k = par.n, par.k
        c1, c2 = c["c1"], c["c2"]
        root = SQ(-k * (1.0 + 3.0 / n) / 2.0)
        s = float(inst.branch)

        def base(t, r):
            # (s*sqrt(beta))^{-n/2} (bracket)^{-n/2} grouped into one real power
            return s * root * (r + c2 * rpow(t, -1.0 + 4.0 / n) * rpow(r, 2.0 * (1.0 - 2.0 / n)))

        return _Bundle(
            amp=lambda t, r: rpow(base(t, r), -n / 2.0),
            phase=lambda t, r: c1 - r * r / (4.0 * t),
            modulus=lambda t, r: rpow(abs(base(t, r)), -n / 2.0),
            guards=[("t > 0", lambda t, r: t), ("grouped base > 0", base)],
            loci=["t = 0", "r = 0"],
        )

    return SolutionEntry(
        id=entry_id,
        label=entry_id,
        provenance="inversion + scaling",
        constraint_text="p = 8/(1±sqrt17), n = (1±sqrt17)/2, k n < 0",
        constants=("c1", "c2"),
        default_params=_def(n_val, 4.0 / n_val, -1.0 if n_val > 0 else 1.0),
        default_constants={"c1": 0.0, "c2": 1.0},
        box=((0.5, 1.6), (0.5, 2.2)) if n_val > 0 else ((0.8, 1.6), (0.5, 1.5)),
        anchor=(0.9, 1.0),
        validate=validate,
        build=build,
        jitter=("c1", "c2"),
    )


def _e_inver_sol4() -> SolutionEntry:
    def validate(par, c, br):
        out = []
        if not _near(par.p, -1.0):
            out.append("requires p = -1")
        if par.n != -4.0:
            out.append("requires n = -4")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        k = par.k
        c1, c2, c3 = c["c1"], c["c2"], c["c3"]

        def w(t, r):
            return (k / 8.0) * r * r + c3 * r**6 / t**4 + c2 * t * t

        return _Bundle(
            amp=w,
            phase=lambda t, r: c1 - r * r / (4.0 * t),
            guards=[("t > 0", lambda t, r: t), ("bracket > 0", w)],
            loci=["t = 0"],
        )

    return SolutionEntry(
        id="inver-rnls-sol4",
        label="inver-rnls-sol4",
        provenance="inversion",
        constraint_text="p = -1, n = -4",
        constants=("c1", "c2", "c3"),
        default_params=_def(-4.0, -1.0, 1.0),
        default_constants={"c1": 0.0, "c2": 0.5, "c3": 0.3},
        box=((0.8, 1.4), (0.45, 1.25)),
        anchor=(1.0, 0.8),
        validate=validate,
        build=build,
        jitter=("c1", "c2", "c3"),
    )


def _inver_bessel_chain(entry_id, modified, consts, box, anchor):
    def validate(par, c, br):
        out = []
        if not _near(par.p, -1.0):
            out.append("requires p = -1")
        if par.n != -4.0:
            out.append("requires n = -4")
        if c["c6"] <= 0:
            out.append("requires c6 > 0")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        k = par.k
        c1, c2, c3, c4, c5, c6 = (c[f"c{i}"] for i in range(1, 7))
        root = SQ(c6)
        if modified:
            f = lambda z: c2 * cyl_i(3.0, root * z) + c3 * cyl_k(3.0, root * z)
            sgn, ph = 1.0, 1.0
        else:
            f = lambda z: c2 * cyl_j(3.0, root * z) + c3 * cyl_y(3.0, root * z)
            sgn, ph = -1.0, -1.0
        (tb, rb) = box
        z_lo, z_hi = rb[0] / tb[1], rb[1] / tb[0]
        scan_lo, scan_hi = min(0.05, z_lo / 2), z_hi * 1.4 + 0.5
        zeros = bracket_roots(f, scan_lo, scan_hi)
        lo = max([scan_lo] + [z for z in zeros if z < min(c4, z_lo)]) * 1.02 + 1e-6
        hi_c = [z for z in zeros if z > max(c4, z_hi)]
        hi = (min(hi_c) * 0.98) if hi_c else scan_hi
        if not (lo < c4 < hi):
            raise ConstraintError(f"{entry_id}: c4 = {c4} outside pole-free interval ({lo}, {hi})")
        inside = [z for z in zeros if lo < z < hi]
        if inside:
            raise ConstraintError(f"{entry_id}: Bessel-bracket zeros {inside} inside quadrature range")
        integral = CachedIntegral(lambda z: 1.0 / (z * f(z) ** 2), c4, lo, hi, n0=128)

        def w(t, r):
            z = r / t
            return sgn * (k / c6) * t * t + (r**3 / t) * f(z) * (1.0 + c5 * integral(z))

        return _Bundle(
            amp=w,
            phase=lambda t, r: c1 + ph * c6 / t - r * r / (4.0 * t),
            guards=[("t > 0", lambda t, r: t), ("bracket > 0", w), ("Bessel combination > 0", lambda t, r: f(r / t))],
            loci=["t = 0", "r = 0"] + [f"r/t = {z:.12g} (zero of the Bessel bracket)" for z in zeros],
        )

    return SolutionEntry(
        id=entry_id,
        label=entry_id,
        provenance="inversion",
        constraint_text="p = -1, n = -4, c6 > 0",
        constants=("c1", "c2", "c3", "c4", "c5", "c6"),
        default_params=_def(-4.0, -1.0, 1.0),
        default_constants=consts,
        box=box,
        anchor=anchor,
        validate=validate,
        build=build,
        jitter=("c1", "c2", "c3", "c5", "c6"),
    )


def _si_ci_kernel(c2, c3):
    from scipy import special as _scs

    def num(z):
        si, ci = _scs.sici(z)
        return z * z * (c2 * si - c3 * ci) + (c3 * z - c2) * math.sin(z) + (c2 * z + c3) * math.cos(z)

    def dden(z):
        return (c2 - c3 * z) * math.sin(z) - (c3 + c2 * z) * math.cos(z)

    return num, dden


def _sol_r_family(entry_id, with_shift):
    def validate(par, c, br):
        out = []
        if not _near(par.p, -1.0):
            out.append("requires p = -1")
        if par.n != -4.0:
            out.append("requires n = -4")
        if c["c2"] != 0 and c["c3"] == 0 and c["c4"] == 0:
            out.append("c3 = c4 = 0 with c2 != 0: the quadrature diverges")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        k = par.k
        c1, c2, c3, c4 = c["c1"], c["c2"], c["c3"], c["c4"]
        c5 = c["c5"] if with_shift else 0.0
        num, dden = _si_ci_kernel(c2, c3)
        integrand = lambda z: num(z) / dden(z) ** 2
        (tb, rb) = box_val = inst.entry.box

        def tau(t):
            return t * (1.0 + c5 * t) if with_shift else t

        xi_vals = [rb[0] ** 2 / (8 * tau(tb[1])), rb[1] ** 2 / (8 * tau(tb[0]))]
        xlo, xhi = min(xi_vals + [c4]), max(xi_vals + [c4])
        zeros = bracket_roots(dden, 0.02, xhi * 1.5 + 1.0)
        lo = max([0.02] + [z for z in zeros if z < xlo]) * 1.02 + 1e-6
        hi_c = [z for z in zeros if z > xhi]
        hi = (min(hi_c) * 0.98) if hi_c else xhi * 1.5 + 1.0
        if not (lo <= c4 <= hi):
            raise ConstraintError(f"{entry_id}: c4 = {c4} outside pole-free interval ({lo}, {hi})")
        inside = [z for z in zeros if lo < z < hi]
        if inside:
            raise ConstraintError(f"{entry_id}: oscillatory-bracket zeros {inside} inside quadrature range")
        integral = CachedIntegral(integrand, c4, lo, hi, n0=192)

        def xi(t, r):
            return r * r / (8.0 * tau(t))

        def w(t, r):
            x = xi(t, r)
            B = (c2 * r * r + 8.0 * c3 * tau(t)) * math.cos(x) + (c3 * r * r - 8.0 * c2 * tau(t)) * math.sin(x)
            return (k / 8.0) * B * integral(x)

        def phase(t, r):
            ph = c1 - xi(t, r)
            if with_shift:
                ph -= c5 * r * r / (4.0 * (1.0 + c5 * t))
            return ph

        guards = [("t > 0", lambda t, r: t), ("bracket > 0", w)]
        if with_shift:
            guards.append(("1 + c5 t > 0", lambda t, r: 1.0 + c5 * t))
        return _Bundle(
            amp=w,
            phase=phase,
            guards=guards,
            loci=["t = 0", "r = 0"] + [f"xi = {z:.12g} (zero of the oscillatory bracket)" for z in zeros],
        )

    consts = {"c1": 0.0, "c2": 0.0, "c3": 1.0, "c4": 0.5}
    if with_shift:
        consts["c5"] = 0.3
        box = ((0.5, 0.8), (2.2, 2.9))
    else:
        box = ((0.5, 0.85), (2.05, 2.75))
    return SolutionEntry(
        id=entry_id,
        label=entry_id,
        provenance="inversion applied to scal-rnls-sol-r" if with_shift else "scaling",
        constraint_text="p = -1, n = -4" + (", c5 = inversion parameter" if with_shift else ""),
        constants=tuple(consts),
        default_params=_def(-4.0, -1.0, 1.0),
        default_constants=consts,
        box=box,
        anchor=(0.65, 2.4),
        validate=validate,
        build=build,
        fd_step=0.015,
        jitter=("c1", "c2", "c3", "c4"),
    )


def _sol_q_family(entry_id, with_shift):
    def validate(par, c, br):
        out = []
        if not _near(par.p, -1.0):
            out.append("requires p = -1")
        if par.n != -4.0:
            out.append("requires n = -4")
        if c["c2"] == 0:
            out.append("c2 = 0 excluded")
        if c["c6"] == 0:
            out.append("c6 = 0: the Coulomb primitives diverge")
        if c["c3"] == 0 and c["c4"] == 0:
            out.append("c3 = c4 = 0 gives the trivial bracket")
        return out

    def build(inst):
        par, c = inst.params, inst.constants
        k = par.k
        c1, c2, c3, c4, c5, c6 = (c[f"c{i}"] for i in range(1, 7))
        c7 = c.get("c7", 0.0)
        (tb, rb) = inst.entry.box

        def tau(t):
            return t * (1.0 + c7 * t) if with_shift else t

        xi_lo = rb[0] ** 2 / (8.0 * tau(tb[1]))
        xi_hi = rb[1] ** 2 / (8.0 * tau(tb[0]))
        positives = [xi_lo] + [c for c in (c5, c6) if c > 0]
        lo = min(positives) * 0.75
        hi = max(xi_hi, c5, c6) * 1.25
        table = CoulombTable(c2, lo * 0.9, hi * 1.1)
        fi = CachedIntegral(lambda z: table.F(1, z) / (z * z), c6, lo * 0.9, hi * 1.1, n0=128)
        gi = CachedIntegral(lambda z: table.G(1, z) / (z * z), c6, lo * 0.9, hi * 1.1, n0=128)

        def W(x):
            return c3 * table.F(1, x) + c4 * table.G(1, x)

        outer = CachedIntegral(lambda z: (c3 * fi(z) + c4 * gi(z)) / W(z) ** 2, c5, lo, hi, n0=192)

        def xi(t, r):
            return r * r / (8.0 * tau(t))

        def w(t, r):
            x = xi(t, r)
            return -(k * r * r / 4.0) * W(x) * outer(x)

        def phase(t, r):
            if with_shift:
                return c1 - xi(t, r) - c7 * r * r / (4.0 * (1.0 + c7 * t)) - c2 * LN(t / (1.0 + c7 * t))
            return c1 - xi(t, r) - c2 * LN(t)

        guards = [("t > 0", lambda t, r: t), ("bracket > 0", w)]
        if with_shift:
            guards.append(("1 + c7 t > 0", lambda t, r: 1.0 + c7 * t))
        return _Bundle(
            amp=w,
            phase=phase,
            guards=guards,
            loci=["t = 0", "r = 0"],
        )

    consts = {"c1": 0.0, "c2": 1.0, "c3": 1.0, "c4": 0.5, "c5": 0.42, "c6": 0.5}
    if with_shift:
        consts["c7"] = 0.3
        box = ((0.55, 0.85), (2.0, 2.6))
        anchor = (0.62, 2.5)
    else:
        box = ((0.55, 0.9), (1.9, 2.7))
        anchor = (0.7, 2.3)
    return SolutionEntry(
        id=entry_id,
        label=entry_id,
        provenance="inversion applied to scal-rnls-sol-q" if with_shift else "scaling",
        constraint_text="p = -1, n = -4, c2 != 0, c6 != 0",
        constants=tuple(consts),
        default_params=_def(-4.0, -1.0, -1.0),
        default_constants=consts,
        box=box,
        anchor=anchor,
        validate=validate,
        build=build,
        fd_step=0.015,
        jitter=("c1", "c3", "c4"),
    )


def _build_registry() -> None:
    _register(_e_trans_sol1())
    _register(_sol2_like("trans-rnls-sol2", "trans-rnls-sol2 (p != 2/n, 4/n)", crit=False))
    _register(_sol2_like("trans-rnls-sol2-crit", "trans-rnls-sol2 (critical p = 4/n)", crit=True))
    _register(_e_trans_sol3())
    _register(_e_scal_sol2())
    _register(_e_trans_sol4())
    _register(_e_scal_sol3())
    _register(
        _bessel_chain(
            "trans-rnls-sol8",
            "trans-rnls-sol8",
            modified=False,
            n_def=3.0,
            consts={"c1": 0.0, "c2": 5.0, "c3": 0.5, "c4": 1.0, "c5": 0.3, "c6": 1.0},
            box=((-1.0, 1.0), (0.4, 2.0)),
            anchor=(0.0, 1.0),
            amp_sign_term=-1.0,
            phase_sign=+1.0,
        )
    )
    _register(
        _bessel_chain(
            "trans-rnls-sol9",
            "trans-rnls-sol9",
            modified=True,
            n_def=3.0,
            consts={"c1": 0.0, "c2": 1.0, "c3": 0.5, "c4": 1.0, "c5": 0.3, "c6": 1.0},
            box=((-1.0, 1.0), (0.3, 2.5)),
            anchor=(0.0, 1.0),
            amp_sign_term=+1.0,
            phase_sign=-1.0,
        )
    )
    _register(_e_trans_sol5())
    _register(_e_scal_sol7())
    _register(_e_scal_sol4())
    _register(
        _static_log_entry(
            "trans-rnls-sol6",
            2.0,
            lambda k, c: (lambda t, r: -k * r * r / 4.0 + c["c3"] * LN(r) + c["c2"]),
            {"c1": 0.0, "c2": 3.0, "c3": 1.0},
            ((-1.0, 1.0), (0.3, 3.4)),
            "p = -1, n = 2",
        )
    )
    _register(
        _static_log_entry(
            "trans-rnls-sol7",
            0.0,
            lambda k, c: (lambda t, r: -(k / 2.0) * r * r * LN(r) + c["c3"] * r * r + c["c2"]),
            {"c1": 0.0, "c2": 1.0, "c3": 1.0},
            ((-1.0, 1.0), (0.3, 4.5)),
            "p = -1, n = 0",
        )
    )
    _register(_e_inver_sol4())
    _register(
        _inver_bessel_chain(
            "inver-rnls-sol5",
            modified=False,
            consts={"c1": 0.0, "c2": 2.0, "c3": -0.5, "c4": 1.0, "c5": 0.2, "c6": 1.0},
            box=((0.85, 1.3), (0.9, 1.7)),
            anchor=(1.05, 1.2),
        )
    )
    _register(
        _inver_bessel_chain(
            "inver-rnls-sol6",
            modified=True,
            consts={"c1": 0.0, "c2": 0.5, "c3": 0.5, "c4": 1.0, "c5": 0.2, "c6": 1.0},
            box=((0.85, 1.3), (0.9, 1.8)),
            anchor=(1.05, 1.2),
        )
    )
    _register(_sol3_inver_family("inver-rnls-sol3", N_PLUS))
    _register(_sol3_inver_family("inver-rnls-sol3-minus", N_MINUS))
    _register(_sol6_family("scal-rnls-sol6", N_PLUS))
    _register(_sol6_family("scal-rnls-sol6-minus", N_MINUS))
    _register(_sol5_inver_family("scal-rnls-sol5", with_shift=False))
    _register(_sol_r_family("scal-rnls-sol-r", with_shift=False))
    _register(_sol_q_family("scal-rnls-sol-q", with_shift=False))
    _register(_sol5_inver_family("scal-rnls-sol5-apply-inver", with_shift=True))
    _register(_sol_r_family("scal-rnls-sol-r-apply-inver", with_shift=True))
    _register(_sol_q_family("scal-rnls-sol-q-apply-inver", with_shift=True))


_build_registry()


# --------------------------------------------------------------------------
# public operations
# --------------------------------------------------------------------------

def catalog_ids() -> list[str]:
    return list(_ORDER)


def get_entry(entry_id: str) -> SolutionEntry:
    if entry_id not in _REGISTRY:
        raise ConstraintError(f"unknown catalog id {entry_id!r}")
    return _REGISTRY[entry_id]


def default_instance(entry_id: str) -> SolutionInstance:
    e = get_entry(entry_id)
    return SolutionInstance(e.id, e.default_params, dict(e.default_constants), e.default_branch)


def list_solutions() -> list[dict]:
    out = []
    for eid in _ORDER:
        e = _REGISTRY[eid]
        out.append(
            {
                "id": e.id,
                "label": e.label,
                "constraints": e.constraint_text,
                "provenance": e.provenance,
                "default_instance": default_instance(eid).to_dict(),
            }
        )
    return out


def eval_solution(instance: SolutionInstance, t: float, r: float) -> complex:
    if r <= 0:
        raise DomainError(f"r must be > 0, got {r}")
    return instance.evaluate(t, r)


def solution_domain(instance: SolutionInstance) -> DomainRegion:
    return instance.domain()


def perturbed_instances(instance: SolutionInstance, m: int, seed: int = 0) -> list[SolutionInstance]:
    """m nearby members of the same family: jittered constants, constraints intact."""
    e = instance.entry
    names = e.jitter
    start = seed_offset(f"jit:{e.id}", seed)
    out = []
    from .sampling import halton_points

    primes = (2, 3, 5, 7, 11, 13, 17)[: max(1, len(names))]
    for vec in halton_points(m, start, primes):
        consts = dict(instance.constants)
        for name, u in zip(names, vec):
            v = consts[name]
            if v == 0.0:
                consts[name] = 0.06 * (u - 0.5)
            else:
                consts[name] = v * (1.0 + 0.18 * (u - 0.5))
        out.append(SolutionInstance(e.id, instance.params, consts, instance.branch))
    return out
