"""Numeric behavior classification: dynamics in time, regularity at the axis.

The classifier probes a SolutionInstance as a black box. Inconclusive is a
first-class outcome: no label is ever forced to match an expectation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .catalog import SolutionInstance, default_instance
from .params import ConstraintError, DomainError

STATIC = "Static"
PERIODIC = "TimePeriodic"
DISPERSIVE = "Dispersive"
BLOWUP = "BlowUp"
NONDISPERSIVE = "NonDispersive"
REGULAR = "Regular"
CONICAL = "Conical"
SINGULAR = "Singular"


class InconclusiveError(RuntimeError):
    """The probes did not support any label at the configured thresholds."""


@dataclass(frozen=True)
class BehaviorLabel:
    dynamics: str
    regularity: str
    blowup_time: float | None = None

    def __post_init__(self):
        if self.dynamics not in (STATIC, PERIODIC, DISPERSIVE, BLOWUP, NONDISPERSIVE):
            raise ConstraintError(f"unknown dynamics label {self.dynamics!r}")
        if self.regularity not in (REGULAR, CONICAL, SINGULAR):
            raise ConstraintError(f"unknown regularity label {self.regularity!r}")
        if (self.dynamics == BLOWUP) != (self.blowup_time is not None):
            raise ConstraintError("blowup_time present iff dynamics = BlowUp")

    def to_dict(self) -> dict:
        return {
            "dynamics": self.dynamics,
            "regularity": self.regularity,
            "blowup_time": self.blowup_time,
        }


@dataclass(frozen=True)
class ProbeSpec:
    horizon_factor: float = 1e3      # geometric t-range multiplier
    time_points: int = 25
    r_samples: int = 7
    decay_factor: float = 1e2        # sup|u| drop declaring dispersion
    growth_factor: float = 1e4       # growth toward finite t declaring blow-up
    static_tol: float = 1e-8
    ladder_depth: int = 20


def _safe_abs(u: Callable[[float, float], float], t: float, r: float) -> float | None:
    try:
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            a = abs(u(float(t), float(r)))
    except (DomainError, ValueError, OverflowError, ZeroDivisionError):
        return None
    return a if math.isfinite(a) else None


def _sup_r(u, t: float, rs: list[float]) -> float | None:
    vals = [_safe_abs(u, t, r) for r in rs]
    vals = [v for v in vals if v is not None]
    return max(vals) if vals else None


def classify_dynamics(
    instance: SolutionInstance, probe: ProbeSpec = ProbeSpec()
) -> tuple[str, float | None]:
    """Dynamics label decided by probing; returns (label, blowup_time-or-None)."""
    region = instance.domain()
    u = instance.evaluate
    mod = instance.modulus
    (t0, t1), (r0, r1) = region.t_interval, region.r_interval
    rs = list(np.linspace(r0 + 0.1 * (r1 - r0), r1 - 0.1 * (r1 - r0), probe.r_samples))
    ts = list(np.linspace(t0 + 0.1 * (t1 - t0), t1 - 0.1 * (t1 - t0), 5))
    scale = max(_safe_abs(mod, t, r) or 0.0 for t in ts for r in rs)
    if scale == 0.0:
        raise InconclusiveError("solution vanished on the probe grid")

    # static: u_t identically zero on the box
    h = 1e-4 * max(1e-3, (t1 - t0))
    def ut(t, r):
        return (-u(t + 2 * h, r) + 8 * u(t + h, r) - 8 * u(t - h, r) + u(t - 2 * h, r)) / (12 * h)

    max_ut = max(abs(ut(t, r)) for t in ts[1:-1] for r in rs)
    if max_ut < probe.static_tol * scale:
        return STATIC, None

    # time-periodic: |u| time-invariant, d(arg u)/dt a nonzero constant
    mod_var = max(
        abs((_safe_abs(u, t, r) or 0.0) - (_safe_abs(u, ts[0], r) or 0.0)) for t in ts for r in rs
    )
    if mod_var < 1e-9 * scale:
        omegas = [(ut(t, r) / u(t, r)).imag for t in ts[1:-1] for r in rs]
        om0 = omegas[0]
        if abs(om0) > 1e-9 and max(abs(w - om0) for w in omegas) < 1e-6 * abs(om0):
            return PERIODIC, None

    # long-horizon probe along geometric times from the anchor
    t_anchor = max(region.anchor[0], t0 + 0.2 * (t1 - t0))
    if t_anchor <= 0:
        t_anchor = max(1e-2, t0 + 0.5 * (t1 - t0))
    base = _sup_r(mod, t_anchor, rs)
    if base is None or base == 0.0:
        raise InconclusiveError("no finite baseline amplitude")

    # a finite excluded t-locus reached with |u| -> infinity is a blow-up;
    # the locus is bisected against the domain guards themselves
    edge = _guard_edge(region, rs, t_anchor, t_anchor * probe.horizon_factor)
    if edge is not None:
        approach = [
            _sup_r(mod, edge * (1.0 - delta) + t_anchor * delta * 0.0, rs)
            for delta in (1e-2, 1e-4, 1e-6, 1e-8)
        ]
        vals = [v for v in approach if v is not None]
        if vals and vals[-1] is not None and vals[-1] > 1e3 * base and all(
            b >= a for a, b in zip(vals, vals[1:])
        ):
            return BLOWUP, edge

    horizon = probe.horizon_factor
    for _attempt in range(3):
        t_probe = np.geomspace(t_anchor, t_anchor * horizon, probe.time_points)
        history: list[tuple[float, float]] = []
        divergence_bracket: tuple[float, float] | None = None
        prev_t, prev_v = t_anchor, base
        for t in t_probe[1:]:
            v = _sup_r(mod, float(t), rs)
            if v is None:
                divergence_bracket = (prev_t, float(t))
                break
            history.append((float(t), v))
            if v > probe.growth_factor * base and v > 4.0 * prev_v:
                divergence_bracket = (prev_t, float(t))
                break
            prev_t, prev_v = float(t), v

        if divergence_bracket is not None:
            tstar = _refine_blowup(mod, rs, divergence_bracket, base, probe)
            if tstar is not None:
                return BLOWUP, tstar
            raise InconclusiveError("divergence bracket did not refine to a blow-up time")

        if len(history) < probe.time_points // 2:
            raise InconclusiveError("probe horizon mostly unevaluable")
        tail = history[len(history) // 2 :]
        sup_end = tail[-1][1]
        lt = np.log([t for t, _ in tail])
        lv = np.log([max(v, 1e-300) for _, v in tail])
        slope = float(np.polyfit(lt, lv, 1)[0])
        if sup_end >= 0.3 * base:
            return NONDISPERSIVE, None
        if sup_end < base / probe.decay_factor and slope < -0.2:
            return DISPERSIVE, None
        if sup_end > 1e-3 * base and abs(slope) < 0.05:
            return NONDISPERSIVE, None
        if slope < -0.05:
            horizon *= probe.horizon_factor  # slow algebraic decay: extend and re-fit
            continue
        break
    raise InconclusiveError(
        f"ambiguous long-time behavior: drop {base / max(sup_end, 1e-300):.2e}, slope {slope:.3f}"
    )


def _guard_edge(region, rs, t_from, t_to) -> float | None:
    """First guard failure time past t_from at any probe radius, bisected."""
    guards = region.guards
    if not guards:
        return None

    def ok(t: float) -> bool:
        for r in rs:
            for _, g in guards:
                try:
                    if not g(float(t), float(r)) > 0.0:
                        return False
                except (DomainError, ValueError, OverflowError, ZeroDivisionError):
                    return False
        return True

    ts = np.geomspace(t_from, t_to, 120)
    bad = None
    for a, b in zip(ts, ts[1:]):
        if ok(float(a)) and not ok(float(b)):
            bad = (float(a), float(b))
            break
    if bad is None:
        return None
    lo, hi = bad
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14 * max(1.0, abs(hi)):
            break
    return 0.5 * (lo + hi)


def _refine_blowup(u, rs, bracket, base, probe) -> float | None:
    """Locate the finite divergence time inside the bracket.

    When evaluation fails past the locus (fractional powers), bisection on
    evaluability lands on the excluded locus itself. When the formula
    evaluates across it (integer powers), a ternary search finds the spike.
    """
    lo, hi = bracket

    def evaluable(t: float) -> bool:
        return _sup_r(u, t, rs) is not None

    if not evaluable(hi):
        a, b = lo, hi
        for _ in range(200):
            mid = 0.5 * (a + b)
            if evaluable(mid):
                a = mid
            else:
                b = mid
            if b - a < 1e-14 * max(1.0, abs(b)):
                break
        va = _sup_r(u, a, rs)
        return 0.5 * (a + b) if (va is not None and va > 1e2 * base) else None
    a, b = lo, hi
    for _ in range(300):
        m1 = a + (b - a) / 3
        m2 = b - (b - a) / 3
        v1 = _sup_r(u, m1, rs)
        v2 = _sup_r(u, m2, rs)
        v1 = math.inf if v1 is None else v1
        v2 = math.inf if v2 is None else v2
        if v1 < v2:
            a = m1
        else:
            b = m2
        if b - a < 1e-14 * max(1.0, abs(b)):
            break
    tstar = 0.5 * (a + b)
    vstar = _sup_r(u, tstar * (1.0 - 1e-8) if tstar != 0 else -1e-8, rs)
    return tstar if (vstar is None or vstar > 1e2 * base) else None


def classify_regularity(instance: SolutionInstance, probe: ProbeSpec = ProbeSpec()) -> str:
    """Axis behavior from the dyadic ladder r_j = r0 2^{-j} at a fixed valid time."""
    region = instance.domain()
    u = instance.evaluate
    mod = instance.modulus
    t_fix = region.anchor[0]
    r0 = region.anchor[1]
    ladder = [r0 * 2.0**-j for j in range(probe.ladder_depth + 1)]
    mods = []
    for r in ladder:
        a = _safe_abs(mod, t_fix, r)
        if a is None:
            break
        mods.append(a)
    if len(mods) < 8:
        raise InconclusiveError("modulus ladder not evaluable near the axis")
    scale = max(mods)

    # divergence test on the modulus tail (covers both power and log growth)
    tail_ratios = [mods[j + 1] / mods[j] for j in range(len(mods) - 4, len(mods) - 1)]
    if all(q > 1.02 for q in tail_ratios) or mods[-1] > 1e6 * mods[0]:
        return SINGULAR

    # |u_r| ladder with a step-halving reliability check; oscillatory phases
    # alias below machine resolution, so the ladder stops where FD degrades,
    # and rungs below the roundoff floor count as vanishing derivative
    eps = float(np.finfo(float).eps)
    ders: list[tuple[float, float]] = []
    for r in ladder[: len(mods)]:
        hr = 1e-6 * r

        def d(hh):
            return (-u(t_fix, r + 2 * hh) + 8 * u(t_fix, r + hh) - 8 * u(t_fix, r - hh) + u(t_fix, r - 2 * hh)) / (12 * hh)

        try:
            d1, d2 = d(hr), d(hr / 2)
        except (DomainError, ValueError, OverflowError):
            break
        floor = 60.0 * eps * scale / (hr / 2.0)
        if max(abs(d1), abs(d2)) < floor:
            ders.append((r, 0.0))
            continue
        if abs(d1 - d2) > 0.01 * max(abs(d1), abs(d2)):
            break
        ders.append((r, abs(d2)))
    if len(ders) < 6:
        raise InconclusiveError("derivative ladder too short to fit a limit")
    vals = [v for _, v in ders]
    dmax = max(vals)
    if dmax == 0.0 or any(v == 0.0 for v in vals[-3:]):
        return REGULAR  # u_r sank below the rounding floor near the axis
    tail = ders[-4:]
    slope = float(
        np.polyfit(np.log([r for r, _ in tail]), np.log([max(v, 1e-300) for _, v in tail]), 1)[0]
    )
    if slope > 0.2 and tail[-1][1] < 0.05 * dmax:
        return REGULAR
    return CONICAL


def classify(instance: SolutionInstance, probe: ProbeSpec = ProbeSpec()) -> BehaviorLabel:
    dyn, tstar = classify_dynamics(instance, probe)
    reg = classify_regularity(instance, probe)
    return BehaviorLabel(dynamics=dyn, regularity=reg, blowup_time=tstar)


# --------------------------------------------------------------------------
# ground-truth rows (dynamics, regularity), expanded over printed conditions
# --------------------------------------------------------------------------

_ROWS: dict[str, list[tuple[str, dict, str, str]]] = {
    "trans-rnls-sol1": [("default", {}, PERIODIC, REGULAR)],
    "trans-rnls-sol2": [
        ("c2/c3>0", {}, DISPERSIVE, REGULAR),
        ("c2/c3<0", {"c3": -1.0}, BLOWUP, REGULAR),
    ],
    "trans-rnls-sol2-crit": [
        ("c2/c3>0", {}, DISPERSIVE, REGULAR),
        ("c2/c3<0", {"c3": -1.0}, BLOWUP, REGULAR),
    ],
    "trans-rnls-sol3": [
        ("c2/c3>0", {}, DISPERSIVE, REGULAR),
        ("c2/c3<0", {"c3": -1.0}, BLOWUP, REGULAR),
    ],
    "scal-rnls-sol2": [("default", {}, NONDISPERSIVE, SINGULAR)],
    "trans-rnls-sol4": [
        ("c2=0", {"c2": 0.0}, STATIC, REGULAR),
        ("c2!=0", {}, STATIC, SINGULAR),
    ],
    "scal-rnls-sol3": [("default", {}, STATIC, SINGULAR)],
    "trans-rnls-sol8": [
        ("c3=c5=0", {"c3": 0.0, "c5": 0.0}, PERIODIC, REGULAR),
        ("c3!=0", {"c5": 0.0}, PERIODIC, SINGULAR),
        ("c5!=0", {"c3": 0.0}, PERIODIC, SINGULAR),
    ],
    "trans-rnls-sol9": [
        ("c3=c5=0", {"c3": 0.0, "c5": 0.0}, PERIODIC, REGULAR),
        ("c3!=0", {"c5": 0.0}, PERIODIC, SINGULAR),
        ("c5!=0", {"c3": 0.0}, PERIODIC, SINGULAR),
    ],
    "trans-rnls-sol5": [
        ("c3=0", {"c3": 0.0}, STATIC, REGULAR),
        ("c3!=0", {}, STATIC, SINGULAR),
    ],
    "scal-rnls-sol7": [("default", {}, DISPERSIVE, SINGULAR)],
    "scal-rnls-sol4": [("default", {}, NONDISPERSIVE, SINGULAR)],
    "trans-rnls-sol6": [
        ("c3=0", {"c3": 0.0, "c2": 4.0}, STATIC, REGULAR),
        ("c3!=0", {}, STATIC, SINGULAR),
    ],
    "trans-rnls-sol7": [("default", {}, STATIC, REGULAR)],
    "inver-rnls-sol4": [("default", {}, NONDISPERSIVE, REGULAR)],
    "inver-rnls-sol5": [("default", {}, NONDISPERSIVE, REGULAR)],
    "inver-rnls-sol6": [("default", {}, NONDISPERSIVE, REGULAR)],
    "inver-rnls-sol3": [
        ("c2>0", {}, DISPERSIVE, SINGULAR),
        ("c2<0", {"c2": -1.0}, BLOWUP, SINGULAR),
    ],
    "inver-rnls-sol3-minus": [("default", {}, NONDISPERSIVE, CONICAL)],
    "scal-rnls-sol6": [("default", {}, DISPERSIVE, SINGULAR)],
    "scal-rnls-sol6-minus": [("default", {}, DISPERSIVE, CONICAL)],
    "scal-rnls-sol5": [("default", {}, DISPERSIVE, CONICAL)],
    "scal-rnls-sol-r": [("default", {}, NONDISPERSIVE, REGULAR)],
    "scal-rnls-sol-q": [
        ("c5=0", {"c5": 0.0}, NONDISPERSIVE, REGULAR),
        ("c5!=0", {}, NONDISPERSIVE, CONICAL),
    ],
    "scal-rnls-sol5-apply-inver": [("default", {}, DISPERSIVE, CONICAL)],
    "scal-rnls-sol-r-apply-inver": [("default", {}, NONDISPERSIVE, REGULAR)],
    "scal-rnls-sol-q-apply-inver": [
        ("c5=0", {"c5": 0.0}, NONDISPERSIVE, REGULAR),
        ("c5!=0", {}, NONDISPERSIVE, CONICAL),
    ],
}


def expected_behavior(entry_id: str, condition: str = "default") -> BehaviorLabel:
    """The tabulated ground-truth label for an entry and printed condition."""
    rows = _ROWS.get(entry_id)
    if rows is None:
        raise ConstraintError(f"no tabulated behavior for {entry_id!r}")
    for cond, _, dyn, reg in rows:
        if cond == condition:
            tstar = math.nan if dyn == BLOWUP else None
            return BehaviorLabel(dynamics=dyn, regularity=reg, blowup_time=tstar)
    raise ConstraintError(f"unknown condition {condition!r} for {entry_id!r}; have {[c for c, *_ in rows]}")


def condition_instance(entry_id: str, condition: str = "default") -> SolutionInstance:
    rows = _ROWS.get(entry_id)
    if rows is None:
        raise ConstraintError(f"no tabulated behavior for {entry_id!r}")
    for cond, overrides, _, _ in rows:
        if cond == condition:
            inst = default_instance(entry_id)
            return inst.with_updates(**overrides) if overrides else inst
    raise ConstraintError(f"unknown condition {condition!r} for {entry_id!r}")


def behavior_rows() -> list[tuple[str, str]]:
    return [(eid, cond) for eid, rows in _ROWS.items() for (cond, *_rest) in rows]


@dataclass
class BehaviorAuditRow:
    entry_id: str
    condition: str
    expected_dynamics: str
    expected_regularity: str
    measured_dynamics: str
    measured_regularity: str
    blowup_time: float | None
    blowup_time_expected: float | None
    passed: bool

    def to_dict(self) -> dict:
        return {
            "entry_id": self.entry_id,
            "condition": self.condition,
            "expected": f"{self.expected_dynamics}/{self.expected_regularity}",
            "measured": f"{self.measured_dynamics}/{self.measured_regularity}",
            "blowup_time": self.blowup_time,
            "blowup_time_expected": self.blowup_time_expected,
            "pass": self.passed,
        }


def behavior_audit(probe: ProbeSpec = ProbeSpec()) -> list[BehaviorAuditRow]:
    out = []
    for eid, cond in behavior_rows():
        exp = expected_behavior(eid, cond)
        inst = condition_instance(eid, cond)
        label = classify(inst, probe)
        t_exp = None
        if exp.dynamics == BLOWUP:
            c = inst.constants
            if "c3" in c and c.get("c3"):
                t_exp = -c["c2"] / c["c3"]
        ok = label.dynamics == exp.dynamics and label.regularity == exp.regularity
        if t_exp is not None and label.blowup_time is not None:
            ok = ok and abs(label.blowup_time - t_exp) <= 1e-6 * max(1.0, abs(t_exp))
        out.append(
            BehaviorAuditRow(
                entry_id=eid,
                condition=cond,
                expected_dynamics=exp.dynamics,
                expected_regularity=exp.regularity,
                measured_dynamics=label.dynamics,
                measured_regularity=label.regularity,
                blowup_time=label.blowup_time,
                blowup_time_expected=t_exp,
                passed=ok,
            )
        )
    return out
