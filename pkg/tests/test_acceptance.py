"""Acceptance gate: one criterion per test, one printed PASS/FAIL line each.

Three sub-assertions reproduce tabulated claims that are numerically
false (the README lists them). Those are implemented faithfully and marked xfail(strict=True):
they run, fail for the documented reason, and would flag loudly if the
underlying facts ever changed.
"""

import math
import time

import numpy as np
import pytest

from gnls import catalog, classify, foliation, specfun, symmetry
from gnls.params import GnlsParams, N_PLUS
from gnls.residual import BlowupOdeSpec, GridSpec, ode_residual_blowup, verify_grid
from gnls.sampling import box_points

import oracles


def _line(num: int, passed: bool, detail: str) -> None:
    print(f"ACCEPTANCE {num}: {'PASS' if passed else 'FAIL'} - {detail}")


_memo: dict = {}


def _behavior_rows():
    if "behavior" not in _memo:
        out = []
        for eid, cond in classify.behavior_rows():
            exp = classify.expected_behavior(eid, cond)
            inst = classify.condition_instance(eid, cond)
            try:
                label = classify.classify(inst)
                inconclusive = None
            except classify.InconclusiveError as exc:
                label, inconclusive = None, str(exc)
            out.append((eid, cond, exp, label, inconclusive, inst))
        _memo["behavior"] = out
    return _memo["behavior"]


def test_criterion_1_catalog_residuals():
    t0 = time.monotonic()
    worst_rel, worst_order = 0.0, math.inf
    checked = 0
    for eid in catalog.catalog_ids():
        base = catalog.default_instance(eid)
        for inst in [base] + catalog.perturbed_instances(base, 3, seed=0):
            rep = verify_grid(inst, GridSpec(points=50, seed=0))
            rel = rep.residual_max / rep.scale
            worst_rel = max(worst_rel, rel)
            assert rel < 1e-6, f"{eid}: residual_max/scale = {rel:.3e}"
            assert rep.order_estimate is not None
            worst_order = min(worst_order, rep.order_estimate)
            assert rep.order_estimate >= 3.5, f"{eid}: order = {rep.order_estimate}"
            assert rep.passed
            checked += 1
    dt = time.monotonic() - t0
    _line(
        1,
        True,
        f"{checked} instances (27 ids x 4), worst residual_max/scale {worst_rel:.2e}, "
        f"min order {worst_order:.2f}, runtime {dt:.1f}s (budget 120s)",
    )
    assert checked == 108


def test_criterion_2_negative_control():
    t0 = time.monotonic()
    worst = math.inf
    for eid in catalog.catalog_ids():
        rep = verify_grid(catalog.default_instance(eid).detuned(1.01), GridSpec(points=20, seed=0))
        rel = rep.residual_max / rep.scale
        worst = min(worst, rel)
        assert rel > 1e-3, f"{eid}: detuned residual {rel:.3e} not detected"
        assert not rep.passed
    _line(2, True, f"1% balance detune breaks all 27 entries; min residual {worst:.2e}, "
                   f"runtime {time.monotonic() - t0:.1f}s")


def test_criterion_3_group_resolving_audit():
    t0 = time.monotonic()
    profiles = foliation.all_profiles()
    assert len(profiles) == 38
    worst = 0.0
    worst_theta = 0.0
    for prof in profiles:
        for (x, A, th) in prof.sample(20, seed=0):
            e1, e2 = foliation.grs_residual(prof.kind, prof, prof.params, x, A, th)
            worst = max(worst, abs(e1) / A, abs(e2) / A)
            assert abs(e1) < 1e-7 * A and abs(e2) < 1e-7 * A, prof.pid
            f1, f2 = foliation.grs_residual(prof.kind, prof, prof.params, x, A, th + 1.7)
            for a, b in ((e1, f1), (e2, f2)):
                # relative theta-independence where measurable, rounding floor below
                gap = abs(abs(a) - abs(b))
                assert gap <= max(1e-10 * abs(a), 1e-12 * A), prof.pid
                if abs(a) > 1e-9 * A:  # resolvable above the stencil noise floor
                    worst_theta = max(worst_theta, gap / abs(a))
    dt = time.monotonic() - t0
    _line(3, True, f"12+17+9 profiles, 20 points each: worst residual/A {worst:.2e}, "
                   f"theta-independence {worst_theta:.1e}, runtime {dt:.1f}s (budget 60s)")
    assert dt < 60.0


def _condition_audit():
    if "conditions" not in _memo:
        rows = []
        for prof in foliation.all_profiles():
            worst = max(
                abs(foliation.invariance_condition_residual(prof.kind, prof, prof.params, x, A))
                for (x, A, _) in prof.sample(20, seed=1)
            )
            rows.append((prof, worst))
        _memo["conditions"] = rows
    return _memo["conditions"]


def test_criterion_4_invariance_condition_blocks():
    sat_trans = {p.pid for p, w in _condition_audit() if p.kind == "trans" and w < 1e-10}
    sat_inver = {p.pid for p, w in _condition_audit() if p.kind == "inver" and w < 1e-10}
    assert sat_trans == {
        "trans-new-solGH-f",
        "trans-solGH-c",
        "trans-solGH-d-case1-subcase-general-sol1",
        "trans-solGH-d-case1-subcase-general-sol2",
        "trans-solGH-d-case1-general-sol1",
        "trans-solGH-d-case1-general-sol2",
        "trans-solGH-d-case1-general-sol3",
    }
    assert sat_inver == {"inver-solGH-c", "inver-solGH-a1", "inver-solGH-e-1", "inver-solGH-e-2"}
    violators = [
        (p, w) for p, w in _condition_audit() if p.kind == "scal" and p.pid != "scal-solGH-r"
    ]
    assert all(w > 1e-3 for _, w in violators)
    scal_r = next(w for p, w in _condition_audit() if p.pid == "scal-solGH-r")
    _line(
        4,
        False,
        "as stated: 16/17 scaling profiles violate the similarity condition "
        f"(min violation {min(w for _, w in violators):.2e}); scal-solGH-r satisfies it "
        f"identically ({scal_r:.1e}) - documented erratum; both invariant blocks exact",
    )


@pytest.mark.xfail(
    strict=True,
    reason="tabulated-claim erratum: scal-solGH-r satisfies the similarity condition identically "
    "(its counterpart solution is manifestly of similarity form); criterion as stated "
    "cannot hold together with criterion 3",
)
def test_criterion_4_all_seventeen_violate_as_stated():
    for prof, worst in _condition_audit():
        if prof.kind == "scal":
            assert worst > 1e-3, prof.pid


def test_criterion_5_special_functions():
    t0 = time.monotonic()
    # 200-sample oracle sweep: 40 per Bessel kind, 20 each for Si/Ci
    worst = 0.0
    for nu, x in box_points(40, "acc5-bessel", 0, (0.0, 10.0), (1e-3, 100.0)):
        env = math.sqrt(2.0 / (math.pi * x))
        for kind, fn in (
            ("J", specfun.bessel_j),
            ("Y", specfun.bessel_y),
            ("I", specfun.bessel_i),
            ("K", specfun.bessel_k),
        ):
            ref = oracles.mp_bessel(kind, nu, x)
            floor = 1e-3 * env if kind in ("J", "Y") else 0.0
            rel = abs(fn(nu, x) - ref) / max(abs(ref), floor, 1e-300)
            worst = max(worst, rel)
            assert rel <= 1e-9, (kind, nu, x)
    for (x,) in box_points(20, "acc5-si", 0, (1e-3, 1000.0)):
        rel = abs(specfun.sine_integral(x) - oracles.mp_si(x)) / max(abs(oracles.mp_si(x)), 1e-6)
        worst = max(worst, rel)
        assert rel <= 1e-9
        ref = oracles.mp_ci(x)
        rel = abs(specfun.cosine_integral(x) - ref) / max(abs(ref), 1e-3)
        worst = max(worst, rel)
        assert rel <= 1e-9
    # Coulomb Wronskian at 50 samples, derivatives by central differences
    worst_w = 0.0
    for eta, rho in box_points(50, "acc5-coulomb", 0, (-10.0, 10.0), (0.2, 50.0)):
        h = 3e-6 * (1.0 + rho)
        for L in (0, 1):
            fp = (specfun.coulomb_f(L, eta, rho + h) - specfun.coulomb_f(L, eta, rho - h)) / (2 * h)
            gp = (specfun.coulomb_g(L, eta, rho + h) - specfun.coulomb_g(L, eta, rho - h)) / (2 * h)
            w = fp * specfun.coulomb_g(L, eta, rho) - specfun.coulomb_f(L, eta, rho) * gp
            worst_w = max(worst_w, abs(w - 1.0))
            assert abs(w - 1.0) < 1e-8, (L, eta, rho)
    # recurrence identities for plain and modified Bessel functions
    worst_id = 0.0
    hid = 3e-3
    for nu in (0.5, 1.0, abs(1.0 - N_PLUS / 2.0)):
        for z in np.linspace(0.5, 20.0, 14):
            d_j = (
                -((z + 2 * hid) ** -nu) * specfun.bessel_j(nu, z + 2 * hid)
                + 8 * (z + hid) ** -nu * specfun.bessel_j(nu, z + hid)
                - 8 * (z - hid) ** -nu * specfun.bessel_j(nu, z - hid)
                + (z - 2 * hid) ** -nu * specfun.bessel_j(nu, z - 2 * hid)
            ) / (12 * hid)
            res_j = abs(z**-nu * specfun.bessel_j(nu + 1, z) + d_j)
            d_i = (
                -((z + 2 * hid) ** -nu) * specfun.bessel_i(nu, z + 2 * hid)
                + 8 * (z + hid) ** -nu * specfun.bessel_i(nu, z + hid)
                - 8 * (z - hid) ** -nu * specfun.bessel_i(nu, z - hid)
                + (z - 2 * hid) ** -nu * specfun.bessel_i(nu, z - 2 * hid)
            ) / (12 * hid)
            res_i = abs(z**-nu * specfun.bessel_i(nu + 1, z) - d_i)
            # normalize the modified identity by its exponentially growing scale
            res_i /= max(1.0, z**-nu * specfun.bessel_i(nu, z))
            worst_id = max(worst_id, res_j, res_i)
            assert res_j < 1e-9 and res_i < 1e-9, (nu, z)
    dt = time.monotonic() - t0
    _line(5, True, f"oracle sweep worst rel {worst:.1e}; Wronskian worst {worst_w:.1e}; "
                   f"identities worst {worst_id:.1e}; runtime {dt:.1f}s (budget 30s)")
    assert dt < 30.0


def test_criterion_6_profile_ode_closures():
    t0 = time.monotonic()
    families = {
        "trans-d-bessel": np.linspace(0.6, 2.6, 20),
        "trans-d-modbessel": np.linspace(1.3, 3.0, 20),
        "scal-r": np.linspace(0.22, 0.55, 20),
        "scal-q": np.linspace(0.045, 0.115, 20),
        "inver-e": np.linspace(0.48, 0.88, 20),
    }
    worst = 0.0
    for fam, xs in families.items():
        kw = {"n": 4.0} if fam == "trans-d-modbessel" else {}
        for x in xs:
            res = max(profile := foliation.profile_ode_residual(fam, float(x), **kw))
            worst = max(worst, res)
            assert res < 1e-7, (fam, x, profile)
    _line(6, True, f"Bessel/Si-Ci/Coulomb chains satisfy their defining equations: "
                   f"worst residual {worst:.1e} at 20 points per family, "
                   f"runtime {time.monotonic() - t0:.1f}s")


def _table3_rows():
    if "table3" not in _memo:
        _memo["table3"] = symmetry.verify_invariance_table(points=20, seed=0)
    return _memo["table3"]


def test_criterion_7_mappings_and_repaired_table():
    t0 = time.monotonic()
    maps = symmetry.verify_inversion_mappings(tol=1e-8)
    assert len(maps) == 16
    worst_map = max(m.max_rel_err for m in maps)
    for m in maps:
        assert m.passed, m.name
    rows = _table3_rows()
    # every invariance statement passes once the documented bindings are used:
    # take the best row per (entry, condition) among printed/repaired variants
    best: dict = {}
    for r in rows:
        if r.kind == "spanning":
            assert r.passed and r.max_q_rel > 1e-2, r.entry_id
            continue
        key = (r.entry_id, r.condition)
        best[key] = min(best.get(key, math.inf), r.max_q_rel)
    bad = {k: v for k, v in best.items() if v >= 1e-6 and k[1] not in ("c2=0", "c3=0")}
    assert not bad, bad
    # the inver-rnls-sol4 single-zero conditionals have no valid binding at all
    assert best[("inver-rnls-sol4", "c2=0")] > 1e-2
    assert best[("inver-rnls-sol4", "c2=c3=0")] < 1e-6
    _line(7, False, "as stated: all 16 pseudo-conformal mapping claims verified to "
                    f"{worst_map:.1e}; invariance table green only after 4 documented "
                    "binding repairs, and the 'c2=0 or c3=0' conditional fails as printed "
                    f"(runtime {time.monotonic() - t0:.1f}s)")


@pytest.mark.xfail(
    strict=True,
    reason="tabulated-claim errata: printed generators for inver-rnls-sol5/6 omit the +-c6 phase "
    "component, the sol-q rows print -c2 instead of -2c2, and the inver-rnls-sol4 "
    "'c2=0 or c3=0' scaling conditional holds only when both constants vanish",
)
def test_criterion_7_table3_rows_as_printed():
    for r in _table3_rows():
        if r.kind == "printed":
            assert r.passed, (r.entry_id, r.condition, r.max_q_rel)


def test_criterion_8_reconstruction_round_trip():
    t0 = time.monotonic()
    # standing wave through the phase-only branch
    prof_a = foliation.make_profile("trans-solGH-a", params=GnlsParams(2.0, 2.0, 1.0))
    targets = [(0.2 + 0.03 * i, 0.8 + 0.04 * i) for i in range(30)]
    rec = foliation.reconstruct_solution(prof_a, c1=2.0, c2=0.0, targets=targets)
    inst = catalog.SolutionInstance(
        "trans-rnls-sol1", GnlsParams(2.0, 2.0, 1.0), {"c1": 0.0, "c2": 4.0}
    )
    rms_a = math.sqrt(
        sum(abs(u - inst.evaluate(t, r)) ** 2 for (t, r, u) in rec.samples) / len(rec.samples)
    )
    assert rms_a < 1e-6

    def two_constant_fit(rec, n, p, k, c3, c2_known=None):
        t0_, r0_, u0_ = rec.samples[0]
        c2 = abs(u0_) ** (-2.0 / n) - c3 * t0_ if c2_known is None else c2_known
        ph = -c3 * r0_**2 / (4 * (c2 + c3 * t0_)) + 2 * k / (c3 * (n * p - 2.0)) * (
            c2 + c3 * t0_
        ) ** (1 - n * p / 2)
        c1 = (np.angle(u0_) - ph + math.pi) % (2 * math.pi) - math.pi
        return catalog.SolutionInstance(
            "trans-rnls-sol2", GnlsParams(n, p, k), {"c1": c1, "c2": c2, "c3": c3}
        )

    n, p, k = 3.0, 1.0, 1.0
    prof_b = foliation.make_profile("trans-solGH-b", params=GnlsParams(n, p, k), C1=-0.5)
    rec_b = foliation.reconstruct_solution(
        prof_b, c1=0.0, c2=0.0, targets=[(0.3 + 0.02 * i, 0.9 + 0.03 * i) for i in range(30)],
        base=(1.0, 1.0),
    )
    inst_b = two_constant_fit(rec_b, n, p, k, c3=1.0)
    rms_b = math.sqrt(
        sum(abs(u - inst_b.evaluate(t, r)) ** 2 for (t, r, u) in rec_b.samples) / 30
    )
    assert rms_b < 1e-6

    prof_s = foliation.make_profile("scal-solGH-b", params=GnlsParams(n, p, k))
    rec_s = foliation.reconstruct_solution(
        prof_s, c1=0.0, c2=0.0, targets=[(0.5 + 0.02 * i, 0.9 + 0.03 * i) for i in range(30)],
        base=(0.55, 1.0),
    )
    t0_, r0_, u0_ = rec_s.samples[0]
    c3 = abs(u0_) ** (-2.0 / n) / t0_
    inst_s = two_constant_fit(rec_s, n, p, k, c3=c3, c2_known=0.0)
    rms_s = math.sqrt(
        sum(abs(u - inst_s.evaluate(t, r)) ** 2 for (t, r, u) in rec_s.samples) / 30
    )
    assert rms_s < 1e-6

    worst_path = 0.0
    for (x, A) in [(1.5, 0.8), (1.2, 1.3)]:
        y1, p1 = foliation.line_integrals(prof_b, (1.0, 1.0), x, A, order="xA")
        y2, p2 = foliation.line_integrals(prof_b, (1.0, 1.0), x, A, order="Ax")
        worst_path = max(worst_path, abs(y1 - y2), abs(p1 - p2))
        assert abs(y1 - y2) < 1e-9 and abs(p1 - p2) < 1e-9
    _line(8, True, f"3 profiles round-trip to their catalog counterparts "
                   f"(RMS {rms_a:.1e}/{rms_b:.1e}/{rms_s:.1e}); path independence "
                   f"{worst_path:.1e}; runtime {time.monotonic() - t0:.1f}s")


_PRINTED_CONICAL_ERRATA = {("scal-rnls-sol-q", "c5!=0"), ("scal-rnls-sol-q-apply-inver", "c5!=0")}


def test_criterion_9_classification_audit():
    t0 = time.monotonic()
    mismatches = []
    for eid, cond, exp, label, inconclusive, inst in _behavior_rows():
        assert inconclusive is None, (eid, cond, inconclusive)
        if (eid, cond) in _PRINTED_CONICAL_ERRATA:
            continue
        assert label.dynamics == exp.dynamics, (eid, cond, label)
        assert label.regularity == exp.regularity, (eid, cond, label)
        if exp.dynamics == classify.BLOWUP and "c3" in inst.constants and inst.constants["c3"]:
            t_exp = -inst.constants["c2"] / inst.constants["c3"]
            assert label.blowup_time == pytest.approx(t_exp, rel=1e-6), (eid, cond)
    _line(9, False, "as stated: 37/39 expanded table rows match the classifier, zero "
                    "inconclusive outcomes, blow-up times at -c2/c3 to 1e-6; the two "
                    "'c5 != 0 conical' rows measure Regular (documented erratum), "
                    f"runtime {time.monotonic() - t0:.1f}s")


@pytest.mark.xfail(
    strict=True,
    reason="tabulated-claim erratum: the printed 'c5 != 0, conical' rows are Regular "
    "(|u_r| ~ r ln r -> 0 at the axis for every c5; see the README)",
)
def test_criterion_9_conical_rows_as_printed():
    for eid, cond, exp, label, inconclusive, _ in _behavior_rows():
        if (eid, cond) in _PRINTED_CONICAL_ERRATA:
            assert inconclusive is None
            assert label.regularity == exp.regularity, (eid, cond, label)


def test_criterion_10_blowup_ode_constant_profile():
    t0 = time.monotonic()
    worst = 0.0
    triples = box_points(10, "acc10", 0, (-3.0, -0.1), (0.1, 3.0), (1.2, 4.0))
    for omega, k, n in triples:
        spec = BlowupOdeSpec(omega=omega, n=n, p=4.0 / n, k=k, kind="critical")
        amp = (-omega / k) ** (n / 4.0)
        U = lambda xi: amp + 0.0j
        for xi in (0.7, 1.9, 3.1):
            res = abs(ode_residual_blowup(spec, U, xi, 0.05))
            worst = max(worst, res)
            assert res < 1e-10, (omega, k, n, xi)
    _line(10, True, f"constant profile kills the critical equation for 10 random "
                    f"(omega<0, k>0, n) triples: worst residual {worst:.1e}, "
                    f"runtime {time.monotonic() - t0:.1f}s")
