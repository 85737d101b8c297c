"""Catalog entries: metadata, printed-example values, domains, family properties."""

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gnls import catalog
from gnls.params import ConstraintError, DomainError, GnlsParams, ROOT17


def test_catalog_count_and_metadata():
    rows = catalog.list_solutions()
    assert len(rows) == 27
    ids = {r["id"] for r in rows}
    assert "trans-rnls-sol1" in ids and "scal-rnls-sol-q-apply-inver" in ids
    by_id = {r["id"]: r for r in rows}
    assert by_id["trans-rnls-sol1"]["provenance"] == "time-translation + scaling"
    assert by_id["inver-rnls-sol4"]["provenance"] == "inversion"
    assert by_id["trans-rnls-sol8"]["provenance"] == "time-translation"
    assert by_id["scal-rnls-sol-r"]["provenance"] == "scaling"


def test_default_instances_satisfy_constraints():
    for eid in catalog.catalog_ids():
        inst = catalog.default_instance(eid)
        assert inst.entry_id == eid
        region = inst.domain()
        assert region.t_interval[0] < region.t_interval[1]
        assert region.r_interval[0] < region.r_interval[1]


def test_printed_value_sol1():
    inst = catalog.SolutionInstance(
        "trans-rnls-sol1", GnlsParams(2.0, 2.0, 1.0), {"c1": 0.0, "c2": 4.0}
    )
    assert catalog.eval_solution(inst, 0.0, 1.0) == pytest.approx(2.0 + 0.0j, abs=1e-14)


def test_printed_value_sol5():
    inst = catalog.SolutionInstance(
        "trans-rnls-sol5", GnlsParams(3.0, -1.0, 6.0), {"c1": 0.0, "c2": 5.0, "c3": 0.0}
    )
    assert catalog.eval_solution(inst, 0.0, 1.0) == pytest.approx(4.0 + 0.0j, abs=1e-14)


def test_printed_value_sol3():
    inst = catalog.SolutionInstance(
        "trans-rnls-sol3", GnlsParams(2.0, 1.0, 1.0), {"c1": 0.0, "c2": 1.0, "c3": 1.0}
    )
    got = catalog.eval_solution(inst, 0.0, 2.0)
    assert got == pytest.approx(cmath.exp(-1j), abs=1e-14)


def test_default_inver_sol3_uses_positive_root():
    inst = catalog.default_instance("inver-rnls-sol3")
    assert inst.params.n == pytest.approx((1 + ROOT17) / 2, rel=1e-15)
    assert inst.params.p == pytest.approx(8 / (1 + ROOT17), rel=1e-15)
    assert inst.params.k < 0
    # the dimension constraint must hold to machine precision
    n = inst.params.n
    assert abs(n * n - n - 4.0) < 1e-12


def test_constraint_violations_raise():
    with pytest.raises(ConstraintError):
        catalog.SolutionInstance("trans-rnls-sol1", GnlsParams(2.0, 2.0, 1.0), {"c1": 0.0, "c2": -4.0})
    with pytest.raises(ConstraintError):
        catalog.SolutionInstance(
            "trans-rnls-sol3", GnlsParams(2.0, 1.5, 1.0), {"c1": 0.0, "c2": 1.0, "c3": 1.0}
        )
    with pytest.raises(ConstraintError):
        catalog.SolutionInstance(
            "scal-rnls-sol-q",
            GnlsParams(-4.0, -1.0, -1.0),
            {"c1": 0.0, "c2": 1.0, "c3": 1.0, "c4": 0.5, "c5": 0.42, "c6": 0.0},
        )
    with pytest.raises(ConstraintError):
        catalog.SolutionInstance("no-such-id", GnlsParams(2.0, 2.0, 1.0), {})


def test_negative_fractional_power_raises():
    with pytest.raises(DomainError):
        catalog.rpow(-2.0, 0.5)
    assert catalog.rpow(-2.0, 2.0) == 4.0
    assert catalog.rpow(-2.0, -1.0) == -0.5


def test_domain_sampling_respects_guards():
    inst = catalog.default_instance("trans-rnls-sol8")
    region = inst.domain()
    pts = region.sample(40, seed=1, halo=0.05)
    assert len(pts) == 40
    for (t, r) in pts:
        assert region.contains(t, r)
        assert abs(inst.evaluate(t, r)) > 0


def test_excluded_loci_reported():
    inst = catalog.default_instance("trans-rnls-sol2")
    loci = inst.domain().excluded_loci
    assert any("t = -1" in s for s in loci)
    inst8 = catalog.default_instance("trans-rnls-sol8")
    assert any("Bessel bracket" in s for s in inst8.domain().excluded_loci)
    inst_iv = catalog.default_instance("inver-rnls-sol4")
    assert any(s.startswith("t = 0") for s in inst_iv.domain().excluded_loci)


@settings(max_examples=20, deadline=None)
@given(delta=st.floats(min_value=-6.0, max_value=6.0, allow_nan=False))
def test_phase_shift_property(delta):
    # changing c1 by delta multiplies u pointwise by e^{i delta}
    for eid in ("trans-rnls-sol2", "scal-rnls-sol5", "inver-rnls-sol4"):
        inst = catalog.default_instance(eid)
        shifted = inst.with_updates(c1=inst.constants["c1"] + delta)
        t, r = inst.domain().anchor
        assert shifted.evaluate(t, r) == pytest.approx(
            inst.evaluate(t, r) * cmath.exp(1j * delta), rel=1e-12
        )


def test_finite_on_domain_sample():
    for eid in catalog.catalog_ids():
        inst = catalog.default_instance(eid)
        for (t, r) in inst.domain().sample(25, seed=9, halo=1e-3):
            v = inst.evaluate(t, r)
            assert math.isfinite(abs(v)) and abs(v) > 0


def test_pseudo_conformal_blowup_shape():
    # the critical-power entry with c3 = -1 carries the |u| (T-t)^{n/2} = const
    # self-similar shape at fixed xi = r / (T - t)
    n = 2.0
    T = 1.0
    inst = catalog.SolutionInstance(
        "trans-rnls-sol2-crit", GnlsParams(n, 4.0 / n, 1.0), {"c1": 0.0, "c2": T, "c3": -1.0}
    )
    xi = 0.8
    vals = []
    for t in (0.1, 0.4, 0.7, 0.9, 0.97):
        r = xi * (T - t)
        vals.append(abs(inst.evaluate(t, r)) * (T - t) ** (n / 2))
    assert max(vals) - min(vals) < 1e-12


def test_constant_solution_relation():
    # |u| = (c2/k)^{1/p} for the standing-wave entry, c2 playing -omega
    inst = catalog.default_instance("trans-rnls-sol1")
    c2, k, p = inst.constants["c2"], inst.params.k, inst.params.p
    assert abs(inst.evaluate(0.37, 1.4)) == pytest.approx((c2 / k) ** (1 / p), rel=1e-14)


def test_perturbed_instances_stay_valid():
    for eid in ("trans-rnls-sol2", "scal-rnls-sol-r", "inver-rnls-sol5"):
        base = catalog.default_instance(eid)
        for inst in catalog.perturbed_instances(base, 3, seed=11):
            region = inst.domain()
            t, r = region.anchor
            assert abs(inst.evaluate(t, r)) > 0


def test_catalog_json_roundtrip():
    import json

    text = json.dumps(catalog.list_solutions())
    assert len(json.loads(text)) == 27


def test_two_hundred_point_finiteness():
    # every valid instance stays finite on a dense sample of its region
    for eid in catalog.catalog_ids():
        inst = catalog.default_instance(eid)
        pts = inst.domain().sample(200, seed=17, halo=1e-4)
        assert len(pts) == 200
        assert all(math.isfinite(abs(inst.evaluate(t, r))) for (t, r) in pts)
