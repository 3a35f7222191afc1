import json
from fractions import Fraction

import pytest

from shanlat.cone import build_constraints, extreme_rays
from shanlat.errors import ArityMismatch, BudgetExceeded
from shanlat.inequalities import (IndependenceRelation, audit_axioms,
                                  conditional_mi, format_gap_reports,
                                  induced_relation, inequality_gap,
                                  scan_quadruples)
from shanlat.lattice import catalog


def _fig2():
    L = catalog("lld11")
    vals = {"bot": Fraction(0), "top": Fraction(1)}
    for q in ("q1", "q2", "q3", "q4"):
        vals[q] = Fraction(1, 2)
    for p in ("p1", "p2", "p3", "p4", "p5"):
        vals[p] = Fraction(3, 4)
    return L, tuple(vals[L.name_of(i)] for i in range(L.n))


def test_conditional_mi_fig2():
    L, h = _fig2()
    q2, q3, q1 = L.index_of("q2"), L.index_of("q3"), L.index_of("q1")
    assert conditional_mi(L, h, q2, q3, L.bottom) == Fraction(1, 4)
    assert conditional_mi(L, h, q2, q3, q1) == 0


def test_conditional_mi_self():
    L, h = _fig2()
    for x in range(L.n):
        for y in range(L.n):
            assert conditional_mi(L, h, x, y, x) == 0


def test_conditional_mi_nonnegative_on_rays():
    for name in ("s7", "n5", "m_n"):
        L = catalog(name, 6) if name == "m_n" else catalog(name)
        rays = extreme_rays(build_constraints(L, "reduced"))
        for r in rays.rays:
            for x in range(L.n):
                for y in range(L.n):
                    for z in range(L.n):
                        assert conditional_mi(L, r, x, y, z) >= 0


def test_zhang_yeung_fig2():
    L, h = _fig2()
    a = tuple(L.index_of(s) for s in ("q1", "q4", "q2", "q3"))
    report = inequality_gap(L, h, "zhang_yeung", a)
    assert report.gap == Fraction(-1, 4)
    assert report.violated


def test_ingleton_fig2():
    L, h = _fig2()
    a = (L.index_of("q2"), L.index_of("q3"), L.bottom,
         L.index_of("q1"), L.index_of("q4"))
    report = inequality_gap(L, h, "ingleton", a)
    assert report.gap == Fraction(-1, 4)
    assert report.violated


def test_degenerate_assignment_zero_gap():
    L, h = _fig2()
    report = inequality_gap(L, h, "zhang_yeung", (0, 0, 0, 0))
    assert report.gap == 0 and not report.violated


def test_arity_mismatch():
    L, h = _fig2()
    with pytest.raises(ArityMismatch):
        inequality_gap(L, h, "zhang_yeung", (0, 0, 0))
    with pytest.raises(ArityMismatch):
        inequality_gap(L, h, "nope", (0,))


def test_scan_lld11_finds_witness():
    L = catalog("lld11")
    ray = (0, 2, 2, 2, 2, 3, 3, 3, 3, 3, 4)
    reports = scan_quadruples(L, ray, "zhang_yeung")
    assert reports
    target = tuple(L.index_of(s) for s in ("q1", "q4", "q2", "q3"))
    assert target in [r.assignment for r in reports]


def test_scan_m7_half_point_clean():
    L = catalog("m_n", 7)
    h = tuple(0 if x == L.bottom else 2 if x == L.top else 1
              for x in range(L.n))
    assert scan_quadruples(L, h, "zhang_yeung") == []


def test_scan_b2_ingleton_clean():
    L = catalog("boolean_n", 2)
    rank = tuple(sum(1 for a in L.atoms() if L.leq[a, x]) for x in range(L.n))
    assert scan_quadruples(L, rank, "ingleton") == []


def test_scan_budget():
    L = catalog("lld11")
    ray = (0, 2, 2, 2, 2, 3, 3, 3, 3, 3, 4)
    with pytest.raises(BudgetExceeded):
        scan_quadruples(L, ray, "ingleton", budget=100)


def test_gap_sign_scaling_invariance():
    L = catalog("lld11")
    ray = (0, 2, 2, 2, 2, 3, 3, 3, 3, 3, 4)
    a = tuple(L.index_of(s) for s in ("q1", "q4", "q2", "q3"))
    for scale in (1, 3, 12):
        scaled = tuple(scale * v for v in ray)
        assert inequality_gap(L, scaled, "zhang_yeung", a).violated


def test_induced_relation_m7():
    L = catalog("m_n", 7)
    h = tuple(0 if x == L.bottom else 2 if x == L.top else 1
              for x in range(L.n))
    R = induced_relation(L, h)
    middles = sorted(set(range(L.n)) - {L.bottom, L.top})
    for a in middles:
        for b in middles:
            if a != b:
                assert R.holds(a, b, L.bottom)
    for x in range(L.n):
        for y in range(L.n):
            assert R.holds(x, y, x)


def test_induced_relation_zero_function():
    L = catalog("n5")
    R = induced_relation(L, (0,) * L.n)
    assert len(R.triples) == L.n ** 3


def test_audit_semi_graphoid_on_rays():
    for name in ("n5", "s7"):
        L = catalog(name)
        rays = extreme_rays(build_constraints(L, "reduced"))
        for r in rays.rays:
            report = audit_axioms(induced_relation(L, r))
            assert report.semi_graphoid
            assert all(report.passed.values()), report.witnesses


def test_audit_symmetry_failure_witness():
    L = catalog("chain_k", 4)
    R = IndependenceRelation(L, frozenset({(1, 2, 3)}))
    report = audit_axioms(R)
    assert not report.passed["symmetry"]
    assert report.witnesses["symmetry"] == (1, 2, 3)


def test_markov_chain_strong_union():
    L = catalog("chain_k", 4)
    report = audit_axioms(induced_relation(L, (0, 1, 2, 3)))
    assert report.strong_union
    assert report.strong_contraction


def test_gap_report_json():
    L, h = _fig2()
    a = tuple(L.index_of(s) for s in ("q1", "q4", "q2", "q3"))
    report = inequality_gap(L, h, "zhang_yeung", a)
    data = json.loads(report.to_json())
    assert data["gap"] == "-1/4"
    assert data["violated"] is True
    text = format_gap_reports([report, report])
    assert len(text.splitlines()) == 2
