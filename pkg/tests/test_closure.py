import numpy as np
import pytest

from shanlat.closure import (DependencyRelation, armstrong_close,
                             closed_lattice, closed_lattice_of_polymatroid,
                             dependency_of_polymatroid, meet_closed_subsets,
                             restrict_to_meet_closed, tuple_realization)
from shanlat.cone import build_constraints, extreme_rays
from shanlat.errors import NotClosed, NotPolymatroid
from shanlat.lattice import catalog


def test_armstrong_close_contains_order():
    L = catalog("boolean_n", 3)
    closed = armstrong_close(DependencyRelation(L, frozenset()))
    for x in range(L.n):
        for y in range(L.n):
            if L.leq[y, x]:
                assert closed.holds(x, y)


def test_armstrong_close_augmentation():
    L = catalog("boolean_n", 3)
    a, b, c = L.atoms()
    closed = armstrong_close(DependencyRelation(L, frozenset({(a, b)})))
    # a v c -> b v c by augmentation
    assert closed.holds(L.join[a, c], L.join[b, c])


def test_not_closed_witness():
    L = catalog("boolean_n", 2)
    a, b = L.atoms()
    raw = DependencyRelation(L, frozenset({(a, b)}))
    with pytest.raises(NotClosed) as exc:
        closed_lattice(raw)
    assert exc.value.axiom in ("reflexivity", "transitivity", "augmentation")


def test_closed_lattice_of_s7_relation():
    # s7 is the closure system of {a,b,c} under ab -> c; rebuilding that
    # relation inside boolean_3 must recover a 7-element closed lattice
    b3 = catalog("boolean_n", 3)
    ab = b3.index_of("ab")
    abc = b3.index_of("abc")
    closed = armstrong_close(DependencyRelation(b3, frozenset({(ab, abc)})))
    _, system = closed_lattice(closed)
    assert system.induced.n == 7


def test_closure_operator_properties():
    L = catalog("s7")
    rays = extreme_rays(build_constraints(L, "reduced"))
    for r in rays.rays:
        op, system = closed_lattice_of_polymatroid(L, r)
        for x in range(L.n):
            assert L.leq[x, op(x)]                 # extensive
            assert op(op(x)) == op(x)              # idempotent
            for y in range(L.n):
                if L.leq[x, y]:
                    assert L.leq[op(x), op(y)]     # isotone


def test_closed_lattice_restriction_stays_polymatroid():
    # restriction to the closed elements of the ray's own relation
    for name in ("s7", "n5", "lld11"):
        L = catalog(name)
        rays = extreme_rays(build_constraints(L, "reduced"))
        for r in rays.rays:
            closed_lattice_of_polymatroid(L, r)  # asserts internally


def test_not_polymatroid_rejected():
    L = catalog("chain_k", 3)
    with pytest.raises(NotPolymatroid):
        closed_lattice_of_polymatroid(L, (0, 1, 0))


def test_dependency_of_polymatroid_is_superset_of_order():
    L = catalog("m_n", 5)
    r = (0, 1, 1, 1, 2)
    rel = dependency_of_polymatroid(L, r)
    for x in range(L.n):
        for y in range(L.n):
            if L.leq[y, x]:
                assert rel.holds(x, y)


def test_tuple_realization_reproduces_order():
    for name in ("n5", "s7", "boolean_n"):
        L = catalog(name, 3) if name == "boolean_n" else catalog(name)
        table, rel = tuple_realization(L)
        assert table.shape == (L.n, L.n)
        for a in range(L.n):
            for b in range(L.n):
                assert rel.holds(a, b) == bool(L.leq[b, a])


def test_meet_closed_subsets_contains_whole_and_top():
    L = catalog("n5")
    subs = meet_closed_subsets(L)
    assert tuple(range(L.n)) in subs
    assert (L.top,) in subs
    for s in subs:
        for x in s:
            for y in s:
                assert int(L.meet[x, y]) in s


def test_restrict_to_meet_closed_builds_lattice():
    L = catalog("boolean_n", 3)
    a, b = L.atoms()[:2]
    sub = (L.bottom, a, b, L.top)
    M = restrict_to_meet_closed(L, sub)
    assert M.n == 4
    assert M.join[1, 2] == 3
