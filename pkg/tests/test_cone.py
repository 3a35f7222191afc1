from fractions import Fraction

import pytest

from shanlat.cone import (brute_force_rays, build_constraints, extreme_rays,
                          is_polymatroid, polymatroid_check)
from shanlat.errors import DimensionTooLarge
from shanlat.lattice import catalog, catalog_instances


def _row_counts(system):
    mono = sum(1 for _, tag in system.inequalities if tag[0] == "monotone")
    sub = sum(1 for _, tag in system.inequalities if tag[0] == "submodular")
    return len(system.equalities), mono, sub


def test_chain2_full_counts():
    eq, mono, sub = _row_counts(build_constraints(catalog("chain_k", 2), "full"))
    assert (eq, mono, sub) == (1, 1, 0)


def test_m7_reduced_counts():
    eq, mono, sub = _row_counts(build_constraints(catalog("m_n", 7), "reduced"))
    assert (eq, mono, sub) == (1, 5, 10)


def test_b3_full_counts():
    eq, mono, sub = _row_counts(build_constraints(catalog("boolean_n", 3), "full"))
    assert (eq, mono, sub) == (1, 12, 9)


def test_gcd_one_rows():
    from math import gcd
    for mode in ("full", "reduced"):
        system = build_constraints(catalog("s7"), mode)
        for row, _ in list(system.equalities) + list(system.inequalities):
            assert gcd(*[abs(v) for v in row] or [1]) in (0, 1) or \
                   gcd(*(abs(v) for v in row if v)) == 1


def test_chain2_single_ray():
    rays = extreme_rays(build_constraints(catalog("chain_k", 2), "full"))
    assert rays.rays == ((0, 1),)


def test_m4_normalized_extreme_points():
    L = catalog("m_n", 4)
    rays = extreme_rays(build_constraints(L, "full"))
    middles = sorted(set(range(L.n)) - {L.bottom, L.top})
    points = set()
    for r in rays.rays:
        top = Fraction(r[L.top])
        points.add(tuple(Fraction(r[m]) / top for m in middles))
    assert points == {(0, 1), (1, 0), (1, 1)}


def test_lld11_contains_target_ray():
    L = catalog("lld11")
    rays = extreme_rays(build_constraints(L, "reduced"))
    assert (0, 2, 2, 2, 2, 3, 3, 3, 3, 3, 4) in rays.rays


def test_is_polymatroid_examples():
    L = catalog("lld11")
    target = (0, 2, 2, 2, 2, 3, 3, 3, 3, 3, 4)
    assert is_polymatroid(L, target)
    c3 = catalog("chain_k", 3)
    check = polymatroid_check(c3, (0, 1, 0))
    assert not check.ok
    assert check.witness[0] == "monotone"
    b4 = catalog("boolean_n", 4)
    rank = tuple(sum(1 for a in b4.atoms() if b4.leq[a, x]) for x in range(b4.n))
    assert is_polymatroid(b4, rank)


def test_brute_force_matches_dd():
    for name, params in (("m_n", (5,)), ("n5", ()), ("s7", ()),
                         ("boolean_n", (3,))):
        system = build_constraints(catalog(name, *params), "reduced")
        assert brute_force_rays(system).rays == extreme_rays(system).rays


def test_brute_force_guard():
    system = build_constraints(catalog("boolean_n", 4), "reduced")
    with pytest.raises(DimensionTooLarge):
        brute_force_rays(system)


def test_all_rays_polymatroid():
    for _, _, L in catalog_instances(12):
        rays = extreme_rays(build_constraints(L, "reduced"))
        for r in rays.rays:
            assert is_polymatroid(L, r)


def test_scaling_invariance():
    L = catalog("s7")
    rays = extreme_rays(build_constraints(L, "reduced"))
    for r in rays.rays:
        assert is_polymatroid(L, tuple(7 * v for v in r))


def test_ray_report_format():
    L = catalog("n5")
    rays = extreme_rays(build_constraints(L, "reduced"))
    lines = rays.report().splitlines()
    assert lines[0].startswith("# lattice ")
    assert "reduced" in lines[0]
    assert len(lines) == 1 + len(rays.rays)


def test_determinism():
    L = catalog("boolean_n", 3)
    a = extreme_rays(build_constraints(L, "full"))
    b = extreme_rays(build_constraints(L, "full"))
    assert a.rays == b.rays
