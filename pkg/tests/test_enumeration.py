import pytest

from shanlat.enumeration import (brute_force_lattices, classify_all,
                                 enumerate_lattices)
from shanlat.errors import SizeTooLarge
from shanlat.lattice import canonical_form, classify


def _counts(stream):
    counts = {}
    for L in stream:
        counts[L.n] = counts.get(L.n, 0) + 1
    return counts


def test_single_element():
    assert _counts(enumerate_lattices(1)) == {1: 1}


def test_counts_to_seven():
    assert _counts(enumerate_lattices(7)) == \
        {1: 1, 2: 1, 3: 1, 4: 2, 5: 5, 6: 15, 7: 53}


def test_oracle_agreement_to_six():
    fast = {}
    for L in enumerate_lattices(6):
        fast.setdefault(L.n, set()).add(canonical_form(L))
    slow = {}
    for L in brute_force_lattices(6):
        slow.setdefault(L.n, set()).add(canonical_form(L))
    assert fast == slow


def test_no_duplicate_canonical_forms():
    seen = set()
    for L in enumerate_lattices(7):
        key = canonical_form(L)
        assert key not in seen
        seen.add(key)


def test_yielded_lattices_valid():
    for L in enumerate_lattices(6):
        for x in range(L.n):
            for y in range(L.n):
                assert L.meet[x, L.join[x, y]] == x


def test_filters_are_subsets():
    all_keys = {canonical_form(L) for L in enumerate_lattices(6)}
    mod = {canonical_form(L) for L in enumerate_lattices(6, "modular")}
    dist = {canonical_form(L) for L in enumerate_lattices(6, "distributive")}
    assert dist <= mod <= all_keys
    for L in enumerate_lattices(6, "modular"):
        assert classify(L).is_modular


def test_size_guard():
    with pytest.raises(SizeTooLarge):
        list(enumerate_lattices(12))
    with pytest.raises(SizeTooLarge):
        list(brute_force_lattices(7))


def test_classify_all_small():
    report = classify_all(3)
    assert report["verdicts"] == \
        {"shannon": 3, "non_shannon": 0, "undecided": 0, "error": 0}
    assert report["findings"] == []


def test_classify_all_canonical_order_stable():
    a = [canonical_form(L) for L in enumerate_lattices(6)]
    b = [canonical_form(L) for L in enumerate_lattices(6)]
    assert a == b
