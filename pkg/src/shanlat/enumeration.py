"""Enumeration of finite lattices up to isomorphism, with structural filters
and batch Shannon classification.

A lattice minus its bottom is a join-semilattice with top, and every finite
join-semilattice arises by repeatedly adding a minimal element; the search
grows semilattices one minimal element at a time, deduplicating by canonical
form, and re-attaches the bottom at the end.
"""

from functools import lru_cache
import json

import numpy as np

from .errors import BudgetExceeded, SizeTooLarge
from .lattice import (Lattice, canonical_form, classify, from_leq,
                      poset_canonical_bytes)
from .realize import CertBudget, check_shannon

__all__ = [
    "enumerate_lattices",
    "brute_force_lattices",
    "classify_all",
    "FILTERS",
]

MAX_SIZE = 11

FILTERS = ("none", "modular", "distributive", "lower_locally_distributive")


def _semilattices(m):
    """Join-semilattices with a top on m elements, as leq matrices (one per
    isomorphism class). Element order is a linear extension."""
    if m == 0:
        return [np.zeros((0, 0), dtype=bool)]
    out = []
    seen = set()
    for small in _semilattices_cached(m - 1):
        for leq in _extensions(small):
            key = poset_canonical_bytes(leq)
            if key not in seen:
                seen.add(key)
                out.append(leq)
    return out


@lru_cache(maxsize=None)
def _semilattices_cached(m):
    return _semilattices(m)


def _extensions(small):
    """All ways to add a new minimal element below an up-closed subset while
    keeping binary joins defined."""
    m = small.shape[0]
    if m == 0:
        yield np.ones((1, 1), dtype=bool)
        return
    ups = [np.where(small[y])[0] for y in range(m)]
    for mask in range(1 << m):
        members = [x for x in range(m) if mask >> x & 1]
        in_u = np.zeros(m, dtype=bool)
        in_u[members] = True
        # up-closed
        if any(not in_u[b] for a in members for b in ups[a]):
            continue
        # the new element must join with every old one: U cap up(y) needs a
        # unique minimal element (U itself included via y ranging over all)
        if not members:
            continue  # nothing above the new element: no join with old ones
        ok = True
        for y in range(m):
            if in_u[y]:
                continue  # y is above the new element, join is y
            cand = [x for x in ups[y] if in_u[x]]
            mins = [x for x in cand
                    if not any(small[z, x] and z != x for z in cand)]
            if len(mins) != 1:
                ok = False
                break
        if not ok:
            continue
        leq = np.zeros((m + 1, m + 1), dtype=bool)
        leq[0, 0] = True
        leq[1:, 1:] = small
        leq[0, 1:] = in_u
        yield leq


def _with_bottom(leq):
    m = leq.shape[0]
    full = np.zeros((m + 1, m + 1), dtype=bool)
    full[0, :] = True
    full[1:, 1:] = leq
    np.fill_diagonal(full, True)
    return from_leq(full)


def _passes(L, filter_name):
    if filter_name == "none":
        return True
    profile = classify(L)
    if filter_name == "modular":
        return profile.is_modular
    if filter_name == "distributive":
        return profile.is_distributive
    if filter_name == "lower_locally_distributive":
        return profile.is_lower_locally_distributive
    raise SizeTooLarge(f"unknown filter {filter_name!r}")


def enumerate_lattices(max_size, filter="none"):
    """One representative per isomorphism class of lattices with at most
    max_size elements, in canonical-form order within each size."""
    if max_size > MAX_SIZE:
        raise SizeTooLarge(f"max_size {max_size} exceeds guard {MAX_SIZE}")
    if filter not in FILTERS:
        raise SizeTooLarge(f"filter must be one of {FILTERS}")
    for n in range(1, max_size + 1):
        batch = []
        if n == 1:
            batch.append(from_leq(np.ones((1, 1), dtype=bool)))
        else:
            for leq in _semilattices_cached(n - 1):
                batch.append(_with_bottom(leq))
        batch.sort(key=canonical_form)
        for L in batch:
            if _passes(L, filter):
                yield L


def brute_force_lattices(max_size):
    """Independent oracle: all lattices up to isomorphism from every
    transitively closed upper-triangular order relation. Exponential; meant
    for max_size <= 6."""
    if max_size > 6:
        raise SizeTooLarge("oracle is exponential; use max_size <= 6")
    for n in range(1, max_size + 1):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        seen = set()
        batch = []
        for mask in range(1 << len(pairs)):
            leq = np.eye(n, dtype=bool)
            for b, (i, j) in enumerate(pairs):
                if mask >> b & 1:
                    leq[i, j] = True
            closed = leq.copy()
            for k in range(n):
                closed |= np.outer(closed[:, k], closed[k, :])
            if (closed != leq).any():
                continue
            L = _try_lattice(leq)
            if L is None:
                continue
            key = canonical_form(L)
            if key not in seen:
                seen.add(key)
                batch.append(L)
        batch.sort(key=canonical_form)
        yield from batch


def _try_lattice(leq):
    from .errors import ShanlatError
    try:
        return from_leq(leq)
    except ShanlatError:
        return None


def classify_all(max_size, filter="none", budget=CertBudget()):
    """check_shannon over every enumerated lattice; aggregates verdicts."""
    per_size = {}
    verdicts = {"shannon": 0, "non_shannon": 0, "undecided": 0, "error": 0}
    findings = []
    for L in enumerate_lattices(max_size, filter):
        per_size[L.n] = per_size.get(L.n, 0) + 1
        try:
            v = check_shannon(L, budget)
        except BudgetExceeded as e:
            verdicts["error"] += 1
            findings.append({"size": L.n,
                            "canonical": canonical_form(L).hex(),
                             "status": "budget_exceeded", "detail": str(e)})
            continue
        verdicts[v.status] += 1
        if v.status != "shannon":
            entry = {"size": L.n, "canonical": canonical_form(L).hex(),
                     "status": v.status}
            if v.witness is not None:
                ray, report = v.witness
                entry["witness_ray"] = list(ray)
                entry["witness"] = json.loads(report.to_json())
            else:
                entry["uncertified"] = [
                    list(r) for r, c in zip(v.rays, v.certificates)
                    if not c.entropic]
            findings.append(entry)
    return {"max_size": max_size, "filter": filter,
            "counts_by_size": per_size, "verdicts": verdicts,
            "findings": findings}
