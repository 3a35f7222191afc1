"""Functional-dependence relations on lattices, closure operators, and the
tuple-database realization.

A dependency x -> y is stored as an ordered pair of element indices. The
closure machinery follows the classic inference-rule route: saturate under
transitivity, reflexivity and augmentation, read off cl(x) as the join of
everything x determines, and build the lattice of closed elements.
"""

from dataclasses import dataclass

import numpy as np

from .cone import polymatroid_check
from .errors import NotClosed, NotPolymatroid
from .lattice import Lattice, from_covers

__all__ = [
    "DependencyRelation",
    "ClosureOperator",
    "ClosureSystem",
    "armstrong_close",
    "closed_lattice",
    "closed_lattice_of_polymatroid",
    "tuple_realization",
    "meet_closed_subsets",
    "restrict_to_meet_closed",
]


@dataclass(frozen=True)
class DependencyRelation:
    lattice: Lattice
    pairs: frozenset  # ordered (x, y) meaning x -> y

    def holds(self, x, y):
        return (x, y) in self.pairs


@dataclass(frozen=True)
class ClosureOperator:
    lattice: Lattice
    cl: tuple  # element -> element

    def __call__(self, x):
        return self.cl[x]


@dataclass(frozen=True)
class ClosureSystem:
    closed: tuple        # closed elements, ascending host indices
    projection: tuple    # host element -> index into `closed`
    induced: Lattice     # lattice on the closed elements


def _as_matrix(rel):
    n = rel.lattice.n
    m = np.zeros((n, n), dtype=bool)
    for (x, y) in rel.pairs:
        m[x, y] = True
    return m


def armstrong_close(base):
    """Least relation containing `base` closed under transitivity,
    reflexivity and augmentation."""
    L = base.lattice
    n = L.n
    m = _as_matrix(base) | L.leq.T  # reflexivity: x >= y gives x -> y
    while True:
        before = m.copy()
        # transitivity
        m |= m @ m
        # augmentation: x -> y gives x v z -> y v z
        xs, ys = np.where(m)
        for x, y in zip(xs, ys):
            m[L.join[x, :], L.join[y, :]] = True
        if (m == before).all():
            break
    pairs = frozenset((int(x), int(y)) for x, y in zip(*np.where(m)))
    return DependencyRelation(L, pairs)


def _check_armstrong(rel):
    """Returns (axiom, witness) for the first violated axiom, else None."""
    L = rel.lattice
    m = _as_matrix(rel)
    refl = L.leq.T & ~m
    if refl.any():
        x, y = next(zip(*np.where(refl)))
        return ("reflexivity", (int(x), int(y)))
    trans = (m @ m) & ~m
    if trans.any():
        x, z = next(zip(*np.where(trans)))
        return ("transitivity", (int(x), int(z)))
    xs, ys = np.where(m)
    for x, y in zip(xs, ys):
        bad = ~m[L.join[x, :], L.join[y, :]]
        if bad.any():
            z = int(np.where(bad)[0][0])
            return ("augmentation", (int(x), int(y), z))
    return None


def closed_lattice(rel):
    """Closure operator and closed-element lattice of an Armstrong-closed
    relation; x -> y holds iff cl(x) >= cl(y)."""
    violation = _check_armstrong(rel)
    if violation is not None:
        axiom, witness = violation
        raise NotClosed(f"relation violates {axiom} at {witness}",
                        axiom=axiom, witness=witness)
    L = rel.lattice
    m = _as_matrix(rel)
    cl = []
    for x in range(L.n):
        j = L.bottom
        for y in np.where(m[x])[0]:
            j = L.join[j, y]
        cl.append(int(j))
    op = ClosureOperator(L, tuple(cl))
    closed = tuple(sorted(x for x in range(L.n) if cl[x] == x))
    index = {x: i for i, x in enumerate(closed)}
    projection = tuple(index[cl[x]] for x in range(L.n))
    sub = L.leq[np.ix_(closed, closed)]
    induced = from_covers(
        len(closed),
        [(i, j) for i in range(len(closed)) for j in range(len(closed))
         if sub[i, j] and i != j],
        names=[L.name_of(x) for x in closed] if L.names else None,
    )
    return op, ClosureSystem(closed=closed, projection=projection, induced=induced)


def dependency_of_polymatroid(L, h):
    """The relation x ->  y iff h(x v y) = h(x), for a polymatroid h."""
    values = h.values if hasattr(h, "values") else tuple(h)
    pairs = frozenset(
        (x, y)
        for x in range(L.n)
        for y in range(L.n)
        if values[L.join[x, y]] == values[x]
    )
    return DependencyRelation(L, pairs)


def closed_lattice_of_polymatroid(L, h):
    """Closed-element lattice of the determination relation of a polymatroid.

    Also checks that the restriction of h to the closed elements is again a
    polymatroid function.
    """
    values = h.values if hasattr(h, "values") else tuple(h)
    check = polymatroid_check(L, values)
    if not check.ok:
        raise NotPolymatroid(f"not a polymatroid: {check.witness}",
                             witness=check.witness)
    op, system = closed_lattice(dependency_of_polymatroid(L, values))
    restricted = tuple(values[x] for x in system.closed)
    sub_check = polymatroid_check(system.induced, restricted)
    assert sub_check.ok, f"restriction must stay polymatroid: {sub_check.witness}"
    return op, system


def tuple_realization(L):
    """Binary-attribute table realizing L via principal ideals.

    One tuple and one attribute per element; attribute i of tuple c is 1 iff
    i <= c. Returns (table, relation) where the relation collects exactly the
    functional dependencies that hold in the table; it equals the order >=.
    """
    n = L.n
    table = L.leq.T.astype(np.int8)  # table[c, i] = 1 iff i <= c
    pairs = set()
    for a in range(n):
        ia = np.where(L.leq[:, a])[0]  # attributes in the ideal of a
        for b in range(n):
            ib = np.where(L.leq[:, b])[0]
            holds = True
            for t1 in range(n):
                for t2 in range(t1 + 1, n):
                    if (table[t1, ia] == table[t2, ia]).all() and \
                       not (table[t1, ib] == table[t2, ib]).all():
                        holds = False
                        break
                if not holds:
                    break
            if holds:
                pairs.add((a, b))
    rel = DependencyRelation(L, frozenset(pairs))
    expected = {(int(a), int(b)) for a, b in zip(*np.where(L.leq.T))}
    assert rel.pairs == frozenset(expected), \
        "tuple realization must reproduce the order as its dependency relation"
    return table, rel


def meet_closed_subsets(L, require_top=True):
    """All meet-closed subsets of L (containing the top), as sorted tuples."""
    n = L.n
    top = L.top
    out = []
    rest = [x for x in range(n) if x != top]
    for mask in range(1 << len(rest)):
        subset = {top} | {rest[i] for i in range(len(rest)) if mask >> i & 1}
        ok = all(int(L.meet[x, y]) in subset for x in subset for y in subset)
        if ok:
            out.append(tuple(sorted(subset)))
    if not require_top:
        pass
    return out


def restrict_to_meet_closed(L, subset, values=None):
    """Induced lattice on a meet-closed subset; join is the least element of
    the subset above the host join. Optionally restricts a value vector."""
    subset = tuple(sorted(subset))
    index = {x: i for i, x in enumerate(subset)}
    sub = L.leq[np.ix_(subset, subset)]
    induced = from_covers(
        len(subset),
        [(i, j) for i in range(len(subset)) for j in range(len(subset))
         if sub[i, j] and i != j],
    )
    if values is None:
        return induced
    return induced, tuple(values[x] for x in subset)
