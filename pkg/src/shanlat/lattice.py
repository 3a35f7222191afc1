"""Finite lattices: construction, classification, catalog, canonical forms.

Elements are indices 0..n-1. The partial order is kept as a read-only
boolean matrix `leq` with leq[i, j] == True iff i <= j, following the
common convention for small-poset code. Meet and join tables are fully
materialized at construction.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from . import gfp
from .errors import (
    BadParams,
    NoBoundedElements,
    NotALattice,
    NotAPartialOrder,
    ParseError,
    UnknownName,
)

__all__ = [
    "Lattice",
    "LatticeProfile",
    "from_covers",
    "classify",
    "catalog",
    "canonical_form",
    "poset_canonical_bytes",
    "parse_lat",
    "format_lat",
    "poset_width",
]


@dataclass(frozen=True)
class Lattice:
    """Immutable finite lattice with materialized meet/join tables."""

    n: int
    leq: np.ndarray          # bool (n, n), read-only
    covers: tuple            # transitive reduction, pairs (lower, upper)
    meet: np.ndarray         # int (n, n)
    join: np.ndarray         # int (n, n)
    names: tuple | None = None

    @property
    def bottom(self):
        return int(np.where(self.leq.all(axis=1))[0][0])

    @property
    def top(self):
        return int(np.where(self.leq.all(axis=0))[0][0])

    def lower_covers(self, x):
        return [a for (a, b) in self.covers if b == x]

    def upper_covers(self, x):
        return [b for (a, b) in self.covers if a == x]

    def atoms(self):
        return self.upper_covers(self.bottom)

    def name_of(self, x):
        return self.names[x] if self.names else str(x)

    def index_of(self, name):
        if self.names and name in self.names:
            return self.names.index(name)
        return int(name)

    def incomparable_pairs(self):
        return [
            (x, y)
            for x in range(self.n)
            for y in range(x + 1, self.n)
            if not self.leq[x, y] and not self.leq[y, x]
        ]

    def interval(self, lo, hi):
        return [z for z in range(self.n) if self.leq[lo, z] and self.leq[z, hi]]

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash((self.n, self.leq.tobytes()))

    def __repr__(self):
        return f"Lattice(n={self.n}, covers={sorted(self.covers)})"


@dataclass(frozen=True)
class LatticeProfile:
    meet_irreducibles: frozenset
    join_irreducibles: frozenset
    double_irreducibles: frozenset
    is_modular: bool
    is_distributive: bool
    is_lower_locally_distributive: bool
    is_atomistic: bool
    order_dimension: int | None = None


def _closure_from_covers(n, covers):
    leq = np.eye(n, dtype=bool)
    for (a, b) in covers:
        leq[a, b] = True
    # Warshall transitive closure.
    for k in range(n):
        leq |= np.outer(leq[:, k], leq[k, :])
    return leq


def _transitive_reduction(leq):
    n = len(leq)
    lt = leq & ~np.eye(n, dtype=bool)
    redundant = (lt @ lt.astype(np.int8)).astype(bool)
    cov = lt & ~redundant
    return tuple(sorted((int(a), int(b)) for a, b in zip(*np.where(cov))))


def _meet_join_tables(leq):
    """Meet/join tables from the order; raises NotALattice on failure."""
    n = len(leq)
    meet = np.zeros((n, n), dtype=np.int16)
    join = np.zeros((n, n), dtype=np.int16)
    for x in range(n):
        for y in range(x, n):
            lower = np.where(leq[:, x] & leq[:, y])[0]
            # greatest lower bound: the m in lower with z <= m for every z in lower
            glb = [m for m in lower if leq[lower, m].all()]
            if len(glb) != 1:
                raise NotALattice(
                    f"elements {x},{y} have no unique greatest lower bound",
                    pair=(x, y),
                )
            upper = np.where(leq[x, :] & leq[y, :])[0]
            lub = [m for m in upper if leq[m, upper].all()]
            if len(lub) != 1:
                raise NotALattice(
                    f"elements {x},{y} have no upper bound"
                    if len(upper) == 0
                    else f"elements {x},{y} have no unique least upper bound",
                    pair=(x, y),
                )
            meet[x, y] = meet[y, x] = glb[0]
            join[x, y] = join[y, x] = lub[0]
    return meet, join


def from_covers(size, covers, names=None):
    """Build a validated Lattice from a cover (or any order-generating) relation."""
    if size < 1:
        raise NoBoundedElements("a lattice needs at least one element")
    covers = {(int(a), int(b)) for (a, b) in covers}
    for (a, b) in covers:
        if not (0 <= a < size and 0 <= b < size):
            raise ParseError(f"cover ({a},{b}) out of range for size {size}")
        if a == b:
            raise NotAPartialOrder(f"self-loop at element {a}")
    leq = _closure_from_covers(size, covers)
    if (leq & leq.T & ~np.eye(size, dtype=bool)).any():
        a, b = map(int, next(zip(*np.where(leq & leq.T & ~np.eye(size, dtype=bool)))))
        raise NotAPartialOrder(f"cycle through elements {a} and {b}")
    meet, join = _meet_join_tables(leq)
    if not (leq.all(axis=0).any() and leq.all(axis=1).any()):
        raise NoBoundedElements("no unique bottom/top element")
    leq.setflags(write=False)
    meet.setflags(write=False)
    join.setflags(write=False)
    if names is not None:
        names = tuple(str(t) for t in names)
        if len(names) != size:
            raise ParseError("names length does not match size")
    return Lattice(
        n=size,
        leq=leq,
        covers=_transitive_reduction(leq),
        meet=meet,
        join=join,
        names=names,
    )


def from_leq(leq, names=None):
    """Build a Lattice from a full order matrix (assumed a partial order)."""
    n = len(leq)
    return from_covers(n, _transitive_reduction(np.asarray(leq, dtype=bool)), names)


# ---------------------------------------------------------------------------
# classification


def _is_modular(L):
    for b in range(L.n):
        below = np.where(L.leq[:, b])[0]
        for a in below:
            for x in range(L.n):
                if L.join[a, L.meet[x, b]] != L.meet[L.join[a, x], b]:
                    return False
    return True


def _is_distributive(L):
    for x in range(L.n):
        for y in range(L.n):
            for z in range(L.n):
                if L.meet[x, L.join[y, z]] != L.join[L.meet[x, y], L.meet[x, z]]:
                    return False
    return True


def _is_lower_locally_distributive(L):
    # Interval from the meet of x's lower covers up to x must be Boolean:
    # the 2^k meets of subsets of the k lower covers must be distinct and
    # exhaust the interval.
    for x in range(L.n):
        lows = L.lower_covers(x)
        k = len(lows)
        seen = set()
        m_all = x
        for c in lows:
            m_all = L.meet[m_all, c]
        for subset in range(1 << k):
            m = x
            for i in range(k):
                if subset >> i & 1:
                    m = L.meet[m, lows[i]]
            seen.add(int(m))
        if len(seen) != 1 << k or set(L.interval(m_all, x)) != seen:
            return False
    return True


def _is_atomistic(L):
    bot = L.bottom
    atoms = L.atoms()
    for x in range(L.n):
        j = bot
        for a in atoms:
            if L.leq[a, x]:
                j = L.join[j, a]
        if j != x:
            return False
    return True


def poset_width(leq):
    """Width (max antichain) of a poset via minimum chain cover (Dilworth).

    Uses bipartite matching on the strict order: width = n - max matching.
    """
    n = len(leq)
    lt = leq & ~np.eye(n, dtype=bool)
    match_right = [-1] * n

    def augment(u, visited):
        for v in range(n):
            if lt[u, v] and not visited[v]:
                visited[v] = True
                if match_right[v] == -1 or augment(match_right[v], visited):
                    match_right[v] = u
                    return True
        return False

    matching = 0
    for u in range(n):
        if augment(u, [False] * n):
            matching += 1
    return n - matching


def classify(L):
    """Structural profile of a lattice (irreducibles, laws, order dimension)."""
    up_count = np.zeros(L.n, dtype=int)
    low_count = np.zeros(L.n, dtype=int)
    for (a, b) in L.covers:
        up_count[a] += 1
        low_count[b] += 1
    meet_irr = frozenset(int(x) for x in np.where(up_count == 1)[0])
    join_irr = frozenset(int(x) for x in np.where(low_count == 1)[0])
    distributive = _is_distributive(L)
    dimension = None
    if distributive:
        ji = sorted(join_irr)
        sub = L.leq[np.ix_(ji, ji)]
        dimension = poset_width(sub) if ji else 1
    return LatticeProfile(
        meet_irreducibles=meet_irr,
        join_irreducibles=join_irr,
        double_irreducibles=meet_irr & join_irr,
        is_modular=distributive or _is_modular(L),
        is_distributive=distributive,
        is_lower_locally_distributive=_is_lower_locally_distributive(L),
        is_atomistic=_is_atomistic(L),
        order_dimension=dimension,
    )


# ---------------------------------------------------------------------------
# canonical form


def _refine_colors(leq, covers_down, covers_up):
    n = len(leq)
    colors = [
        (int(leq[:, x].sum()), int(leq[x, :].sum()), len(covers_down[x]), len(covers_up[x]))
        for x in range(n)
    ]
    while True:
        keys = [
            (
                colors[x],
                tuple(sorted(colors[y] for y in covers_down[x])),
                tuple(sorted(colors[y] for y in covers_up[x])),
            )
            for x in range(n)
        ]
        mapping = {k: i for i, k in enumerate(sorted(set(keys)))}
        new = [(mapping[k],) for k in keys]
        if len(set(new)) == len(set(colors)):
            return [c[0] for c in new]
        colors = new


def _is_transposition_automorphism(leq, u, v):
    n = len(leq)
    if leq[u, v] != leq[v, u]:
        return False
    for w in range(n):
        if w == u or w == v:
            continue
        if leq[u, w] != leq[v, w] or leq[w, u] != leq[w, v]:
            return False
    return True


def poset_canonical_bytes(leq):
    """Canonical byte encoding of a poset: equal iff isomorphic.

    Lex-min L-shaped bit encoding over color-respecting permutations, with
    refinement coloring first and transposition-automorphism pruning in the
    backtracking search.
    """
    leq = np.asarray(leq, dtype=bool)
    n = len(leq)
    covers_lt = leq & ~np.eye(n, dtype=bool)
    red = covers_lt & ~(covers_lt @ covers_lt.astype(np.int8)).astype(bool)
    covers_down = [list(np.where(red[:, x])[0]) for x in range(n)]
    covers_up = [list(np.where(red[x, :])[0]) for x in range(n)]
    colors = _refine_colors(leq, covers_down, covers_up)
    # positions are assigned class by class, in ascending color order
    order_classes = sorted(set(colors))
    class_of_position = []
    for c in order_classes:
        class_of_position += [c] * colors.count(c)

    best = [None]

    def search(perm, placed, seq):
        t = len(perm)
        if best[0] is not None and seq > best[0][: len(seq)]:
            return
        if t == n:
            if best[0] is None or seq < best[0]:
                best[0] = seq
            return
        cls = class_of_position[t]
        candidates = [x for x in range(n) if colors[x] == cls and x not in placed]
        scored = []
        for x in candidates:
            bits = tuple(int(b) for y in perm for b in (leq[x, y], leq[y, x]))
            scored.append((bits, x))
        min_bits = min(b for b, _ in scored)
        chosen = [x for b, x in scored if b == min_bits]
        # symmetric candidates lead to identical canonical completions
        pruned = []
        for x in chosen:
            if not any(_is_transposition_automorphism(leq, x, y) for y in pruned):
                pruned.append(x)
        for x in pruned:
            perm.append(x)
            placed.add(x)
            search(perm, placed, seq + min_bits)
            placed.discard(x)
            perm.pop()

    search([], set(), ())
    bits = best[0]
    payload = bytearray([n & 0xFF, (n >> 8) & 0xFF])
    acc = 0
    count = 0
    for b in bits:
        acc = (acc << 1) | b
        count += 1
        if count == 8:
            payload.append(acc)
            acc = count = 0
    if count:
        payload.append(acc << (8 - count))
    return bytes(payload)


def canonical_form(L):
    """Canonical byte string: equal iff lattices are isomorphic."""
    return poset_canonical_bytes(L.leq)


# ---------------------------------------------------------------------------
# catalog


def _chain(k):
    return from_covers(k, [(i, i + 1) for i in range(k - 1)])


def _boolean(n):
    size = 1 << n
    covers = [
        (s, s | (1 << i))
        for s in range(size)
        for i in range(n)
        if not s >> i & 1
    ]
    names = ["".join(chr(ord("a") + i) for i in range(n) if s >> i & 1) or "0"
             for s in range(size)]
    return from_covers(size, covers, names)


def _m_n(k):
    if k < 3:
        raise BadParams("m_n needs at least 3 elements")
    mids = k - 2
    covers = [(0, i) for i in range(1, mids + 1)] + [(i, k - 1) for i in range(1, mids + 1)]
    names = ["bot"] + [f"x{i}" for i in range(1, mids + 1)] + ["top"]
    return from_covers(k, covers, names)


def _n5():
    covers = {(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)}
    names = ["bot", "x", "y", "z", "top"]
    return from_covers(5, covers, names)


def _s7():
    # closed sets of {a,b,c} under {a,b} -> c: all subsets except {a,b}
    names = ["0", "a", "b", "c", "ac", "bc", "abc"]
    covers = [
        (0, 1), (0, 2), (0, 3),
        (1, 4), (3, 4), (3, 5), (2, 5),
        (4, 6), (5, 6),
    ]
    return from_covers(7, covers, names)


def _grid(m, n):
    if m < 1 or n < 1:
        raise BadParams("grid dimensions must be positive")
    size = m * n
    idx = lambda i, j: i * n + j
    covers = []
    for i in range(m):
        for j in range(n):
            if i + 1 < m:
                covers.append((idx(i, j), idx(i + 1, j)))
            if j + 1 < n:
                covers.append((idx(i, j), idx(i, j + 1)))
    names = [f"{i}{j}" for i in range(m) for j in range(n)]
    return from_covers(size, covers, names)


def _lld11():
    names = ["bot", "q1", "q2", "q3", "q4", "p1", "p2", "p3", "p4", "p5", "top"]
    up = {"q1": ["p1", "p2"], "q2": ["p1", "p3", "p4"],
          "q3": ["p2", "p3", "p5"], "q4": ["p4", "p5"]}
    covers = [(0, names.index(q)) for q in ("q1", "q2", "q3", "q4")]
    for q, ps in up.items():
        covers += [(names.index(q), names.index(p)) for p in ps]
    covers += [(names.index(p), 10) for p in ("p1", "p2", "p3", "p4", "p5")]
    return from_covers(11, covers, names)


@lru_cache(maxsize=None)
def _free_distributive_3():
    # nonconstant monotone boolean functions on 3 inputs, ordered pointwise
    points = list(product((0, 1), repeat=3))
    fns = []
    for bits in product((0, 1), repeat=8):
        f = dict(zip(points, bits))
        if len(set(bits)) == 1:
            continue
        if all(
            f[a] <= f[b]
            for a in points
            for b in points
            if all(x <= y for x, y in zip(a, b))
        ):
            fns.append(tuple(bits))
    fns.sort(key=lambda b: (sum(b), b))
    size = len(fns)
    leq = np.zeros((size, size), dtype=bool)
    for i, fi in enumerate(fns):
        for j, fj in enumerate(fns):
            leq[i, j] = all(x <= y for x, y in zip(fi, fj))
    return from_leq(leq)


@lru_cache(maxsize=None)
def _free_modular_3():
    # Subdirect realization inside the subspace lattice of GF(2)^8: six
    # one-dimensional components carry the nonconstant 0/1 patterns of the
    # three generators, a seventh GF(2)^2 component carries them as three
    # distinct lines. The closure under sum and intersection is 3-generated
    # and modular with 28 elements, so it is the free one (Dedekind's count).
    p = 2
    k = 8

    def bvec(i):
        v = [0] * k
        v[i] = 1
        return tuple(v)

    patterns = [(0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1), (1, 1, 0)]
    gens_rows = [[], [], []]
    for i, pattern in enumerate(patterns):
        for g, bit in enumerate(pattern):
            if bit:
                gens_rows[g].append(bvec(i))
    gens_rows[0].append(bvec(6))
    gens_rows[1].append(bvec(7))
    diag = [0] * k
    diag[6] = diag[7] = 1
    gens_rows[2].append(tuple(diag))
    gens = [gfp.rref(rows, p) for rows in gens_rows]
    elems = set(gens)
    changed = True
    while changed:
        changed = False
        cur = list(elems)
        for i in range(len(cur)):
            for j in range(i + 1, len(cur)):
                for c in (
                    gfp.sum_space(cur[i], cur[j], p),
                    gfp.intersect(cur[i], cur[j], p),
                ):
                    if c not in elems:
                        elems.add(c)
                        changed = True
    elems = sorted(elems, key=lambda s: (len(s), s))
    size = len(elems)
    assert size == 28, f"free modular generation produced {size} elements"
    leq = np.zeros((size, size), dtype=bool)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            leq[i, j] = gfp.contains_space(b, a, p)
    L = from_leq(leq)
    assert _is_modular(L)
    return L


def catalog(name, *params):
    """Named lattices: chain_k, boolean_n, m_n, n5, s7, grid_mxn, lld11,
    free_distributive_3, free_modular_3."""
    try:
        if name == "chain_k":
            (k,) = params
            if k < 1:
                raise BadParams("chain_k needs k >= 1")
            return _chain(int(k))
        if name == "boolean_n":
            (k,) = params
            if not 0 <= k <= 10:
                raise BadParams("boolean_n needs 0 <= n <= 10")
            return _boolean(int(k))
        if name == "m_n":
            (k,) = params
            return _m_n(int(k))
        if name == "n5":
            return _n5()
        if name == "s7":
            return _s7()
        if name == "grid_mxn":
            m, n = params
            return _grid(int(m), int(n))
        if name == "lld11":
            return _lld11()
        if name == "free_distributive_3":
            return _free_distributive_3()
        if name == "free_modular_3":
            return _free_modular_3()
    except ValueError as exc:
        raise BadParams(f"bad parameters {params} for {name}") from exc
    raise UnknownName(f"unknown catalog name: {name}")


def catalog_instances(max_size=12):
    """The (name, params, lattice) triples used by cross-cutting test sweeps."""
    specs = [("chain_k", (k,)) for k in range(2, 7)]
    specs += [("boolean_n", (k,)) for k in (2, 3, 4)]
    specs += [("m_n", (k,)) for k in range(3, 13)]
    specs += [("n5", ()), ("s7", ()), ("lld11", ())]
    specs += [("grid_mxn", (m, n)) for m, n in
              [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4), (2, 5), (2, 6)]]
    specs += [("free_distributive_3", ()), ("free_modular_3", ())]
    out = []
    for name, params in specs:
        L = catalog(name, *params)
        if L.n <= max_size:
            out.append((name, params, L))
    return out


# ---------------------------------------------------------------------------
# .lat text format


def parse_lat(text):
    """Parse the `.lat` format: `n <size>`, optional `names ...`, `c <i> <j>` lines.

    Returns (lattice, dependency_pairs) where dependency_pairs collects any
    `d <i> <j>` lines for the closure module.
    """
    size = None
    names = None
    covers = []
    deps = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            size = int(parts[1])
        elif parts[0] == "names":
            names = parts[1:]
        elif parts[0] == "c":
            covers.append((int(parts[1]), int(parts[2])))
        elif parts[0] == "d":
            deps.append((int(parts[1]), int(parts[2])))
        else:
            raise ParseError(f"unrecognized line: {raw!r}")
    if size is None:
        raise ParseError("missing size line `n <size>`")
    return from_covers(size, covers, names), deps


def format_lat(L, deps=()):
    lines = [f"n {L.n}"]
    if L.names:
        lines.append("names " + " ".join(L.names))
    lines += [f"c {a} {b}" for (a, b) in sorted(L.covers)]
    lines += [f"d {a} {b}" for (a, b) in sorted(deps)]
    return "\n".join(lines) + "\n"
