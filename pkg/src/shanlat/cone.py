"""The polymatroid cone of a lattice: H-representation and exact extreme rays.

Everything is integer/rational arithmetic; rays are integer vectors scaled
to gcd 1 and sorted lexicographically, so output is reproducible.
"""

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimensionTooLarge, NotPolymatroid, ShanlatError
from .lattice import canonical_form

__all__ = [
    "PolymatroidFn",
    "ConstraintSystem",
    "RaySet",
    "build_constraints",
    "extreme_rays",
    "brute_force_rays",
    "is_polymatroid",
    "polymatroid_check",
]


@dataclass(frozen=True)
class PolymatroidFn:
    """Exact rational value per lattice element; candidate member of the cone."""

    lattice: object
    values: tuple

    @classmethod
    def from_ints(cls, lattice, ints):
        return cls(lattice, tuple(Fraction(v) for v in ints))

    def normalized(self):
        """Scale so the top element has value 1 (display form)."""
        top = self.values[self.lattice.top]
        if top == 0:
            return self
        return PolymatroidFn(self.lattice, tuple(v / top for v in self.values))

    def scaled_integers(self):
        """Positive integer multiple of the values with collective gcd 1."""
        from math import lcm

        denoms = [v.denominator for v in self.values]
        mult = 1
        for d in denoms:
            mult = lcm(mult, d)
        ints = [int(v * mult) for v in self.values]
        return _reduce_gcd(tuple(ints))


@dataclass(frozen=True)
class ConstraintSystem:
    """Homogeneous system over one coordinate per lattice element."""

    dimension: int
    equalities: tuple    # (row, tag) pairs; <row, h> = 0
    inequalities: tuple  # (row, tag) pairs; <row, h> >= 0
    mode: str = "full"
    lattice_digest: str = ""


@dataclass(frozen=True)
class RaySet:
    """Canonically scaled and sorted extreme rays of a constraint system."""

    rays: tuple
    mode: str = "full"
    lattice_digest: str = ""

    def __len__(self):
        return len(self.rays)

    def __iter__(self):
        return iter(self.rays)

    def report(self):
        lines = [f"# lattice {self.lattice_digest} mode {self.mode} rays {len(self.rays)}"]
        lines += [" ".join(str(v) for v in ray) for ray in self.rays]
        return "\n".join(lines) + "\n"


def lattice_digest(L):
    return hashlib.sha256(canonical_form(L)).hexdigest()[:16]


def _reduce_gcd(vec):
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    if g > 1:
        vec = tuple(v // g for v in vec)
    return tuple(vec)


def _row(n, entries):
    r = [0] * n
    for i, c in entries:
        r[i] += c
    return _reduce_gcd(tuple(r))


def build_constraints(L, mode="full"):
    """H-representation of the polymatroid cone; `reduced` applies the
    meet-irreducible monotonicity reduction, plus the cover-pair submodularity
    reduction when the lattice is modular."""
    if mode not in ("full", "reduced"):
        raise ShanlatError(f"unknown constraint mode: {mode}")
    n = L.n
    equalities = [(_row(n, [(L.bottom, 1)]), ("ground",))]
    inequalities = []
    if mode == "full":
        mono_pairs = list(L.covers)
    else:
        up_count = {}
        for (a, b) in L.covers:
            up_count.setdefault(a, []).append(b)
        mono_pairs = [
            (x, ups[0]) for x, ups in up_count.items() if len(ups) == 1
        ]
    for (a, b) in sorted(mono_pairs):
        inequalities.append((_row(n, [(b, 1), (a, -1)]), ("monotone", a, b)))
    from .lattice import classify

    if mode == "reduced" and classify(L).is_modular:
        sub_pairs = []
        for (x, y) in L.incomparable_pairs():
            m = int(L.meet[x, y])
            if (m, x) in L.covers and (m, y) in L.covers:
                sub_pairs.append((x, y))
    else:
        sub_pairs = L.incomparable_pairs()
    for (x, y) in sub_pairs:
        j, m = int(L.join[x, y]), int(L.meet[x, y])
        inequalities.append(
            (_row(n, [(x, 1), (y, 1), (j, -1), (m, -1)]), ("submodular", x, y))
        )
    return ConstraintSystem(
        dimension=n,
        equalities=tuple(equalities),
        inequalities=tuple(inequalities),
        mode=mode,
        lattice_digest=lattice_digest(L),
    )


# ---------------------------------------------------------------------------
# exact linear algebra helpers (dense, Fractions; dimensions are tiny)


def _nullspace(rows, n):
    """Integer basis of the rational nullspace of the given rows."""
    mat = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(n):
        pr = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if pr is None:
            continue
        mat[rank], mat[pr] = mat[pr], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [v / pv for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                c = mat[i][col]
                mat[i] = [a - c * b for a, b in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, piv in zip(mat[:rank], pivots):
            v[piv] = -r[f]
        mult = 1
        for x in v:
            mult = mult * x.denominator // gcd(mult, x.denominator)
        basis.append(_reduce_gcd(tuple(int(x * mult) for x in v)))
    return basis


def _rank(rows, n):
    return n - len(_nullspace(rows, n)) if rows else 0


def _solve_identity(basis_rows, d):
    """Columns r_i with B r_i = e_i, integer-scaled; B is d x d invertible."""
    mat = [[Fraction(v) for v in r] + [Fraction(int(i == j)) for j in range(d)]
           for i, r in enumerate(basis_rows)]
    for col in range(d):
        pr = next(i for i in range(col, d) if mat[i][col])
        mat[col], mat[pr] = mat[pr], mat[col]
        pv = mat[col][col]
        mat[col] = [v / pv for v in mat[col]]
        for i in range(d):
            if i != col and mat[i][col]:
                c = mat[i][col]
                mat[i] = [a - c * b for a, b in zip(mat[i], mat[col])]
    cols = []
    for j in range(d):
        v = [mat[i][d + j] for i in range(d)]
        mult = 1
        for x in v:
            mult = mult * x.denominator // gcd(mult, x.denominator)
        cols.append(_reduce_gcd(tuple(int(x * mult) for x in v)))
    return cols


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _reduced_system(C):
    """Project out the equalities; returns (basis rows of nullspace, reduced
    inequality rows in insertion order)."""
    n = C.dimension
    eq_rows = [r for r, _ in C.equalities]
    nb = _nullspace(eq_rows, n) if eq_rows else [
        tuple(int(i == j) for j in range(n)) for i in range(n)
    ]
    d = len(nb)
    reduced = []
    seen = set()
    for r, _tag in C.inequalities:
        rr = _reduce_gcd(tuple(_dot(r, b) for b in nb))
        if any(rr) and rr not in seen:
            seen.add(rr)
            reduced.append(rr)
    reduced.sort(key=lambda r: (sum(1 for v in r if v), r))
    return nb, reduced, d


def extreme_rays(C):
    """Exact extreme rays by the double description method."""
    nb, rows, d = _reduced_system(C)
    if d == 0:
        return RaySet(rays=(), mode=C.mode, lattice_digest=C.lattice_digest)
    # initial invertible subsystem
    basis_idx = []
    for i, r in enumerate(rows):
        if _rank([rows[j] for j in basis_idx] + [r], d) > len(basis_idx):
            basis_idx.append(i)
        if len(basis_idx) == d:
            break
    if len(basis_idx) < d:
        raise ShanlatError("cone has a nonzero lineality space")
    order = basis_idx + [i for i in range(len(rows)) if i not in basis_idx]
    rays = []
    init_cols = _solve_identity([rows[i] for i in basis_idx], d)
    for j, vec in enumerate(init_cols):
        zmask = 0
        for t in range(d):
            if t != j:
                zmask |= 1 << t
        rays.append((vec, zmask))
    for step in range(d, len(order)):
        row = rows[order[step]]
        bit = 1 << step
        scored = [(_dot(row, vec), vec, z) for vec, z in rays]
        if all(s >= 0 for s, _, _ in scored):
            rays = [(vec, z | bit if s == 0 else z) for s, vec, z in scored]
            continue
        pos = [(s, vec, z) for s, vec, z in scored if s > 0]
        neg = [(s, vec, z) for s, vec, z in scored if s < 0]
        zero = [(vec, z | bit) for s, vec, z in scored if s == 0]
        kept = [(vec, z) for s, vec, z in pos]
        new = []
        all_masks = [z for _, _, z in scored]
        min_common = max(0, d - 2)
        for ip, (sp, vp, zp) in enumerate(pos):
            for iq, (sq, vq, zq) in enumerate(neg):
                common = zp & zq
                if common.bit_count() < min_common:
                    continue
                # adjacency: no third ray's zero set contains the intersection
                # (distinct extreme rays of a pointed cone have distinct zero
                # sets, so comparing masks identifies p and q themselves)
                if any(
                    z != zp and z != zq and (z & common) == common
                    for z in all_masks
                ):
                    continue
                vec = _reduce_gcd(tuple(sp * q - sq * p for p, q in zip(vp, vq)))
                new.append((vec, common | bit))
        rays = kept + zero + new
    out = set()
    for vec, _z in rays:
        amb = tuple(_dot(vec, tuple(b[i] for b in nb)) for i in range(C.dimension))
        # amb = sum_i y_i * nb_i, componentwise
        out.add(_reduce_gcd(amb))
    return RaySet(rays=tuple(sorted(out)), mode=C.mode, lattice_digest=C.lattice_digest)


def brute_force_rays(C):
    """Independent oracle: enumerate all rank-(d-1) subsystems of the
    inequality rows, solve each, and keep the feasible one-dimensional
    solutions. Exponential; guarded."""
    if C.dimension > 12:
        raise DimensionTooLarge(f"dimension {C.dimension} > 12")
    nb, rows, d = _reduced_system(C)
    if d == 0:
        return RaySet(rays=(), mode=C.mode, lattice_digest=C.lattice_digest)
    m = len(rows)
    found = set()
    import numpy as np

    rows_np = np.array(rows, dtype=np.int64) if rows else np.zeros((0, d), np.int64)

    def feasible(vec):
        if max(abs(v) for v in vec) < 1 << 30:
            return bool((rows_np @ np.array(vec, dtype=np.int64) >= 0).all())
        return all(_dot(r, vec) >= 0 for r in rows)

    def reduce_row(row, echelon):
        # fraction-free reduction against the current integer echelon rows
        r = list(row)
        for prow, pcol in echelon:
            if r[pcol]:
                pv, cv = prow[pcol], r[pcol]
                r = [pv * a - cv * b for a, b in zip(r, prow)]
        if not any(r):
            return None
        if max(abs(v) for v in r) > 1 << 30:
            r = list(_reduce_gcd(tuple(r)))
        return r

    def nullvec(echelon):
        # one-dimensional nullspace of d-1 echelon rows, by back substitution
        pivcols = {pcol for _, pcol in echelon}
        free = next(j for j in range(d) if j not in pivcols)
        v = [Fraction(0)] * d
        v[free] = Fraction(1)
        for prow, pcol in reversed(echelon):
            s = sum(prow[j] * v[j] for j in range(d) if j != pcol and v[j])
            v[pcol] = Fraction(-s, prow[pcol])
        mult = 1
        for x in v:
            mult = mult * x.denominator // gcd(mult, x.denominator)
        return _reduce_gcd(tuple(int(x * mult) for x in v))

    def dfs(start, echelon):
        if len(echelon) == d - 1:
            v = nullvec(echelon)
            for cand in (v, tuple(-x for x in v)):
                if feasible(cand):
                    found.add(_reduce_gcd(cand))
            return
        if m - start < (d - 1) - len(echelon):
            return
        for i in range(start, m):
            r = reduce_row(rows[i], echelon)
            if r is not None:
                pcol = next(j for j, v in enumerate(r) if v)
                dfs(i + 1, echelon + [(r, pcol)])

    if d == 1:
        for cand in ((1,), (-1,)):
            if feasible(cand):
                found.add(cand)
    else:
        dfs(0, [])
    out = set()
    for vec in found:
        amb = tuple(_dot(vec, tuple(b[i] for b in nb)) for i in range(C.dimension))
        out.add(_reduce_gcd(amb))
    return RaySet(rays=tuple(sorted(out)), mode=C.mode, lattice_digest=C.lattice_digest)


@dataclass(frozen=True)
class PolymatroidCheck:
    ok: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def polymatroid_check(L, values):
    """Full-definition polymatroid test with a violation witness."""
    if len(values) != L.n:
        raise NotPolymatroid(f"vector length {len(values)} != lattice size {L.n}")
    vals = [Fraction(v) for v in values]
    bot = L.bottom
    if vals[bot] != 0:
        return PolymatroidCheck(False, ("ground", bot))
    for (a, b) in L.covers:
        if vals[a] > vals[b]:
            return PolymatroidCheck(False, ("monotone", a, b))
    if any(v < 0 for v in vals):
        x = next(i for i, v in enumerate(vals) if v < 0)
        return PolymatroidCheck(False, ("nonnegative", x))
    for (x, y) in L.incomparable_pairs():
        if vals[x] + vals[y] < vals[L.join[x, y]] + vals[L.meet[x, y]]:
            return PolymatroidCheck(False, ("submodular", x, y))
    return PolymatroidCheck(True)


def is_polymatroid(L, values):
    return polymatroid_check(L, values).ok
