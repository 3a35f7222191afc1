"""Entropic realizations: entropy vectors from finite groups and explicit
distributions, ray certification, and the Shannon / non-Shannon verdict.

Groups are elementary abelian Z_p^k, so subgroups are GF(p)-subspaces and
log-indices are exact integers in units of log p. Each lattice element gets
a subspace, order-reversingly, with joins going to intersections.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import json
import math

import numpy as np

from . import gfp
from .closure import closed_lattice_of_polymatroid
from .cone import build_constraints, extreme_rays, polymatroid_check
from .errors import (BudgetExceeded, InvalidAssignment, JoinInconsistent,
                     NotAProbability, ShapeMismatch)
from .inequalities import inequality_gap, scan_quadruples
from .lattice import classify, poset_width

__all__ = [
    "GroupRealization",
    "EntropyVector",
    "Certificate",
    "CertBudget",
    "entropy_from_groups",
    "entropy_from_distribution",
    "standard_realization",
    "certify_ray",
    "check_shannon",
    "Verdict",
    "conjecture_report",
    "restrict_realization",
]


def _smallest_prime_above(n):
    c = max(2, n + 1)
    while True:
        if all(c % d for d in range(2, int(math.isqrt(c)) + 1)):
            return c
        c += 1


@dataclass(frozen=True)
class GroupRealization:
    lattice: object
    p: int
    k: int
    assignment: tuple  # element index -> subspace of GF(p)^k as rref tuple

    def subgroup(self, x):
        return self.assignment[x]

    def validate(self):
        L = self.lattice
        full = gfp.full_space(self.k, self.p)
        if self.assignment[L.bottom] != full:
            raise InvalidAssignment("bottom must carry the whole group",
                                    witness=(L.bottom,))
        for x in range(L.n):
            for y in range(L.n):
                if L.leq[x, y] and not gfp.contains_space(
                        self.assignment[x], self.assignment[y], self.p):
                    raise InvalidAssignment(
                        f"assignment not order-reversing at {x} <= {y}",
                        witness=(x, y))
        for x in range(L.n):
            for y in range(x + 1, L.n):
                want = gfp.intersect(self.assignment[x], self.assignment[y], self.p)
                got = self.assignment[L.join[x, y]]
                if want != got:
                    raise InvalidAssignment(
                        f"join of {x},{y} must carry the intersection",
                        witness=(x, y))
        return self

    def to_json(self):
        return json.dumps({
            "p": self.p, "k": self.k,
            "assignment": [[list(r) for r in s] for s in self.assignment],
        })


@dataclass(frozen=True)
class EntropyVector:
    lattice: object
    values: tuple          # rationals (units of log `log_base`) or floats (nats)
    log_base: int = 0      # 0 for floating vectors
    exact: bool = True
    tolerance: float = 0.0


def entropy_from_groups(R):
    """values[x] = log-index of subgroup(x), exactly, in units of log p."""
    R.validate()
    values = tuple(Fraction(R.k - gfp.dim(R.assignment[x]))
                   for x in range(R.lattice.n))
    vec = EntropyVector(R.lattice, values, log_base=R.p, exact=True)
    check = polymatroid_check(R.lattice, values)
    assert check.ok, f"group entropy vector must be polymatroid: {check.witness}"
    return vec


def entropy_from_distribution(L, weights, variables, tolerance=1e-9):
    """Shannon entropies (nats) of lattice-indexed variables on a weighted
    finite sample space.

    variables[x] is a sequence of labels, one per outcome. The label map at
    x join y must separate outcomes exactly as finely as the pair (x, y):
    one direction gives monotone entropies, the other submodular ones.
    """
    w = [float(v) for v in weights]
    if any(v <= 0 for v in w) or abs(sum(w) - 1.0) > tolerance:
        raise NotAProbability("weights must be positive and sum to 1")
    size = len(w)
    for x in range(L.n):
        if len(variables[x]) != size:
            raise NotAProbability(f"variable {x} has wrong length")
    for x in range(L.n):
        for y in range(L.n):
            fz = variables[L.join[x, y]]
            for s in range(size):
                for t in range(s + 1, size):
                    same_z = fz[s] == fz[t]
                    same_pair = (variables[x][s] == variables[x][t]
                                 and variables[y][s] == variables[y][t])
                    if same_z != same_pair:
                        raise JoinInconsistent(
                            f"join of {x},{y} not equivalent to the pair "
                            f"at outcomes {s},{t}", witness=(x, y, s, t))
    values = []
    for x in range(L.n):
        mass = {}
        for lbl, v in zip(variables[x], w):
            mass[lbl] = mass.get(lbl, 0.0) + v
        values.append(-sum(v * math.log(v) for v in mass.values() if v > 0))
    vec = EntropyVector(L, tuple(values), log_base=0, exact=False,
                        tolerance=tolerance)
    _check_float_polymatroid(L, values, tolerance)
    return vec


def _check_float_polymatroid(L, values, tol):
    assert abs(values[L.bottom]) <= tol
    for x in range(L.n):
        for y in range(L.n):
            if L.leq[x, y]:
                assert values[x] <= values[y] + tol, (x, y)
            assert values[x] + values[y] + tol >= \
                values[L.join[x, y]] + values[L.meet[x, y]], (x, y)


def _is_m_shape(L):
    """Middle elements if L is bottom + top + pairwise-incomparable middles."""
    middles = [x for x in range(L.n) if x not in (L.bottom, L.top)]
    for i, a in enumerate(middles):
        if not ((L.bottom, a) in L.covers and (a, L.top) in L.covers):
            return None
        for b in middles[i + 1:]:
            if L.leq[a, b] or L.leq[b, a]:
                return None
    return middles


def _grid_coordinates(L):
    """If L is a product of two chains, per-element (i, j) coordinates."""
    profile = classify(L)
    if not profile.is_distributive:
        return None
    ji = sorted(profile.join_irreducibles)
    sub = L.leq[np.ix_(ji, ji)]
    # two chains: the incomparability graph of the irreducibles is complete
    # bipartite between the chains
    chains = []
    remaining = list(range(len(ji)))
    while remaining:
        head = remaining[0]
        chain = [x for x in remaining if sub[head, x] or sub[x, head]]
        if any(not (sub[a, b] or sub[b, a]) for a in chain for b in chain):
            return None
        chains.append(sorted(chain, key=lambda x: int(sub[:, x].sum())))
        remaining = [x for x in remaining if x not in chain]
    if len(chains) > 2:
        return None
    while len(chains) < 2:
        chains.append([])
    coords = []
    for x in range(L.n):
        i = sum(1 for c in chains[0] if L.leq[ji[c], x])
        j = sum(1 for c in chains[1] if L.leq[ji[c], x])
        coords.append((i, j))
    if len(set(coords)) != L.n:
        return None
    m = max(i for i, _ in coords) + 1
    n = max(j for _, j in coords) + 1
    if m * n != L.n:
        return None
    return coords


def _mn_realization(L, middles, p=None):
    k_mid = len(middles)
    if p is None:
        p = _smallest_prime_above(max(k_mid, 1))
    full = gfp.full_space(2, p)
    assignment = [None] * L.n
    assignment[L.bottom] = full
    assignment[L.top] = ()
    for j, x in enumerate(middles):
        # kernel of the functional (y, z) -> y + j z
        assignment[x] = gfp.rref([((-j) % p, 1)], p)
    return GroupRealization(L, p, 2, tuple(assignment)).validate()


def _grid_realization(L, coords, p=2):
    m = max(i for i, _ in coords) + 1
    n = max(j for _, j in coords) + 1
    k = (m - 1) + (n - 1)
    assignment = []
    for (i, j) in coords:
        basis = []
        for t in range(i, m - 1):
            v = [0] * k
            v[t] = 1
            basis.append(v)
        for t in range(j, n - 1):
            v = [0] * k
            v[m - 1 + t] = 1
            basis.append(v)
        assignment.append(gfp.rref(basis, p))
    return GroupRealization(L, p, k, tuple(assignment)).validate()


def standard_realization(L, scheme, p=None):
    """Named realization schemes from the lattice's shape.

    mn: Z_p^2 on bottom + incomparable middles + top, middles to distinct
    lines; grid: product of two chains, entropy proportional to rank;
    zero_one / half_valued are handled through certify_ray's closure route.
    """
    if scheme == "mn":
        middles = _is_m_shape(L)
        if middles is None:
            raise ShapeMismatch("lattice is not bottom + antichain + top")
        return _mn_realization(L, middles, p)
    if scheme == "grid":
        coords = _grid_coordinates(L)
        if coords is None:
            raise ShapeMismatch("lattice is not a product of two chains")
        return _grid_realization(L, coords, p if p is not None else 2)
    raise ShapeMismatch(f"unknown scheme {scheme!r}")


@dataclass(frozen=True)
class Certificate:
    kind: str                  # zero_one | half_valued | group_match |
                               # distribution_match | violation_witness | unknown
    scale: Fraction = Fraction(0)
    realization: object = None
    report: object = None      # GapReport for violation_witness
    caveats: tuple = ()

    @property
    def entropic(self):
        return self.kind in ("zero_one", "half_valued", "group_match",
                             "distribution_match")

    def to_json(self):
        out = {"kind": self.kind, "caveats": list(self.caveats)}
        if self.scale:
            out["scale"] = f"{self.scale.numerator}/{self.scale.denominator}"
        if self.realization is not None:
            out["realization"] = json.loads(self.realization.to_json())
        if self.report is not None:
            out["report"] = json.loads(self.report.to_json())
        return json.dumps(out)


@dataclass(frozen=True)
class CertBudget:
    k: int = 4
    p: int = 3
    scan: int = 10 ** 7


def _closure_route(L, ray):
    """zero_one / half_valued certificates via the closed-element lattice."""
    values = sorted(set(ray))
    nonzero = [v for v in values if v]
    if not nonzero:
        return None
    c = nonzero[-1]
    if nonzero == [c]:
        kind = "zero_one"
    elif len(nonzero) == 2 and 2 * nonzero[0] == c:
        kind = "half_valued"
    else:
        return None
    _, system = closed_lattice_of_polymatroid(L, tuple(ray))
    M = system.induced
    middles = _is_m_shape(M) if M.n > 2 else []
    if middles is None:
        return None
    if M.n == 1:
        return None
    if M.n == 2:
        pair = [None, None]
        pair[M.bottom] = gfp.full_space(1, 2)
        pair[M.top] = ()
        inner = GroupRealization(M, 2, 1, tuple(pair)).validate()
    else:
        inner = _mn_realization(M, middles)
    # pull back along the closure projection
    assignment = tuple(inner.assignment[system.projection[x]]
                       for x in range(L.n))
    R = GroupRealization(L, inner.p, inner.k, assignment).validate()
    vec = entropy_from_groups(R)
    unit = Fraction(c) if kind == "zero_one" else Fraction(c, 2)
    assert all(Fraction(ray[x]) == unit * vec.values[x] for x in range(L.n))
    return Certificate(kind=kind, scale=unit, realization=R)


def _rank_route(L, ray):
    coords = _grid_coordinates(L)
    if coords is None:
        return None
    ranks = [i + j for i, j in coords]
    base = None
    for x in range(L.n):
        if ranks[x]:
            s = Fraction(ray[x], ranks[x])
            if base is None:
                base = s
            elif s != base:
                return None
        elif ray[x]:
            return None
    if base is None:
        return None
    R = _grid_realization(L, coords)
    return Certificate(kind="group_match", scale=base, realization=R)


def _search_route(L, ray, budget):
    """Bounded search for a subspace assignment reproducing the ray."""
    profile = classify(L)
    ji = sorted(profile.join_irreducibles,
                key=lambda x: int(L.leq[:, x].sum()))
    top_val = ray[L.top]
    if top_val == 0:
        return None
    primes = [q for q in (2, 3, 5, 7, 11, 13) if q <= budget.p]
    for mult in range(1, budget.k // top_val + 1):
        k = mult * top_val
        target = [mult * v for v in ray]
        for p in primes:
            got = _search_assignment(L, ji, target, p, k)
            if got is not None:
                R = GroupRealization(L, p, k, got).validate()
                vec = entropy_from_groups(R)
                assert all(vec.values[x] * ray[L.top] == Fraction(ray[x]) * k
                           for x in range(L.n))
                return Certificate(kind="group_match",
                                   scale=Fraction(top_val, k), realization=R)
    return None


def _search_assignment(L, ji, target, p, k):
    full = gfp.full_space(k, p)
    ji_pos = {j: idx for idx, j in enumerate(ji)}
    # for each element, indices of join-irreducibles below it, and the step
    # of the search at which all of them are available
    below = []
    ready_at = []
    for x in range(L.n):
        idxs = [ji_pos[j] for j in ji if L.leq[j, x]]
        below.append(idxs)
        ready_at.append(max(idxs) if idxs else -1)

    def subgroup_of(x, chosen):
        space = full
        for idx in below[x]:
            space = gfp.intersect(space, chosen[idx], p)
        return space

    def extend(chosen):
        idx = len(chosen)
        if idx == len(ji):
            assignment = tuple(subgroup_of(x, chosen) for x in range(L.n))
            for x in range(L.n):
                for y in range(x + 1, L.n):
                    want = gfp.intersect(assignment[x], assignment[y], p)
                    if want != assignment[L.join[x, y]]:
                        return None
            return assignment
        j = ji[idx]
        space = subgroup_of(j, chosen + [full])
        d = k - target[j]
        if d < 0 or d > gfp.dim(space):
            return None
        for cand in gfp.subspaces_of(space, d, p):
            chosen.append(cand)
            # every element whose irreducibles are now all assigned must hit
            # its target dimension exactly
            if all(gfp.dim(subgroup_of(x, chosen)) == k - target[x]
                   for x in range(L.n) if ready_at[x] == idx):
                got = extend(chosen)
                if got is not None:
                    return got
            chosen.pop()
        return None

    return extend([])


def certify_ray(L, ray, budget=CertBudget()):
    """Certificate for one integer extreme ray, trying in order: the
    zero_one / half_valued closure route, the rank-proportional grid route,
    a bounded subspace search, then violation witnesses."""
    ray = tuple(int(v) for v in ray)
    check = polymatroid_check(L, ray)
    assert check.ok, f"ray must be polymatroid: {check.witness}"
    cert = _closure_route(L, ray)
    if cert is not None:
        return cert
    cert = _rank_route(L, ray)
    if cert is not None:
        return cert
    # a Zhang-Yeung violation rules out every entropic construction, so the
    # scan runs before the group search purely to skip doomed searches
    try:
        zy = scan_quadruples(L, ray, "zhang_yeung", budget=budget.scan)
    except BudgetExceeded:
        zy = None
    if zy:
        return Certificate(kind="violation_witness", report=zy[0])
    cert = _search_route(L, ray, budget)
    if cert is not None:
        return cert
    try:
        ing = scan_quadruples(L, ray, "ingleton", budget=budget.scan)
    except BudgetExceeded:
        ing = None
    if ing:
        return Certificate(kind="violation_witness", report=ing[0],
                           caveats=("outside-abelian",))
    return Certificate(kind="unknown")


@dataclass(frozen=True)
class Verdict:
    status: str                # shannon | non_shannon | undecided
    rays: tuple
    certificates: tuple
    witness: object = None     # (ray, GapReport) when non_shannon

    def to_json(self):
        out = {
            "status": self.status,
            "rays": [list(r) for r in self.rays],
            "certificates": [json.loads(c.to_json()) for c in self.certificates],
        }
        if self.witness is not None:
            ray, report = self.witness
            out["witness"] = {"ray": list(ray),
                              "report": json.loads(report.to_json())}
        return json.dumps(out)


def check_shannon(L, budget=CertBudget()):
    """Shannon iff every extreme ray of the polymatroid cone is certified
    entropic; non-Shannon iff some ray violates the Zhang-Yeung template."""
    rays = extreme_rays(build_constraints(L, "reduced"))
    certs = tuple(certify_ray(L, r, budget) for r in rays.rays)
    witness = None
    for r, c in zip(rays.rays, certs):
        if c.kind == "violation_witness" and \
                c.report.template == "zhang_yeung" and not c.caveats:
            witness = (r, c.report)
            break
    if witness is not None:
        status = "non_shannon"
    elif all(c.entropic for c in certs):
        status = "shannon"
    else:
        status = "undecided"
    return Verdict(status=status, rays=rays.rays, certificates=certs,
                   witness=witness)


def conjecture_report(L, budget=CertBudget()):
    """Report-only: extreme rays satisfying both the Ingleton and strong
    union templates, with their certificates. Never drives verdicts."""
    rays = extreme_rays(build_constraints(L, "reduced"))
    out = []
    for r in rays.rays:
        if scan_quadruples(L, r, "ingleton", budget=budget.scan):
            continue
        if scan_quadruples(L, r, "strong_union", budget=budget.scan):
            continue
        out.append((r, certify_ray(L, r, budget)))
    return out


def restrict_realization(R, subset):
    """Restriction of a group realization to a meet-closed subset, on the
    induced lattice."""
    from .closure import restrict_to_meet_closed
    subset = tuple(sorted(subset))
    induced = restrict_to_meet_closed(R.lattice, subset)
    assignment = tuple(R.assignment[x] for x in subset)
    return GroupRealization(induced, R.p, R.k, assignment).validate()
