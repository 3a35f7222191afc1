"""Information expressions on polymatroid functions over a lattice.

Conditional mutual information, the Zhang-Yeung and Ingleton templates in
their conditional-MI forms, strong union, exhaustive violation scans, and
the independence relation I(X;Y|Z) = 0 with a semi-graphoid audit.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
import json

import numpy as np

from .errors import ArityMismatch, BudgetExceeded

__all__ = [
    "TEMPLATES",
    "GapReport",
    "IndependenceRelation",
    "AxiomReport",
    "conditional_mi",
    "inequality_gap",
    "scan_quadruples",
    "induced_relation",
    "audit_axioms",
    "format_gap_reports",
]

TEMPLATES = {
    "zhang_yeung": 4,   # A, B, C, D
    "ingleton": 5,      # X, Y, Z, V, W
    "strong_union": 4,  # X, Y, Z, W
}


@dataclass(frozen=True)
class GapReport:
    template: str
    assignment: tuple
    gap: Fraction
    violated: bool

    def to_json(self):
        return json.dumps({
            "template": self.template,
            "assignment": list(self.assignment),
            "gap": f"{self.gap.numerator}/{self.gap.denominator}",
            "violated": self.violated,
        })


@dataclass(frozen=True)
class IndependenceRelation:
    lattice: object
    triples: frozenset

    def holds(self, x, y, z):
        return (x, y, z) in self.triples


def _values(h):
    vals = h.values if hasattr(h, "values") else tuple(h)
    return tuple(Fraction(v) for v in vals)


def conditional_mi(L, h, x, y, z):
    """I(X;Y|Z) = h(X v Z) + h(Y v Z) - h(X v Y v Z) - h(Z)."""
    v = _values(h)
    j = L.join
    return v[j[x, z]] + v[j[y, z]] - v[j[j[x, y], z]] - v[z]


def inequality_gap(L, h, template, assignment):
    """Exact gap (RHS - LHS) of an information inequality template.

    zhang_yeung(A,B,C,D):  2 I(C;D) <= I(A;B) + I(A;C v D) + 3 I(C;D|A) + I(C;D|B)
    ingleton(X,Y,Z,V,W):   I(X;Y|Z) <= I(X;Y|Z v V) + I(X;Y|Z v W) + I(V;W|Z)
    strong_union(X,Y,Z,W): I(X;Y|Z) <= I(X;Y|Z v W)
    """
    if template not in TEMPLATES:
        raise ArityMismatch(f"unknown template {template!r}")
    if len(assignment) != TEMPLATES[template]:
        raise ArityMismatch(
            f"{template} takes {TEMPLATES[template]} elements, got {len(assignment)}")
    bot = L.bottom
    j = L.join
    mi = lambda x, y, z: conditional_mi(L, h, x, y, z)
    if template == "zhang_yeung":
        a, b, c, d = assignment
        lhs = 2 * mi(c, d, bot)
        rhs = mi(a, b, bot) + mi(a, j[c, d], bot) + 3 * mi(c, d, a) + mi(c, d, b)
    elif template == "ingleton":
        x, y, z, v, w = assignment
        lhs = mi(x, y, z)
        rhs = mi(x, y, j[z, v]) + mi(x, y, j[z, w]) + mi(v, w, z)
    else:
        x, y, z, w = assignment
        lhs = mi(x, y, z)
        rhs = mi(x, y, j[z, w])
    gap = rhs - lhs
    return GapReport(template, tuple(int(e) for e in assignment), gap, gap < 0)


def scan_quadruples(L, h, template, budget=10 ** 7):
    """All violating assignments of a template, in lexicographic order."""
    arity = TEMPLATES[template]
    total = L.n ** arity
    if total > budget:
        raise BudgetExceeded(
            f"{total} assignments exceed budget {budget} for {template} on n={L.n}")
    out = []
    for assignment in product(range(L.n), repeat=arity):
        report = inequality_gap(L, h, template, assignment)
        if report.violated:
            out.append(report)
    return out


def induced_relation(L, h):
    """Triples (X,Y,Z) with I(X;Y|Z) = 0 exactly."""
    v = _values(h)
    j = L.join
    n = L.n
    triples = frozenset(
        (x, y, z)
        for x in range(n) for y in range(n) for z in range(n)
        if v[j[x, z]] + v[j[y, z]] == v[j[j[x, y], z]] + v[z]
    )
    return IndependenceRelation(L, triples)


@dataclass(frozen=True)
class AxiomReport:
    passed: dict       # axiom name -> bool
    witnesses: dict    # axiom name -> first failing tuple, if any
    strong_union: bool
    strong_contraction: bool

    @property
    def semi_graphoid(self):
        core = ("existence", "symmetry", "decomposition", "contraction",
                "weak_union")
        return all(self.passed[a] for a in core)


def audit_axioms(R):
    """Exhaustive audit of the semi-graphoid axioms, the derived properties
    (reflexivity, normality, monotonicity, triviality, base monotonicity,
    transitivity, autonomy), and the strong union / strong contraction flags.
    """
    L = R.lattice
    n = L.n
    j = L.join
    leq = L.leq
    bot = L.bottom
    has = R.triples.__contains__
    rng = range(n)
    passed = {}
    witnesses = {}

    def record(name, failure):
        passed[name] = failure is None
        if failure is not None:
            witnesses[name] = failure

    def first(gen):
        return next(gen, None)

    record("existence", first(
        (x, y) for x in rng for y in rng if not has((x, y, x))))
    record("symmetry", first(
        t for t in R.triples if not has((t[1], t[0], t[2]))))
    record("decomposition", first(
        (x, y, z, w) for x in rng for y in rng for z in rng for w in rng
        if has((x, j[y, z], w)) and not has((x, z, w))))
    record("contraction", first(
        (x, y, z, w) for x in rng for y in rng for z in rng for w in rng
        if has((x, z, w)) and has((x, y, j[z, w])) and not has((x, j[y, z], w))))
    record("weak_union", first(
        (x, y, z, w) for x in rng for y in rng for z in rng for w in rng
        if has((x, j[y, z], w)) and not has((x, y, j[z, w]))))

    record("reflexivity", first(
        (x,) for x in rng if not has((x, x, x))))
    record("normality", first(
        (x, y, w) for x in rng for y in rng for w in rng
        if has((x, y, w)) and not has((x, j[y, w], w))))
    record("monotonicity", first(
        (x, y, z, w) for x in rng for y in rng for z in rng for w in rng
        if has((x, y, w)) and leq[z, j[y, w]] and not has((x, z, w))))
    record("triviality", first(
        (x, y) for x in rng for y in rng if not has((x, bot, y))))
    record("base_monotonicity", first(
        (a, b, c, d) for a in rng for b in rng for c in rng for d in rng
        if has((a, b, d)) and leq[d, c] and leq[c, b] and not has((a, b, c))))
    record("transitivity", first(
        (a, b, c, d) for a in rng for b in rng for c in rng for d in rng
        if has((a, b, c)) and has((a, c, d)) and leq[d, c] and leq[c, b]
        and not has((a, b, d))))
    record("autonomy", first(
        (a, b, c) for a in rng for b in rng for c in rng
        if has((a, a, c)) and not has((a, b, c))))

    su = first(
        (x, y, z, w) for x in rng for y in rng for z in rng for w in rng
        if has((x, y, z)) and not has((x, y, j[z, w]))) is None
    sc = first(
        (x, y, z, v, w)
        for x in rng for y in rng for z in rng for v in rng for w in rng
        if has((x, y, j[z, v])) and has((x, y, j[z, w])) and has((v, w, z))
        and not has((x, y, z))) is None
    return AxiomReport(passed=passed, witnesses=witnesses,
                       strong_union=su, strong_contraction=sc)


def format_gap_reports(reports):
    """JSON lines serialization of GapReports."""
    return "\n".join(r.to_json() for r in reports)
