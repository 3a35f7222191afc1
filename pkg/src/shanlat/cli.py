"""Command-line front door.

Thin adapters over the library: every subcommand parses arguments, calls one
library entry point, and prints a text or JSON report. Exit codes: 0 success,
1 mathematical finding (violation / non-shannon), 2 input or usage error.
"""

import argparse
import json
import sys
from fractions import Fraction

from .closure import DependencyRelation, armstrong_close, closed_lattice
from .cone import brute_force_rays, build_constraints, extreme_rays
from .enumeration import FILTERS, classify_all, enumerate_lattices
from .errors import ShanlatError
from .inequalities import TEMPLATES, inequality_gap, scan_quadruples
from .lattice import canonical_form, catalog, classify, format_lat, parse_lat
from .realize import CertBudget, certify_ray, check_shannon

TEMPLATE_ALIASES = {"zy": "zhang_yeung", "zhang_yeung": "zhang_yeung",
                    "ingleton": "ingleton", "strong-union": "strong_union",
                    "strong_union": "strong_union"}


def _frac(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _load_lattice(path):
    with open(path) as fh:
        return parse_lat(fh.read())


def _load_rays(path):
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(tuple(int(v) for v in line.split()))
    return out


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload))
    else:
        print(text)


def cmd_analyze(args):
    L, _ = _load_lattice(args.file)
    profile = classify(L)
    payload = {
        "size": L.n,
        "canonical": canonical_form(L).hex(),
        "meet_irreducibles": sorted(profile.meet_irreducibles),
        "join_irreducibles": sorted(profile.join_irreducibles),
        "double_irreducibles": sorted(profile.double_irreducibles),
        "is_modular": profile.is_modular,
        "is_distributive": profile.is_distributive,
        "is_lower_locally_distributive": profile.is_lower_locally_distributive,
        "is_atomistic": profile.is_atomistic,
        "order_dimension": profile.order_dimension,
    }
    lines = [f"{k}: {v}" for k, v in payload.items()]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_rays(args):
    L, _ = _load_lattice(args.file)
    system = build_constraints(L, args.mode)
    rays = extreme_rays(system)
    match = None
    if args.oracle:
        match = brute_force_rays(system).rays == rays.rays
    if args.json:
        payload = {"mode": args.mode, "count": len(rays.rays),
                   "rays": [list(r) for r in rays.rays]}
        if match is not None:
            payload["oracle_match"] = match
        print(json.dumps(payload))
    else:
        sys.stdout.write(rays.report())
        if match is not None:
            print(f"# oracle match: {match}")
    return 0 if match in (None, True) else 2


def cmd_check_shannon(args):
    L, _ = _load_lattice(args.file)
    budget = CertBudget(k=args.budget_k, p=args.budget_p)
    verdict = check_shannon(L, budget)
    if args.json:
        print(verdict.to_json())
    else:
        print(f"verdict: {verdict.status}")
        print(f"rays: {len(verdict.rays)}")
        for ray, cert in zip(verdict.rays, verdict.certificates):
            print(f"  {' '.join(map(str, ray))}  {cert.kind}")
        if verdict.witness is not None:
            ray, report = verdict.witness
            print(f"witness ray: {' '.join(map(str, ray))}")
            print(f"witness: {report.template} at {report.assignment}, "
                  f"gap {_frac(report.gap)}")
    return 1 if verdict.status == "non_shannon" else 0


def cmd_inequality(args):
    L, _ = _load_lattice(args.file)
    template = TEMPLATE_ALIASES.get(args.template)
    if template is None:
        print(f"unknown template {args.template!r}", file=sys.stderr)
        return 2
    vectors = _load_rays(args.values)
    found = False
    for vec in vectors:
        if len(vec) != L.n:
            print(f"vector length {len(vec)} != lattice size {L.n}",
                  file=sys.stderr)
            return 2
        if args.all_assignments:
            from itertools import product
            reports = [inequality_gap(L, vec, template, a)
                       for a in product(range(L.n), repeat=TEMPLATES[template])]
            found = found or any(r.violated for r in reports)
        else:
            reports = scan_quadruples(L, vec, template)
            found = found or bool(reports)
        if args.json:
            for r in reports:
                print(r.to_json())
        else:
            n_viol = sum(r.violated for r in reports)
            print(f"# vector {' '.join(map(str, vec))}: "
                  f"{n_viol} violations")
            for r in reports:
                if r.violated or args.all_assignments:
                    print(f"  {r.assignment} gap {_frac(r.gap)}")
    return 1 if found else 0


def cmd_catalog(args):
    params = [int(p) for p in args.params]
    L = catalog(args.name, *params)
    text = format_lat(L)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    elif args.json:
        print(json.dumps({"name": args.name, "params": params,
                          "lat": text}))
    else:
        sys.stdout.write(text)
    return 0


def cmd_enumerate(args):
    if args.classify:
        budget = CertBudget(k=args.budget_k, p=args.budget_p)
        report = classify_all(args.max_n, args.filter, budget)
        if args.json:
            print(json.dumps(report))
        else:
            print(f"counts by size: {report['counts_by_size']}")
            print(f"verdicts: {report['verdicts']}")
            for f in report["findings"]:
                print(f"  {f}")
        return 1 if report["verdicts"]["non_shannon"] else 0
    counts = {}
    for L in enumerate_lattices(args.max_n, args.filter):
        counts[L.n] = counts.get(L.n, 0) + 1
        if args.emit:
            sys.stdout.write(format_lat(L))
            print("")
    payload = {"max_n": args.max_n, "filter": args.filter,
               "counts_by_size": counts, "total": sum(counts.values())}
    _emit(args, payload,
          f"counts by size: {counts}\ntotal: {sum(counts.values())}")
    return 0


def cmd_fd(args):
    L, file_deps = _load_lattice(args.file)
    deps = list(file_deps)
    if args.deps:
        with open(args.deps) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                parts = line.split()
                if parts[0] == "d":
                    parts = parts[1:]
                deps.append((int(parts[0]), int(parts[1])))
    base = DependencyRelation(L, frozenset(deps))
    closed = armstrong_close(base)
    op, system = closed_lattice(closed)
    payload = {
        "closure": list(op.cl),
        "closed_elements": list(system.closed),
        "closed_lat": format_lat(system.induced),
    }
    if args.json:
        print(json.dumps(payload))
    else:
        print(f"closure: {list(op.cl)}")
        print(f"closed elements: {list(system.closed)}")
        sys.stdout.write(payload["closed_lat"])
    return 0


def cmd_realize(args):
    L, _ = _load_lattice(args.file)
    rays = extreme_rays(build_constraints(L, "reduced"))
    if not 0 <= args.ray < len(rays.rays):
        print(f"ray index {args.ray} out of range 0..{len(rays.rays) - 1}",
              file=sys.stderr)
        return 2
    ray = rays.rays[args.ray]
    budget = CertBudget(k=args.budget_k, p=args.budget_p)
    cert = certify_ray(L, ray, budget)
    if args.json:
        payload = json.loads(cert.to_json())
        payload["ray"] = list(ray)
        print(json.dumps(payload))
    else:
        print(f"ray: {' '.join(map(str, ray))}")
        print(f"kind: {cert.kind}")
        if cert.scale:
            print(f"scale: {_frac(cert.scale)}")
        if cert.realization is not None:
            R = cert.realization
            print(f"group: Z_{R.p}^{R.k}")
            for x in range(L.n):
                basis = [list(r) for r in R.assignment[x]]
                print(f"  {L.name_of(x)}: {basis}")
        if cert.report is not None:
            print(f"violation: {cert.report.template} at "
                  f"{cert.report.assignment}, gap {_frac(cert.report.gap)}")
        if cert.caveats:
            print(f"caveats: {', '.join(cert.caveats)}")
    return 1 if cert.kind == "violation_witness" else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="shanlat",
        description="Polymatroid cones and information inequalities on "
                    "finite lattices.")
    parser.add_argument("--json", action="store_true",
                        help="JSON-lines output")
    parser.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; results are "
                             "identical for any value")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structural profile of a lattice")
    p.add_argument("file")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("rays", help="extreme rays of the polymatroid cone")
    p.add_argument("file")
    p.add_argument("--mode", choices=("full", "reduced"), default="reduced")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check with the brute-force enumerator")
    p.set_defaults(fn=cmd_rays)

    p = sub.add_parser("check-shannon", help="Shannon / non-Shannon verdict")
    p.add_argument("file")
    p.add_argument("--budget-k", type=int, default=4)
    p.add_argument("--budget-p", type=int, default=3)
    p.set_defaults(fn=cmd_check_shannon)

    p = sub.add_parser("inequality", help="evaluate an inequality template")
    p.add_argument("template", choices=sorted(TEMPLATE_ALIASES))
    p.add_argument("file")
    p.add_argument("--values", required=True,
                   help="ray file, one integer vector per line")
    p.add_argument("--all", action="store_true", dest="all_assignments")
    p.set_defaults(fn=cmd_inequality)

    p = sub.add_parser("catalog", help="emit a named catalog lattice")
    p.add_argument("name")
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("enumerate", help="enumerate lattices up to a size")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--filter", choices=FILTERS, default="none")
    p.add_argument("--classify", action="store_true")
    p.add_argument("--emit", action="store_true",
                   help="print each lattice in .lat format")
    p.add_argument("--budget-k", type=int, default=4)
    p.add_argument("--budget-p", type=int, default=3)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("fd", help="functional dependency tools")
    fd_sub = p.add_subparsers(dest="fd_command", required=True)
    q = fd_sub.add_parser("close", help="Armstrong closure + closed lattice")
    q.add_argument("file")
    q.add_argument("--deps", help="extra dependency lines `d i j`")
    q.set_defaults(fn=cmd_fd)

    p = sub.add_parser("realize", help="certificate for one extreme ray")
    p.add_argument("file")
    p.add_argument("--ray", type=int, required=True)
    p.add_argument("--budget-k", type=int, default=4)
    p.add_argument("--budget-p", type=int, default=3)
    p.set_defaults(fn=cmd_realize)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ShanlatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
