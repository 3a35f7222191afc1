"""Walk through the 11-element lattice that carries a non-Shannon ray.

Builds the polymatroid cone of the catalog lattice lld11, enumerates its
extreme rays exactly, and shows the ray whose Zhang-Yeung gap is -1/4.
"""

from fractions import Fraction

from shanlat.cone import build_constraints, extreme_rays
from shanlat.inequalities import inequality_gap
from shanlat.lattice import catalog
from shanlat.realize import certify_ray, check_shannon


def main():
    L = catalog("lld11")
    print("lattice: lld11, n =", L.n)
    rays = extreme_rays(build_constraints(L, "reduced"))
    print("extreme rays:", len(rays.rays))

    for i, ray in enumerate(rays.rays):
        cert = certify_ray(L, ray)
        print(f"  ray {i:2d} {ray}  {cert.kind}")

    verdict = check_shannon(L)
    print("verdict:", verdict.status)
    ray, report = verdict.witness
    top = Fraction(ray[L.top])
    normalized = tuple(Fraction(v) / top for v in ray)
    names = tuple(L.name_of(x) for x in report.assignment)
    print("witness ray:", ray)
    print("assignment (A, B, C, D):", names)
    gap = inequality_gap(L, normalized, "zhang_yeung", report.assignment)
    print("zhang_yeung gap:", gap.gap)


if __name__ == "__main__":
    main()
