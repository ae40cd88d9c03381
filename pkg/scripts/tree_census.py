"""Census of trees by order: how many isomorphism classes are NEB somewhere and how many have a full matching.

Usage: python scripts/tree_census.py [--max-n 9]
"""

import argparse
import time

from skewmatch.graph import brute_force_matching_number
from skewmatch.neb import neb_report
from skewmatch.trees import isomorphism_class_representatives


def census(n: int) -> dict:
    reps = isomorphism_class_representatives(n)
    neb = full = agree = 0
    for T in reps:
        is_neb = neb_report(T).is_neb_somewhere
        has_full = brute_force_matching_number(T) == n // 2
        neb += is_neb
        full += has_full
        agree += is_neb == has_full
    return {"n": n, "classes": len(reps), "neb": neb, "full_matching": full, "agree": agree}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=9)
    args = ap.parse_args()
    print(f"{'n':>3} {'classes':>8} {'neb':>6} {'full':>6} {'agree':>6} {'sec':>6}")
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        row = census(n)
        dt = time.perf_counter() - t0
        print(f"{n:>3} {row['classes']:>8} {row['neb']:>6} {row['full_matching']:>6} {row['agree']:>6} {dt:>6.2f}")


if __name__ == "__main__":
    main()
