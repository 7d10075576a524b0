"""Tabulate tensor multiplicities by every counting method against the oracle.

Prints one row per (lambda, nu, mu) with a nonzero oracle value, then per-method
timings. Exits 1 if any method disagrees.

    python scripts/multiplicity_table.py --type B2 --max 2
"""

import argparse
import itertools
import sys
import time

from itrails.counting import METHODS, MultiplicityQuery, count
from itrails.liealg import cartan, longest_element, reduced_words
from itrails.oracle import tensor_multiplicity


def main() -> int:
    ap = argparse.ArgumentParser(description="tensor multiplicity table")
    ap.add_argument("--type", default="A2")
    ap.add_argument("--max", type=int, default=1, help="largest weight coefficient")
    ap.add_argument("--word", help="reduced word of w_o (default: first in lexicographic order)")
    ap.add_argument("--all-rows", action="store_true", help="also print zero multiplicities")
    args = ap.parse_args()
    a = cartan(args.type)
    word = tuple(int(x) for x in args.word.split(",")) if args.word else reduced_words(longest_element(a))[0]
    methods = [m for m in METHODS if m != "oracle" and (m != "classical" or a.family in "BCD")]
    if "classical" in methods:
        try:
            count(MultiplicityQuery(a, "classical", a.zero, a.zero, a.zero))
        except ValueError:
            methods.remove("classical")
    box = list(itertools.product(range(args.max + 1), repeat=a.rank))
    spent = {m: 0.0 for m in methods}
    bad = 0
    header = ["lambda", "nu", "mu", "oracle"] + methods
    print("\t".join(header))
    for lam, nu, mu in itertools.product(box, repeat=3):
        want = tensor_multiplicity(a, lam, nu, mu)
        row = []
        for m in methods:
            t0 = time.perf_counter()
            got = count(MultiplicityQuery(a, m, lam, nu, mu, None if m == "classical" else word))
            spent[m] += time.perf_counter() - t0
            bad += got != want
            row.append(str(got) + ("" if got == want else "!"))
        if want or args.all_rows or any(r.endswith("!") for r in row):
            print("\t".join([",".join(map(str, lam)), ",".join(map(str, nu)), ",".join(map(str, mu)), str(want)] + row))
    print(f"# {a.name}, word {word}, {len(box) ** 3} triples, {bad} disagreements")
    for m in methods:
        print(f"# {m}: {spent[m]:.2f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
