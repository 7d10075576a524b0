"""Branching multiplicities to Levi subalgebras by both reduction systems and the oracle.

    python scripts/branching_table.py --type A3 --subset 1,3 --max 1
"""

import argparse
import itertools
import sys

from itrails.counting import MultiplicityQuery, count
from itrails.liealg import cartan
from itrails.oracle import branching_multiplicity


def main() -> int:
    ap = argparse.ArgumentParser(description="branching multiplicity table")
    ap.add_argument("--type", default="A3")
    ap.add_argument("--subset", default="1,3")
    ap.add_argument("--max", type=int, default=1)
    args = ap.parse_args()
    a = cartan(args.type)
    sub = tuple(int(x) for x in args.subset.split(","))
    top = args.max
    bad = rows = 0
    print("nu\tbeta\toracle\treduction-lusztig\treduction-string")
    for nu in itertools.product(range(top + 1), repeat=a.rank):
        for beta in itertools.product(range(-2 * top - 1, 2 * top + 2), repeat=a.rank):
            if any(beta[i - 1] < 0 for i in sub):
                continue
            want = branching_multiplicity(a, sub, nu, beta)
            got = [count(MultiplicityQuery(a, m, nu=nu, subset=sub, beta=beta))
                   for m in ("reduction-lusztig", "reduction-string")]
            bad += sum(g != want for g in got)
            if want or any(got):
                rows += 1
                print(f"{','.join(map(str, nu))}\t{','.join(map(str, beta))}\t{want}\t{got[0]}\t{got[1]}")
    print(f"# {a.name}, subset {sub}: {rows} nonzero rows, {bad} disagreements")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
