"""Run the acceptance criteria and write a JSON report.

    python scripts/run_acceptance.py [--only 1,2,3] [--out results/acceptance.json]
"""

import argparse
import json
import pathlib
import sys

from itrails import __version__
from itrails.acceptance import AcceptanceConfig, run_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", help="comma-separated criterion numbers")
    ap.add_argument("--seed", type=int, default=AcceptanceConfig.seed)
    ap.add_argument("--out", type=pathlib.Path)
    args = ap.parse_args()
    only = [int(x) for x in args.only.split(",")] if args.only else None
    cfg = AcceptanceConfig(seed=args.seed)
    results = []
    for r in run_all(cfg, only):
        print(r.line(), flush=True)
        d = r.to_dict()
        d["seconds"] = round(r.seconds, 2)
        results.append(d)
    ok = all(r["passed"] for r in results)
    print(f"{sum(r['passed'] for r in results)}/{len(results)} criteria passed")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        doc = {"version": __version__, "seed": cfg.seed, "criteria": results}
        args.out.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
