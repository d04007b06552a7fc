"""Sweep the degree-argument audit over trivial bundles on a point.

For each fibre and target rank k, counts the monomials q of (x,y)-degree
below the monomorphism threshold whose product q*W' still lands in
<W1, W2> (the "tension" rows), next to the total number audited.

    python3 scripts/audit_sweep.py [--max-n 7] [--depth 4] [--csv out.csv]
"""

from __future__ import annotations

import argparse
import csv
import sys

from borsuk import BundleData, FiberSpec, VectorBundleSpec, audit_degree_argument, build_from_presentation


def sweep(max_n: int, depth: int):
    point = build_from_presentation([], 64)
    for kind in ("real", "complex"):
        for n in range(1, max_n + 1, 2):
            f = FiberSpec(kind, n)
            kmax = n if kind == "real" else 2 * n
            for k in range(1, kmax + 1):
                rep = audit_degree_argument(BundleData(f, point), VectorBundleSpec(k), depth)
                below = [r for r in rep.rows if r.xy_degree < rep.threshold]
                yield {
                    "kind": kind,
                    "n": n,
                    "k": k,
                    "threshold": rep.threshold,
                    "rows": len(rep.rows),
                    "below_threshold": len(below),
                    "tension": len(rep.tension_rows),
                    "first_tension": rep.tension_rows[0].q if rep.tension_rows else "",
                }


def main() -> int:
    ap = argparse.ArgumentParser(description="audit sweep over point-base bundles")
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--csv", type=argparse.FileType("w"), default=None)
    args = ap.parse_args()
    rows = list(sweep(args.max_n, args.depth))
    out = csv.DictWriter(args.csv or sys.stdout, fieldnames=list(rows[0]))
    out.writeheader()
    out.writerows(rows)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
