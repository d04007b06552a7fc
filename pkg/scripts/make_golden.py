"""Regenerate the golden machine-format reports from tests/golden/manifest.json.

    python3 scripts/make_golden.py          # rewrite tests/golden/expected/*.json
    python3 scripts/make_golden.py --check  # exit 1 if any file would change
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from pathlib import Path

from borsuk.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def render(case: dict) -> tuple[int, str]:
    argv = [case["verb"], "--input", str(GOLDEN / "docs" / case["doc"]), "--format", "json", *case["args"]]
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def main_() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()
    stale = []
    for case in json.loads((GOLDEN / "manifest.json").read_text()):
        code, out = render(case)
        if code != 0:
            print(f"{case['name']}: exit {code}", file=sys.stderr)
            return 1
        path = GOLDEN / "expected" / f"{case['name']}.json"
        if not path.exists() or path.read_text() != out:
            stale.append(case["name"])
            if not args.check:
                path.write_text(out)
    verb = "stale" if args.check else "wrote"
    print(f"{verb}: {', '.join(stale) or 'nothing'}")
    return 1 if args.check and stale else 0


if __name__ == "__main__":
    raise SystemExit(main_())
