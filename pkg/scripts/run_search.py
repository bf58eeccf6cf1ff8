"""Run the random search and tally statuses.

    python3 scripts/run_search.py --count 200 --seed 1 --jobs 4 --out search.jsonl

Records are written as JSON lines (same format as ``acikoszul search``); a
tally by family and status goes to stderr.
"""

import argparse
import collections
import json
import sys

from acikoszul.cli import jsonable
from acikoszul.harness import FAMILIES, SearchConfig, search


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chars", default="32003")
    p.add_argument("--vars", type=int, default=5)
    p.add_argument("--maxdeg", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="JSON-lines file (default: stdout)")
    args = p.parse_args(argv)

    config = SearchConfig(
        chars=tuple(int(c) for c in args.chars.split(",")),
        max_vars=args.vars,
        max_deg=args.maxdeg,
        count=args.count,
        seed=args.seed,
        families=FAMILIES,
    )
    tally = collections.Counter()
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for rec in search(config, args.jobs):
            out.write(json.dumps(jsonable(rec)) + "\n")
            out.flush()
            tally[(rec["family"], rec["status"])] += 1
    finally:
        if out is not sys.stdout:
            out.close()
    for (family, status), n in sorted(tally.items()):
        print(f"{family:18s} {status:10s} {n}", file=sys.stderr)
    return 20 if any(s == "violation" for _, s in tally) else 0


if __name__ == "__main__":
    sys.exit(main())
