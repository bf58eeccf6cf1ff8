"""Analyze every ring in corpus/ and print a one-line summary per file.

    python3 scripts/run_examples.py [corpus_dir]
"""

import sys
import time
from pathlib import Path

from acikoszul.aci import analyze
from acikoszul.fileformat import load

FIELDS = ("dim", "depth", "embdim", "mu_I", "is_aci", "is_cm", "e_x", "length_R_mod_x", "koszul_lengths")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    corpus = Path(argv[0]) if argv else Path(__file__).resolve().parents[1] / "corpus"
    for path in sorted(corpus.glob("*.ring")):
        pf = load(path)
        R = pf.presentation()
        x = pf.sequence(R)
        t0 = time.perf_counter()
        rep = analyze(R, x).to_dict()
        secs = time.perf_counter() - t0
        summary = ", ".join(f"{k}={rep.get(k)}" for k in FIELDS)
        print(f"{path.stem:14s} {secs:6.2f}s  {summary}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
