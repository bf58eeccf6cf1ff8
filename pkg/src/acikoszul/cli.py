"""Command-line interface: ``acikoszul <command> ...``; every command prints JSON.

Exit codes: 0 ok, 10 candidate counterexample, 20 theorem violation,
64 usage, 65 input/parse error, 70 internal error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction

from . import __version__
from .aci import (
    BadWitness,
    HypothesisNotMet,
    NotACI,
    TheoremViolation,
    acyclicity_certificate,
    analyze,
    question1_verdict,
)
from .extend import InhomogeneousElement, NotInMaximalIdeal, sqrt_tower
from .fileformat import FileFormatError, PresentationFile, load
from .harness import FAMILIES, SearchConfig, search
from .koszul import BoundTooSmall, KoszulComplex, IndexOutOfRange, graded_oracle, homology
from .poly import ArityMismatch, BadCharacteristic, ExponentOverflow
from .ring import (
    InhomogeneousIdeal,
    NonMinimalPresentation,
    NonStandardGrading,
    NotSOP,
    UnitIdeal,
    hilbert,
    is_aci,
    is_sop,
    minimal_presentation,
    part_of_minimal_basis,
)
from .syntax import PolySyntaxError, UnknownVariable, format_poly

EXIT_OK, EXIT_CANDIDATE, EXIT_VIOLATION = 0, 10, 20
EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 64, 65, 70

INPUT_ERRORS = (
    FileFormatError, PolySyntaxError, UnknownVariable, BadCharacteristic, ArityMismatch,
    ExponentOverflow, InhomogeneousIdeal, UnitIdeal, NonMinimalPresentation, NonStandardGrading,
    NotSOP, NotACI, BadWitness, HypothesisNotMet, NotInMaximalIdeal, InhomogeneousElement,
    IndexOutOfRange, BoundTooSmall, OSError,
)

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def jsonable(v):
    """Exact JSON: big integers and rationals as strings, infinity as "infinite"."""
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v if abs(v) <= 2**53 else str(v)
    if isinstance(v, Fraction):
        return jsonable(v.numerator) if v.denominator == 1 else str(v)
    if isinstance(v, float):
        if math.isinf(v):
            return "infinite"
        raise TypeError(f"refusing to emit float {v}")
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _emit(obj, out) -> None:
    out.write(json.dumps(jsonable(obj), sort_keys=False) + "\n")


def _seq(R, text: str | None, fallback):
    if text is None:
        return list(fallback) if fallback is not None else None
    return [R.parse(s) for s in text.split(",") if s.strip()]


def _load(path):
    pf = load(path)
    R = pf.presentation()
    return pf, R


def _envelope(pf: PresentationFile, command: str, started: float, **body) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "engine_version": __version__,
        "command": command,
        "instance": pf.to_dict(),
        **body,
        "timing_seconds": str(round(time.perf_counter() - started, 3)),
    }


# -- commands ------------------------------------------------------------------------
def cmd_analyze(args, out) -> int:
    t0 = time.perf_counter()
    pf, R = _load(args.file)
    x = _seq(R, args.sop, pf.sequence(R))
    rep = analyze(R, x)
    _emit(_envelope(pf, "analyze", t0, report=rep.to_dict()), out)
    q = rep.question1
    if q and q["status"] == "candidate":
        return EXIT_CANDIDATE
    return EXIT_OK


def cmd_koszul(args, out) -> int:
    t0 = time.perf_counter()
    pf, R = _load(args.file)
    f = _seq(R, args.seq, None)
    K = KoszulComplex(R, f)
    top = K.n if args.max_i is None else min(args.max_i, K.n)
    rows = []
    for i in range(top + 1):
        H = homology(K, i)
        rows.append({"i": i, "zero": H.is_zero(), "length": H.length})
    _emit(_envelope(pf, "koszul", t0, sequence=[format_poly(g) for g in f], homology=rows), out)
    return EXIT_OK


def cmd_question1(args, out) -> int:
    t0 = time.perf_counter()
    pf, R = _load(args.file)
    x = _seq(R, args.sop, pf.sequence(R))
    if x is None:
        raise NotSOP("no sequence given (use --sop or a 'sop' key)")
    rep = question1_verdict(R, x)
    _emit(_envelope(pf, "question1", t0, report=rep.to_dict()), out)
    return EXIT_CANDIDATE if rep.status == "candidate" else EXIT_OK


def cmd_residual(args, out) -> int:
    t0 = time.perf_counter()
    pf, R = _load(args.file)
    x = _seq(R, args.sop, pf.sequence(R))
    if x is None:
        raise NotSOP("no sequence given (use --sop or a 'sop' key)")
    ztext = args.z or pf.z
    if ztext is None:
        raise BadWitness("no witness given (use --z or a 'z' key)")
    cert = acyclicity_certificate(R, x, R.parse(ztext))
    _emit(_envelope(pf, "residual", t0, certificate=cert.to_dict()), out)
    return EXIT_OK


def cmd_adjoin_sqrt(args, out) -> int:
    t0 = time.perf_counter()
    pf, R = _load(args.file)
    elems = _seq(R, args.elems, None)
    tower = sqrt_tower(R, elems)
    top = tower.result
    x = pf.sequence(R)
    body = {
        "doubled_weights": tower.doubled,
        "roots": [format_poly(r) for r in tower.roots],
        "roots_part_of_minimal_basis": part_of_minimal_basis(top, tower.roots),
        "dim": top.dim,
        "base_dim": R.dim,
    }
    new_sop = None
    if x is not None:
        roots = {f: r for f, r in zip(elems, tower.roots)}
        new_sop = [roots[g] if g in roots else tower.push(g) for g in x]
        body["sop"] = [format_poly(f) for f in new_sop]
        body["sop_verified"] = is_sop(top, new_sop)
    try:
        body["base_is_aci"] = is_aci(R)
        body["is_aci"] = is_aci(minimal_presentation(top)[0])
    except NonMinimalPresentation:
        body["base_is_aci"] = None
    presentation = PresentationFile.from_presentation(top, new_sop)
    body["presentation"] = presentation.to_dict()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(presentation.dumps())
    _emit(_envelope(pf, "adjoin-sqrt", t0, **body), out)
    return EXIT_OK


def cmd_hilbert(args, out) -> int:
    t0 = time.perf_counter()
    pf, R = _load(args.file)
    h = hilbert(R)
    body = {"numerator": list(h.numerator), "dimension": h.dimension, "multiplicity": h.multiplicity}
    _emit(_envelope(pf, "hilbert", t0, **body), out)
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    t0 = time.perf_counter()
    pf, R = _load(args.file)
    f = _seq(R, args.seq, pf.sequence(R))
    rows = graded_oracle(R, f, args.i, args.bound)
    table = [{"degree": r.degree, "dim_ker": r.dim_ker, "dim_im": r.dim_im, "dim_h": r.dim_h} for r in rows]
    _emit(_envelope(pf, "oracle", t0, i=args.i, bound=args.bound, rows=table, total=sum(r.dim_h for r in rows)), out)
    return EXIT_OK


def cmd_search(args, out) -> int:
    try:
        chars = tuple(int(c) for c in args.chars.split(","))
    except ValueError:
        raise UsageError(f"--chars expects comma-separated integers, got {args.chars!r}") from None
    fams = tuple(args.families.split(",")) if args.families else FAMILIES
    unknown = [f for f in fams if f not in FAMILIES]
    if unknown:
        raise UsageError(f"unknown families {unknown}; choose from {list(FAMILIES)}")
    if args.vars < 3 or args.maxdeg < 2 or args.count < 0:
        raise UsageError("need --vars >= 3, --maxdeg >= 2 and --count >= 0")
    config = SearchConfig(chars, args.vars, args.maxdeg, args.count, args.seed, fams)
    code = EXIT_OK
    for rec in search(config, args.jobs):
        rec = {"schema": SCHEMA_VERSION, "engine_version": __version__, **rec}
        _emit(rec, out)
        out.flush()
        if rec["status"] == "violation":
            code = EXIT_VIOLATION
        elif rec["status"] == "candidate" and code == EXIT_OK:
            code = EXIT_CANDIDATE
    return code


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="acikoszul", description="Exact Koszul-homology invariants of graded quotient rings.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    a = sub.add_parser("analyze", help="full invariant report")
    a.add_argument("file")
    a.add_argument("--sop", help="comma-separated sequence overriding the file's sop")
    a.set_defaults(run=cmd_analyze)

    k = sub.add_parser("koszul", help="Koszul homology lengths of a sequence")
    k.add_argument("file")
    k.add_argument("--seq", required=True)
    k.add_argument("--max-i", type=int, dest="max_i")
    k.set_defaults(run=cmd_koszul)

    q = sub.add_parser("question1", help="do socle witnesses kill every H_i(x, R), i >= 1?")
    q.add_argument("file")
    q.add_argument("--sop")
    q.set_defaults(run=cmd_question1)

    r = sub.add_parser("residual", help="acyclicity certificate for a socle witness")
    r.add_argument("file")
    r.add_argument("--z")
    r.add_argument("--sop")
    r.set_defaults(run=cmd_residual)

    s = sub.add_parser("adjoin-sqrt", help="tower of square-root extensions")
    s.add_argument("file")
    s.add_argument("--elems", required=True)
    s.add_argument("--out", help="write the new presentation file here")
    s.set_defaults(run=cmd_adjoin_sqrt)

    h = sub.add_parser("hilbert", help="Hilbert series data (standard grading)")
    h.add_argument("file")
    h.set_defaults(run=cmd_hilbert)

    o = sub.add_parser("oracle", help="graded linear-algebra table for H_i")
    o.add_argument("file")
    o.add_argument("--seq")
    o.add_argument("--i", type=int, required=True)
    o.add_argument("--bound", type=int, required=True)
    o.set_defaults(run=cmd_oracle)

    se = sub.add_parser("search", help="random almost complete intersections, JSON lines")
    se.add_argument("--chars", default="32003")
    se.add_argument("--vars", type=int, default=5)
    se.add_argument("--maxdeg", type=int, default=3)
    se.add_argument("--count", type=int, default=10)
    se.add_argument("--seed", type=int, default=0)
    se.add_argument("--families", help=f"comma-separated subset of {','.join(FAMILIES)}")
    se.add_argument("--jobs", type=int, default=1)
    se.set_defaults(run=cmd_search)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "run", None):
            raise UsageError("a command is required (try --help)")
        return args.run(args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except TheoremViolation as exc:
        _emit({"violation": exc.check, "details": exc.details, "instance": exc.instance}, out)
        print(f"THEOREM VIOLATION: {exc.check}", file=sys.stderr)
        return EXIT_VIOLATION
    except INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SystemExit as exc:
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
