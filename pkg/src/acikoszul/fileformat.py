"""Plain-text presentation files.

::

    # comment
    char = 32003
    vars = [x, y, z]
    weights = [1, 1, 1]
    ideal = [x^2, x*y,
             x*z]
    sop = [y, z]
    z = x

``vars`` and ``ideal`` are required; ``char`` defaults to 0 (rationals),
``weights`` to all ones.  Lists may span several lines.  Unknown or repeated
keys are errors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ring import RingPresentation, ParameterSequence
from .syntax import format_poly

KEYS = ("char", "vars", "weights", "ideal", "sop", "z")
LIST_KEYS = {"vars", "weights", "ideal", "sop"}


class FileFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass
class PresentationFile:
    vars: list[str]
    ideal: list[str]
    char: int = 0
    weights: list[int] | None = None
    sop: list[str] | None = None
    z: str | None = None

    # -- conversion ----------------------------------------------------------
    def presentation(self) -> RingPresentation:
        return RingPresentation.from_strings(self.vars, self.ideal, self.weights, self.char)

    def sequence(self, R: RingPresentation) -> ParameterSequence | None:
        if self.sop is None:
            return None
        return ParameterSequence.parse(R, self.sop)

    def to_dict(self) -> dict:
        out = {"char": self.char, "vars": list(self.vars)}
        out["weights"] = list(self.weights) if self.weights else [1] * len(self.vars)
        out["ideal"] = list(self.ideal)
        if self.sop is not None:
            out["sop"] = list(self.sop)
        if self.z is not None:
            out["z"] = self.z
        return out

    def dumps(self) -> str:
        d = self.to_dict()
        lines = []
        for key in KEYS:
            if key not in d:
                continue
            v = d[key]
            if isinstance(v, list):
                lines.append(f"{key} = [{', '.join(str(e) for e in v)}]")
            else:
                lines.append(f"{key} = {v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_presentation(cls, R: RingPresentation, sop=None, z=None) -> "PresentationFile":
        return cls(
            vars=list(R.ring.names),
            ideal=[format_poly(g) for g in R.ideal],
            char=R.ring.char,
            weights=list(R.ring.weights),
            sop=[format_poly(f) for f in sop] if sop is not None else None,
            z=format_poly(z) if z is not None else None,
        )


def _split_list(body: str, line: int) -> list[str]:
    body = body.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise FileFormatError("expected a bracketed list", line)
    inner = body[1:-1].strip()
    if not inner:
        return []
    items = [s.strip() for s in inner.split(",")]
    if any(not s for s in items):
        raise FileFormatError("empty list entry", line)
    return items


def loads(text: str) -> PresentationFile:
    values: dict = {}
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        raw = lines[i].split("#", 1)[0].strip()
        start = i + 1
        i += 1
        if not raw:
            continue
        if "=" not in raw:
            raise FileFormatError(f"expected 'key = value', got {raw!r}", start)
        key, value = (s.strip() for s in raw.split("=", 1))
        if key not in KEYS:
            raise FileFormatError(f"unknown key {key!r}", start)
        if key in values:
            raise FileFormatError(f"repeated key {key!r}", start)
        if key in LIST_KEYS:
            while value.startswith("[") and "]" not in value:
                if i >= len(lines):
                    raise FileFormatError(f"unterminated list for {key!r}", start)
                value += " " + lines[i].split("#", 1)[0].strip()
                i += 1
            values[key] = _split_list(value, start)
        else:
            if not value:
                raise FileFormatError(f"missing value for {key!r}", start)
            values[key] = value
        values.setdefault("_lines", {})[key] = start
    for key in ("vars", "ideal"):
        if key not in values:
            raise FileFormatError(f"missing required key {key!r}")
    where = values.pop("_lines")
    try:
        char = int(values.get("char", 0))
    except ValueError:
        raise FileFormatError("char must be an integer", where.get("char")) from None
    weights = None
    if "weights" in values:
        try:
            weights = [int(w) for w in values["weights"]]
        except ValueError:
            raise FileFormatError("weights must be integers", where["weights"]) from None
    return PresentationFile(
        vars=values["vars"],
        ideal=values["ideal"],
        char=char,
        weights=weights,
        sop=values.get("sop"),
        z=values.get("z"),
    )


def load(path) -> PresentationFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
