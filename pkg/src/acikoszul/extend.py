"""Square-root extensions R[X]/(X^2 - a) and towers of them.

The new variable is placed first in the variable list so that, under
weighted grevlex, X^2 is the leading term of X^2 - a; the old basis plus
X^2 - a is then already a Groebner basis and every element has a unique
normal form r + s X with r, s reduced over the base.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .poly import Polynomial, PolyRing
from .ring import RingPresentation


class NotInMaximalIdeal(ValueError):
    pass


class InhomogeneousElement(ValueError):
    pass


def fresh_name(names, stem: str = "X") -> str:
    taken = set(names)
    if stem not in taken:
        return stem
    k = 1
    while f"{stem}_{k}" in taken:
        k += 1
    return f"{stem}_{k}"


def _identity_into(ring: PolyRing, offset: int = 0) -> Callable[[Polynomial], Polynomial]:
    def move(f: Polynomial) -> Polynomial:
        return f.substitute({}, ring, {i: i + offset for i in range(f.ring.nvars)})

    return move


def double_weights(R: RingPresentation):
    """Same presentation with every weight doubled, plus the transport map."""
    ring = PolyRing(R.ring.names, [2 * w for w in R.ring.weights], R.ring.char)
    move = _identity_into(ring)
    return RingPresentation(ring, [move(g) for g in R.ideal]), move


@dataclass
class SqrtExtension:
    """``result`` = base[X]/(I + (X^2 - a)); ``base`` already carries the
    doubled weights when ``doubled`` is set, and ``embed`` maps elements of
    the original ring into ``result``."""

    base: RingPresentation
    a: Polynomial
    result: RingPresentation
    variable: str
    doubled: bool
    embed: Callable[[Polynomial], Polynomial] = field(repr=False)

    @property
    def root(self) -> Polynomial:
        return self.result.ring.gen(0)

    def lift(self, r: Polynomial, s: Polynomial) -> Polynomial:
        """r + s X, with r and s taken in ``base``."""
        up = _identity_into(self.result.ring, 1)
        return up(r) + up(s) * self.root

    def split(self, f: Polynomial) -> tuple[Polynomial, Polynomial]:
        """Coordinates (r, s) in ``base`` of the normal form r + s X of f."""
        r: dict = {}
        s: dict = {}
        for exps, c in self.result.reduce(f).terms():
            if exps[0] > 1:
                raise AssertionError("normal form has X-degree above one")
            (s if exps[0] else r)[exps[1:]] = c
        return self.base.ring.from_terms(r), self.base.ring.from_terms(s)

    def pair_multiply(self, p1, p2) -> tuple[Polynomial, Polynomial]:
        """(r, s)(r', s') = (r r' + s s' a, r s' + r' s), reduced over the base."""
        (r, s), (r2, s2) = p1, p2
        red = self.base.reduce
        return red(r * r2 + s * s2 * self.a), red(r * s2 + r2 * s)


def adjoin_sqrt(R: RingPresentation, a: Polynomial, name: str | None = None) -> SqrtExtension:
    """R(a^(1/2)) = R[X]/(I + (X^2 - a)) with X of weight deg(a)/2.

    If deg(a) is odd every weight is doubled first.
    """
    if not a or a.constant_coefficient():
        raise NotInMaximalIdeal(f"{a} is not in the maximal ideal")
    d = a.weighted_degree()
    if not isinstance(d, int):
        raise InhomogeneousElement(f"{a} is not weighted-homogeneous")
    base, move = R, None
    if d % 2:
        base, move = double_weights(R)
        a, d = move(a), 2 * d
    name = name or fresh_name(base.ring.names)
    ring = PolyRing((name,) + base.ring.names, (d // 2,) + base.ring.weights, base.ring.char)
    up = _identity_into(ring, 1)
    X = ring.gen(0)
    result = RingPresentation(ring, [up(g) for g in base.ideal] + [X * X - up(a)])

    def embed(f: Polynomial) -> Polynomial:
        return up(move(f) if move is not None else f)

    return SqrtExtension(base, a, result, name, move is not None, embed)


@dataclass
class SqrtTower:
    base: RingPresentation
    steps: list[SqrtExtension]
    result: RingPresentation
    roots: list[Polynomial]
    doubled: bool
    push: Callable[[Polynomial], Polynomial] = field(repr=False)


def sqrt_tower(R: RingPresentation, x, stem: str = "X") -> SqrtTower:
    """Adjoin square roots of x_1, ..., x_l one after another.

    Weights are doubled once up front if any x_i has odd degree, so no later
    step doubles again.  ``push`` maps elements of R to the top ring.
    """
    x = list(x)
    for f in x:
        if not f or f.constant_coefficient():
            raise NotInMaximalIdeal(f"{f} is not in the maximal ideal")
        if not isinstance(f.weighted_degree(), int):
            raise InhomogeneousElement(f"{f} is not weighted-homogeneous")
    cur, move = R, None
    if any(f.weighted_degree() % 2 for f in x):
        cur, move = double_weights(R)
        x = [move(f) for f in x]
    steps: list[SqrtExtension] = []

    def through(f: Polynomial, start: int = 0) -> Polynomial:
        for step in steps[start:]:
            f = step.embed(f)
        return f

    for k, f in enumerate(x):
        ext = adjoin_sqrt(cur, through(f), fresh_name(cur.ring.names, f"{stem}{k + 1}"))
        steps.append(ext)
        cur = ext.result
    roots = [through(step.root, k + 1) for k, step in enumerate(steps)]

    def push(f: Polynomial) -> Polynomial:
        return through(move(f) if move is not None else f)

    return SqrtTower(R, steps, cur, roots, move is not None, push)
