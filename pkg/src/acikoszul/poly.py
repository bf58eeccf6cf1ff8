"""Exact coefficients, weighted monomial orders and sparse polynomials.

Terms are stored internally under *order keys*::

    (component, -weighted_degree, e_n, e_{n-1}, ..., e_1)

so that the weighted graded reverse lexicographic order (and its
position-over-term extension to free modules) is plain tuple order with the
LARGEST term having the SMALLEST key.  Multiplying monomials is adding keys
componentwise (monomials carry component 0), which keeps the hot loops of the
Groebner engine on native tuple operations.
"""

from __future__ import annotations

from fractions import Fraction
from operator import add as _kadd
from typing import Iterable, NamedTuple

DEFAULT_PRIME = 32003
MAX_EXPONENT = 2**31 - 1


class ArityMismatch(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


class ExponentOverflow(OverflowError):
    pass


class BadCharacteristic(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Inhomogeneous(NamedTuple):
    """Result of :func:`weighted_degree` for a polynomial mixing degrees."""

    high: int
    low: int


class MonomialOrder:
    """Weighted graded reverse lexicographic order (last variable smallest)."""

    def __init__(self, weights: tuple[int, ...]):
        if any(w < 1 for w in weights):
            raise ValueError(f"weights must be positive, got {weights}")
        self.weights = tuple(weights)
        self._rw = tuple(reversed(self.weights))

    def degree(self, exps) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))

    def key(self, exps, comp: int = 0) -> tuple:
        return (comp, -self.degree(exps)) + tuple(reversed(exps))

    def compare(self, m1, m2) -> int:
        """Return 1 if ``m1 > m2``, -1 if ``m1 < m2`` and 0 if equal."""
        if len(m1) != len(m2) or len(m1) != len(self.weights):
            raise ArityMismatch(f"arity {len(m1)} vs {len(m2)} (ring has {len(self.weights)})")
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 < k2) - (k1 > k2)


class PolyRing:
    """Ambient polynomial ring K[v_1..v_n] with a positive weighting.

    ``char == 0`` means the rationals; otherwise coefficients live in F_p for
    an odd prime ``p < 2**31``.
    """

    def __init__(self, names: Iterable[str], weights: Iterable[int] | None = None, char: int = 0):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self.nvars = len(self.names)
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if len(self.weights) != self.nvars:
            raise ArityMismatch(f"{self.nvars} variables but {len(self.weights)} weights")
        if char != 0 and not (2 < char < 2**31 and is_prime(char)):
            raise BadCharacteristic(f"characteristic must be 0 or an odd prime < 2^31, got {char}")
        self.char = char
        self.order = MonomialOrder(self.weights)
        self.index = {name: i for i, name in enumerate(self.names)}

    def __repr__(self):
        return f"PolyRing({list(self.names)}, weights={list(self.weights)}, char={self.char})"

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.weights == other.weights
            and self.char == other.char
        )

    def __hash__(self):
        return hash((self.names, self.weights, self.char))

    @property
    def is_standard_graded(self) -> bool:
        return all(w == 1 for w in self.weights)

    # -- coefficients -------------------------------------------------------
    def coerce(self, c):
        p = self.char
        if p == 0:
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise BadCharacteristic(f"denominator of {c} vanishes mod {p}")
            return c.numerator * pow(c.denominator, -1, p) % p
        return int(c) % p

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        if self.char:
            return pow(c, -1, self.char)
        return 1 / Fraction(c)

    # -- monomials ----------------------------------------------------------
    def key(self, exps, comp: int = 0) -> tuple:
        if len(exps) != self.nvars:
            raise ArityMismatch(f"exponent vector of length {len(exps)} in a ring of {self.nvars} variables")
        return self.order.key(exps, comp)

    def unit_key(self, comp: int) -> tuple:
        return (comp, 0) + (0,) * self.nvars

    @staticmethod
    def exps(key) -> tuple:
        return tuple(reversed(key[2:]))

    # -- constructors -------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.coerce(c)
        return Polynomial(self, {self.unit_key(0): c} if c else {})

    def gen(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.index[i]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {self.key(e): self.coerce(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1) -> "Polynomial":
        return self.from_terms({tuple(exps): coeff})

    def from_terms(self, terms) -> "Polynomial":
        """Build a polynomial from ``{exponent tuple: coefficient}``."""
        out: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for exps, c in items:
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if any(e > MAX_EXPONENT for e in exps):
                raise ExponentOverflow(f"exponent exceeds 32-bit bound in {exps}")
            k = self.key(tuple(exps))
            v = out.get(k, 0) + self.coerce(c)
            if self.char:
                v %= self.char
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        from .syntax import parse_poly

        return parse_poly(text, self)


def _check_overflow(terms: dict) -> None:
    for k in terms:
        if -k[1] > MAX_EXPONENT and max(k[2:]) > MAX_EXPONENT:
            raise ExponentOverflow("exponent exceeds 32-bit bound")


class Polynomial:
    """Immutable sparse polynomial; terms keyed by order keys (see module doc)."""

    __slots__ = ("ring", "_t")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._t = terms

    # -- inspection ---------------------------------------------------------
    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self._t.items())))

    def terms(self) -> list[tuple[tuple, object]]:
        """(exponents, coefficient) pairs, strictly descending in the order."""
        return [(PolyRing.exps(k), self._t[k]) for k in sorted(self._t)]

    def leading_key(self):
        if not self._t:
            raise ZeroPolynomial("zero polynomial has no leading term")
        return min(self._t)

    def leading_exponents(self) -> tuple:
        return PolyRing.exps(self.leading_key())

    def leading_coefficient(self):
        return self._t[self.leading_key()]

    def variables(self) -> set[int]:
        n = self.ring.nvars
        return {n - 1 - j for k in self._t for j, e in enumerate(k[2:]) if e}

    def is_constant(self) -> bool:
        return all(k[1] == 0 for k in self._t)

    def constant_coefficient(self):
        return self._t.get(self.ring.unit_key(0), 0)

    def weighted_degree(self):
        if not self._t:
            raise ZeroPolynomial("weighted degree of the zero polynomial")
        degs = {-k[1] for k in self._t}
        if len(degs) == 1:
            return degs.pop()
        return Inhomogeneous(max(degs), min(degs))

    def is_homogeneous(self) -> bool:
        return bool(self._t) and isinstance(self.weighted_degree(), int)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        from .syntax import format_poly

        return format_poly(self)

    # -- arithmetic ---------------------------------------------------------
    def _coerce_other(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.nvars != self.ring.nvars:
                raise ArityMismatch(f"{self.ring.nvars} vs {other.ring.nvars} variables")
            if other.ring.char != self.ring.char:
                raise BadCharacteristic(f"characteristic {self.ring.char} vs {other.ring.char}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce_other(other)
        p = self.ring.char
        out = dict(self._t)
        for k, v in other._t.items():
            nv = out.get(k, 0) + v
            if p:
                nv %= p
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.char
        if p:
            return Polynomial(self.ring, {k: p - v for k, v in self._t.items()})
        return Polynomial(self.ring, {k: -v for k, v in self._t.items()})

    def __sub__(self, other):
        return self + (-self._coerce_other(other))

    def __rsub__(self, other):
        return self._coerce_other(other) - self

    def scale(self, c) -> "Polynomial":
        c = self.ring.coerce(c)
        if not c:
            return self.ring.zero()
        p = self.ring.char
        if p:
            return Polynomial(self.ring, {k: v * c % p for k, v in self._t.items()})
        return Polynomial(self.ring, {k: v * c for k, v in self._t.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce_other(other)
        p = self.ring.char
        out: dict = {}
        for k1, v1 in self._t.items():
            for k2, v2 in other._t.items():
                k = tuple(map(_kadd, k1, k2))
                nv = out.get(k, 0) + v1 * v2
                if p:
                    nv %= p
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        _check_overflow(out)
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self) -> "Polynomial":
        return self.scale(self.ring.inv(self.leading_coefficient()))

    def substitute(self, images: dict[int, "Polynomial"], target: PolyRing, index_map: dict[int, int]) -> "Polynomial":
        """Map into ``target``: variable i goes to ``images[i]`` if given,
        else to target variable ``index_map[i]``."""
        result = target.zero()
        powers: dict = {}

        def power(i, e):
            if (i, e) not in powers:
                base = images[i] if i in images else target.gen(index_map[i])
                powers[(i, e)] = base**e
            return powers[(i, e)]

        for exps, c in self.terms():
            term = target.const(c if target.char == self.ring.char else Fraction(c))
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result


# -- functional API ---------------------------------------------------------
def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def weighted_degree(f: Polynomial):
    return f.weighted_degree()


def compare(m1, m2, order: MonomialOrder) -> int:
    return order.compare(m1, m2)
