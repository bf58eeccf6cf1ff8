"""Presented quotient rings R = A/I of a weighted polynomial ring and their
basic invariants."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .gb import GroebnerBasis, buchberger, ideal_quotient
from .poly import Inhomogeneous, Polynomial, PolyRing


class NonMinimalPresentation(ValueError):
    def __init__(self, variable: str, generator: Polynomial):
        super().__init__(f"generator {generator} has a bare term in variable {variable}; eliminate it first")
        self.variable = variable
        self.generator = generator


class InhomogeneousIdeal(ValueError):
    pass


class UnitIdeal(ValueError):
    pass


class NonStandardGrading(ValueError):
    pass


class NotSOP(ValueError):
    pass


# -- monomial ideal helpers ----------------------------------------------------
def _minimalize(gens) -> list[tuple]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _divisible(m, leads) -> bool:
    return any(all(a <= b for a, b in zip(h, m)) for h in leads)


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _one_minus_t(w: int) -> list[int]:
    if w == 0:
        return [0]
    out = [0] * (w + 1)
    out[0], out[w] = 1, -1
    return out


def hilbert_numerator(leads, weights) -> list[int]:
    """Numerator N(t) with HS(A/(leads)) = N(t) / prod(1 - t^w_i).

    Pivot recursion N(M) = N(M + (p)) + t^deg(p) N(M : p) on a pure power p.
    """
    weights = tuple(weights)
    memo: dict = {}

    def deg(m):
        return sum(w * e for w, e in zip(weights, m))

    def rec(gens: tuple) -> list[int]:
        if gens in memo:
            return memo[gens]
        if not gens:
            res = [1]
        elif all(sum(1 for e in g if e) <= 1 for g in gens) or all(
            not any(a and b for a, b in zip(g, h)) for g, h in itertools.combinations(gens, 2)
        ):
            res = [1]
            for g in gens:
                res = _pmul(res, _one_minus_t(deg(g)))
        else:
            counts = [sum(1 for g in gens if g[j]) for j in range(len(weights))]
            j = max(range(len(weights)), key=lambda k: counts[k])
            e = min(g[j] for g in gens if g[j] and sum(1 for x in g if x) > 1)
            p = tuple(e if k == j else 0 for k in range(len(weights)))
            plus = tuple(_minimalize(list(gens) + [p]))
            colon = tuple(_minimalize([tuple(max(a - b, 0) for a, b in zip(g, p)) for g in gens]))
            shifted = [0] * deg(p) + rec(colon)
            res = _trim(_padd(rec(plus), shifted))
        memo[gens] = res
        return res

    return _trim(list(rec(tuple(_minimalize(leads)))))


def divide_one_minus_t(num: list[int], w: int) -> list[int] | None:
    """Exact quotient num / (1 - t^w), or None if it does not divide."""
    num = list(num)
    q = [0] * max(len(num) - w, 0)
    for i in range(len(num) - w):
        c = num[i]
        q[i] = c
        num[i] -= c
        num[i + w] += c
    if any(num):
        return None
    return q or [0]


def series_length(num: list[int], weights) -> float | int:
    """Value at t = 1 of num / prod(1 - t^w) if that is a polynomial, else inf."""
    for w in weights:
        if not any(num):
            return 0
        num = divide_one_minus_t(num, w)
        if num is None:
            return math.inf
    return sum(num)


def standard_monomials_in_degree(leads, weights, d: int) -> list[tuple]:
    """Exponent vectors of weighted degree ``d`` not divisible by any lead."""
    n = len(weights)
    out: list[tuple] = []
    cur = [0] * n

    def rec(i, left):
        if i == n - 1:
            if left % weights[i] == 0:
                cur[i] = left // weights[i]
                m = tuple(cur)
                if not _divisible(m, leads):
                    out.append(m)
                cur[i] = 0
            return
        for e in range(left // weights[i] + 1):
            cur[i] = e
            rec(i + 1, left - e * weights[i])
        cur[i] = 0

    if n == 0:
        return [()] if d == 0 else []
    rec(0, d)
    return out


def count_standard_monomials(leads, nvars: int) -> float | int:
    """Number of monomials outside the monomial ideal, or inf."""
    leads = _minimalize(leads)
    bounds = []
    for j in range(nvars):
        pure = [g[j] for g in leads if g[j] and sum(1 for x in g if x) == 1]
        if not pure:
            return math.inf
        bounds.append(min(pure))
    total = 0
    for m in itertools.product(*(range(b) for b in bounds)):
        if not _divisible(m, leads):
            total += 1
    return total


# -- presentations --------------------------------------------------------------
class RingPresentation:
    """R = A/I with A = K[vars] weighted and I generated by weighted-homogeneous
    polynomials without constant terms.  The reduced GB of I is computed once."""

    def __init__(self, ring: PolyRing, ideal):
        self.ring = ring
        gens = [g for g in ideal if g]
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator lives in a different ring")
            d = g.weighted_degree()
            if isinstance(d, Inhomogeneous):
                hint = find_weights(gens, ring.names)
                msg = f"generator {g} is not weighted-homogeneous (degrees {d.high} and {d.low})"
                if hint:
                    msg += f"; try weights {list(hint)}"
                raise InhomogeneousIdeal(msg)
            if g.constant_coefficient():
                raise UnitIdeal(f"generator {g} has a unit term")
        self.ideal = tuple(gens)
        self.gb = buchberger(list(self.ideal), ring)
        self._dim: int | None = None

    @classmethod
    def from_strings(cls, names, ideal, weights=None, char: int = 0) -> "RingPresentation":
        ring = PolyRing(names, weights, char)
        return cls(ring, [ring.parse(s) for s in ideal])

    def __repr__(self):
        return f"RingPresentation({list(self.ring.names)}, [{', '.join(map(str, self.ideal))}])"

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def parse(self, text: str) -> Polynomial:
        return self.ring.parse(text)

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.gb.normal_form(f)

    def extend_ideal(self, extra) -> GroebnerBasis:
        """GB of I + (extra)."""
        return buchberger(list(self.ideal) + [g for g in extra if g], self.ring)

    def check_minimal(self) -> None:
        for g in self.ideal:
            for exps, _ in g.terms():
                if sum(exps) == 1:
                    raise NonMinimalPresentation(self.ring.names[exps.index(1)], g)

    def variables_in_ideal(self) -> set[int]:
        used: set[int] = set()
        for g in self.ideal:
            used |= g.variables()
        return used

    @property
    def dim(self) -> int:
        if self._dim is None:
            self._dim = krull_dim(self)
        return self._dim


def find_weights(gens, names, bound: int = 12) -> tuple[int, ...] | None:
    """Smallest positive integer weighting (by total weight, then lexicographic)
    making every generator homogeneous, with free entries at most ``bound``."""
    n = len(names)
    rows = []
    for g in gens:
        ts = [e for e, _ in g.terms()]
        for e in ts[1:]:
            rows.append([a - b for a, b in zip(ts[0], e)])
    if not rows:
        return (1,) * n
    ech = linalg.echelon(rows, 0)
    pivots = [next(j for j, x in enumerate(r) if x) for r in ech]
    free = [j for j in range(n) if j not in pivots]
    involved = [j for j in free if any(r[j] for r in ech)]
    best = None
    for values in itertools.product(range(1, bound + 1), repeat=len(involved)):
        w: list = [Fraction(1)] * n
        for j, v in zip(involved, values):
            w[j] = Fraction(v)
        ok = True
        for r, pc in zip(ech, pivots):
            val = -sum(r[j] * w[j] for j in free)
            if val <= 0 or val.denominator != 1:
                ok = False
                break
            w[pc] = val
        if ok:
            cand = tuple(int(x) for x in w)
            if best is None or (sum(cand), cand) < (sum(best), best):
                best = cand
    return best


def krull_dim(R: RingPresentation) -> int:
    """Largest set of variables containing the support of no leading monomial."""
    if R.gb.is_unit():
        return -1
    supports = [frozenset(j for j, e in enumerate(m) if e) for m in R.gb.leading_exponents()]
    return dim_from_supports(supports, R.nvars)


def dim_from_supports(supports, n: int) -> int:
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            s = frozenset(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def _leads_dim(G: GroebnerBasis) -> int:
    if G.is_unit():
        return -1
    supports = [frozenset(j for j, e in enumerate(m) if e) for m in G.leading_exponents()]
    return dim_from_supports(supports, G.ring.nvars)


def minimal_generators(R: RingPresentation) -> list[Polynomial]:
    """A minimal homogeneous generating set of I (graded Nakayama)."""
    kept: list[Polynomial] = []
    for g in sorted(R.ideal, key=lambda f: f.weighted_degree()):
        if not kept or buchberger(kept, R.ring).normal_form(g):
            kept.append(g)
    return kept


def embdim_and_mu(R: RingPresentation) -> tuple[int, int]:
    R.check_minimal()
    return R.nvars, len(minimal_generators(R))


def is_aci(R: RingPresentation) -> bool:
    embdim, mu = embdim_and_mu(R)
    return mu == embdim - R.dim + 1


def length(R: RingPresentation, J: GroebnerBasis) -> float | int:
    """Length of A/J (J containing I): standard-monomial count or ``math.inf``."""
    if J.is_unit():
        return 0
    return count_standard_monomials(J.leading_exponents(), R.nvars)


@dataclass(frozen=True)
class HilbertData:
    numerator: tuple[int, ...]
    dimension: int
    multiplicity: int

    def series_terms(self, count: int) -> list[int]:
        """First ``count`` values of the Hilbert function."""
        coeffs = [0] * count
        for i, c in enumerate(self.numerator[:count]):
            coeffs[i] = c
        for _ in range(self.dimension):
            for i in range(1, count):
                coeffs[i] += coeffs[i - 1]
        return coeffs


def hilbert(R: RingPresentation) -> HilbertData:
    if not R.ring.is_standard_graded:
        raise NonStandardGrading("Hilbert data is only reported for the standard grading")
    num = hilbert_numerator(R.gb.leading_exponents(), R.ring.weights)
    d = R.nvars
    while d > 0:
        q = divide_one_minus_t(num, 1)
        if q is None:
            break
        num, d = _trim(q), d - 1
    return HilbertData(tuple(num), d, sum(num))


# -- parameter sequences --------------------------------------------------------
@dataclass
class ParameterSequence:
    elements: tuple[Polynomial, ...]
    verified: bool = False
    names: tuple[str, ...] = field(default=())

    @classmethod
    def parse(cls, R: RingPresentation, texts) -> "ParameterSequence":
        return cls(tuple(R.parse(t) for t in texts), names=tuple(texts))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _elements(x) -> list[Polynomial]:
    return list(x.elements) if isinstance(x, ParameterSequence) else list(x)


def is_sop(R: RingPresentation, x) -> bool:
    elems = _elements(x)
    ok = len(elems) == R.dim and _leads_dim(R.extend_ideal(elems)) == 0
    if isinstance(x, ParameterSequence):
        x.verified = ok
    return ok


def require_sop(R: RingPresentation, x) -> None:
    if not is_sop(R, x):
        raise NotSOP(f"[{', '.join(map(str, _elements(x)))}] is not a system of parameters")


def m2_in_x(R: RingPresentation, x) -> bool:
    J = R.extend_ideal(_elements(x))
    v = R.ring.gens()
    return all(not J.normal_form(v[i] * v[j]) for i in range(R.nvars) for j in range(i, R.nvars))


def part_of_minimal_basis(R: RingPresentation, x) -> bool:
    """Images of x in m/m^2 are linearly independent."""
    v = R.ring.gens()
    sq = [v[i] * v[j] for i in range(R.nvars) for j in range(i, R.nvars)]
    G = buchberger(sq + list(R.ideal), R.ring)
    rows = []
    for f in _elements(x):
        if f.constant_coefficient():
            return False
        nf = G.normal_form(f)
        coords = [0] * R.nvars
        for exps, c in nf.terms():
            coords[exps.index(1)] = c
        rows.append(coords)
    return linalg.rank(rows, R.ring.char) == len(rows)


def _linear_basis(polys: list[Polynomial], p: int) -> list[Polynomial]:
    """Subset of ``polys`` whose members are linearly independent, spanning the rest."""
    keys = sorted({k for f in polys for k in f._t})
    index = {k: i for i, k in enumerate(keys)}
    kept: list[Polynomial] = []
    rows: list[dict] = []
    for f in polys:
        row = {index[k]: c for k, c in f._t.items()}
        if linalg.rank_sparse(rows + [row], p) > len(rows):
            rows.append(row)
            kept.append(f)
    return kept


def socle_witnesses(R: RingPresentation, x) -> list[Polynomial]:
    """Homogeneous elements spanning ((x)+I : m) / ((x)+I)."""
    require_sop(R, x)
    J = R.extend_ideal(_elements(x))
    S = ideal_quotient(J, R.ring.gens())
    cands = [J.normal_form(s) for s in S.polys]
    cands = [c for c in cands if c]
    by_degree: dict[int, list[Polynomial]] = {}
    for c in cands:
        by_degree.setdefault(c.weighted_degree(), []).append(c)
    out = []
    for d in sorted(by_degree):
        out.extend(f.monic() for f in _linear_basis(by_degree[d], R.ring.char))
    for z in out:
        if not J.normal_form(z) or any(J.normal_form(z * v) for v in R.ring.gens()):
            raise AssertionError(f"socle witness {z} fails its defining check")
    return out


# -- presentation surgery ---------------------------------------------------------
def minimal_presentation(R: RingPresentation):
    """Eliminate variables occurring as bare terms of generators.

    Returns ``(R_min, images)`` where ``images[i]`` is the image in R_min of
    the i-th variable of R.  Homogeneity makes every elimination a plain
    substitution v -> -(g - c v)/c.
    """
    ring = R.ring
    subst: dict[int, Polynomial] = {}
    gens = list(R.ideal)
    while True:
        hit = None
        for g in gens:
            for exps, c in g.terms():
                if sum(exps) == 1:
                    hit = (g, exps.index(1), c)
                    break
            if hit:
                break
        if hit is None:
            break
        g, i, c = hit
        image = (ring.gen(i).scale(c) - g).scale(ring.inv(c))
        ident = {j: ring.gen(j) for j in range(ring.nvars)}
        ident[i] = image

        def sub(f):
            return f.substitute(ident, ring, {})

        subst = {j: sub(f) for j, f in subst.items()}
        subst[i] = image
        gens = [h for h in (sub(f) for f in gens if f is not g) if h]
    keep = [j for j in range(ring.nvars) if j not in subst]
    new_ring = PolyRing([ring.names[j] for j in keep], [ring.weights[j] for j in keep], ring.char)
    index_map = {j: k for k, j in enumerate(keep)}

    def to_new(f: Polynomial) -> Polynomial:
        return f.substitute({}, new_ring, index_map)

    images = [to_new(subst[j]) if j in subst else new_ring.gen(index_map[j]) for j in range(ring.nvars)]
    R_min = RingPresentation(new_ring, [to_new(g) for g in gens])

    def push(f: Polynomial) -> Polynomial:
        return f.substitute({j: images[j] for j in range(ring.nvars)}, new_ring, {})

    R_min.push = push
    return R_min, images
