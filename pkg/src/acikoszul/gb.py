"""Buchberger engine for ideals and for submodules of free modules.

One engine serves both: a polynomial is a module element living in
component 0.  Vectors are plain ``dict`` objects mapping order keys (see
:mod:`acikoszul.poly`) to nonzero coefficients; the leading term is the
minimal key.  Module orders are position-over-term with lower component
indices dominating.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import count
from operator import add, le, sub

from .poly import ArityMismatch, BadCharacteristic, Polynomial, PolyRing


class RankMismatch(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


# -- low level vector helpers ---------------------------------------------------
def _lcm(a, b, weights_rev):
    tail = tuple(map(max, a[2:], b[2:]))
    return (a[0], -sum(map(int.__mul__, weights_rev, tail))) + tail


def _divides(a, b) -> bool:
    return a[0] == b[0] and a[1] >= b[1] and all(map(le, a[2:], b[2:]))


def _coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a[2:], b[2:]))


def _monic(v: dict, p: int) -> dict:
    lead = min(v)
    c = v[lead]
    if c == 1:
        return v
    if p:
        ic = pow(c, -1, p)
        return {k: x * ic % p for k, x in v.items()}
    ic = 1 / Fraction(c)
    return {k: x * ic for k, x in v.items()}


def _scale_shift(v: dict, c, q, p: int) -> dict:
    if p:
        return {tuple(map(add, k, q)): x * c % p for k, x in v.items()}
    return {tuple(map(add, k, q)): x * c for k, x in v.items()}


def _axpy(acc: dict, v: dict, c, p: int) -> None:
    """acc += c * v, in place."""
    for k, x in v.items():
        nv = acc.get(k, 0) + c * x
        if p:
            nv %= p
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


class _Reducer:
    """Divisor lookup table over a set of monic vectors, grouped by component."""

    def __init__(self, p: int):
        self.p = p
        self.by_comp: dict[int, list] = {}

    def add(self, v: dict) -> None:
        lead = min(v)
        tail = tuple((k, x) for k, x in v.items() if k != lead)
        self.by_comp.setdefault(lead[0], []).append((lead, lead[1], lead[2:], tail, v))

    def remove(self, v: dict) -> None:
        lead = min(v)
        lst = self.by_comp[lead[0]]
        lst[:] = [e for e in lst if e[4] is not v]

    def find(self, t):
        cands = self.by_comp.get(t[0])
        if cands:
            d = t[1]
            tt = t[2:]
            for lead, ld, exps, tail, _ in cands:
                if ld >= d and all(map(le, exps, tt)):
                    return lead, tail
        return None

    def reduce(self, f: dict, full: bool = True) -> dict:
        """Normal form of ``f``; with ``full=False`` stop at an irreducible lead."""
        p = self.p
        f = dict(f)
        heap = list(f)
        heapq.heapify(heap)
        out = {}
        find = self.find
        while heap:
            t = heapq.heappop(heap)
            c = f.get(t)
            if c is None:
                continue
            hit = find(t)
            if hit is None:
                if not full:
                    return f
                out[t] = f.pop(t)
                continue
            lead, tail = hit
            del f[t]
            q = tuple(map(sub, t, lead))
            for k, x in tail:
                kk = tuple(map(add, k, q))
                old = f.get(kk)
                if old is None:
                    nv = -c * x
                    if p:
                        nv %= p
                    f[kk] = nv
                    heapq.heappush(heap, kk)
                else:
                    nv = old - c * x
                    if p:
                        nv %= p
                    if nv:
                        f[kk] = nv
                    else:
                        del f[kk]
        return out


def _interreduce(elems: list[dict], p: int) -> list[dict]:
    """Reduced basis from a list of monic vectors with pairwise non-dividing leads."""
    red = _Reducer(p)
    for g in elems:
        red.add(g)
    out = []
    for g in sorted(elems, key=min):
        lead = min(g)
        tail = {k: v for k, v in g.items() if k != lead}
        r = red.reduce(tail, full=True)
        r[lead] = g[lead]
        out.append(r)
    return out


def buchberger_core(gens, p: int, weights_rev, shifts=None, known=()) -> list[dict]:
    """Reduced Groebner basis of the submodule generated by ``gens`` and ``known``.

    ``known`` must itself be a Groebner basis (its S-pairs are skipped).
    ``shifts`` maps a component to its degree shift and only steers pair
    selection (normal strategy).  Product criterion is applied only to pairs
    of single-component vectors in the same component.
    """
    polys: list[dict] = []
    leads: list[tuple] = []
    single: list[bool] = []
    active: list[int] = []
    pairs: dict[tuple[int, int], tuple] = {}
    heap: list = []
    tick = count()
    red = _Reducer(p)

    def degree(l):
        return -l[1] + (shifts[l[0]] if shifts else 0)

    def register(v: dict) -> int:
        v = _monic(v, p)
        idx = len(polys)
        polys.append(v)
        lead = min(v)
        leads.append(lead)
        c = lead[0]
        single.append(all(k[0] == c for k in v))
        return idx

    def update(h: int) -> None:
        lh = leads[h]
        comp = lh[0]
        cands = [(_lcm(lh, leads[g], weights_rev), g) for g in active if leads[g][0] == comp]
        kept = []
        for i, (l1, g1) in enumerate(cands):
            if single[h] and single[g1] and _coprime(lh, leads[g1]):
                kept.append((l1, g1, True))
                continue
            if any(_divides(l2, l1) for l2, _ in cands[i + 1 :]):
                continue
            if any(_divides(l2, l1) for l2, _, _ in kept):
                continue
            kept.append((l1, g1, False))
        for ij, l in list(pairs.items()):
            if l[0] != comp or not _divides(lh, l):
                continue
            i, j = ij
            if _lcm(leads[i], lh, weights_rev) != l and _lcm(leads[j], lh, weights_rev) != l:
                del pairs[ij]
        for l, g, cop in kept:
            if cop:
                continue
            pairs[(g, h)] = l
            heapq.heappush(heap, (degree(l), next(tick), g, h))
        still = []
        for g in active:
            if _divides(lh, leads[g]):
                red.remove(polys[g])
            else:
                still.append(g)
        still.append(h)
        active[:] = still
        red.add(polys[h])

    for v in known:
        if v:
            idx = register(v)
            active.append(idx)
            red.add(polys[idx])

    todo = [dict(v) for v in gens if v]
    todo.sort(key=lambda v: (degree(min(v)), min(v)))
    for v in todo:
        r = red.reduce(v, full=False)
        if r:
            update(register(r))

    while heap:
        _, _, i, j = heapq.heappop(heap)
        l = pairs.pop((i, j), None)
        if l is None:
            continue
        li, lj = leads[i], leads[j]
        qi = tuple(map(sub, l, li))
        qj = tuple(map(sub, l, lj))
        s = {tuple(map(add, k, qi)): x for k, x in polys[i].items() if k != li}
        _axpy(s, {tuple(map(add, k, qj)): x for k, x in polys[j].items() if k != lj}, -1, p)
        if not s:
            continue
        r = red.reduce(s, full=False)
        if r:
            update(register(r))

    return _interreduce([polys[g] for g in active], p)


# -- public types ---------------------------------------------------------------
def _check_ring(ring: PolyRing, f: Polynomial) -> None:
    if f.ring.nvars != ring.nvars:
        raise ArityMismatch(f"{f.ring.nvars} vs {ring.nvars} variables")
    if f.ring.char != ring.char:
        raise BadCharacteristic(f"characteristic {f.ring.char} vs {ring.char}")


class FreeModuleElement:
    """Vector of polynomials in a free module of rank ``rank``."""

    __slots__ = ("ring", "rank", "_t")

    def __init__(self, ring: PolyRing, rank: int, terms: dict):
        self.ring = ring
        self.rank = rank
        self._t = terms

    @classmethod
    def from_components(cls, ring: PolyRing, comps) -> "FreeModuleElement":
        comps = list(comps)
        t = {}
        for c, f in enumerate(comps):
            _check_ring(ring, f)
            for k, v in f._t.items():
                t[(c,) + k[1:]] = v
        return cls(ring, len(comps), t)

    def components(self) -> list[Polynomial]:
        parts: list[dict] = [{} for _ in range(self.rank)]
        for k, v in self._t.items():
            parts[k[0]][(0,) + k[1:]] = v
        return [Polynomial(self.ring, d) for d in parts]

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        return isinstance(other, FreeModuleElement) and self.rank == other.rank and self._t == other._t

    def __hash__(self):
        return hash((self.rank, frozenset(self._t.items())))

    def __add__(self, other):
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        out = dict(self._t)
        _axpy(out, other._t, 1, self.ring.char)
        return FreeModuleElement(self.ring, self.rank, out)

    def __neg__(self):
        return self * self.ring.const(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, f):
        if not isinstance(f, Polynomial):
            f = self.ring.const(f)
        p = self.ring.char
        out: dict = {}
        for k1, v1 in f._t.items():
            _axpy(out, {tuple(map(add, k, k1)): v for k, v in self._t.items()}, v1, p)
        return FreeModuleElement(self.ring, self.rank, out)

    __rmul__ = __mul__

    def leading_component(self) -> int:
        return min(self._t)[0]

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.components()) + ")"


class GroebnerBasis:
    """Reduced Groebner basis of an ideal (monic, sorted by leading monomial)."""

    def __init__(self, ring: PolyRing, vectors: list[dict]):
        self.ring = ring
        self._v = sorted(vectors, key=min)
        self._red = _Reducer(ring.char)
        for v in self._v:
            self._red.add(v)

    @property
    def polys(self) -> list[Polynomial]:
        return [Polynomial(self.ring, dict(v)) for v in self._v]

    def __len__(self):
        return len(self._v)

    def __iter__(self):
        return iter(self.polys)

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.ring == other.ring and self._v == other._v

    def leading_exponents(self) -> list[tuple]:
        return [PolyRing.exps(min(v)) for v in self._v]

    def is_unit(self) -> bool:
        return any(min(v)[1] == 0 for v in self._v)

    def is_zero(self) -> bool:
        return not self._v

    def normal_form(self, f: Polynomial) -> Polynomial:
        _check_ring(self.ring, f)
        return Polynomial(self.ring, self._red.reduce(f._t))

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def __contains__(self, f):
        return self.contains(f)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(g) for g in self.polys)}])"


class ModuleGroebnerBasis:
    """Reduced position-over-term Groebner basis of a submodule of ``A^rank``."""

    def __init__(self, ring: PolyRing, rank: int, vectors: list[dict]):
        self.ring = ring
        self.rank = rank
        self._v = sorted(vectors, key=min)
        self._red = _Reducer(ring.char)
        for v in self._v:
            self._red.add(v)

    def __len__(self):
        return len(self._v)

    @property
    def elements(self) -> list[FreeModuleElement]:
        return [FreeModuleElement(self.ring, self.rank, dict(v)) for v in self._v]

    def normal_form(self, v: FreeModuleElement) -> FreeModuleElement:
        return FreeModuleElement(self.ring, self.rank, self._red.reduce(v._t))

    def contains(self, v: FreeModuleElement) -> bool:
        return not self._red.reduce(v._t)

    def reduce_raw(self, t: dict) -> dict:
        return self._red.reduce(t)

    def initial_module(self) -> dict[int, list[tuple]]:
        """Leading exponent vectors grouped by component."""
        out: dict[int, list[tuple]] = {c: [] for c in range(self.rank)}
        for v in self._v:
            lead = min(v)
            out[lead[0]].append(PolyRing.exps(lead))
        return out

    def is_zero(self) -> bool:
        return not self._v


def _weights_rev(ring: PolyRing):
    return tuple(reversed(ring.weights))


def buchberger(gens: list[Polynomial], ring: PolyRing | None = None) -> GroebnerBasis:
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("empty generator list needs an explicit ring")
        ring = gens[0].ring
    for g in gens:
        _check_ring(ring, g)
    vecs = buchberger_core([g._t for g in gens if g], ring.char, _weights_rev(ring))
    return GroebnerBasis(ring, vecs)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(f)


def module_buchberger(gens: list[FreeModuleElement], rank: int, ring: PolyRing | None = None, shifts=None) -> ModuleGroebnerBasis:
    gens = list(gens)
    for g in gens:
        if g.rank != rank:
            raise RankMismatch(f"element of rank {g.rank} in a rank-{rank} module")
    if ring is None:
        if not gens:
            raise ValueError("empty generator list needs an explicit ring")
        ring = gens[0].ring
    vecs = buchberger_core([g._t for g in gens if g], ring.char, _weights_rev(ring), shifts)
    return ModuleGroebnerBasis(ring, rank, vecs)


def _shift_comp(v: dict, delta: int) -> dict:
    return {(k[0] + delta,) + k[1:]: x for k, x in v.items()}


def kernel_core(columns: list[dict], r_target: int, ring: PolyRing, target_relations=(), target_shifts=None, source_shifts=None) -> list[dict]:
    """Generators (a reduced GB) of ``{v : M v in T}`` where the columns of M
    are given as vectors over components ``0..r_target-1`` and ``T`` is the
    submodule spanned by ``target_relations`` (which must be a GB).

    Augmented-module technique: compute a POT basis of the graph
    ``{(M v, v)}`` with target components dominating and keep the elements
    whose target part vanishes.
    """
    p = ring.char
    gens = []
    for j, col in enumerate(columns):
        v = dict(col)
        v[ring.unit_key(r_target + j)] = ring.coerce(1)
        gens.append(v)
    shifts = None
    if target_shifts is not None and source_shifts is not None:
        shifts = list(target_shifts) + list(source_shifts)
    G = buchberger_core(gens, p, _weights_rev(ring), shifts, known=list(target_relations))
    out = []
    for g in G:
        if min(g)[0] >= r_target:
            out.append(_shift_comp(g, -r_target))
    return out


def _matrix_columns(M: list[list[Polynomial]], r_target: int) -> list[dict]:
    if len(M) != r_target:
        raise DimensionMismatch(f"matrix has {len(M)} rows, expected {r_target}")
    if not M:
        return []
    r_source = len(M[0])
    if any(len(row) != r_source for row in M):
        raise DimensionMismatch("ragged matrix")
    cols = []
    for j in range(r_source):
        col: dict = {}
        for i in range(r_target):
            for k, v in M[i][j]._t.items():
                col[(i,) + k[1:]] = v
        cols.append(col)
    return cols


def _apply(M_cols: list[dict], v: dict, p: int) -> dict:
    out: dict = {}
    for k, x in v.items():
        mono = (0,) + k[1:]
        _axpy(out, {tuple(map(add, kk, mono)): y for kk, y in M_cols[k[0]].items()}, x, p)
    return out


def kernel(M: list[list[Polynomial]], r_target: int, ring: PolyRing | None = None, modulo: GroebnerBasis | None = None) -> ModuleGroebnerBasis:
    """Kernel of an ``r_target x r_source`` matrix, over ``A`` or, when
    ``modulo`` is the GB of an ideal I, over ``A/I`` (as a preimage in A^r)."""
    if ring is None:
        ring = M[0][0].ring
    cols = _matrix_columns(M, r_target)
    rel = []
    if modulo is not None:
        for i in range(r_target):
            rel.extend(_shift_comp(g, i) for g in modulo._v)
    ker = kernel_core(cols, r_target, ring, rel)
    check = ModuleGroebnerBasis(ring, r_target, rel) if rel else None
    for g in ker:
        image = _apply(cols, g, ring.char)
        if image and (check is None or not check.contains(FreeModuleElement(ring, r_target, image))):
            raise AssertionError("kernel generator does not map to zero")
    return ModuleGroebnerBasis(ring, len(cols), ker)


def _ideal_vectors(G: GroebnerBasis) -> list[dict]:
    return [dict(v) for v in G._v]


def intersect(I: GroebnerBasis, J: GroebnerBasis) -> GroebnerBasis:
    ring = I.ring
    one = ring.unit_key
    cols = [{one(0): ring.coerce(1), one(1): ring.coerce(1)}]
    rel = _ideal_vectors(I) + [_shift_comp(g, 1) for g in J._v]
    return GroebnerBasis(ring, kernel_core(cols, 2, ring, rel))


def colon_element(I: GroebnerBasis, g: Polynomial) -> GroebnerBasis:
    """I : g, computed as the kernel of multiplication by g modulo I."""
    ring = I.ring
    if not g:
        return GroebnerBasis(ring, [{ring.unit_key(0): ring.coerce(1)}])
    return GroebnerBasis(ring, kernel_core([dict(g._t)], 1, ring, _ideal_vectors(I)))


def ideal_quotient(I: GroebnerBasis, J: list[Polynomial]) -> GroebnerBasis:
    """Reduced GB of I : (J) as the intersection of the I : g."""
    J = [g for g in J]
    if not J:
        raise ValueError("ideal_quotient needs a nonempty list")
    for g in J:
        _check_ring(I.ring, g)
    result = None
    for g in J:
        q = colon_element(I, g)
        result = q if result is None else intersect(result, q)
    for q in result.polys:
        for g in J:
            if I.normal_form(q * g):
                raise AssertionError("ideal quotient generator fails membership check")
    return result


def ideal_sum(I: GroebnerBasis, extra: list[Polynomial]) -> GroebnerBasis:
    return GroebnerBasis(I.ring, buchberger_core([g._t for g in extra if g], I.ring.char, _weights_rev(I.ring), known=_ideal_vectors(I)))
