"""Koszul complexes over R = A/I, presentations of their homology as
subquotients of free A-modules, lengths and annihilation tests.

H_i is presented as Z/B inside A^C(n,i) where

* Z = {v : d_i v in I A^C(n,i-1)}  (cycles lifted to A), and
* B = im d_{i+1} + I A^C(n,i).

Both are stored as reduced position-over-term Groebner bases; the length
of H_i is the difference of their Hilbert series evaluated at t = 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import linalg
from .gb import (
    FreeModuleElement,
    ModuleGroebnerBasis,
    _apply,
    _axpy,
    _shift_comp,
    _weights_rev,
    buchberger_core,
    kernel_core,
)
from .poly import Polynomial, PolyRing
from .ring import (
    RingPresentation,
    _padd,
    _trim,
    divide_one_minus_t,
    hilbert_numerator,
    series_length,
    standard_monomials_in_degree,
)


class EmptySequence(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class BoundTooSmall(RuntimeError):
    pass


def exterior_basis(n: int, i: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(n), i))


class KoszulComplex:
    """K_.(f; R) with basis e_J (J increasing, lexicographic) and
    d(e_J) = sum_k (-1)^k f_{j_k} e_{J minus j_k} (k counted from 0)."""

    def __init__(self, R: RingPresentation, f):
        f = tuple(f)
        if not f:
            raise EmptySequence("Koszul complex needs a nonempty sequence")
        for g in f:
            if g.ring != R.ring:
                raise ValueError(f"{g} does not live in the ambient ring")
            if g.constant_coefficient():
                raise ValueError(f"{g} is not in the maximal ideal")
        self.R = R
        self.f = f
        self.n = len(f)
        self.degrees = tuple(g.weighted_degree() if g else 0 for g in f)
        self.bases = [exterior_basis(self.n, i) for i in range(self.n + 1)]
        self._pos = [{J: k for k, J in enumerate(b)} for b in self.bases]
        self._cols: dict[int, list[dict]] = {}
        for i in range(1, self.n):
            self._check_square(i)

    def rank(self, i: int) -> int:
        return len(self.bases[i]) if 0 <= i <= self.n else 0

    def shifts(self, i: int) -> list[int]:
        return [sum(self.degrees[j] for j in J) for J in self.bases[i]]

    def columns(self, i: int) -> list[dict]:
        """Columns of d_i as sparse vectors over components of K_{i-1}."""
        if i not in self._cols:
            cols = []
            pos = self._pos[i - 1]
            for J in self.bases[i]:
                col: dict = {}
                for k, j in enumerate(J):
                    comp = pos[J[:k] + J[k + 1 :]]
                    sign = 1 if k % 2 == 0 else -1
                    _axpy(col, {(comp,) + key[1:]: c for key, c in self.f[j]._t.items()}, sign, self.R.ring.char)
                cols.append(col)
            self._cols[i] = cols
        return self._cols[i]

    def matrix(self, i: int) -> list[list[Polynomial]]:
        """d_i as a rank(i-1) x rank(i) matrix of polynomials."""
        ring = self.R.ring
        rows = [[ring.zero() for _ in range(self.rank(i))] for _ in range(self.rank(i - 1))]
        for j, col in enumerate(self.columns(i)):
            for r in range(self.rank(i - 1)):
                part = {(0,) + k[1:]: c for k, c in col.items() if k[0] == r}
                rows[r][j] = Polynomial(ring, part)
        return rows

    def _check_square(self, i: int) -> None:
        p = self.R.ring.char
        lower = self.columns(i)
        for col in self.columns(i + 1):
            if _apply(lower, col, p):
                raise AssertionError(f"d_{i} d_{i + 1} is not zero")


def _ideal_blocks(R: RingPresentation, rank: int, offset: int = 0) -> list[dict]:
    return [_shift_comp(g, c + offset) for c in range(rank) for g in R.gb._v]


def split_free_variables(R: RingPresentation, f):
    """Drop sequence entries that are scalar multiples of variables occurring
    nowhere else (not in I, not in other entries).

    Such a variable v is regular on everything in sight and
    H_i(f, v; R'[v]) = H_i(f; R'), so homology may be computed in the smaller
    ring.  Returns ``(R', f', push)`` where ``push`` maps A into A'.
    """
    ring = R.ring
    used = R.variables_in_ideal()
    f = list(f)
    drop: dict[int, int] = {}
    for j, g in enumerate(f):
        if len(g) != 1:
            continue
        exps = g.leading_exponents()
        if sum(exps) != 1:
            continue
        v = exps.index(1)
        if v in used or v in drop.values():
            continue
        if any(v in h.variables() for k, h in enumerate(f) if k != j):
            continue
        drop[j] = v
    if not drop:
        return R, f, lambda g: g
    gone = set(drop.values())
    keep = [v for v in range(ring.nvars) if v not in gone]
    new_ring = PolyRing([ring.names[v] for v in keep], [ring.weights[v] for v in keep], ring.char)
    index_map = {v: k for k, v in enumerate(keep)}
    zero = {v: new_ring.zero() for v in gone}

    def push(g: Polynomial) -> Polynomial:
        return g.substitute(zero, new_ring, index_map)

    R2 = RingPresentation(new_ring, [push(g) for g in R.ideal])
    return R2, [push(g) for j, g in enumerate(f) if j not in drop], push


class HomologyModule:
    """H_i(f; R) as the subquotient Z/B of A^rank (see module docstring)."""

    def __init__(self, K: KoszulComplex, i: int, push=None):
        self.complex = K
        self.index = i
        self.push = push or (lambda g: g)
        R, ring = K.R, K.R.ring
        self.rank = K.rank(i)
        self.shifts = K.shifts(i) if self.rank else []
        wr = _weights_rev(ring)
        if self.rank == 0:
            self.cycles = ModuleGroebnerBasis(ring, 0, [])
            self.boundaries = ModuleGroebnerBasis(ring, 0, [])
            return
        if i == 0:
            z = [{ring.unit_key(0): ring.coerce(1)}]
        else:
            z = kernel_core(
                K.columns(i), K.rank(i - 1), ring, _ideal_blocks(R, K.rank(i - 1)),
                target_shifts=K.shifts(i - 1), source_shifts=self.shifts,
            )
        self.cycles = ModuleGroebnerBasis(ring, self.rank, z)
        gens = K.columns(i + 1) if i < K.n else []
        b = buchberger_core(gens, ring.char, wr, self.shifts, known=_ideal_blocks(R, self.rank))
        self.boundaries = ModuleGroebnerBasis(ring, self.rank, b)

    @cached_property
    def cycle_generators(self) -> list[FreeModuleElement]:
        """Cycle generators that are not boundaries."""
        return [c for c in self.cycles.elements if not self.boundaries.contains(c)]

    def is_zero(self) -> bool:
        return not self.cycle_generators

    @cached_property
    def hilbert_numerator(self) -> list[int]:
        """Numerator of HS(H_i) over prod(1 - t^w)."""
        ring = self.complex.R.ring
        num = [0]
        inB, inZ = self.boundaries.initial_module(), self.cycles.initial_module()
        for k in range(self.rank):
            nb = hilbert_numerator(inB[k], ring.weights)
            nz = hilbert_numerator(inZ[k], ring.weights)
            diff = _padd(nb, [-c for c in nz])
            num = _padd(num, [0] * self.shifts[k] + diff)
        return _trim(num)

    @cached_property
    def length(self) -> float | int:
        if self.is_zero():
            return 0
        return series_length(self.hilbert_numerator, self.complex.R.ring.weights)

    def hilbert_function(self) -> dict[int, int]:
        """Nonzero graded pieces of a finite-length H_i, by weighted degree."""
        num = self.hilbert_numerator
        for w in self.complex.R.ring.weights:
            if not any(num):
                return {}
            num = divide_one_minus_t(num, w)
            if num is None:
                raise ValueError("homology module is not of finite length")
        return {d: c for d, c in enumerate(num) if c}

    def annihilates(self, z: Polynomial) -> bool:
        z = self.push(z)
        for c in self.cycle_generators:
            if not self.boundaries.contains(c * z):
                return False
        return True


def build(R: RingPresentation, f) -> KoszulComplex:
    return KoszulComplex(R, f)


def homology(K: KoszulComplex, i: int, reduce: bool = True) -> HomologyModule:
    if not 0 <= i <= K.n:
        raise IndexOutOfRange(f"homology index {i} outside 0..{K.n}")
    if reduce:
        R2, f2, push = split_free_variables(K.R, K.f)
        dropped = K.n - len(f2)
        if dropped:
            if i > len(f2):
                return _zero_module(K, i)
            if f2:
                return HomologyModule(KoszulComplex(R2, f2), i, push)
            return HomologyModule(_Trivial(R2), 0, push)
    return HomologyModule(K, i)


class _Trivial:
    """Empty Koszul complex: H_0 = R."""

    def __init__(self, R):
        self.R, self.f, self.n, self.degrees = R, (), 0, ()

    def rank(self, i):
        return 1 if i == 0 else 0

    def shifts(self, i):
        return [0] if i == 0 else []

    def columns(self, i):
        return []


def _zero_module(K: KoszulComplex, i: int) -> HomologyModule:
    H = HomologyModule.__new__(HomologyModule)
    H.complex, H.index, H.push, H.rank, H.shifts = K, i, (lambda g: g), 0, []
    H.cycles = ModuleGroebnerBasis(K.R.ring, 0, [])
    H.boundaries = ModuleGroebnerBasis(K.R.ring, 0, [])
    return H


def homology_length(H: HomologyModule) -> float | int:
    return H.length


def annihilates(z: Polynomial, H: HomologyModule) -> bool:
    return H.annihilates(z)


# -- graded linear-algebra oracle ---------------------------------------------
@dataclass(frozen=True)
class OracleRow:
    degree: int
    dim_ker: int
    dim_im: int
    dim_h: int


class _GradedPieces:
    """Graded pieces of K_i(f; R) over the coefficient field, with the
    monomial basis of R given by standard monomials of GB(I)."""

    def __init__(self, R: RingPresentation, f):
        self.R = R
        self.f = [g._t for g in f]
        self.n = len(f)
        self.degrees = [g.weighted_degree() for g in f]
        self.leads = R.gb.leading_exponents()
        self.p = R.ring.char
        self._std: dict[int, list[tuple]] = {}
        self._nf: dict = {}

    def std(self, d: int) -> list[tuple]:
        if d < 0:
            return []
        if d not in self._std:
            self._std[d] = standard_monomials_in_degree(self.leads, self.R.ring.weights, d)
        return self._std[d]

    def basis(self, i: int, d: int) -> list[tuple]:
        out = []
        for J in exterior_basis(self.n, i):
            s = sum(self.degrees[j] for j in J)
            out.extend((J, m) for m in self.std(d - s))
        return out

    def _times(self, j: int, m: tuple) -> dict:
        key = (j, m)
        if key not in self._nf:
            mk = self.R.ring.key(m)
            prod = {tuple(a + b for a, b in zip(k, mk)): c for k, c in self.f[j].items()}
            self._nf[key] = self.R.gb._red.reduce(prod)
        return self._nf[key]

    def image(self, J: tuple, m: tuple) -> dict:
        """d(m e_J) as {(J', exps): coeff}."""
        out: dict = {}
        p = self.p
        for k, j in enumerate(J):
            sign = 1 if k % 2 == 0 else -1
            rest = J[:k] + J[k + 1 :]
            for key, c in self._times(j, m).items():
                t = (rest, PolyRing.exps(key))
                v = out.get(t, 0) + sign * c
                if p:
                    v %= p
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
        return out

    def element(self, J: tuple, f: Polynomial | dict) -> dict:
        terms = f._t if isinstance(f, Polynomial) else f
        return {(J, PolyRing.exps(k)): c for k, c in terms.items()}

    def matrix_rows(self, i: int, d: int, target_index: dict) -> list[dict]:
        rows = []
        for J, m in self.basis(i, d):
            img = self.image(J, m)
            rows.append({target_index[t]: c for t, c in img.items()})
        return rows

    def rank_d(self, i: int, d: int) -> int:
        if i < 1 or i > self.n:
            return 0
        tgt = {b: k for k, b in enumerate(self.basis(i - 1, d))}
        return linalg.rank_sparse(self.matrix_rows(i, d, tgt), self.p)


def graded_oracle(R: RingPresentation, f, i: int, degree_bound: int) -> list[OracleRow]:
    """Per-degree dimensions of ker d_i, im d_{i+1} and H_i(f; R), by exact
    linear algebra on graded pieces, for weighted degrees 0..degree_bound."""
    f = list(f)
    if not 0 <= i <= len(f):
        raise IndexOutOfRange(f"homology index {i} outside 0..{len(f)}")
    G = _GradedPieces(R, f)
    rows = []
    for d in range(degree_bound + 1):
        size = len(G.basis(i, d))
        ker = size - G.rank_d(i, d)
        im = G.rank_d(i + 1, d)
        rows.append(OracleRow(d, ker, im, ker - im))
    window = max(R.ring.weights)
    if any(r.dim_h for r in rows[-window:]):
        raise BoundTooSmall(f"H_{i} is nonzero near degree bound {degree_bound}")
    return rows


def oracle_total(rows: list[OracleRow]) -> int:
    return sum(r.dim_h for r in rows)


def suggested_bound(H: HomologyModule) -> int:
    """A degree bound past the top nonzero piece of a finite-length H_i."""
    hf = H.hilbert_function()
    return (max(hf) if hf else 0) + max(H.complex.R.ring.weights) + 1


def graded_annihilates(R: RingPresentation, f, i: int, z: Polynomial, degree_bound: int) -> bool:
    """Independent check that z kills H_i(f; R) in degrees up to the bound:
    z * ker(d_i)_d must land in im(d_{i+1})_{d + deg z}."""
    f = list(f)
    G = _GradedPieces(R, f)
    p = R.ring.char
    zr = R.reduce(z)
    if not zr:
        return True
    dz = z.weighted_degree()
    for d in range(degree_bound - dz + 1):
        src = G.basis(i, d)
        if not src:
            continue
        tgt = G.basis(i - 1, d) if i >= 1 else []
        tindex = {b: k for k, b in enumerate(tgt)}
        dense = []
        for J, m in src:
            row = [0] * len(tgt)
            for t, c in G.image(J, m).items():
                row[tindex[t]] = c
            dense.append(row)
        # columns of the transposed map: cycles are the nullspace of the map
        if tgt:
            mat = [[dense[r][c] for r in range(len(src))] for c in range(len(tgt))]
            cycles = linalg.nullspace(mat, len(src), p)
        else:
            cycles = [[1 if r == c else 0 for r in range(len(src))] for c in range(len(src))]
        if not cycles:
            continue
        up = G.basis(i, d + dz)
        uindex = {b: k for k, b in enumerate(up)}
        bnd = [dict(row) for row in _boundary_rows(G, i, d + dz, uindex)]
        base = linalg.rank_sparse(bnd, p)
        extra = []
        for v in cycles:
            acc: dict = {}
            for coeff, (J, m) in zip(v, src):
                if not coeff:
                    continue
                mk = R.ring.key(m)
                prod = {tuple(a + b for a, b in zip(k, mk)): c * coeff for k, c in zr._t.items()}
                for key, c in R.gb._red.reduce(prod).items():
                    col = uindex[(J, PolyRing.exps(key))]
                    nv = acc.get(col, 0) + c
                    acc[col] = nv % p if p else nv
            extra.append({k: c for k, c in acc.items() if c})
        if linalg.rank_sparse(bnd + extra, p) != base:
            return False
    return True


def _boundary_rows(G: _GradedPieces, i: int, d: int, index: dict) -> list[dict]:
    if i + 1 > G.n:
        return []
    return G.matrix_rows(i + 1, d, index)


def top_homology_index(R: RingPresentation, f, reduce: bool = True) -> int:
    """max{i : H_i(f; R) != 0}, scanning from the top; 0 if only H_0 survives."""
    K = KoszulComplex(R, f)
    for i in range(K.n, 0, -1):
        if not homology(K, i, reduce).is_zero():
            return i
    return 0

