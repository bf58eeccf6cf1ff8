"""Exact dense linear algebra over Q or F_p (rank, echelon form, nullspace)."""

from __future__ import annotations

from fractions import Fraction


def _norm(x, p):
    return x % p if p else x


def _inv(x, p):
    return pow(x, -1, p) if p else 1 / Fraction(x)


def echelon(rows: list[list], p: int) -> list[list]:
    """Reduced row echelon form (nonzero rows only)."""
    rows = [[_norm(x, p) if p else Fraction(x) for x in r] for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    r0 = 0
    for col in range(ncols):
        piv = next((r for r in range(r0, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[r0], rows[piv] = rows[piv], rows[r0]
        ic = _inv(rows[r0][col], p)
        rows[r0] = [_norm(x * ic, p) for x in rows[r0]]
        for r in range(len(rows)):
            if r != r0 and rows[r][col]:
                c = rows[r][col]
                rows[r] = [_norm(a - c * b, p) for a, b in zip(rows[r], rows[r0])]
        r0 += 1
        if r0 == len(rows):
            break
    return rows[:r0]


def rank(rows: list[list], p: int) -> int:
    """Rank via elimination on sparse row dicts (fast path for big sparse matrices)."""
    sparse = []
    for r in rows:
        d = {j: (x % p if p else Fraction(x)) for j, x in enumerate(r) if x and (not p or x % p)}
        if d:
            sparse.append(d)
    return rank_sparse(sparse, p)


def rank_sparse(rows: list[dict], p: int) -> int:
    pivot_rows: dict[int, dict] = {}
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            prow = pivot_rows.get(col)
            if prow is None:
                ic = _inv(row[col], p)
                pivot_rows[col] = {j: _norm(x * ic, p) for j, x in row.items()}
                break
            c = row[col]
            for j, x in prow.items():
                nv = _norm(row.get(j, 0) - c * x, p)
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
    return len(pivot_rows)


def nullspace(rows: list[list], ncols: int, p: int) -> list[list]:
    """Basis of {v : rows . v = 0}."""
    ech = echelon(rows, p) if rows else []
    pivots = []
    for r in ech:
        pivots.append(next(j for j, x in enumerate(r) if x))
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0) if not p else 0] * ncols
        v[f] = 1 if p else Fraction(1)
        for r, pc in zip(ech, pivots):
            v[pc] = _norm(-r[f], p)
        basis.append(v)
    return basis
