"""Exact rational linear algebra and a small two-phase simplex.

Problems here are tiny (a few dozen rows), so a dense Fraction tableau with
Bland's rule is fast enough and never cycles or rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Number = int | Fraction
Vector = list[Fraction]


def as_fractions(v: Sequence[Number]) -> Vector:
    return [Fraction(x) for x in v]


def dot(a: Sequence[Number], b: Sequence[Number]) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def row_echelon(rows: Sequence[Sequence[Number]]) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    m = [as_fractions(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Number]]) -> int:
    return len(row_echelon(rows)[1])


def solve(a: Sequence[Sequence[Number]], b: Sequence[Number]) -> Vector | None:
    """Unique solution of a square or overdetermined system, else None."""
    if not a:
        return None
    n = len(a[0])
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    red, piv = row_echelon(aug)
    if n in piv or len(piv) != n:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return x


def nullspace(rows: Sequence[Sequence[Number]], ncols: int) -> list[Vector]:
    red, piv = row_echelon(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: Vector | None = None
    value: Fraction | None = None


def linprog(
    c: Sequence[Number],
    a_ub: Sequence[Sequence[Number]] = (),
    b_ub: Sequence[Number] = (),
    a_eq: Sequence[Sequence[Number]] = (),
    b_eq: Sequence[Number] = (),
    free: bool = True,
) -> LPResult:
    """Maximize ``c·x`` subject to ``a_ub x <= b_ub`` and ``a_eq x = b_eq``.

    Variables are unrestricted in sign when ``free`` (split as x⁺ − x⁻),
    otherwise nonnegative.
    """
    n = len(c)
    split = 2 if free else 1

    def expand(row: Sequence[Number]) -> Vector:
        r = as_fractions(row)
        return r + [-x for x in r] if free else r

    rows: list[Vector] = []
    rhs: list[Fraction] = []
    n_ub = len(a_ub)
    for row, b in zip(a_ub, b_ub):
        rows.append(expand(row))
        rhs.append(Fraction(b))
    for row, b in zip(a_eq, b_eq):
        rows.append(expand(row))
        rhs.append(Fraction(b))
    nx = n * split
    m = len(rows)
    # columns: structural, slacks (one per ub row), artificials (one per row)
    width = nx + n_ub + m
    tab: list[Vector] = []
    for i in range(m):
        row = rows[i] + [Fraction(0)] * (n_ub + m)
        if i < n_ub:
            row[nx + i] = Fraction(1)
        b = rhs[i]
        if b < 0:
            row = [-x for x in row]
            b = -b
        row[nx + n_ub + i] = Fraction(1)
        tab.append(row + [b])
    basis = [nx + n_ub + i for i in range(m)]

    # phase one: maximize −Σ artificials
    obj = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            obj[j] += tab[i][j]
    for i in range(m):
        obj[nx + n_ub + i] = Fraction(0)
    allowed = nx + n_ub + m
    if _simplex(tab, obj, basis, allowed) == "unbounded":  # pragma: no cover - phase one is bounded
        raise AssertionError("phase one cannot be unbounded")
    if obj[width] != 0:
        return LPResult("infeasible")
    # drive artificials out of the basis
    for i in range(m):
        if basis[i] >= nx + n_ub:
            j = next((j for j in range(nx + n_ub) if tab[i][j] != 0), None)
            if j is not None:
                _pivot(tab, None, basis, i, j)
    keep = [i for i in range(m) if basis[i] < nx + n_ub]
    tab = [tab[i][: nx + n_ub] + [tab[i][width]] for i in keep]
    basis = [basis[i] for i in keep]
    width = nx + n_ub

    # phase two
    cost = expand(c) + [Fraction(0)] * n_ub
    obj = [Fraction(0)] * (width + 1)
    for j in range(width):
        obj[j] = cost[j]
    for i, bj in enumerate(basis):
        f = obj[bj]
        if f != 0:
            obj = [x - f * y for x, y in zip(obj, tab[i])]
    if _simplex(tab, obj, basis, width) == "unbounded":
        return LPResult("unbounded")
    y = [Fraction(0)] * width
    for i, bj in enumerate(basis):
        y[bj] = tab[i][width]
    x = [y[j] - y[j + n] for j in range(n)] if free else y[:n]
    return LPResult("optimal", x, dot(c, x))


def _pivot(tab: list[Vector], obj: Vector | None, basis: list[int], r: int, c: int) -> None:
    inv = 1 / tab[r][c]
    tab[r] = [x * inv for x in tab[r]]
    pr = tab[r]
    for i in range(len(tab)):
        if i != r:
            f = tab[i][c]
            if f != 0:
                tab[i] = [x - f * y for x, y in zip(tab[i], pr)]
    if obj is not None:
        f = obj[c]
        if f != 0:
            obj[:] = [x - f * y for x, y in zip(obj, pr)]
    basis[r] = c


def _simplex(tab: list[Vector], obj: Vector, basis: list[int], allowed: int) -> str:
    """Maximize with reduced costs held in ``obj`` (entering when positive); Bland's rule."""
    last = len(obj) - 1
    while True:
        c = next((j for j in range(allowed) if obj[j] > 0), None)
        if c is None:
            return "optimal"
        best: tuple[Fraction, int] | None = None
        r_best = -1
        for i, row in enumerate(tab):
            if row[c] > 0:
                key = (row[last] / row[c], basis[i])
                if best is None or key < best:
                    best, r_best = key, i
        if best is None:
            return "unbounded"
        _pivot(tab, obj, basis, r_best, c)
