"""Exact linear algebra over the integers and rationals.

Matrices are plain lists of rows.  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

__all__ = [
    "NotFullRankError",
    "xgcd",
    "hnf",
    "det",
    "bareiss_det",
    "inverse",
    "nullspace",
    "rank",
    "matmul",
    "transpose",
    "common_denominator",
]


class NotFullRankError(ValueError):
    pass


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _reduce_above(basis: list, j: int) -> None:
    piv = basis[j]
    p = piv[j]
    for i in range(j):
        row = basis[i]
        if row is None or row[j] == 0:
            continue
        q = row[j] // p
        if q:
            for k in range(j, len(row)):
                row[k] -= q * piv[k]


def hnf(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Canonical row Hermite normal form of a full-rank integer lattice.

    The result is upper triangular with positive pivots and every entry above
    a pivot reduced into ``[0, pivot)``.  Raises :class:`NotFullRankError`
    when the rows do not span a lattice of rank ``ncols``.
    """
    rows = [list(map(int, r)) for r in rows]
    if ncols is None:
        if not rows:
            raise NotFullRankError("not full rank")
        ncols = len(rows[0])
    basis: list = [None] * ncols
    for vec in rows:
        v = vec[:]
        for j in range(ncols):
            if v[j] == 0:
                continue
            b = basis[j]
            if b is None:
                if v[j] < 0:
                    v = [-t for t in v]
                basis[j] = v
                for k in range(j + 1, ncols):
                    if basis[k] is not None:
                        _reduce_above_one(v, basis[k], k)
                _reduce_above(basis, j)
                break
            g, x, y = xgcd(b[j], v[j])
            u, w = b[j] // g, v[j] // g
            newb = [x * bk + y * vk for bk, vk in zip(b, v)]
            v = [u * vk - w * bk for bk, vk in zip(b, v)]
            for k in range(j + 1, ncols):
                if basis[k] is not None:
                    _reduce_above_one(newb, basis[k], k)
            basis[j] = newb
            _reduce_above(basis, j)
    if any(b is None for b in basis):
        raise NotFullRankError("not full rank")
    for j in range(ncols):
        _reduce_above(basis, j)
    return basis


def _reduce_above_one(row: list, piv: list, k: int) -> None:
    q = row[k] // piv[k]
    if q:
        for t in range(k, len(row)):
            row[t] -= q * piv[t]


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [list(map(int, r)) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant of a rational matrix."""
    den = common_denominator(x for r in m for x in r)
    n = len(m)
    ints = [[int(Fraction(x) * den) for x in r] for r in m]
    return Fraction(bareiss_det(ints), den**n)


def common_denominator(values) -> int:
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def _rref(m: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    a = [r[:] for r in m]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(_rref([[Fraction(x) for x in r] for r in m])[1])


def nullspace(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right kernel ``{v : m v = 0}`` over the rationals."""
    a = [[Fraction(x) for x in r] for r in m]
    ncols = len(a[0])
    red, pivots = _rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        out.append(v)
    return out


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(m)]
    red, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*a)]


def content(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
