"""Invariant orders of algebraic numbers and invariant rings of binary forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

import sympy

from ratmono import linalg
from ratmono.exact import BinaryForm
from ratmono.field import FieldElement, primitive_min_poly
from ratmono.lattice import (
    ZZ,
    BaseRing,
    FullModule,
    module_discriminant,
    module_intersect,
    module_of,
    multiplier_ring,
    power_module,
)

__all__ = [
    "Order",
    "InvariantRingTable",
    "NotGeneratorError",
    "order_omega_basis",
    "order_intersection",
    "order_scalars",
    "invariant_ring_table",
    "order_discriminant",
    "is_primitive_order",
    "omega_elements",
    "basis_with_one",
    "structure_constants",
]


class NotGeneratorError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Order:
    module: FullModule
    generators: tuple[FieldElement, ...] | None = None

    def __eq__(self, other):
        return isinstance(other, Order) and self.module.key() == other.module.key()

    def __hash__(self):
        return hash(self.module.key())

    @property
    def field(self):
        return self.module.field

    @property
    def base(self) -> BaseRing:
        return self.module.base

    def key(self) -> tuple:
        return self.module.key()

    def to_json(self, with_table: bool = False) -> dict:
        out = self.module.to_json()
        if with_table:
            basis = basis_with_one(self)
            out["table"] = [[[str(c) for c in v] for v in row]
                            for row in structure_constants(basis)]
        return out


def _require_generator(alpha: FieldElement):
    f = primitive_min_poly(alpha)
    if f.degree != alpha.field.degree:
        raise NotGeneratorError(f"{alpha!r} does not generate the field")
    return f


def omega_elements(alpha: FieldElement) -> list[FieldElement]:
    """``1, ω_1, ..., ω_{n-1}`` with ``ω_i = a_0 α^i + ... + a_{i-1} α``."""
    f = _require_generator(alpha)
    a = f.int_coeffs()
    n = alpha.field.degree
    out = [alpha.field.one]
    omega = alpha.field.scalar(0)
    for i in range(1, n):
        # ω_i = α·(ω_{i-1} + a_{i-1})
        omega = (omega + a[i - 1]) * alpha
        out.append(omega)
    return out


def order_omega_basis(alpha: FieldElement, base: BaseRing = ZZ) -> Order:
    gens = omega_elements(alpha)
    return Order(module_of(gens, base), tuple(gens))


def order_intersection(alpha: FieldElement, base: BaseRing = ZZ) -> Order:
    """``M_α ∩ M_{1/α}``, which equals ``A[α] ∩ A[1/α]``."""
    _require_generator(alpha)
    if alpha.is_zero():
        raise NotGeneratorError("zero element")
    return Order(module_intersect(power_module(alpha, base), power_module(alpha.inverse(), base)))


def order_scalars(alpha: FieldElement, base: BaseRing = ZZ) -> Order:
    """The ring of scalars of the power module ``M_α``."""
    _require_generator(alpha)
    return Order(multiplier_ring(power_module(alpha, base)))


def order_discriminant(O: Union[Order, FullModule]) -> Union[int, Fraction]:
    module = O.module if isinstance(O, Order) else O
    d = module_discriminant(module)
    return int(d) if d.denominator == 1 else d


def basis_with_one(O: Order) -> list[FieldElement]:
    """A basis of ``O`` whose first element is exactly ``1``.

    Works from an HNF with reversed column order so that one basis vector
    lives in the constant coordinate only; for an order it must be ``1``.
    """
    M = O.module
    n = M.degree
    rev = [list(reversed(r)) for r in M.basis]
    H = [list(reversed(r)) for r in linalg.hnf(rev, n)]
    const = H[-1]
    if Fraction(const[0], M.denom) != 1 or any(const[1:]):
        raise ValueError("module does not contain 1 primitively")
    rows = [const] + H[-2::-1]
    return [M.field([Fraction(x, M.denom) for x in r]) for r in rows]


def structure_constants(basis: Sequence[FieldElement]) -> list[list[list[Fraction]]]:
    """``c[i][j]`` = coordinates of ``basis[i]*basis[j]`` in ``basis``."""
    inv = linalg.inverse([b.coords for b in basis])
    n = len(basis)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            p = (basis[i] * basis[j]).coords
            row.append([sum((p[k] * inv[k][t] for k in range(n)), Fraction(0)) for t in range(n)])
        out.append(row)
    return out


@dataclass(frozen=True)
class InvariantRingTable:
    """Products ``ω_i ω_j`` (``1 <= i, j <= n-1``) as integer rows over ``1, ω_1, ..., ω_{n-1}``."""

    form: BinaryForm
    table: tuple

    @property
    def degree(self) -> int:
        return self.form.degree

    def product(self, i: int, j: int) -> tuple[int, ...]:
        return self.table[i - 1][j - 1]

    def full_constants(self) -> list[list[list[int]]]:
        """Structure constants over the whole basis, index 0 being ``1``."""
        n = self.degree
        unit = [[int(k == t) for t in range(n)] for k in range(n)]
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                if i == 0:
                    row.append(unit[j])
                elif j == 0:
                    row.append(unit[i])
                else:
                    row.append(list(self.table[i - 1][j - 1]))
            out.append(row)
        return out

    def is_commutative(self) -> bool:
        n = self.degree
        return all(self.table[i][j] == self.table[j][i] for i in range(n - 1) for j in range(n - 1))

    def is_associative(self) -> bool:
        c = self.full_constants()
        n = self.degree
        for x in range(n):
            for y in range(n):
                xy = c[x][y]
                for z in range(n):
                    yz = c[y][z]
                    left = [sum(xy[k] * c[k][z][t] for k in range(n)) for t in range(n)]
                    right = [sum(yz[k] * c[x][k][t] for k in range(n)) for t in range(n)]
                    if left != right:
                        return False
        return True


def invariant_ring_table(F: BinaryForm) -> InvariantRingTable:
    """Multiplication table of the invariant ring of ``F``, for any integer form.

    ``ω_i ω_j = -Σ_{max(i+j-n,1) <= k <= i} a_{i+j-k} ω_k + Σ_{j < k <= min(i+j,n)} a_{i+j-k} ω_k``
    with ``ω_n = -a_n`` folded into the constant slot.
    """
    a = F.coeffs
    n = F.degree
    rows = []
    for i in range(1, n):
        row = []
        for j in range(1, n):
            v = [0] * n

            def put(k, coef):
                if k == n:
                    v[0] += coef * -a[n]
                else:
                    v[k] += coef

            for k in range(max(i + j - n, 1), i + 1):
                put(k, -a[i + j - k])
            for k in range(j + 1, min(i + j, n) + 1):
                put(k, a[i + j - k])
            row.append(tuple(v))
        rows.append(tuple(row))
    return InvariantRingTable(F, tuple(rows))


def _ring_closed(basis: Sequence[FieldElement], module: FullModule) -> bool:
    from ratmono.lattice import contains

    return all(contains(module, x * y) for i, x in enumerate(basis) for y in basis[i:])


def is_primitive_order(O: Order):
    """``True`` or ``(False, a, O')`` with ``O = Z + a O'`` for a prime ``a``.

    If ``O = Z + aO'`` with ``O'`` spanned by ``1`` and ``(ω_i + t_i)/a``, the
    structure constants of ``O`` modulo ``a`` force every off-diagonal
    coefficient to vanish and pin ``t_i``; the gcd of those constraints
    bounds the candidate primes, each then checked for exact ring closure.
    """
    if O.base.S:
        raise ValueError("primitivity is tested over Z")
    basis = basis_with_one(O)
    n = len(basis)
    if n < 3:
        raise ValueError("primitivity needs degree >= 3")
    c = structure_constants(basis)
    c = [[[int(x) for x in v] for v in row] for row in c]
    g = 0
    for i in range(1, n):
        others = [j for j in range(1, n) if j != i]
        for j in range(1, n):
            for k in range(1, n):
                if k != i and k != j:
                    g = gcd(g, c[i][j][k])
        g = gcd(g, c[i][i][i] - 2 * c[i][others[0]][others[0]])
        for j in others[1:]:
            g = gcd(g, c[i][j][j] - c[i][others[0]][others[0]])
    disc = order_discriminant(O)
    if g == 0:
        raise AssertionError("structure constants of a field order cannot all vanish")
    for p in sorted(sympy.factorint(g)):
        if disc % p ** (2 * (n - 1)):
            continue
        # t_i = -c[i][j][j] mod p for any j != i
        t = [0] + [-c[i][1 if i != 1 else 2][1 if i != 1 else 2] % p for i in range(1, n)]
        cand = [basis[0]] + [(basis[i] + t[i]) / p for i in range(1, n)]
        Op = module_of(cand, O.base)
        if _ring_closed(cand, Op):
            return (False, p, Order(Op, tuple(cand)))
    return True
