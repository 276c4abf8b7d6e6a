"""Full-rank modules in a number field over ``Z`` or a ring of S-integers ``Z_S``.

A module is stored as ``(1/denom) * rowspan(basis)`` with ``basis`` in row
Hermite normal form over the power basis.  Over ``Z_S`` the representative
is the unique ``Z``-lattice that agrees with the module at every prime
outside ``S`` and is the standard lattice at every prime in ``S``; primes of
``S`` are thereby treated as units and the ``Z`` code paths are reused.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence

from ratmono import linalg
from ratmono.field import FieldElement, NumberField
from ratmono.linalg import NotFullRankError, hnf

__all__ = [
    "BaseRing",
    "ZZ",
    "FullModule",
    "NotContainedError",
    "hnf",
    "module_of",
    "module_equal",
    "module_intersect",
    "module_sum",
    "module_scale",
    "colon",
    "multiplier_ring",
    "module_index",
    "module_discriminant",
    "contains",
    "power_module",
]


class NotContainedError(ValueError):
    def __init__(self, witness: FieldElement):
        super().__init__(f"module not contained: witness {witness!r}")
        self.witness = witness


@dataclass(frozen=True)
class BaseRing:
    """``Z`` (empty ``S``) or ``Z_S``: rationals with denominators built from ``S``."""

    S: frozenset = dc_field(default_factory=frozenset)

    def __post_init__(self):
        primes = frozenset(int(p) for p in self.S)
        for p in primes:
            if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
                raise ValueError(f"{p} is not a prime")
        object.__setattr__(self, "S", primes)

    @classmethod
    def of(cls, primes: Iterable[int] = ()) -> "BaseRing":
        return cls(frozenset(primes))

    @property
    def kind(self) -> str:
        return "Z_S" if self.S else "Z"

    def __str__(self) -> str:
        return "Z" if not self.S else "Z_S{" + ",".join(map(str, sorted(self.S))) + "}"

    def s_free(self, n: int) -> int:
        """``n`` with every prime of ``S`` removed."""
        n = int(n)
        for p in self.S:
            while n and n % p == 0:
                n //= p
        return n

    def strip(self, q: Fraction) -> Fraction:
        q = Fraction(q)
        return Fraction(self.s_free(q.numerator), self.s_free(q.denominator))

    def is_unit(self, q) -> bool:
        q = Fraction(q)
        return q != 0 and abs(self.strip(q)) == 1

    def contains(self, q) -> bool:
        return self.s_free(Fraction(q).denominator) == 1


ZZ = BaseRing()


@dataclass(frozen=True)
class FullModule:
    field: NumberField
    denom: int
    basis: tuple[tuple[int, ...], ...]
    base: BaseRing = ZZ

    @property
    def degree(self) -> int:
        return self.field.degree

    def key(self) -> tuple:
        return (self.field.defining_poly.coeffs, self.denom, self.basis, tuple(sorted(self.base.S)))

    def elements(self) -> list[FieldElement]:
        d = self.denom
        return [self.field([Fraction(x, d) for x in row]) for row in self.basis]

    def rational_basis(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.denom) for x in row] for row in self.basis]

    def covolume(self) -> Fraction:
        """``|det|`` of the basis in power-basis coordinates."""
        return Fraction(prod(self.basis[i][i] for i in range(self.degree)), self.denom**self.degree)

    def to_json(self) -> dict:
        return {
            "field": [int(c) for c in self.field.defining_poly.coeffs],
            "denom": self.denom,
            "basis": [list(r) for r in self.basis],
            "S": sorted(self.base.S),
        }

    def __contains__(self, xi: FieldElement) -> bool:
        return contains(self, xi)


def _canonical(K: NumberField, rows: Sequence[Sequence], base: BaseRing) -> FullModule:
    n = K.degree
    d = linalg.common_denominator(x for r in rows for x in r)
    ints = [[int(Fraction(x) * d) for x in r] for r in rows]
    H = hnf(ints, n)
    if base.S:
        det_free = base.s_free(prod(H[i][i] for i in range(n)))
        H = hnf(H + [[det_free * int(i == j) for j in range(n)] for i in range(n)], n)
        d = base.s_free(d)
    g = gcd(d, *[x for r in H for x in r])
    return FullModule(K, d // g, tuple(tuple(x // g for x in r) for r in H), base)


def module_of(generators: Sequence[FieldElement], base: BaseRing = ZZ) -> FullModule:
    """Canonical module spanned over ``base`` by ``generators``."""
    if not generators:
        raise NotFullRankError("not full rank")
    K = generators[0].field
    return _canonical(K, [g.coords for g in generators], base)


def power_module(alpha: FieldElement, base: BaseRing = ZZ) -> FullModule:
    """``span(1, α, ..., α^(n-1))``."""
    powers = [alpha.field.one]
    for _ in range(alpha.field.degree - 1):
        powers.append(powers[-1] * alpha)
    return module_of(powers, base)


def _check_compatible(M: FullModule, N: FullModule) -> None:
    if M.field != N.field:
        raise ValueError("modules live in different fields")
    if M.base != N.base:
        raise ValueError("modules have different base rings")


def module_equal(M: FullModule, N: FullModule) -> bool:
    _check_compatible(M, N)
    return M.denom == N.denom and M.basis == N.basis


def module_sum(M: FullModule, N: FullModule) -> FullModule:
    _check_compatible(M, N)
    return _canonical(M.field, M.rational_basis() + N.rational_basis(), M.base)


def module_intersect(M: FullModule, N: FullModule) -> FullModule:
    """Intersection via the lattice of rows ``(m, m)`` and ``(n, 0)``.

    After HNF, the rows whose first half vanishes carry ``m = -n`` in their
    second half, i.e. a basis of ``M ∩ N``.
    """
    _check_compatible(M, N)
    n = M.degree
    D = M.denom * N.denom // gcd(M.denom, N.denom)
    bm = [[x * (D // M.denom) for x in r] for r in M.basis]
    bn = [[x * (D // N.denom) for x in r] for r in N.basis]
    stacked = [r + r for r in bm] + [r + [0] * n for r in bn]
    H = hnf(stacked, 2 * n)
    inter = [row[n:] for row in H[n:]]
    return _canonical(M.field, [[Fraction(x, D) for x in r] for r in inter], M.base)


def module_scale(M: FullModule, lam: FieldElement) -> FullModule:
    """``λ·M``."""
    return module_of([lam * g for g in M.elements()], M.base)


def _coordinates(M: FullModule, xi_coords: Sequence[Fraction], inv=None) -> list[Fraction]:
    inv = inv if inv is not None else linalg.inverse(M.basis)
    v = [c * M.denom for c in xi_coords]
    return [sum((v[i] * inv[i][j] for i in range(len(v))), Fraction(0)) for j in range(len(v))]


def contains(M: FullModule, xi: FieldElement) -> bool:
    return all(M.base.contains(c) for c in _coordinates(M, xi.coords))


def colon(M: FullModule, N: FullModule) -> FullModule:
    """``{ξ : ξ·M ⊆ N}`` as a canonical module.

    With ``T_j`` the multiplication matrix of the ``j``-th basis element of
    ``M``, the condition reads ``x · (d_N T_j B_N^{-1})`` integral for all
    ``j``.  The solution set is the dual of the lattice spanned by the
    columns of those matrices, computed through one HNF.
    """
    _check_compatible(M, N)
    n = M.degree
    binv = linalg.inverse(N.basis)
    cols: list[list[Fraction]] = []
    for g in M.elements():
        W = linalg.matmul(g.mult_matrix(), binv)
        for k in range(n):
            cols.append([W[i][k] * N.denom for i in range(n)])
    e = linalg.common_denominator(x for c in cols for x in c)
    H = hnf([[int(x * e) for x in c] for c in cols], n)
    Hinv = linalg.inverse(H)
    rows = [[e * Hinv[j][i] for j in range(n)] for i in range(n)]
    return _canonical(M.field, rows, M.base)


def multiplier_ring(M: FullModule) -> FullModule:
    """The ring of scalars ``{ξ : ξM ⊆ M}``."""
    return colon(M, M)


def module_index(M: FullModule, N: FullModule) -> Fraction:
    """``[M : N]`` for ``N ⊆ M`` (S-free representative over ``Z_S``)."""
    _check_compatible(M, N)
    inv = linalg.inverse(M.basis)
    for g in N.elements():
        if not all(M.base.contains(c) for c in _coordinates(M, g.coords, inv)):
            raise NotContainedError(g)
    return M.base.strip(N.covolume() / M.covolume())


def module_discriminant(M: FullModule) -> Fraction:
    """``det(Tr(γ_i γ_j))`` over the basis; S-primes stripped over ``Z_S``."""
    B = M.rational_basis()
    G = linalg.matmul(linalg.matmul(B, M.field.trace_form), linalg.transpose(B))
    return M.base.strip(linalg.det(G))
