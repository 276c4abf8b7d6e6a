"""Complex embeddings, cross ratios and the ε-tables of pairs with equal orders.

Conjugates are indexed 1..n following the canonical order of the roots of
the defining polynomial (real part ascending, then imaginary part).  For a
pair ``(α, β)`` the table holds ``ε_ijkl = cr_ijkl(β) / cr_ijkl(α)``; when the
two orders coincide these are algebraic units, which :func:`unit_certificate`
checks numerically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath

from ratmono._roots import PrecisionError, canonical_order, polyroots
from ratmono.field import FieldElement, NumberField

__all__ = [
    "EmbeddingSet",
    "EpsilonTable",
    "IdentityCheck",
    "UnitCertificate",
    "embeddings",
    "conjugates",
    "cross_ratio",
    "epsilon_table",
    "check_identities",
    "unit_certificate",
    "DEFAULT_PRECISION",
    "IDENTITY_TOL",
    "CERTIFICATE_TOL",
]

DEFAULT_PRECISION = 256
IDENTITY_TOL = 1e-8
CERTIFICATE_TOL = 1e-6


@dataclass(frozen=True)
class EmbeddingSet:
    field: NumberField
    roots: tuple
    precision: int
    residual: mpmath.mpf

    @property
    def degree(self) -> int:
        return len(self.roots)


@lru_cache(maxsize=64)
def _embeddings(K: NumberField, precision: int) -> EmbeddingSet:
    coeffs = K.defining_poly.coeffs
    roots = polyroots(coeffs, precision)
    with mpmath.workprec(precision + 16):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in coeffs]
        dcs = [c * (len(cs) - 1 - i) for i, c in enumerate(cs[:-1])]
        bound = mpmath.mpf(2) ** (-precision / 2)
        residual = mpmath.mpf(0)
        for _ in range(8):
            residual = max(abs(mpmath.polyval(cs, z) / mpmath.polyval(dcs, z)) for z in roots)
            if residual < bound:
                break
            roots = [z - mpmath.polyval(cs, z) / mpmath.polyval(dcs, z) for z in roots]
        sep = min(abs(a - b) for a, b in itertools.combinations(roots, 2)) if len(roots) > 1 else mpmath.inf
        if residual >= bound or sep <= 10 * residual:
            raise PrecisionError("raise precision")
    with mpmath.workprec(precision):
        ordered = canonical_order(roots, mpmath.mpf(2) ** (-precision / 3))
    return EmbeddingSet(K, tuple(ordered), precision, residual)


def embeddings(K: NumberField, precision: int = DEFAULT_PRECISION) -> EmbeddingSet:
    """All complex roots of the defining polynomial, in canonical order."""
    if precision < 53:
        raise ValueError("precision must be at least 53 bits")
    return _embeddings(K, int(precision))


def conjugates(alpha: FieldElement, E: EmbeddingSet) -> list:
    if alpha.field != E.field:
        raise ValueError("element and embeddings belong to different fields")
    with mpmath.workprec(E.precision):
        return [alpha.embed(r) for r in E.roots]


def _cr(v, i, j, k, l):
    den = (v[i] - v[k]) * (v[j] - v[l])
    if den == 0:
        raise ZeroDivisionError("coincident conjugates")
    return (v[i] - v[j]) * (v[k] - v[l]) / den


def _check_indices(idx, n):
    if n < 4:
        raise ValueError("cross ratios need degree >= 4")
    if len(idx) != 4 or len(set(idx)) != 4 or not all(1 <= x <= n for x in idx):
        raise ValueError(f"indices must be 4 distinct values in 1..{n}")


def cross_ratio(alpha: FieldElement, indices, E: EmbeddingSet) -> mpmath.mpc:
    """``cr_ijkl(α)`` with 1-based indices into the canonical embedding order."""
    _check_indices(tuple(indices), E.degree)
    v = conjugates(alpha, E)
    i, j, k, l = (x - 1 for x in indices)
    with mpmath.workprec(E.precision):
        return _cr(v, i, j, k, l)


@dataclass
class EpsilonTable:
    alpha: FieldElement
    beta: FieldElement
    embeddings: EmbeddingSet
    values: dict  # (i, j, k, l) 1-based -> mpc
    cr_alpha: dict = field(repr=False, default_factory=dict)
    cr_beta: dict = field(repr=False, default_factory=dict)

    def __getitem__(self, idx):
        return self.values[tuple(idx)]

    @property
    def degree(self) -> int:
        return self.embeddings.degree


def epsilon_table(alpha: FieldElement, beta: FieldElement, E: EmbeddingSet) -> EpsilonTable:
    """``ε_ijkl`` for every ordered 4-tuple of distinct indices."""
    n = E.degree
    if n < 4:
        raise ValueError("cross ratios need degree >= 4")
    va, vb = conjugates(alpha, E), conjugates(beta, E)
    values, cra, crb = {}, {}, {}
    with mpmath.workprec(E.precision):
        for t in itertools.permutations(range(n), 4):
            a, b = _cr(va, *t), _cr(vb, *t)
            if a == 0 or b == 0:
                raise ZeroDivisionError("zero cross ratio")
            key = tuple(x + 1 for x in t)
            cra[key], crb[key] = a, b
            values[key] = b / a
    return EpsilonTable(alpha, beta, E, values, cra, crb)


@dataclass
class IdentityCheck:
    name: str
    status: str  # "pass" | "fail" | "skipped: ..." | "not applicable: ..."
    max_violation: float | None
    checked: int

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def _summary(name, violations, tol, skipped_status=None):
    if not violations:
        return IdentityCheck(name, skipped_status or "skipped", None, 0)
    worst = float(max(violations))
    return IdentityCheck(name, "pass" if worst < tol else "fail", worst, len(violations))


def check_identities(T: EpsilonTable, tol: float = IDENTITY_TOL) -> list[IdentityCheck]:
    """Maximal absolute violation of each family of ε-relations.

    * ``cross_ratio_sum``: ``cr_ijkl + cr_ilkj = 1`` for α and for β
    * ``symmetry``: ``ε_ijkl = ε_jilk = ε_klij = ε_lkji``, ``ε_ikjl = 1/ε_ijkl``
      and ``ε_ijkl / ε_ijlk = ε_ilkj``
    * ``cramer``: ``cr_ijkl(α) = (ε_ilkj - 1)/(ε_ilkj - ε_ijkl)``, skipping
      tuples whose denominator is below ``tol``
    * ``fifth_index``: ``ε_ijkl / ε_ijkm = ε_jmlk`` (degree >= 5)
    * ``six_factor``: ``(ε1234-1)(ε1245-1)(ε1253-1) = (ε1243-1)(ε1254-1)(ε1235-1)``
      (degree >= 5)
    """
    e = T.values
    n = T.degree
    out = []
    with mpmath.workprec(T.embeddings.precision):
        sums = []
        for (i, j, k, l) in e:
            sums.append(abs(T.cr_alpha[i, j, k, l] + T.cr_alpha[i, l, k, j] - 1))
            sums.append(abs(T.cr_beta[i, j, k, l] + T.cr_beta[i, l, k, j] - 1))
        out.append(_summary("cross_ratio_sum", sums, tol))

        sym = []
        for (i, j, k, l), x in e.items():
            sym += [abs(x - e[j, i, l, k]), abs(x - e[k, l, i, j]), abs(x - e[l, k, j, i]),
                    abs(x * e[i, k, j, l] - 1), abs(x / e[i, j, l, k] - e[i, l, k, j])]
        out.append(_summary("symmetry", sym, tol))

        cram = []
        for (i, j, k, l), x in e.items():
            den = e[i, l, k, j] - x
            if abs(den) < tol:
                continue
            cram.append(abs(T.cr_alpha[i, j, k, l] - (e[i, l, k, j] - 1) / den))
        out.append(_summary("cramer", cram, tol, "skipped: degenerate denominators"))

        if n < 5:
            out.append(IdentityCheck("fifth_index", "not applicable: n < 5", None, 0))
            out.append(IdentityCheck("six_factor", "not applicable: n < 5", None, 0))
        else:
            fifth = [abs(e[i, j, k, l] / e[i, j, k, m] - e[j, m, l, k])
                     for i, j, k, l, m in itertools.permutations(range(1, n + 1), 5)]
            out.append(_summary("fifth_index", fifth, tol))
            lhs = (e[1, 2, 3, 4] - 1) * (e[1, 2, 4, 5] - 1) * (e[1, 2, 5, 3] - 1)
            rhs = (e[1, 2, 4, 3] - 1) * (e[1, 2, 5, 4] - 1) * (e[1, 2, 3, 5] - 1)
            out.append(_summary("six_factor", [abs(lhs - rhs)], tol))
    return out


@dataclass
class UnitCertificate:
    passed: bool
    max_distance: float
    constant_term: int
    coefficients: list[int]  # nearest integers, leading first


def unit_certificate(T: EpsilonTable, tol: float = CERTIFICATE_TOL) -> UnitCertificate:
    """Check that ``∏ (X - ε_ijkl)`` over all tuples is an integer polynomial with constant ±1.

    The tuple set is stable under any permutation of the conjugates, so the
    product has rational coefficients; integrality together with a unit
    constant term shows every ``ε`` is an algebraic unit.
    """
    with mpmath.workprec(T.embeddings.precision):
        poly = [mpmath.mpc(1)]
        for x in T.values.values():
            nxt = poly + [mpmath.mpc(0)]
            for k in range(1, len(nxt)):
                nxt[k] -= x * poly[k - 1]
            poly = nxt
        ints = [int(mpmath.nint(c.real)) for c in poly]
        dist = max(abs(c - r) for c, r in zip(poly, ints))
    const = ints[-1]
    passed = float(dist) < tol and abs(const) == 1
    return UnitCertificate(passed, float(dist), const, ints)
