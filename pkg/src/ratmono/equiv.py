"""Equivalence of algebraic numbers: GL2(Q), GL2(A) for A = Z or Z_S, Z-equivalence,
and a bounded search for Hermite equivalence."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from ratmono import linalg
from ratmono.field import FieldElement, Mobius, _embedding_roots, generates, mobius_apply
from ratmono.lattice import (
    ZZ,
    BaseRing,
    colon,
    module_equal,
    module_scale,
    power_module,
)
from ratmono.order import NotGeneratorError, Order, order_discriminant, order_scalars

__all__ = [
    "EquivalenceReport",
    "ClassGroup",
    "Classification",
    "gl2q_equivalent",
    "gl2a_equivalent",
    "z_equivalent",
    "classify",
    "hermite_search",
    "compare",
]


@dataclass
class EquivalenceReport:
    relation: str  # "gl2q" | "gl2a" | "z_equiv" | "hermite"
    verdict: str  # "yes" | "no" | "inconclusive"
    base: BaseRing = ZZ
    witness: Mobius | FieldElement | None = None


def _check_pair(alpha: FieldElement, beta: FieldElement) -> None:
    if alpha.field != beta.field:
        raise ValueError("elements of different fields")
    for x in (alpha, beta):
        if not generates(x):
            raise NotGeneratorError(f"{x!r} does not generate the field")


def gl2q_equivalent(alpha: FieldElement, beta: FieldElement) -> Mobius | None:
    """A normalized rational ``C`` with ``β = Cα``, or ``None``.

    Solves ``c·αβ + d·β - a·α - b = 0`` coordinatewise for ``(a, b, c, d)``.
    """
    _check_pair(alpha, beta)
    ab = alpha * beta
    one = alpha.field.one
    n = alpha.field.degree
    mat = [[-alpha.coords[i], -one.coords[i], ab.coords[i], beta.coords[i]] for i in range(n)]
    kernel = linalg.nullspace(mat)
    candidates = list(kernel)
    if len(kernel) > 1:
        candidates += [[x + y for x, y in zip(u, v)] for u, v in itertools.combinations(kernel, 2)]
    for a, b, c, d in candidates:
        if a * d - b * c != 0:
            C = Mobius(a, b, c, d).normalized()
            if mobius_apply(C, alpha) == beta:
                return C
    return None


def gl2a_equivalent(alpha: FieldElement, beta: FieldElement, base: BaseRing = ZZ) -> Mobius | None:
    """A witness in ``GL2(base)`` with ``β = Cα``, or ``None``.

    For degree ``n >= 3`` a Möbius map between the conjugates is unique up to
    a scalar, so the integer-primitive ``C`` from :func:`gl2q_equivalent` is
    the only candidate: the pair is equivalent exactly when ``det C`` is a
    unit of ``base``.
    """
    if alpha.field.degree < 3:
        raise ValueError("GL2(A)-equivalence is decided for degree >= 3")
    C = gl2q_equivalent(alpha, beta)
    if C is None or not base.is_unit(C.det):
        return None
    return C


def z_equivalent(alpha: FieldElement, beta: FieldElement) -> bool:
    """``α - β ∈ Z`` or ``α + β ∈ Z``."""
    for x in (alpha - beta, alpha + beta):
        if x.is_rational() and x.coords[0].denominator == 1:
            return True
    return False


def compare(alpha: FieldElement, beta: FieldElement, base: BaseRing = ZZ) -> list[EquivalenceReport]:
    """All decidable relations between two generators."""
    reports = []
    C = gl2q_equivalent(alpha, beta)
    reports.append(EquivalenceReport("gl2q", "yes" if C else "no", ZZ, C))
    W = gl2a_equivalent(alpha, beta, base) if alpha.field.degree >= 3 else None
    verdict = "yes" if W else "no"
    if alpha.field.degree < 3:
        verdict = "inconclusive"
    reports.append(EquivalenceReport("gl2a", verdict, base, W))
    reports.append(EquivalenceReport("z_equiv", "yes" if z_equivalent(alpha, beta) else "no", ZZ))
    return reports


@dataclass
class ClassGroup:
    """Generators sharing one order, split into GL2(base)-classes."""

    order: Order
    discriminant: int | Fraction
    members: list[int]
    classes: list[list[int]]
    witnesses: dict[int, Mobius] = field(default_factory=dict)
    z_classes: list[list[int]] | None = None

    @property
    def monogenizations(self) -> int:
        return len(self.classes)


@dataclass
class Classification:
    base: BaseRing
    groups: list[ClassGroup]


def classify(gens: Sequence[FieldElement], base: BaseRing = ZZ) -> Classification:
    """Group generators by their order, then by GL2(base)-equivalence.

    Each class lists indices into ``gens``; ``witnesses[i]`` maps the class
    representative to ``gens[i]``.  Over ``Z``, an order group whose members
    are all algebraic integers also gets ``z_classes``, its split by
    Z-equivalence.
    """
    by_order: dict[tuple, ClassGroup] = {}
    for idx, g in enumerate(gens):
        O = order_scalars(g, base)
        grp = by_order.get(O.key())
        if grp is None:
            grp = ClassGroup(O, order_discriminant(O), [], [])
            by_order[O.key()] = grp
        grp.members.append(idx)
        for cls in grp.classes:
            W = gl2a_equivalent(gens[cls[0]], g, base)
            if W is not None:
                cls.append(idx)
                grp.witnesses[idx] = W
                break
        else:
            grp.classes.append([idx])
    if not base.S:
        for grp in by_order.values():
            if not all(gens[i].is_integral() for i in grp.members):
                continue
            zc: list[list[int]] = []
            for idx in grp.members:
                for cls in zc:
                    if z_equivalent(gens[cls[0]], gens[idx]):
                        cls.append(idx)
                        break
                else:
                    zc.append([idx])
            grp.z_classes = zc
    return Classification(base, list(by_order.values()))


def _embedding_matrix(elements: Sequence[FieldElement]) -> np.ndarray:
    """Row ``i`` holds the complex embeddings of ``elements[i]``."""
    roots = _embedding_roots(elements[0].field, 80)
    with mpmath.workprec(80):
        return np.array([[complex(x.embed(r)) for r in roots] for x in elements])


def hermite_search(alpha: FieldElement, beta: FieldElement, coefficient_bound: int) -> FieldElement | None:
    """Search ``λ`` with ``λ·M_α = M_β`` among small elements of ``{x : x M_α ⊆ M_β}``.

    Coordinates over the HNF basis of that colon module range over
    ``[-B, B]``; shells of growing sup-norm are scanned so smaller witnesses
    come first.  A float norm filter picks candidates whose norm matches the
    covolume ratio, and each is confirmed by exact module equality.
    ``None`` means nothing was found within the bound; it is not a proof of
    inequivalence.
    """
    _check_pair(alpha, beta)
    Ma, Mb = power_module(alpha), power_module(beta)
    N = colon(Ma, Mb)
    basis = N.elements()
    n = len(basis)
    target = float(Mb.covolume() / Ma.covolume())
    emb = _embedding_matrix(basis)  # n x n: basis element i at embedding j
    mags = np.abs(emb)
    B = int(coefficient_bound)
    axis = np.arange(-B, B + 1)
    hits: list[tuple[int, ...]] = []
    rest = np.array(list(itertools.product(axis, repeat=n - 1)), dtype=np.int64).reshape(-1, n - 1)
    for first in range(0, B + 1):
        z = np.hstack([np.full((len(rest), 1), first, dtype=np.int64), rest])
        if first == 0:
            # keep the first nonzero coordinate positive
            nz = z != 0
            lead = np.where(nz.any(axis=1), z[np.arange(len(z)), nz.argmax(axis=1)], 0)
            z = z[lead > 0]
        if not len(z):
            continue
        vals = z @ emb
        norms = np.abs(np.prod(vals, axis=1))
        slack = np.prod(np.abs(z) @ mags, axis=1) * 1e-11 + 1e-7 * target
        ok = np.nonzero(np.abs(norms - target) <= slack)[0]
        for i in ok:
            zz = tuple(int(v) for v in z[i])
            hits.append(zz)
    # smallest sup-norm first, then fewest and earliest nonzero coordinates
    hits.sort(key=lambda zz: (max(map(abs, zz)), sum(map(abs, zz)), [-abs(v) for v in zz], zz))
    for zz in hits:
        lam = sum((basis[i] * c for i, c in enumerate(zz) if c), alpha.field.scalar(0))
        if not lam.is_zero() and module_equal(module_scale(Ma, lam), Mb):
            return lam
    return None
