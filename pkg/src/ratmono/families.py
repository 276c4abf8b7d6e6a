"""Explicit constructions: quartic orders with two rational monogenizations,
the scaling family ``qα/p`` of rationally monogenic orders, and the
reciprocal-unit example."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator

import numpy as np
import sympy

from ratmono.equiv import classify, gl2a_equivalent, gl2q_equivalent, z_equivalent
from ratmono.exact import BinaryForm, Polynomial, find_factor, poly_discriminant, primitive_part
from ratmono.field import FieldElement, Mobius, NumberField, mobius_apply, primitive_min_poly
from ratmono.linalg import xgcd
from ratmono.lattice import module_equal, power_module
from ratmono.order import Order, order_discriminant, order_scalars

__all__ = [
    "QuarticPairReport",
    "ScaledOrderReport",
    "FormSearch",
    "MonogenicWitness",
    "ReciprocalUnitReport",
    "quartic_pair",
    "quartic_pair_scan",
    "scaled_order",
    "unit_form_search",
    "reciprocal_unit_pair",
]


@dataclass
class QuarticPairReport:
    """Outcome for ``f = (X^2 - r)^2 - X - s`` with ``α = θ``, ``β = θ^2 - r``."""

    r: int
    s: int
    poly: Polynomial
    status: str  # "verified" | "rejected" | "failed"
    factor: Polynomial | None = None
    alpha: FieldElement | None = None
    beta: FieldElement | None = None
    checks: dict = field(default_factory=dict)
    discriminant: int | None = None
    monogenizations: int | None = None


def quartic_pair(r: int, s: int) -> QuarticPairReport:
    """Build and exactly verify the pair ``θ, θ² - r`` sharing the order ``Z[θ]``."""
    r, s = int(r), int(s)
    f = (Polynomial([1, 0, -r]) ** 2) - Polynomial([1, 0]) - s
    factor = find_factor(f)
    if factor is not None:
        return QuarticPairReport(r, s, f, "rejected", factor=factor)
    K = NumberField(f)
    alpha = K.gen
    beta = alpha * alpha - r
    part = classify([alpha, beta])
    checks = {
        "alpha_from_beta": alpha == beta * beta - s,
        "equal_modules": module_equal(power_module(alpha), power_module(beta)),
        "no_gl2q_witness": gl2q_equivalent(alpha, beta) is None,
        "two_monogenizations": len(part.groups) == 1 and part.groups[0].monogenizations == 2,
    }
    status = "verified" if all(checks.values()) else "failed"
    disc = order_discriminant(part.groups[0].order)
    return QuarticPairReport(r, s, f, status, None, alpha, beta, checks, int(disc),
                             part.groups[0].monogenizations)


def _quartic_pair_cell(rs):
    return quartic_pair(*rs)


def quartic_pair_scan(bound: int, jobs: int = 1) -> Iterator[QuarticPairReport]:
    """``quartic_pair`` over ``[-bound, bound]^2`` in row-major order."""
    cells = list(itertools.product(range(-bound, bound + 1), repeat=2))
    if jobs <= 1:
        yield from map(_quartic_pair_cell, cells)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_quartic_pair_cell, cells, chunksize=4)


@dataclass
class FormSearch:
    """Coprime ``(x, y)`` in a box with ``F(x, y) = ±1``.

    Bounded search only: absence of hits is heuristic evidence and never a
    proof that no solution exists.
    """

    box: int
    hits: list[tuple[int, int, int]]  # (x, y, F(x, y))
    compatible: list[tuple[int, int, int]]
    complete: bool
    label: str = "heuristic evidence: bounded search, not a proof"


def _candidate_xs(coeffs: list[int], ys: np.ndarray, rhs: int) -> list[tuple[int, int]]:
    """Real roots ``x`` of ``F(x, y) = rhs`` for each ``y``, rounded to integers."""
    n = len(coeffs) - 1
    a0 = coeffs[0]
    m = len(ys)
    yf = ys.astype(float)
    comp = np.zeros((m, n, n))
    # companion matrix of x^n + Σ (a_i y^i / a0) x^(n-i) - rhs/a0
    for i in range(1, n + 1):
        c = coeffs[i] * yf**i / a0
        if i == n:
            c = c - rhs / a0
        comp[:, 0, i - 1] = -c
    for i in range(1, n):
        comp[:, i, i - 1] = 1.0
    eig = np.linalg.eigvals(comp)
    near = (np.abs(eig.imag) < 0.25) & (np.abs(eig.real - np.round(eig.real)) < 0.25)
    rows, cols = np.nonzero(near)
    return [(int(round(eig[r, c].real)), int(ys[r])) for r, c in zip(rows, cols)]


def unit_form_search(F: BinaryForm, box: int, p: int | None = None, q: int | None = None,
                     early_exit: bool = False) -> FormSearch:
    """Search ``|x|, |y| <= box`` for coprime solutions of ``F(x, y) = ±1``.

    A hit is *compatible* with ``p, q`` when ``p | x`` and ``q | y``, the
    shape ``(pd, -qc)`` an integral generator in the ``GL2(Z)``-orbit of
    ``qα/p`` would force.
    """
    coeffs = list(F.coeffs)
    found = set()
    # y = 0: F(x, 0) = a0 x^n
    for x in (1, -1):
        if abs(F(x, 0)) == 1:
            found.add((x, 0))
    ys = np.array([y for y in range(-box, box + 1) if y], dtype=np.int64)
    complete = True
    chunk = 4096
    compatible = []
    for start in range(0, len(ys), chunk):
        block = ys[start:start + chunk]
        for rhs in (1, -1):
            for x, y in _candidate_xs(coeffs, block, rhs):
                if abs(x) <= box and gcd(x, y) == 1 and F(x, y) == rhs:
                    found.add((x, y))
        if early_exit and p and q and any(x % p == 0 and y % q == 0 for x, y in found):
            complete = start + chunk >= len(ys)
            break
    hits = sorted((x, y, F(x, y)) for x, y in found)
    if p and q:
        compatible = [h for h in hits if h[0] % p == 0 and h[1] % q == 0]
    return FormSearch(box, hits, compatible, complete)


@dataclass
class MonogenicWitness:
    """An integral ``β = Cξ`` built from a compatible hit ``(x, y) = (pd, -qc)``."""

    hit: tuple[int, int, int]
    matrix: Mobius
    beta: FieldElement
    min_poly: Polynomial
    monogenic: bool  # Z[β] equals the order of ξ, checked exactly


def _witness_from_hit(xi: FieldElement, O: Order, hit, p: int, q: int) -> MonogenicWitness:
    d, c = hit[0] // p, -hit[1] // q
    _, a, b = xgcd(d, -c)  # a·d - b·c = 1
    C = Mobius(a, b, c, d)
    beta = mobius_apply(C, xi)
    g = primitive_min_poly(beta)
    ok = g.lc == 1 and module_equal(power_module(beta), O.module)
    return MonogenicWitness(tuple(hit), C, beta, g, ok)


@dataclass
class ScaledOrderReport:
    poly: Polynomial
    p: int
    q: int
    xi: FieldElement
    scaled_poly: Polynomial
    order: Order
    discriminant: int
    expected_discriminant: int
    search: FormSearch | None
    monogenic_witnesses: list["MonogenicWitness"] = field(default_factory=list)

    @property
    def discriminant_ok(self) -> bool:
        return self.discriminant == self.expected_discriminant

    @property
    def primitive_ok(self) -> bool:
        return self.scaled_poly.is_primitive_integral()


def scaled_order(f: Polynomial, p: int, q: int, box: int | None = 10**4,
                 early_exit: bool = True) -> ScaledOrderReport:
    """The order of ``ξ = qθ/p`` and a bounded search for monic generators in its orbit.

    ``f_ξ = q^n f(pX/q)`` and ``D(Z_ξ) = (pq)^(n(n-1)) D(f)`` are both checked
    exactly.  The search looks for ``F_f(x, y) = ±1`` with ``|x|, |y| <= box``
    (skipped when ``box`` is ``None``).  Each compatible hit is turned into
    an explicit ``β`` in the ``GL2(Z)``-orbit of ``ξ`` and tested for
    ``Z[β] = Z_ξ``; small primes below the Thue bound can make the order
    monogenic.
    """
    p, q = int(p), int(q)
    if not f.is_primitive_integral():
        raise ValueError("polynomial must be primitive with integer coefficients")
    n = f.degree
    if n < 3:
        raise ValueError("degree must be at least 3")
    for name, v in (("p", p), ("q", q)):
        if not sympy.isprime(v):
            raise ValueError(f"{name} = {v} is not a prime")
    if p == q:
        raise ValueError("p = q")
    a = f.int_coeffs()
    bound = max(abs(a[0]), abs(a[-1]))
    if min(p, q) <= bound:
        raise ValueError(f"p and q must exceed max(|a_0|, |a_n|) = {bound}")
    K = NumberField(f)
    xi = K.gen * q / p
    expected_poly = f.compose_linear((p, 0), (0, q))
    f_xi = primitive_min_poly(xi)
    if f_xi != expected_poly:
        raise AssertionError(f"f_xi = {f_xi} differs from q^n f(pX/q) = {expected_poly}")
    O = order_scalars(xi)
    disc = int(order_discriminant(O))
    expected = (p * q) ** (n * (n - 1)) * int(poly_discriminant(f))
    search, witnesses = None, []
    if box is not None:
        search = unit_form_search(BinaryForm.from_polynomial(f), int(box), p, q, early_exit)
        witnesses = [_witness_from_hit(xi, O, h, p, q) for h in search.compatible]
    return ScaledOrderReport(f, p, q, xi, f_xi, O, disc, expected, search, witnesses)


@dataclass
class ReciprocalUnitReport:
    poly: Polynomial
    equal_orders: bool
    z_equivalent: bool
    witness: Mobius | None

    @property
    def verified(self) -> bool:
        return self.equal_orders and not self.z_equivalent and self.witness == Mobius(0, 1, 1, 0)


def reciprocal_unit_pair(f: Polynomial) -> ReciprocalUnitReport:
    """``ε = θ`` and ``1/ε``: same ring ``Z[ε]``, GL2(Z)-equivalent, not Z-equivalent."""
    a = f.int_coeffs() if f.is_integral() else None
    if a is None or a[0] != 1:
        raise ValueError("polynomial must be monic with integer coefficients")
    if abs(a[-1]) != 1:
        raise ValueError("not a unit")
    if f.degree < 3:
        raise ValueError("degree must be at least 3")
    K = NumberField(primitive_part(f))
    eps = K.gen
    inv = eps.inverse()
    return ReciprocalUnitReport(
        f,
        module_equal(power_module(eps), power_module(inv)),
        z_equivalent(eps, inv),
        gl2a_equivalent(eps, inv),
    )
