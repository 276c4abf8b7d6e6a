"""Number fields ``Q[X]/(f0)``, their elements, and Möbius transformations.

Elements are coordinate vectors over the power basis ``1, θ, ..., θ^(n-1)``
of the class ``θ`` of ``X``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence, Union

import mpmath

from ratmono import linalg
from ratmono._roots import PrecisionError, canonical_order, polyroots
from ratmono.exact import (
    Polynomial,
    ReducibleError,
    find_factor,
    parse_polynomial,
    primitive_part,
)

__all__ = [
    "NumberField",
    "FieldElement",
    "Mobius",
    "INFINITY",
    "make_field",
    "min_poly",
    "primitive_min_poly",
    "mobius_apply",
    "root_in_field",
]


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


class NumberField:
    """``Q[X]/(f0)`` for a primitive irreducible integer polynomial ``f0``."""

    def __init__(self, defining_poly: Polynomial):
        f0 = defining_poly
        if f0.degree < 2:
            raise ValueError("defining polynomial must have degree >= 2")
        if not f0.is_primitive_integral():
            raise ValueError("defining polynomial must be primitive integral")
        factor = find_factor(f0)
        if factor is not None:
            raise ReducibleError(f0, factor)
        self.defining_poly = f0
        self.degree = f0.degree
        n = self.degree
        monic = f0.monic()
        # reductions of θ^k for k = n .. 2n-2, ascending coordinates
        red = []
        cur = [-c for c in monic.coeffs[1:]][::-1]
        for _ in range(n - 1):
            red.append(cur)
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            cur = [a + top * b for a, b in zip(cur, red[0])]
        self._reductions = red

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.defining_poly == other.defining_poly

    def __hash__(self):
        return hash(self.defining_poly)

    def __repr__(self):
        return f"NumberField({self.defining_poly})"

    def __call__(self, coords: Iterable) -> "FieldElement":
        return FieldElement(self, coords)

    @property
    def one(self) -> "FieldElement":
        return self.scalar(1)

    @property
    def gen(self) -> "FieldElement":
        return self.from_poly(Polynomial([1, 0]))

    def scalar(self, c) -> "FieldElement":
        return FieldElement(self, [c] + [0] * (self.degree - 1))

    def from_poly(self, p: Polynomial) -> "FieldElement":
        """The class of a polynomial in ``θ``."""
        n = self.degree
        asc = p.ascending()
        out = [Fraction(0)] * n
        for k, c in enumerate(asc):
            if not c:
                continue
            if k < n:
                out[k] += c
            else:
                for i, r in enumerate(self._power(k)):
                    out[i] += c * r
        return FieldElement(self, out)

    def _power(self, k: int) -> list[Fraction]:
        n = self.degree
        if k < n:
            return [Fraction(int(i == k)) for i in range(n)]
        if k <= 2 * n - 2:
            return self._reductions[k - n]
        return (self.gen ** k).coords_list()

    def parse_element(self, text: str) -> "FieldElement":
        """Parse a JSON rational array (ascending) or a polynomial in ``θ``."""
        import json

        s = text.strip()
        if s.startswith("["):
            vals = json.loads(s)
            if len(vals) != self.degree:
                raise ValueError(f"expected {self.degree} coordinates, got {len(vals)}")
            return FieldElement(self, [Fraction(str(v)) for v in vals])
        return self.from_poly(parse_polynomial(s))

    @cached_property
    def power_traces(self) -> list[Fraction]:
        """``Tr(θ^k)`` for ``k = 0 .. 2n-2`` via Newton's identities."""
        a = list(self.defining_poly.coeffs)
        n = self.degree
        p = [Fraction(n)]
        for k in range(1, 2 * n - 1):
            s = Fraction(0)
            for i in range(1, min(k, n) + 1):
                if i < k:
                    s += a[i] * p[k - i]
            if k <= n:
                s += k * a[k]
            p.append(-s / a[0])
        return p

    @cached_property
    def trace_form(self) -> list[list[Fraction]]:
        t = self.power_traces
        n = self.degree
        return [[t[i + j] for j in range(n)] for i in range(n)]


class FieldElement:
    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: Iterable):
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != field.degree:
            raise ValueError("coordinate vector has wrong length")
        self.field = field
        self.coords = cs

    def coords_list(self) -> list[Fraction]:
        return list(self.coords)

    def to_poly(self) -> Polynomial:
        return Polynomial.from_ascending(self.coords)

    def __repr__(self):
        return f"FieldElement({self.to_poly().to_text('θ')})"

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords == self.field.scalar(other).coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def _lift(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, (a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, (-a for a in self.coords))

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, (a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, (a * other for a in self.coords))
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = self.field.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(self.coords):
            if x:
                for j, y in enumerate(o.coords):
                    if y:
                        prod[i + j] += x * y
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(self.field._reductions[k - n]):
                    out[i] += c * r
        return FieldElement(self.field, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def inverse(self) -> "FieldElement":
        """Inverse via the extended Euclidean algorithm against ``f0``."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero element")
        f0 = self.field.defining_poly
        r0, r1 = f0, self.to_poly()
        s0, s1 = Polynomial(), Polynomial([1])
        while r1.degree > 0:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        if r1.is_zero():
            raise ZeroDivisionError("element is a zero divisor")
        return self.field.from_poly(s1 * (1 / r1.lc))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def mult_matrix(self) -> list[list[Fraction]]:
        """Rows are coordinates of ``θ^i * self``; ``coords(x*self) = coords(x) @ M``."""
        rows = []
        cur = self
        g = self.field.gen
        for _ in range(self.field.degree):
            rows.append(list(cur.coords))
            cur = cur * g
        return rows

    def trace(self) -> Fraction:
        t = self.field.power_traces
        return sum((c * t[i] for i, c in enumerate(self.coords)), Fraction(0))

    def norm(self) -> Fraction:
        return linalg.det(self.mult_matrix())

    def is_integral(self) -> bool:
        return min_poly(self).is_integral()

    def embed(self, root) -> mpmath.mpc:
        """Value at an embedding given by a complex root of ``f0`` (current mp precision)."""
        acc = mpmath.mpc(0)
        for c in reversed(self.coords):
            acc = acc * root + mpmath.mpf(c.numerator) / c.denominator
        return acc


def make_field(f0: Polynomial | str) -> NumberField:
    if isinstance(f0, str):
        f0 = parse_polynomial(f0)
    return NumberField(f0)


def min_poly(xi: FieldElement) -> Polynomial:
    """Monic minimal polynomial over Q by linear dependence among powers."""
    n = xi.field.degree
    powers = [xi.field.one]
    for d in range(1, n + 1):
        powers.append(powers[-1] * xi)
        # columns = powers; solve sum c_k xi^k = 0 with c_d = 1
        mat = [[p.coords[i] for p in powers] for i in range(n)]
        ker = linalg.nullspace(mat)
        if ker:
            v = ker[0]
            # the kernel is one-dimensional at the first dependent degree
            lead = v[d]
            return Polynomial(c / lead for c in reversed(v))
    raise AssertionError("powers of a field element must become dependent")


def primitive_min_poly(xi: FieldElement) -> Polynomial:
    """The primitive integer minimal polynomial ``f_ξ`` with positive leading coefficient."""
    return primitive_part(min_poly(xi))


def generates(xi: FieldElement) -> bool:
    return min_poly(xi).degree == xi.field.degree


@dataclass(frozen=True)
class Mobius:
    """The matrix ``[[a, b], [c, d]]`` acting by ``ξ -> (aξ+b)/(cξ+d)``."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.det == 0:
            raise ValueError("singular Möbius matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Mobius":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def rows(self) -> list[list[Fraction]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return Mobius(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                      self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def __call__(self, xi):
        return mobius_apply(self, xi)

    def normalized(self) -> "Mobius":
        """Integer primitive entries, first nonzero entry positive."""
        ents = [self.a, self.b, self.c, self.d]
        den = linalg.common_denominator(ents)
        ints = [int(e * den) for e in ents]
        g = gcd(*ints)
        ints = [x // g for x in ints]
        if next(x for x in ints if x) < 0:
            ints = [-x for x in ints]
        return Mobius(*ints)

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in (self.a, self.b, self.c, self.d))


def mobius_apply(C: Mobius, xi: Union[FieldElement, _Infinity, Fraction, int]):
    """``(aξ+b)/(cξ+d)`` on the projective line, ∞ handled by the usual conventions."""
    if xi is INFINITY:
        return INFINITY if C.c == 0 else C.a / C.c
    den = xi * C.c + C.d
    if (isinstance(den, FieldElement) and den.is_zero()) or (not isinstance(den, FieldElement) and den == 0):
        return INFINITY
    num = xi * C.a + C.b
    if isinstance(num, FieldElement):
        return num / den
    return Fraction(num) / Fraction(den)


def _embedding_roots(K: NumberField, prec: int) -> list:
    roots = polyroots(K.defining_poly.coeffs, prec)
    with mpmath.workprec(prec):
        return canonical_order(roots, mpmath.mpf(2) ** (-prec // 3))


def root_in_field(f: Polynomial, K: NumberField, precision: int = 256,
                  ceiling: int | None = None) -> FieldElement | None:
    """An exact root of ``f`` in ``K`` or ``None``.

    Each complex root ``ρ`` of ``f`` (canonical order) is tested for an
    integer relation ``m·ρ = Σ c_i r^i`` with ``r`` the first embedding of
    ``θ``; candidates are accepted only after exact substitution into ``f``.
    Precision doubles up to ``ceiling`` when a relation fails the exact test.
    """
    n = K.degree
    if f.degree < 1 or n % f.degree:
        return None
    ceiling = ceiling or 4 * precision
    prec = precision
    while prec <= ceiling:
        spurious = False
        r_all = _embedding_roots(K, prec)
        rho_all = polyroots(f.coeffs, prec)
        with mpmath.workprec(prec):
            rho_all = canonical_order(rho_all, mpmath.mpf(2) ** (-prec // 3))
            r = r_all[0]
            real_r = r.imag == 0
            tau = mpmath.sqrt(2) - mpmath.mpf(1) / 3
            powers = [mpmath.mpc(1)]
            for _ in range(n - 1):
                powers.append(powers[-1] * r)
            maxcoeff = int(mpmath.mpf(2) ** (prec // (2 * (n + 2))))
            for rho in rho_all:
                if real_r and abs(rho.imag) > mpmath.mpf(2) ** (-prec // 3):
                    continue
                vec = [rho] + powers
                xs = [v.real + tau * v.imag for v in vec]
                rel = mpmath.pslq(xs, maxcoeff=maxcoeff, maxsteps=20000)
                if rel is None or rel[0] == 0:
                    continue
                xi = K([Fraction(-c, rel[0]) for c in rel[1:]])
                if _vanishes(f, xi):
                    return xi
                spurious = True
        if not spurious:
            return None
        prec *= 2
    raise PrecisionError("precision exhausted")


def _vanishes(f: Polynomial, xi: FieldElement) -> bool:
    acc = xi.field.scalar(0)
    for c in f.coeffs:
        acc = acc * xi + c
    return acc.is_zero()
