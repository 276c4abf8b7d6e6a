"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored leading-first: ``coeffs[i]`` multiplies
``X**(degree - i)``.  The zero polynomial is ``Polynomial([])``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "Polynomial",
    "BinaryForm",
    "ReducibleError",
    "content_and_primitive",
    "resultant",
    "sylvester_matrix",
    "poly_discriminant",
    "is_irreducible",
    "find_factor",
    "parse_polynomial",
]

MAX_IRREDUCIBILITY_DEGREE = 8


class ReducibleError(ValueError):
    """Raised when an irreducible polynomial was required; carries a factor."""

    def __init__(self, poly: "Polynomial", factor: "Polynomial"):
        super().__init__(f"{poly} is reducible: factor {factor}")
        self.poly = poly
        self.factor = factor


def _strip(cs: Iterable) -> tuple[Fraction, ...]:
    cs = [Fraction(c) for c in cs]
    i = 0
    while i < len(cs) and cs[i] == 0:
        i += 1
    return tuple(cs[i:])


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip(coeffs)

    # construction
    @classmethod
    def from_ascending(cls, coeffs: Iterable) -> "Polynomial":
        return cls(list(coeffs)[::-1])

    @classmethod
    def monomial(cls, deg: int, c=1) -> "Polynomial":
        return cls([c] + [0] * deg)

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return parse_polynomial(text)

    # basic properties
    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_primitive_integral(self) -> bool:
        return (self.is_integral() and bool(self.coeffs) and self.lc > 0
                and gcd(*[int(c) for c in self.coeffs]) == 1)

    def ascending(self) -> list[Fraction]:
        return list(self.coeffs[::-1])

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError(f"{self} has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        n = self.degree
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = n - i
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if a == 1 else f"{a}{mono}" if a.denominator == 1 else f"({a}){mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        pad = (Fraction(0),) * (len(a) - len(b)) + b
        return Polynomial(x + y for x, y in zip(a, pad))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Polynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if self.degree < dq:
            return Polynomial(), self
        quot = []
        lead = other.lc
        for i in range(len(rem) - dq):
            q = rem[i] / lead
            quot.append(q)
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[i + j] -= q * c
        return Polynomial(quot), Polynomial(rem[len(rem) - dq:] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0 * x
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def eval_with(self, x, convert):
        """Horner evaluation with coefficients mapped through ``convert``."""
        acc = convert(0)
        for c in self.coeffs:
            acc = acc * x + convert(c)
        return acc

    def derivative(self) -> "Polynomial":
        n = self.degree
        return Polynomial(c * (n - i) for i, c in enumerate(self.coeffs[:-1]))

    def monic(self) -> "Polynomial":
        return Polynomial(c / self.lc for c in self.coeffs)

    def compose_linear(self, num: tuple, den: tuple) -> "Polynomial":
        """``den(X)**deg * self(num(X)/den(X))`` for linear ``num = (a, b)``, ``den = (c, d)``."""
        a, b = num
        c, d = den
        n = self.degree
        pn, pd = Polynomial([a, b]), Polynomial([c, d])
        out = Polynomial()
        for i, coef in enumerate(self.coeffs):
            e = n - i
            out = out + coef * pn**e * pd**(n - e)
        return out

    def reversed(self) -> "Polynomial":
        """``X**deg * self(1/X)``."""
        return Polynomial(self.coeffs[::-1])


def gcd_poly(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd over the rationals."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic() if not f.is_zero() else f


@dataclass(frozen=True)
class BinaryForm:
    """Integer binary form ``a0 X^n + a1 X^(n-1) Y + ... + an Y^n``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) < 3:
            raise ValueError("binary form must have degree >= 2")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> "BinaryForm":
        return cls(tuple(f.int_coeffs()))

    def to_polynomial(self) -> Polynomial:
        return Polynomial(self.coeffs)

    def __call__(self, x: int, y: int) -> int:
        n = self.degree
        return sum(a * x ** (n - i) * y**i for i, a in enumerate(self.coeffs))


def content_and_primitive(f: Polynomial) -> tuple[int, Polynomial]:
    """Split an integer polynomial as ``content * primitive = +-f``.

    The primitive part has coprime coefficients and positive leading
    coefficient.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    cs = f.int_coeffs()
    c = gcd(*cs)
    sign = 1 if cs[0] > 0 else -1
    return c, Polynomial([sign * x // c for x in cs])


def primitive_part(f: Polynomial) -> Polynomial:
    """Clear denominators of a rational polynomial, then take the primitive part."""
    den = lcm(*[c.denominator for c in f.coeffs]) if f.coeffs else 1
    return content_and_primitive(Polynomial(c * den for c in f.coeffs))[1]


def resultant(f: Polynomial, g: Polynomial) -> Fraction:
    """Exact resultant ``lc(f)**deg(g) * prod g(roots of f)``.

    Euclidean remainder sequence over the rationals; every step is exact.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("zero polynomial")
    result = Fraction(1)
    while True:
        m, n = f.degree, g.degree
        if n == 0:
            return result * g.lc**m
        if m == 0:
            return result * f.lc**n
        r = f % g
        if r.is_zero():
            return Fraction(0)
        # Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r)
        if (m * n) % 2:
            result = -result
        result *= g.lc ** (m - r.degree)
        f, g = g, r


def sylvester_matrix(f: Polynomial, g: Polynomial) -> list[list[Fraction]]:
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + list(f.coeffs) + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + list(g.coeffs) + [Fraction(0)] * (size - n - 1 - i))
    return rows


def poly_discriminant(f: Polynomial) -> Fraction:
    """``(-1)**(n(n-1)/2) * Res(f, f') / lc(f)``."""
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc


def _root_bound_bits(cs: Sequence[int]) -> int:
    # Cauchy bound on root moduli, in bits
    lead = abs(cs[0])
    m = max(abs(c) for c in cs[1:]) if len(cs) > 1 else 0
    return max(1, (m // lead + 2).bit_length())


def find_factor(f: Polynomial) -> Polynomial | None:
    """Return a proper primitive factor of ``f`` over the integers, or ``None``.

    ``f`` must be a primitive integer polynomial of degree at most 8.
    Factors are rebuilt from subsets of complex roots: for a true factor
    ``g`` of ``f``, ``lc(f) * prod(X - r)`` over the roots of ``g`` is an
    integer multiple of ``g``, so rounding and an exact division test decide.
    """
    n = f.degree
    if n > MAX_IRREDUCIBILITY_DEGREE:
        raise ValueError("unsupported degree")
    if n <= 1:
        return None
    sqf = gcd_poly(f, f.derivative())
    if sqf.degree > 0:
        return primitive_part(sqf)
    cs = f.int_coeffs()
    if cs[-1] == 0:
        return Polynomial([1, 0])
    from ratmono._roots import polyroots
    import mpmath

    a0 = cs[0]
    bits = _root_bound_bits(cs)
    prec = 80 + n * bits + 2 * abs(a0).bit_length() + 2 * n
    roots = polyroots(cs, prec)
    with mpmath.workprec(prec):
        for k in range(1, n // 2 + 1):
            for subset in combinations(roots, k):
                prod = [mpmath.mpc(a0)]
                for r in subset:
                    nxt = prod + [mpmath.mpc(0)]
                    for i in range(1, len(nxt)):
                        nxt[i] -= r * prod[i - 1]
                    prod = nxt
                if any(abs(c.imag) > 0.25 for c in prod):
                    continue
                cand = [int(mpmath.nint(c.real)) for c in prod]
                if not any(cand[1:]) and cand[0] == 0:
                    continue
                g = gcd(*cand)
                if g == 0:
                    continue
                cand = [c // g for c in cand]
                if cand[0] < 0:
                    cand = [-c for c in cand]
                gp = Polynomial(cand)
                if gp.degree == k and (f % gp).is_zero():
                    return gp
    return None


def is_irreducible(f: Polynomial) -> bool:
    """Irreducibility over the rationals for primitive integer ``f``, degree <= 8."""
    if f.degree < 1:
        raise ValueError("degree must be >= 1")
    if f.degree > MAX_IRREDUCIBILITY_DEGREE:
        raise ValueError("unsupported degree")
    return find_factor(f) is None


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)|\(\s*(?P<pcoef>\d+/\d+)\s*\))?\s*\*?\s*
        (?P<var>(?:theta|[xXtTθ]))?
        (?:\s*(?:\^|\*\*)\s*(?P<exp>\d+))?\s*""",
    re.VERBOSE,
)


def parse_polynomial(text: str) -> Polynomial:
    """Parse ``"2x^3 - 3/2x + 1"`` style text or a JSON leading-first array.

    The variable may be written ``x``, ``X``, ``t``, ``θ`` or ``theta``.
    """
    s = text.strip()
    if s.startswith("["):
        return Polynomial(Fraction(v) for v in json.loads(s))
    s = s.replace("−", "-").replace("²", "^2").replace("³", "^3").replace("⁴", "^4")
    terms: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        sign, coef, pcoef, var, exp = m.group("sign", "coef", "pcoef", "var", "exp")
        coef = coef or pcoef
        if sign is None and not first:
            raise ValueError(f"missing operator near {s[pos:]!r}")
        if coef is None and var is None:
            raise ValueError(f"empty term near {s[pos:]!r}")
        if exp is not None and var is None:
            raise ValueError("exponent without variable")
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        e = (int(exp) if exp else 1) if var else 0
        terms[e] = terms.get(e, Fraction(0)) + c
        pos = m.end()
        first = False
    if not terms:
        raise ValueError("empty polynomial")
    deg = max(terms)
    return Polynomial(terms.get(deg - i, 0) for i in range(deg + 1))
