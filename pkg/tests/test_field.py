import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_generator
from ratmono._roots import PrecisionError
from ratmono.exact import ReducibleError, parse_polynomial, poly_discriminant
from ratmono.field import (
    INFINITY,
    Mobius,
    NumberField,
    make_field,
    min_poly,
    mobius_apply,
    primitive_min_poly,
    root_in_field,
)
from ratmono.numeric import conjugates, embeddings

P = parse_polynomial
K3 = make_field("x^3 - x - 1")
T3 = K3.gen

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=20)
cubic_elems = st.lists(rationals, min_size=3, max_size=3).map(K3)


def test_make_field_errors():
    assert make_field("x^4 - x - 1").degree == 4
    with pytest.raises(ReducibleError) as err:
        make_field("x^4 - x - 2")
    assert err.value.factor == P("x + 1")
    with pytest.raises(ValueError):
        make_field("2x^2 - 4")  # not primitive
    with pytest.raises(ValueError):
        make_field("x - 1")


def test_basic_arithmetic():
    assert T3**3 == T3 + 1
    assert T3.inverse() == T3 * T3 - 1
    assert (T3 / 2) * 2 == T3
    assert T3**-2 == (T3 * T3 - 1) ** 2
    with pytest.raises(ZeroDivisionError):
        K3.scalar(0).inverse()


@given(cubic_elems, cubic_elems, cubic_elems)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == K3.one


@given(cubic_elems.filter(lambda x: not x.is_zero()))
def test_norm_and_trace_match_embeddings(x):
    E = embeddings(K3, 128)
    vals = conjugates(x, E)
    with mpmath.workprec(128):
        assert abs(mpmath.fsum(vals) - x.trace()) < 1e-25 * (1 + abs(x.trace()))
        assert abs(mpmath.fprod(vals) - x.norm()) < 1e-25 * (1 + abs(x.norm()))


@pytest.mark.parametrize("xi, expected", [
    (T3, "x^3 - x - 1"),
    (T3 * T3, "x^3 - 2x^2 + x - 1"),
    (K3.scalar(3), "x - 3"),
])
def test_min_poly_examples(xi, expected):
    assert min_poly(xi) == P(expected)


@pytest.mark.parametrize("xi, expected", [
    (T3 / 2, "8x^3 - 2x - 1"),
    (T3, "x^3 - x - 1"),
    (T3 * 3 / 2, "8x^3 - 18x - 27"),
])
def test_primitive_min_poly_examples(xi, expected):
    assert primitive_min_poly(xi) == P(expected)
    # independent oracle: q^n f(pX/q) for ξ = qθ/p
    c = xi.coords[1]
    assert primitive_min_poly(xi) == P("x^3 - x - 1").compose_linear((c.denominator, 0), (0, c.numerator))


@given(cubic_elems)
def test_min_poly_degree_divides_n(x):
    f = min_poly(x)
    assert K3.degree % f.degree == 0
    acc = K3.scalar(0)
    for c in f.coeffs:
        acc = acc * x + c
    assert acc.is_zero()


def test_mobius_conventions():
    assert mobius_apply(Mobius(1, 0, 0, 1), T3) == T3
    assert mobius_apply(Mobius(0, 1, 1, 0), T3) == T3 * T3 - 1
    assert mobius_apply(Mobius(1, 1, 1, 0), INFINITY) == 1
    assert mobius_apply(Mobius(1, 1, 0, 1), INFINITY) is INFINITY
    assert mobius_apply(Mobius(1, 1, 1, -2), Fraction(2)) is INFINITY
    with pytest.raises(ValueError):
        Mobius(1, 2, 2, 4)


mobius = st.tuples(rationals, rationals, rationals, rationals).filter(
    lambda t: t[0] * t[3] - t[1] * t[2] != 0).map(lambda t: Mobius(*t))


@given(mobius, mobius, cubic_elems.filter(lambda x: not x.is_rational()))
def test_mobius_composition(C1, C2, x):
    assert mobius_apply(C1, mobius_apply(C2, x)) == mobius_apply(C1 @ C2, x)


def test_mobius_normalized():
    C = Mobius(Fraction(-3, 2), 0, 0, -1).normalized()
    assert C == Mobius(3, 0, 0, 2)


@pytest.mark.parametrize("f, expected", [
    ("x^3 - 2x^2 + x - 1", T3 * T3),
    ("8x^3 - 2x - 1", T3 / 2),
    ("x^2 - 2", None),
    ("x^3 - 2", None),
])
def test_root_in_field_examples(f, expected):
    assert root_in_field(P(f), K3) == expected


def test_root_in_field_round_trip(fields):
    rng = random.Random(7)
    for _ in range(100):
        K = rng.choice(fields)
        xi = random_generator(rng, K, height=6)
        f = primitive_min_poly(xi)
        found = root_in_field(f, K)
        assert found is not None
        assert primitive_min_poly(found) == f


def test_root_in_field_ceiling():
    # the ceiling equals the starting precision and the discriminant is large,
    # so either an exact root is found or the search reports exhaustion
    K = make_field("x^5 - x - 1")
    xi = (K.gen * 97 + 13) ** 3 / 1009
    try:
        found = root_in_field(primitive_min_poly(xi), K, precision=64, ceiling=64)
    except PrecisionError as e:
        assert "precision exhausted" in str(e)
    else:
        assert found is None or primitive_min_poly(found) == primitive_min_poly(xi)


def test_trace_form_and_discriminant():
    K = make_field("2x^3 + 3x^2 + 4x + 5")
    from ratmono.linalg import det

    # det of the trace form of the power basis is D(f) / a0^(2n-2)
    assert det(K.trace_form) == Fraction(poly_discriminant(K.defining_poly), 2**4)


def test_field_equality_by_polynomial():
    assert NumberField(P("x^3 - x - 1")) == K3
    assert NumberField(P("x^3 - 2")) != K3
