import random

import mpmath
import pytest

from conftest import random_generator, random_unimodular
from ratmono._roots import PrecisionError
from ratmono.field import Mobius, make_field, mobius_apply
from ratmono.numeric import (
    check_identities,
    conjugates,
    cross_ratio,
    embeddings,
    epsilon_table,
    unit_certificate,
)

K4 = make_field("x^4 - x - 1")
T4 = K4.gen
K5 = make_field("x^5 - x - 1")
T5 = K5.gen


def newton_root(f, df, x0, steps=60):
    """Independent oracle: plain Newton iteration."""
    with mpmath.workprec(200):
        x = mpmath.mpf(x0)
        for _ in range(steps):
            x -= f(x) / df(x)
        return +x


def test_embeddings_quadratic_order():
    E = embeddings(make_field("x^2 + 1"), 64)
    assert [complex(r) for r in E.roots] == [-1j, 1j]


def test_embeddings_cubic_and_quartic():
    E = embeddings(make_field("x^3 - x - 1"), 128)
    real = newton_root(lambda x: x**3 - x - 1, lambda x: 3 * x**2 - 1, 1.3)
    assert abs(E.roots[2] - real) < 1e-30
    assert E.roots[0].imag < 0 < E.roots[1].imag and E.roots[0].real == E.roots[1].real
    E4 = embeddings(K4, 128)
    r1 = newton_root(lambda x: x**4 - x - 1, lambda x: 4 * x**3 - 1, -0.7)
    r2 = newton_root(lambda x: x**4 - x - 1, lambda x: 4 * x**3 - 1, 1.2)
    assert abs(E4.roots[0] - r1) < 1e-30 and abs(E4.roots[3] - r2) < 1e-30
    assert float(r1) == pytest.approx(-0.724492, abs=1e-6)
    assert float(r2) == pytest.approx(1.220744, abs=1e-6)


def test_embeddings_residual_and_precision_floor():
    E = embeddings(K5, 256)
    assert E.residual < mpmath.mpf(2) ** -128
    with pytest.raises(ValueError):
        embeddings(K5, 32)


def test_embeddings_deterministic():
    a = embeddings(K5, 200)
    from ratmono.numeric import _embeddings

    _embeddings.cache_clear()
    b = embeddings(K5, 200)
    assert a.roots == b.roots


def test_cross_ratio_errors():
    E = embeddings(K4)
    with pytest.raises(ValueError):
        cross_ratio(T4, (1, 1, 2, 3), E)
    with pytest.raises(ValueError):
        cross_ratio(make_field("x^3 - x - 1").gen, (1, 2, 3, 4), embeddings(make_field("x^3 - x - 1")))


def test_cross_ratio_sum_identity_random():
    rng = random.Random(43)
    prec = 256
    bound = mpmath.mpf(2) ** (-prec / 4)
    for _ in range(100):
        K = rng.choice([K4, K5, make_field("2x^4 + x^3 - 3x + 5"), make_field("3x^5 + x^2 - 2")])
        alpha = random_generator(rng, K, 20)
        E = embeddings(K, prec)
        idx = rng.sample(range(1, K.degree + 1), 4)
        i, j, k, l = idx
        s = cross_ratio(alpha, (i, j, k, l), E) + cross_ratio(alpha, (i, l, k, j), E)
        assert abs(s - 1) < bound


def test_cross_ratio_mobius_invariance():
    rng = random.Random(47)
    E = embeddings(K5)
    for _ in range(10):
        C = random_unimodular(rng)
        beta = mobius_apply(C, T5)
        for idx in [(1, 2, 3, 4), (5, 1, 2, 3), (2, 4, 1, 5)]:
            assert abs(cross_ratio(beta, idx, E) - cross_ratio(T5, idx, E)) < 1e-60


def test_epsilon_trivial_tables():
    E = embeddings(K4)
    T = epsilon_table(T4, T4, E)
    assert len(T.values) == 24 and all(abs(v - 1) < 1e-60 for v in T.values.values())
    checks = {c.name: c for c in check_identities(T)}
    assert checks["cramer"].status == "skipped: degenerate denominators"
    U = epsilon_table(T4, mobius_apply(Mobius(2, 1, 1, 1), T4), E)
    assert all(abs(v - 1) < 1e-60 for v in U.values.values())
    cert = unit_certificate(U)
    binom = [int(mpmath.binomial(24, k)) * (-1) ** k for k in range(25)]
    assert cert.passed and cert.coefficients == binom


def test_identities_quintic_pair():
    T = epsilon_table(T5, T5 * T5, embeddings(K5, 256))
    checks = {c.name: c for c in check_identities(T, 1e-8)}
    assert set(checks) == {"cross_ratio_sum", "symmetry", "cramer", "fifth_index", "six_factor"}
    for c in checks.values():
        assert c.status == "pass" and c.max_violation < 1e-8


def test_identities_arbitrary_pairs():
    rng = random.Random(53)
    E = embeddings(K5)
    for _ in range(5):
        a, b = random_generator(rng, K5, 9), random_generator(rng, K5, 9)
        assert all(c.status == "pass" for c in check_identities(epsilon_table(a, b, E)))


def test_quartic_not_applicable():
    T = epsilon_table(T4, T4 * T4, embeddings(K4))
    checks = {c.name: c for c in check_identities(T)}
    assert checks["fifth_index"].status == "not applicable: n < 5"
    assert checks["six_factor"].status == "not applicable: n < 5"


def test_unit_certificate_equal_orders():
    T = epsilon_table(T4, T4 * T4, embeddings(K4, 256))
    cert = unit_certificate(T, 1e-6)
    assert cert.passed and abs(cert.constant_term) == 1 and cert.max_distance < 1e-6
    assert any(abs(v - 1) > 1e-3 for v in T.values.values())


def test_unit_certificate_gl2z_orbits():
    rng = random.Random(59)
    E = embeddings(K5)
    for _ in range(5):
        beta = mobius_apply(random_unimodular(rng), T5)
        assert unit_certificate(epsilon_table(T5, beta, E)).passed


def test_unit_certificate_unequal_orders_reported():
    # the implication only goes one way; only the outcome's shape is checked
    cert = unit_certificate(epsilon_table(T4, T4 / 2, embeddings(K4)))
    assert isinstance(cert.passed, bool) and len(cert.coefficients) == 25


def test_report_determinism():
    E = embeddings(K5)
    a = check_identities(epsilon_table(T5, T5 * T5, E))
    b = check_identities(epsilon_table(T5, T5 * T5, E))
    assert a == b


def test_conjugates_field_mismatch():
    with pytest.raises(ValueError):
        conjugates(T4, embeddings(K5))


def test_precision_error_type():
    assert issubclass(PrecisionError, ArithmeticError)
