import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from ratmono.field import Mobius, generates, make_field

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# defining polynomials for the random corpus, degrees 3..5, monic and not
FIELD_POLYS = [
    "x^3 - x - 1",
    "2x^3 + 3x^2 + 4x + 5",
    "x^3 - 2",
    "3x^3 - x^2 + 2x - 7",
    "x^4 - x - 1",
    "2x^4 + x^3 - 3x + 5",
    "x^4 - 2x^2 - x - 2",
    "x^5 - x - 1",
    "3x^5 + x^2 - 2",
]


@pytest.fixture(scope="session")
def fields():
    return [make_field(p) for p in FIELD_POLYS]


def random_rational(rng: random.Random, height: int = 20) -> Fraction:
    den = rng.randint(1, height) if rng.random() < 0.3 else 1
    return Fraction(rng.randint(-height, height), den)


def random_generator(rng: random.Random, K, height: int = 20):
    while True:
        xi = K([random_rational(rng, height) for _ in range(K.degree)])
        if generates(xi):
            return xi


def random_unimodular(rng: random.Random, steps: int = 10) -> Mobius:
    """A product of at most ``steps`` elementary GL2(Z) matrices."""
    C = Mobius(1, 0, 0, 1)
    elementary = [
        lambda k: Mobius(1, k, 0, 1),
        lambda k: Mobius(1, 0, k, 1),
        lambda k: Mobius(0, 1, 1, 0),
        lambda k: Mobius(-1, 0, 0, 1),
    ]
    for _ in range(rng.randint(1, steps)):
        C = C @ rng.choice(elementary)(rng.choice([-2, -1, 1, 2]))
    return C


def corpus(size: int, seed: int, fields):
    rng = random.Random(seed)
    return [random_generator(rng, rng.choice(fields)) for _ in range(size)]


# acceptance summary: one line per criterion
_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    number, title = mark.args
    passed = call.excinfo is None
    prev = _criteria.get(number, (title, True))
    _criteria[number] = (title, prev[1] and passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}")
