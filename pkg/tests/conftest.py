from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lndrees.examples import load
from lndrees.polycore import Poly, Ring

settings.register_profile(
    "lndrees",
    max_examples=200,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("lndrees")

FIXTURES = ("intro", "sl2", "danielewski", "triangular", "threefold", "winkelmann", "torsor", "plane")

_cache = {}


def fixture(name):
    """``(algebra, derivation)`` for a shipped fixture, shared across tests."""
    if name not in _cache:
        algebra, d, _ = load(f"{name}.spec")
        _cache[name] = (algebra, d)
    return _cache[name]


def presentation(name):
    from lndrees.rees import rees_algorithm

    key = ("pres", name)
    if key not in _cache:
        _cache[key] = rees_algorithm(fixture(name)[1])
    return _cache[key]


@st.composite
def polys(draw, ring: Ring, max_terms=3, max_deg=3, coeffs=(-3, 3)):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        m = tuple(draw(st.lists(st.integers(0, max_deg), min_size=ring.nvars, max_size=ring.nvars)))
        if sum(m) > max_deg:
            continue
        c = draw(st.integers(*coeffs))
        if draw(st.booleans()):
            c = Fraction(c, draw(st.integers(1, 4)))
        terms[m] = terms.get(m, 0) + c
    return Poly(ring, terms)


# -- acceptance summary ----------------------------------------------------

ACCEPTANCE = {}


@pytest.fixture
def record():
    def _record(number, passed, detail=""):
        ACCEPTANCE[number] = (passed, detail)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if passed else 'FAIL'}  {detail}")
