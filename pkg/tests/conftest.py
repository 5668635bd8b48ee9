import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from coronab import BlaschkeSpec, Poly, RationalFn

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# filled by tests/test_acceptance.py, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def P(*coeffs) -> RationalFn:
    """Polynomial as a rational function, ascending coefficients."""
    return RationalFn(Poly(list(coeffs)))


def random_target(rng: np.random.Generator, spec: BlaschkeSpec) -> list[list[complex]]:
    """Jet values with modulus at most one, one list per node."""
    return [list(rng.random(m) * np.exp(2j * np.pi * rng.random(m))) for _, m in spec.points]


@pytest.fixture
def z2() -> BlaschkeSpec:
    return BlaschkeSpec(((0j, 2),))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20261016)
