"""Shared fixtures: the --heavy switch and a numerical embedding oracle."""

import mpmath
import pytest

from adlercheck.cyclo import as_cyclotomic


def pytest_addoption(parser):
    parser.addoption("--heavy", action="store_true", default=False,
                     help="run slow exact checks marked heavy")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--heavy"):
        return
    skip = pytest.mark.skip(reason="needs --heavy")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip)


def embed(value) -> mpmath.mpc:
    """Complex value of a cyclotomic number under zeta_n -> exp(2 pi i / n)."""
    value = as_cyclotomic(value)
    total = mpmath.mpc(0)
    for e, c in value.coeffs:
        weight = mpmath.mpf(c.numerator) / c.denominator
        total += weight * mpmath.expjpi(mpmath.mpf(2 * e) / value.order)
    return total


@pytest.fixture(autouse=True)
def precision():
    with mpmath.workdps(40):
        yield


def close(a, b) -> bool:
    return abs(mpmath.mpc(a) - mpmath.mpc(b)) < mpmath.mpf(10) ** -30


@pytest.fixture(scope="session")
def rep():
    from adlercheck.psl2 import build_rep
    return build_rep()


@pytest.fixture(scope="session")
def adler():
    from adlercheck.jacobian import pencil
    return pencil(-2)


@pytest.fixture(scope="session")
def klein():
    from adlercheck.jacobian import pencil
    return pencil(0)
