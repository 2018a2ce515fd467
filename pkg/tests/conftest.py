import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qsmooth import load_ambient, load_polytope, load_system

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


@pytest.fixture(scope="session")
def product_system():
    """Bidegree (3,2) system on the plane-times-line product."""
    return load_system(
        fixture_path("ambient_p2xp1.txt"), fixture_path("monomials_p2xp1_deg32.txt")
    )


@pytest.fixture(scope="session")
def triple_line_system():
    """Tridegree (2,2,2) system on the product of three lines."""
    return load_system(
        fixture_path("ambient_p1p1p1.txt"),
        fixture_path("monomials_p1p1p1_deg222.txt"),
    )


@pytest.fixture(scope="session")
def p4_system():
    """Cubic system on projective four-space with a failing triple stratum."""
    return load_system(
        fixture_path("ambient_p4.txt"), fixture_path("monomials_p4_triple_point.txt")
    )


@pytest.fixture(scope="session")
def blowup_system():
    """Proper-transform system on the two-point blow-up (quotient ambient)."""
    return load_system(
        fixture_path("ambient_blowup_p3_quotient.txt"),
        fixture_path("monomials_blowup_p3.txt"),
    )


@pytest.fixture(scope="session")
def blowup_fan_ambient():
    return load_ambient(fixture_path("ambient_blowup_p3_fan.txt"))


@pytest.fixture(scope="session")
def dual8_system():
    """Five-monomial system on the eight-variable dual ambient."""
    return load_system(
        fixture_path("ambient_dual8.txt"), fixture_path("monomials_dual8.txt")
    )


@pytest.fixture(scope="session")
def newton_polytope_pair():
    """The polytope pair whose induced system is the product fixture."""
    return (
        load_polytope(fixture_path("poly_newton_deg32.txt")),
        load_polytope(fixture_path("poly_anticanonical_p2xp1.txt")),
    )
