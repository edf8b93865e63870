"""
Pytest fixtures for the ore-kernel project.

This module contains fixtures that can be used across test modules.
"""

import random
from fractions import Fraction
from typing import List

import pytest
from typer.testing import CliRunner

from core.expressions import parse_element
from core.rings import QX, WEYL, ZZ, UniPoly, WeylOp
from core.sets import OreSetDesc, SatMode, SaturatedSetDesc
from core.weyl import euler_factor
from utils.config import KernelConfig


def weyl(text: str) -> WeylOp:
    """Parse a Weyl-algebra element."""
    element = parse_element(text, WEYL)
    assert isinstance(element, WeylOp)
    return element


def poly(text: str) -> UniPoly:
    """Parse a polynomial of Q[x]."""
    element = parse_element(text, QX)
    assert isinstance(element, UniPoly)
    return element


# random elements for sampled properties


def random_weyl(rng: random.Random, degree: int = 2, terms: int = 3) -> WeylOp:
    """Operator with up to ``terms`` monomials of x- and d-degree at most ``degree``."""
    return WeylOp(
        {
            (rng.randint(0, degree), rng.randint(0, degree)): rng.randint(-3, 3)
            for _ in range(terms)
        }
    )


def random_euler(
    rng: random.Random, z: Fraction = Fraction(0), factors: int = 2
) -> WeylOp:
    """Product of up to ``factors`` operators ``theta + z + k``."""
    result = WeylOp.constant(1)
    for _ in range(rng.randint(0, factors)):
        result = result * euler_factor(z, rng.randint(-3, 3))
    return result


def random_smooth(rng: random.Random, exponent: int = 3) -> int:
    """``2^a * 3^b`` with exponents up to ``exponent``."""
    return 2 ** rng.randint(0, exponent) * 3 ** rng.randint(0, exponent)


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator so that sampled properties are reproducible."""
    return random.Random(20240611)


@pytest.fixture
def config() -> KernelConfig:
    """Budgets small enough for quick searches."""
    return KernelConfig(budget_degree=8, budget_exponent=6)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


# standard sets


@pytest.fixture
def theta0() -> OreSetDesc:
    return OreSetDesc.euler(0)


@pytest.fixture
def x_set() -> OreSetDesc:
    """The monoid [x] of the Weyl algebra."""
    return OreSetDesc.monoid(WEYL, [WeylOp.x()])


@pytest.fixture
def d_set() -> OreSetDesc:
    """The monoid [d] of the Weyl algebra."""
    return OreSetDesc.monoid(WEYL, [WeylOp.d()])


@pytest.fixture
def theta_monoid() -> OreSetDesc:
    """[theta], which is not a left Ore set."""
    return OreSetDesc.monoid(WEYL, [WeylOp.theta()])


@pytest.fixture
def z_six() -> OreSetDesc:
    return OreSetDesc.monoid(ZZ, [6])


@pytest.fixture
def z_two_three() -> OreSetDesc:
    return OreSetDesc.monoid(ZZ, [2, 3])


@pytest.fixture
def primes_two() -> SaturatedSetDesc:
    return SaturatedSetDesc.create(ZZ, SatMode.FINITE, [2])


@pytest.fixture
def primes_two_three() -> SaturatedSetDesc:
    return SaturatedSetDesc.create(ZZ, SatMode.FINITE, [2, 3])


# the left ideals of the iterated closure example


@pytest.fixture
def ideal_l() -> List[WeylOp]:
    return [weyl("d*(x*d+3)*(3*x*d+1)*(x+d)")]


@pytest.fixture
def ideal_l1() -> List[WeylOp]:
    return [
        weyl("3*x^4*d^2 + (3*x^5 + x^3)*d + 4*x^4"),
        weyl("3*x^2*d^3 + (3*x^3 + 13*x)*d^2 + (19*x^2 + 3)*d + 16*x"),
    ]


@pytest.fixture
def ideal_l2() -> List[WeylOp]:
    return [weyl("3*x*d^2 + (3*x^2 + 1)*d + 4*x")]
