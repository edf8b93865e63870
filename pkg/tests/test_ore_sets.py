"""
Tests for Ore solving, common multiples, witnesses and falsification.
"""

from fractions import Fraction

import pytest

from conftest import poly, random_euler, random_weyl, weyl
from core.ore_sets import (
    FalsifyReport,
    OrePair,
    WitnessOutcome,
    common_left_multiple,
    enumerate_set,
    lsat_witness,
    ore_falsify,
    ore_solve,
    subset_on_generators,
)
from core.rings import QX, WEYL, Tri, WeylOp
from core.sets import OreSetDesc, contains
from utils.exceptions import NotInSetError, NotOreError, ZeroInputError

THETA = WeylOp.theta()


def sample_denominator(rng, family):
    """A left Ore set of the given solver family and a random element of it."""
    if family == "x-polynomial":
        f = weyl("x^2 + 1")
        return OreSetDesc.monoid(WEYL, [f]), f ** rng.randint(0, 2)
    if family == "d-polynomial":
        g = weyl("d + 2")
        return OreSetDesc.monoid(WEYL, [g]), g ** rng.randint(0, 2)
    if family == "euler":
        return OreSetDesc.euler(Fraction(0)), random_euler(rng)
    if family == "euler-half":
        z = Fraction(1, 2)
        return OreSetDesc.euler(z), random_euler(rng, z)
    s = WeylOp.constant(1)
    for _ in range(rng.randint(0, 3)):
        s = s * rng.choice([WeylOp.x(), WeylOp.d()])
    return OreSetDesc.monoid(WEYL, [WeylOp.x(), WeylOp.d()]), s


class TestOreSolve:
    """Tests for the left Ore condition solver."""

    def test_pure_x_monoid(self, x_set):
        pair = ore_solve(x_set, WeylOp.x(), WeylOp.d())
        assert pair == OrePair(WeylOp.x(2), weyl("x*d - 1"))

    def test_pure_d_monoid(self, d_set):
        pair = ore_solve(d_set, WeylOp.d(), WeylOp.x())
        assert contains(d_set, pair.s_tilde) is Tri.YES
        assert pair.s_tilde * WeylOp.x() == pair.r_tilde * WeylOp.d()

    def test_euler(self, theta0):
        assert ore_solve(theta0, THETA, WeylOp.x()) == OrePair(THETA - 1, WeylOp.x())

    def test_euler_product(self, theta0):
        s = (THETA + 2) * (THETA - 3)
        r = weyl("x^2 + d + 5")
        pair = ore_solve(theta0, s, r)
        assert contains(theta0, pair.s_tilde) is Tri.YES
        assert pair.s_tilde * r == pair.r_tilde * s

    def test_union_of_x_and_d(self):
        S = OreSetDesc.monoid(WEYL, [WeylOp.x(), WeylOp.d()])
        s = WeylOp.x() * WeylOp.d()
        pair = ore_solve(S, s, WeylOp.d())
        assert pair.s_tilde * WeylOp.d() == pair.r_tilde * s

    @pytest.mark.parametrize(
        "family", ["x-polynomial", "d-polynomial", "euler", "euler-half", "union"]
    )
    def test_random_queries(self, rng, family):
        for _ in range(100):
            S, s = sample_denominator(rng, family)
            r = random_weyl(rng)
            pair = ore_solve(S, s, r)
            assert pair.s_tilde * r == pair.r_tilde * s
            assert contains(S, pair.s_tilde) is Tri.YES

    def test_commutative(self, z_six):
        assert ore_solve(z_six, 6, 5) == OrePair(6, 5)

    def test_denominator_one(self, theta0):
        assert ore_solve(theta0, WeylOp.constant(1), WeylOp.x()) == OrePair(
            WeylOp.constant(1), WeylOp.x()
        )

    def test_not_in_set(self, x_set):
        with pytest.raises(NotInSetError):
            ore_solve(x_set, WeylOp.d(), WeylOp.x())

    def test_not_ore(self, theta_monoid):
        with pytest.raises(NotOreError):
            ore_solve(theta_monoid, THETA, WeylOp.x())


class TestCommonLeftMultiple:
    """Tests for common left multiples inside a set."""

    def test_integers(self, z_two_three):
        result = common_left_multiple(z_two_three, [4, 6])
        assert result.multiple == 12
        assert result.cofactors == (3, 2)

    def test_euler(self, theta0):
        a, b = (THETA + 1) * THETA, (THETA + 1) * (THETA + 2)
        result = common_left_multiple(theta0, [a, b])
        assert contains(theta0, result.multiple) is Tri.YES
        for c, e in zip(result.cofactors, (a, b)):
            assert c * e == result.multiple

    def test_weyl_monoid(self, x_set):
        result = common_left_multiple(x_set, [WeylOp.x(2), WeylOp.x(3)])
        assert contains(x_set, result.multiple) is Tri.YES


class TestSubsetOnGenerators:
    """Tests for set inclusion decided on generators."""

    def test_monoids(self, z_six, z_two_three):
        assert subset_on_generators(z_six, z_two_three) is Tri.YES
        assert subset_on_generators(z_two_three, z_six) is Tri.NO

    def test_euler_in_nonzero(self, theta0):
        assert subset_on_generators(theta0, OreSetDesc.nonzero(WEYL)) is Tri.YES


class TestLsatWitness:
    """Tests for saturation witnesses."""

    def test_in_set(self, z_six):
        result = lsat_witness(z_six, 36)
        assert result.outcome is WitnessOutcome.FOUND
        assert result.witness == 1

    def test_integer_witness(self, z_six):
        assert lsat_witness(z_six, 4).witness == 9

    def test_integer_absent(self, z_six):
        assert lsat_witness(z_six, 5).outcome is WitnessOutcome.PROVEN_ABSENT

    def test_polynomial_witness(self):
        S = OreSetDesc.monoid(QX, [poly("x^2 + x")])
        found = lsat_witness(S, poly("x + 1"))
        assert found.witness is not None
        assert contains(S, found.witness * poly("x + 1")) is Tri.YES

    def test_theta_monoid_search(self, theta_monoid, config):
        assert lsat_witness(theta_monoid, WeylOp.d(), config).witness == WeylOp.x()

    def test_theta_monoid_unknown(self, theta_monoid, config):
        result = lsat_witness(theta_monoid, WeylOp.d(2), config)
        assert result.outcome is WitnessOutcome.UNKNOWN
        assert result.tri is Tri.UNKNOWN

    def test_euler_exact(self, theta0):
        assert lsat_witness(theta0, WeylOp.x()).witness == WeylOp.d()
        assert lsat_witness(theta0, weyl("x + d")).tri is Tri.NO

    def test_fractional_euler(self):
        S = OreSetDesc.euler(Fraction(1, 2))
        assert lsat_witness(S, WeylOp.x()).tri is Tri.NO
        assert lsat_witness(S, weyl("x*d + 1/2")).tri is Tri.YES

    def test_x_d_union(self):
        S = OreSetDesc.monoid(WEYL, [WeylOp.x(), WeylOp.d()])
        found = lsat_witness(S, THETA + 1)
        assert found.witness is not None
        assert contains(S, found.witness * (THETA + 1)) is Tri.YES

    def test_pure_x_monoid(self, x_set):
        assert lsat_witness(x_set, WeylOp.d()).tri is Tri.NO

    def test_zero(self, z_six):
        with pytest.raises(ZeroInputError):
            lsat_witness(z_six, 0)


class TestOreFalsify:
    """Tests for the bounded search for Ore pairs."""

    def test_theta_monoid_has_no_pair(self, theta_monoid):
        report = ore_falsify(theta_monoid, THETA, WeylOp.x(), 8)
        assert report.solution is None
        assert report.message == "no solution up to bound"
        assert report.checked == 9

    def test_solution_found(self, x_set):
        report = ore_falsify(x_set, WeylOp.x(), WeylOp.d(), 4)
        assert report.solution is not None
        assert report.solution.s_tilde == WeylOp.x(2)
        assert report.message == "solution found"

    def test_truncated_message(self):
        report = FalsifyReport(None, 3, 10, True)
        assert report.message == "search truncated"

    def test_enumerate_set(self, z_two_three):
        assert sorted(enumerate_set(z_two_three, 2)) == [1, 2, 3, 4, 6, 9]

    def test_zero_denominator(self, x_set):
        with pytest.raises(ZeroInputError):
            ore_falsify(x_set, WeylOp(), WeylOp.d(), 2)
