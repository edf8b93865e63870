"""
Tests for set descriptors and membership.
"""

from fractions import Fraction

import pytest

from conftest import poly, weyl
from core.rings import QX, WEYL, ZZ, Tri, WeylOp
from core.sets import (
    OreSetDesc,
    OreSetKind,
    SatMode,
    SaturatedSetDesc,
    contains,
    euler_member,
    euler_shifts,
    factor_in_monoid,
)
from utils.exceptions import RingMismatchError, UnsupportedSetError, ZeroInputError


class TestSaturatedSetDesc:
    """Tests for saturated sets in irreducible normal form."""

    def test_canonical_order(self):
        sat = SaturatedSetDesc.create(ZZ, SatMode.FINITE, [5, -2, 3, 2])
        assert sat.irreducibles == (2, 3, 5)

    def test_polynomials_made_monic(self):
        items = [poly("2*x^2 + 2"), poly("x")]
        sat = SaturatedSetDesc.create(QX, SatMode.FINITE, items)
        assert sat.irreducibles == (poly("x"), poly("x^2 + 1"))

    def test_rejects_composites(self):
        with pytest.raises(ValueError):
            SaturatedSetDesc.create(ZZ, SatMode.FINITE, [6])
        with pytest.raises(ValueError):
            SaturatedSetDesc.create(QX, SatMode.FINITE, [poly("x^2 - 1")])

    def test_weyl_rejected(self):
        with pytest.raises(UnsupportedSetError):
            SaturatedSetDesc.create(WEYL, SatMode.FINITE, [])

    def test_membership(self, primes_two):
        assert primes_two.is_member(8)
        assert primes_two.is_member(-4)
        assert not primes_two.is_member(6)
        assert not primes_two.is_member(0)
        assert primes_two.complement.is_member(15)
        assert not primes_two.complement.is_member(10)

    def test_split(self, primes_two):
        assert primes_two.split(-24) == (8, -3)
        assert primes_two.complement.split(-24) == (3, -8)

    def test_split_polynomial(self):
        sat = SaturatedSetDesc.create(QX, SatMode.FINITE, [poly("x")])
        s_part, rest = sat.split(poly("2*x^3 + 2*x^2"))
        assert rest == poly("x + 1")
        assert s_part == poly("2*x^2")

    def test_split_zero(self, primes_two):
        with pytest.raises(ZeroInputError):
            primes_two.split(0)

    def test_describe(self, primes_two_three):
        assert primes_two_three.describe() == "finite{2, 3}"


class TestOreSetDesc:
    """Tests for the symbolic set constructors."""

    def test_euler_reduces_shift(self):
        assert OreSetDesc.euler(Fraction(7, 2)).z == Fraction(1, 2)
        assert OreSetDesc.euler(-3).z == 0

    def test_mixed_weyl_monoid_becomes_union(self):
        S = OreSetDesc.monoid(WEYL, [WeylOp.x(), WeylOp.d()])
        assert S.kind is OreSetKind.UNION
        assert len(S.parts) == 2

    def test_theta_monoid_not_known_ore(self, theta_monoid, x_set):
        assert not theta_monoid.is_known_ore
        assert x_set.is_known_ore

    def test_commutative_union_merges_generators(self, z_six):
        S = OreSetDesc.union([z_six, OreSetDesc.monoid(ZZ, [2, 6])])
        assert S.kind is OreSetKind.MONOID
        assert S.gens == (6, 2)

    def test_rejects_bad_generators(self):
        with pytest.raises(ValueError):
            OreSetDesc.monoid(ZZ, [0])
        with pytest.raises(ValueError):
            OreSetDesc.monoid(QX, [poly("3")])
        with pytest.raises(RingMismatchError):
            OreSetDesc.monoid(ZZ, [poly("x")])

    def test_ideal_hat_commutative_only(self):
        with pytest.raises(UnsupportedSetError):
            OreSetDesc.ideal_hat(WEYL, WeylOp.x())

    def test_all_generators(self):
        S = OreSetDesc.monoid(WEYL, [WeylOp.x(), WeylOp.d()])
        assert set(S.all_generators()) == {WeylOp.x(), WeylOp.d()}
        with pytest.raises(UnsupportedSetError):
            OreSetDesc.euler(0).all_generators()

    def test_describe(self, z_six):
        assert z_six.describe() == "[6]"
        assert OreSetDesc.euler(Fraction(1, 3)).describe() == "Theta_1/3"


class TestEulerMembership:
    """Tests for products of shifted Euler factors."""

    def test_shifts(self):
        assert euler_shifts(Fraction(0), weyl("(x*d - 1)*(x*d + 2)")) == [-1, 2]
        assert euler_shifts(Fraction(0), WeylOp.constant(1)) == []

    def test_fractional_shift(self):
        assert euler_member(Fraction(1, 2), weyl("x*d + 3/2"))
        assert not euler_member(Fraction(0), weyl("x*d + 3/2"))

    def test_non_members(self):
        assert not euler_member(Fraction(0), weyl("2*x*d"))
        assert not euler_member(Fraction(0), weyl("x*d^2"))
        assert not euler_member(Fraction(0), weyl("x^2*d^2 + 1"))


class TestContains:
    """Tests for membership across all set kinds."""

    def test_monoid(self, z_six):
        assert contains(z_six, 36) is Tri.YES
        assert contains(z_six, 12) is Tri.NO
        assert contains(z_six, 1) is Tri.YES
        assert contains(z_six, 0) is Tri.NO

    def test_sign_generator(self):
        S = OreSetDesc.monoid(ZZ, [-1, 2])
        assert contains(S, -8) is Tri.YES

    def test_weyl_monoid(self, x_set, d_set):
        assert contains(x_set, WeylOp.x(3)) is Tri.YES
        assert contains(x_set, weyl("x*d")) is Tri.NO
        assert contains(d_set, WeylOp.d(2)) is Tri.YES

    def test_euler(self, theta0):
        assert contains(theta0, weyl("x*d + 4")) is Tri.YES
        assert contains(theta0, WeylOp.x()) is Tri.NO

    def test_prime_set_in_weyl(self):
        sat = SaturatedSetDesc.create(QX, SatMode.FINITE, [poly("x")])
        S = OreSetDesc.prime_set(sat, WEYL)
        assert contains(S, WeylOp.x(2)) is Tri.YES
        assert contains(S, WeylOp.d()) is Tri.NO

    def test_ideal_hat(self):
        S = OreSetDesc.ideal_hat(ZZ, 6)
        assert contains(S, 12) is Tri.YES
        assert contains(S, 1) is Tri.YES
        assert contains(S, 4) is Tri.NO

    def test_nonzero_and_units(self):
        assert contains(OreSetDesc.nonzero(QX), poly("x")) is Tri.YES
        assert contains(OreSetDesc.units(ZZ), -1) is Tri.YES
        assert contains(OreSetDesc.units(ZZ), 2) is Tri.NO

    def test_wrong_ring(self, z_six):
        with pytest.raises(RingMismatchError):
            contains(z_six, WeylOp.x())

    def test_factorization_order(self, z_two_three):
        found = factor_in_monoid(z_two_three, 12)
        assert found.status is Tri.YES
        product = 1
        for _, factor in found.factors:
            product *= factor
        assert product == 12
