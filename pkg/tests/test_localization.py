"""
Tests for left fractions, units and canonical homomorphisms.
"""

import pytest

from conftest import poly, random_euler, random_smooth, random_weyl, weyl
from core.localization import (
    HomKind,
    LocCtx,
    embed,
    equality_characterizations,
    frac_equals,
    frac_ore_pair,
    hom_iso_check,
    normalize,
    omega_map,
    omega_witness,
    two_step_compose,
    unit_group_saturated,
    unit_invert,
)
from core.rings import QX, WEYL, ZZ, Tri, UniPoly, WeylOp
from core.sets import OreSetDesc, OreSetKind, contains
from utils.exceptions import (
    MissingWitnessError,
    NotInSetError,
    NotOreError,
    UnsupportedSetError,
    ZeroInputError,
)

THETA = WeylOp.theta()


def random_numerator(rng, ring):
    if ring is ZZ:
        return rng.randint(-20, 20)
    return UniPoly(tuple(rng.randint(-3, 3) for _ in range(3)))


@pytest.fixture
def z_ctx(z_six):
    return LocCtx(z_six)


@pytest.fixture
def euler_ctx(theta0):
    return LocCtx(theta0)


class TestLocCtx:
    """Tests for validated fractions."""

    def test_denominator_must_be_in_set(self, z_ctx):
        with pytest.raises(NotInSetError):
            z_ctx.fraction(4, 1)

    def test_not_ore(self, theta_monoid):
        with pytest.raises(NotOreError):
            LocCtx(theta_monoid)


class TestArithmetic:
    """Tests for fraction arithmetic over Z and the Weyl algebra."""

    def test_equality_of_representatives(self, z_ctx):
        assert z_ctx.fraction(6, 2) == z_ctx.fraction(36, 12)
        assert z_ctx.fraction(6, 2) != z_ctx.fraction(6, 3)

    def test_add(self, z_ctx):
        total = z_ctx.fraction(6, 1) + z_ctx.fraction(36, 1)
        assert total == z_ctx.fraction(36, 7)

    def test_mul(self, z_ctx):
        product = z_ctx.fraction(6, 5) * z_ctx.fraction(6, 7)
        assert product == z_ctx.fraction(36, 35)

    def test_sub_to_zero(self, z_ctx):
        a = z_ctx.fraction(6, 5)
        assert (a - a) == z_ctx.zero()

    def test_weyl_distributivity(self, euler_ctx):
        a = euler_ctx.fraction(THETA, WeylOp.x())
        b = euler_ctx.fraction(THETA + 1, WeylOp.d())
        c = embed(euler_ctx, weyl("x + 2"))
        assert a * (b + c) == a * b + a * c

    def test_weyl_embedding(self, euler_ctx):
        one = euler_ctx.fraction(THETA, THETA)
        assert one == euler_ctx.one()
        assert embed(euler_ctx, WeylOp.x()) * embed(euler_ctx, WeylOp.d()) == embed(
            euler_ctx, THETA
        )

    def test_ring_axioms_over_integers(self, z_two_three, rng):
        ctx = LocCtx(z_two_three)

        def sample():
            return ctx.fraction(random_smooth(rng), rng.randint(-20, 20))

        for _ in range(500):
            a, b, c = sample(), sample(), sample()
            assert (a * b) * c == a * (b * c)
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a
            assert a + ctx.zero() == a
            assert a * ctx.one() == a

    def test_ring_axioms_over_euler_set(self, euler_ctx, rng):
        def sample():
            s = random_euler(rng, factors=1)
            return euler_ctx.fraction(s, random_weyl(rng, degree=1, terms=2))

        for _ in range(500):
            a, b, c = sample(), sample(), sample()
            assert (a * b) * c == a * (b * c)
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert (a + b) * c == a * c + b * c

    def test_different_localizations(self, z_ctx, z_two_three):
        other = LocCtx(z_two_three)
        with pytest.raises(ValueError):
            frac_equals(z_ctx.one(), other.one())


class TestUnits:
    """Tests for unit detection and inversion."""

    def test_euler_inverse(self, euler_ctx):
        result = unit_invert(euler_ctx.fraction(1, WeylOp.x()))
        assert result.is_unit
        assert result.inverse is not None
        assert result.inverse.s == THETA + 1
        assert result.inverse.r == WeylOp.d()

    def test_integer_unit(self, z_ctx):
        result = unit_invert(z_ctx.fraction(6, 4))
        assert result.is_unit
        assert result.inverse is not None
        assert result.inverse * z_ctx.fraction(6, 4) == z_ctx.one()

    def test_integer_non_unit(self, z_ctx):
        assert unit_invert(z_ctx.fraction(1, 5)).status is Tri.NO

    def test_units_match_prime_support(self, z_ctx):
        for r in range(-50, 51):
            if r == 0:
                continue
            rest = abs(r)
            for p in (2, 3):
                while rest % p == 0:
                    rest //= p
            result = unit_invert(z_ctx.fraction(1, r))
            assert result.is_unit is (rest == 1)
            if result.is_unit:
                assert result.inverse is not None
                assert result.inverse * z_ctx.fraction(1, r) == z_ctx.one()

    def test_zero(self, z_ctx):
        with pytest.raises(ZeroInputError):
            unit_invert(z_ctx.zero())

    def test_unit_group_saturated(self, z_ctx):
        half, third = z_ctx.fraction(1, 2), z_ctx.fraction(1, 3)
        assert unit_group_saturated(half, third) is Tri.YES
        assert unit_group_saturated(z_ctx.fraction(1, 5), half) is Tri.YES


class TestOmega:
    """Tests for the R-fixing homomorphisms between localizations."""

    def test_omega_into_larger_saturation(self, z_six, z_two_three):
        source, target = LocCtx(z_six), LocCtx(z_two_three)
        image = omega_map(target, source.fraction(6, 5))
        assert image == target.fraction(6, 5)

    def test_witness_assembled_from_factors(self):
        S = OreSetDesc.monoid(ZZ, [2])
        T = OreSetDesc.monoid(ZZ, [4])
        w = omega_witness(S, T, 8)
        assert (w * 8) % 4 == 0
        assert omega_map(LocCtx(T), LocCtx(S).fraction(8, 1)).s % 4 == 0

    def test_supplied_witness(self):
        S = OreSetDesc.monoid(ZZ, [2])
        T = OreSetDesc.monoid(ZZ, [6])
        image = omega_map(LocCtx(T), LocCtx(S).fraction(2, 1), {2: 3})
        assert image.s == 6
        assert image.r == 3

    def test_missing_witness(self):
        S = OreSetDesc.monoid(ZZ, [2])
        T = OreSetDesc.monoid(ZZ, [3])
        with pytest.raises(MissingWitnessError):
            omega_map(LocCtx(T), LocCtx(S).fraction(2, 1))

    def test_source_outside_saturation_of_target(self):
        S = OreSetDesc.monoid(ZZ, [2, 3])
        T = OreSetDesc.monoid(ZZ, [2])
        with pytest.raises(MissingWitnessError, match="not contained"):
            omega_map(LocCtx(T), LocCtx(S).fraction(2, 1))

    @pytest.mark.parametrize("ring", [ZZ, QX])
    def test_homomorphism_properties(self, rng, ring):
        if ring is ZZ:
            gen, target_gen = 4, 2
        else:
            gen, target_gen = poly("x^2"), poly("x")
        S = OreSetDesc.monoid(ring, [gen])
        source = LocCtx(S)
        target = LocCtx(OreSetDesc.monoid(ring, [target_gen]))
        witnesses = {gen: target_gen}

        def sample():
            s = gen ** rng.randint(0, 2)
            return source.fraction(s, random_numerator(rng, ring))

        for _ in range(200):
            a, b = sample(), sample()
            image_a, image_b = omega_map(target, a), omega_map(target, b)
            assert omega_map(target, a + b) == image_a + image_b
            assert omega_map(target, a * b) == image_a * image_b
            assert (image_a == image_b) is (a == b)
            assert omega_map(target, a, witnesses) == image_a
            r = random_numerator(rng, ring)
            assert omega_map(target, embed(source, r)) == embed(target, r)

    def test_euler_into_x_d_union(self, theta0):
        T = OreSetDesc.monoid(WEYL, [WeylOp.x(), WeylOp.d()])
        source = LocCtx(theta0).fraction(THETA + 1, WeylOp.x())
        image = omega_map(LocCtx(T), source)
        assert image.ctx.S == T
        assert contains(T, image.s) is Tri.YES


class TestHomIsoCheck:
    """Tests for the existence of canonical homomorphisms."""

    @pytest.mark.parametrize(
        "source,target,kind",
        [
            ([4], [2], HomKind.ISO),
            ([2], [6], HomKind.HOM),
            ([2], [3], HomKind.NONE),
        ],
    )
    def test_integer_monoids(self, source, target, kind):
        S, T = OreSetDesc.monoid(ZZ, source), OreSetDesc.monoid(ZZ, target)
        result = hom_iso_check(S, T)
        assert result.kind is kind
        assert result.is_definite

    def test_x_d_union_and_theta0(self, theta0):
        union = OreSetDesc.monoid(WEYL, [WeylOp.x(), WeylOp.d()])
        assert hom_iso_check(union, theta0).forward is Tri.YES


class TestCommutativeConstructions:
    """Tests for Ore pairs of fractions, two-step localization and display forms."""

    def test_frac_ore_pair(self, z_ctx):
        a, b = z_ctx.fraction(6, 5), z_ctx.fraction(36, 7)
        x, y = frac_ore_pair(a, b)
        assert not x.is_zero()
        assert x * a == y * b

    def test_frac_ore_pair_weyl(self, euler_ctx):
        a = euler_ctx.fraction(1, WeylOp.x())
        with pytest.raises(UnsupportedSetError):
            frac_ore_pair(a, a)

    def test_two_step(self, z_two_three):
        S = OreSetDesc.monoid(ZZ, [2])
        T = OreSetDesc.monoid(ZZ, [3])
        inner = LocCtx(S).fraction(4, 5)
        composed = two_step_compose(S, T, 3, inner)
        assert composed.ctx.S.kind is OreSetKind.MONOID
        assert composed == LocCtx(z_two_three).fraction(12, 5)

    def test_two_step_from_prime_set(self, primes_two, primes_two_three):
        S = OreSetDesc.prime_set(primes_two)
        T = OreSetDesc.monoid(ZZ, [3])
        composed = two_step_compose(S, T, 3, LocCtx(S).fraction(4, 5))
        W = OreSetDesc.prime_set(primes_two_three)
        assert composed.ctx.S == W
        assert composed == LocCtx(W).fraction(12, 5)

    def test_two_step_not_in_outer(self):
        S = OreSetDesc.monoid(ZZ, [2])
        T = OreSetDesc.monoid(ZZ, [3])
        with pytest.raises(NotInSetError):
            two_step_compose(S, T, 5, LocCtx(S).fraction(2, 1))

    def test_normalize(self, z_ctx):
        assert normalize(z_ctx.fraction(6, 4)) == (3, 2)
        assert normalize(z_ctx.fraction(36, -12)) == (3, -1)

    def test_normalize_polynomial(self):
        ctx = LocCtx(OreSetDesc.monoid(QX, [poly("x")]))
        den, num = normalize(ctx.fraction(poly("x^2"), poly("2*x^2 + 2*x")))
        assert den == poly("x")
        assert num == poly("2*x + 2")


class TestEqualityCharacterizations:
    """The equality criteria agree."""

    def test_equal_integers(self, z_ctx):
        a, b = z_ctx.fraction(6, 2), z_ctx.fraction(36, 12)
        result = equality_characterizations(a, b)
        assert result.agree
        assert result.similar

    def test_unequal_integers(self, z_ctx):
        result = equality_characterizations(z_ctx.fraction(6, 2), z_ctx.fraction(6, 3))
        assert result.agree
        assert not result.similar

    @pytest.mark.parametrize(
        "first,second",
        [
            (("x*d", "x"), ("(x*d + 1)*x*d", "(x*d + 1)*x")),
            (("x*d", "x"), ("x*d - 1", "d")),
        ],
    )
    def test_weyl(self, euler_ctx, first, second):
        a = euler_ctx.fraction(weyl(first[0]), weyl(first[1]))
        b = euler_ctx.fraction(weyl(second[0]), weyl(second[1]))
        result = equality_characterizations(a, b)
        assert result.agree
        assert result.as_dict()["similar"] == frac_equals(a, b)

    def test_constructed_pairs_over_integers(self, z_two_three, rng):
        ctx = LocCtx(z_two_three)
        for _ in range(200):
            s, r = random_smooth(rng), rng.randint(-20, 20)
            u, v = random_smooth(rng), random_smooth(rng)
            a = ctx.fraction(u * s, u * r)
            equal = equality_characterizations(a, ctx.fraction(v * s, v * r))
            assert equal.agree and equal.similar
            assert equal.x_ring_in_lsat is Tri.YES
            shifted = ctx.fraction(v * s, v * r + rng.randint(1, 5))
            unequal = equality_characterizations(a, shifted)
            assert unequal.agree and not unequal.similar
            assert unequal.x_ring_in_lsat is Tri.YES

    def test_constructed_pairs_over_euler_set(self, euler_ctx, rng):
        for _ in range(20):
            s, r = random_euler(rng, factors=1), random_weyl(rng, degree=1, terms=2)
            u, v = random_euler(rng, factors=1), random_euler(rng, factors=1)
            a = euler_ctx.fraction(u * s, u * r)
            equal = equality_characterizations(a, euler_ctx.fraction(v * s, v * r))
            assert equal.agree and equal.similar
            assert equal.x_ring_in_lsat is Tri.YES
            shifted = euler_ctx.fraction(v * s, v * r + WeylOp.x())
            unequal = equality_characterizations(a, shifted)
            assert unequal.agree and not unequal.similar
