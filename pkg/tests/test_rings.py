"""
Tests for the base rings, factorization and exact division.
"""

from fractions import Fraction

import pytest

from conftest import poly, random_weyl, weyl
from core.rings import (
    QX,
    WEYL,
    ZZ,
    RingId,
    RingTag,
    Tri,
    UniPoly,
    WeylOp,
    coerce,
    exact_right_divide,
    factor_int,
    factor_poly,
    format_element,
    is_irreducible_poly,
    is_unit,
)
from utils.exceptions import (
    RingMismatchError,
    UnsupportedDivisorError,
    ZeroInputError,
)


class TestTri:
    """Tests for three-valued logic."""

    def test_of(self):
        assert Tri.of(True) is Tri.YES
        assert Tri.of(False) is Tri.NO

    def test_and_or(self):
        assert (Tri.YES & Tri.UNKNOWN) is Tri.UNKNOWN
        assert (Tri.NO & Tri.UNKNOWN) is Tri.NO
        assert (Tri.YES | Tri.UNKNOWN) is Tri.YES
        assert (Tri.NO | Tri.UNKNOWN) is Tri.UNKNOWN


class TestRingId:
    """Tests for ring names."""

    @pytest.mark.parametrize(
        "name,expected", [("Z", ZZ), ("qx", QX), ("weyl", WEYL), ("D", WEYL)]
    )
    def test_parse(self, name, expected):
        assert RingId.parse(name) == expected

    def test_parse_variable(self):
        ring = RingId.parse("QX[t]")
        assert ring.tag is RingTag.QX
        assert ring.var == "t"
        assert str(ring) == "QX[t]"

    def test_parse_unknown(self):
        with pytest.raises(ValueError):
            RingId.parse("Q[x,y]")

    def test_commutativity(self):
        assert ZZ.is_commutative
        assert QX.is_commutative
        assert not WEYL.is_commutative


class TestWeylOp:
    """Tests for Weyl algebra arithmetic and printing."""

    def test_commutation_relation(self):
        dx = WeylOp.d() * WeylOp.x()
        assert dx == WeylOp.x() * WeylOp.d() + 1
        assert format_element(dx) == "x*d + 1"
        assert format_element(dx, compact=True) == "x*d+1"

    def test_theta(self):
        assert WeylOp.theta() == WeylOp.monomial(1, 1)

    def test_leading_term(self):
        op = weyl("x^3*d^3 + 3*x^2*d^4 + x")
        assert op.leading_exponent == (2, 4)
        assert op.leading_coefficient == 3

    def test_power(self):
        assert WeylOp.d() ** 2 * WeylOp.x() == weyl("x*d^2 + 2*d")
        assert WeylOp.x() ** 0 == 1

    def test_fourier_of_theta(self):
        assert WeylOp.theta().fourier() == -WeylOp.theta() - 1

    def test_fourier_inverse(self, rng):
        for _ in range(10):
            op = WeylOp(
                {
                    (rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-5, 5)
                    for _ in range(4)
                }
            )
            assert op.fourier().inverse_fourier() == op
            assert op.adjoint().adjoint() == op

    def test_ring_axioms_on_random_triples(self, rng):
        for _ in range(500):
            a, b, c = (random_weyl(rng) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert (a + b) * c == a * c + b * c
            assert a + b == b + a

    def test_adjoint_reverses_products(self):
        a, b = weyl("x^2*d + 1"), weyl("d^2 - x")
        assert (a * b).adjoint() == b.adjoint() * a.adjoint()

    def test_scalar_equality(self):
        assert WeylOp.constant(Fraction(1, 2)) == Fraction(1, 2)
        assert WeylOp() == 0


class TestUniPoly:
    """Tests for polynomials over Q."""

    def test_divmod(self):
        q, r = poly("x^3 + 1").divmod(poly("x - 1"))
        assert q == poly("x^2 + x + 1")
        assert r == 2

    def test_gcd_is_monic(self):
        assert poly("2*x^2 - 2").gcd(poly("3*x + 3")) == poly("x + 1")

    def test_lcm(self):
        assert poly("x^2 - 1").lcm(poly("x + 1")) == poly("x^2 - 1")

    def test_shift(self):
        assert poly("x^2").shift(1) == poly("x^2 + 2*x + 1")

    def test_falling_factorial(self):
        assert UniPoly.falling_factorial(2) == poly("x^2 - x")
        assert UniPoly.falling_factorial(0) == 1

    def test_format(self):
        assert poly("x^2 - 1/2").format() == "x^2 - 1/2"
        assert poly("-x + 3").format(compact=True) == "-x+3"


class TestCoerce:
    """Tests for ring membership of values."""

    def test_rational_not_in_z(self):
        with pytest.raises(RingMismatchError):
            coerce(Fraction(1, 2), ZZ)

    def test_integer_embeds_everywhere(self):
        assert coerce(3, QX) == poly("3")
        assert coerce(3, WEYL) == 3

    def test_units(self):
        assert is_unit(-1, ZZ)
        assert not is_unit(2, ZZ)
        assert is_unit(poly("5"), QX)
        assert not is_unit(weyl("x"), WEYL)


class TestFactorization:
    """Tests for integer and polynomial factorization."""

    def test_factor_int(self):
        assert factor_int(12) == (1, [(2, 2), (3, 1)])
        assert factor_int(-1) == (-1, [])
        assert factor_int(-360).value() == -360

    def test_factor_zero(self):
        with pytest.raises(ZeroInputError):
            factor_int(0)

    def test_factor_poly_roots(self):
        result = factor_poly(poly("2*x^3 - 2*x"))
        assert result.content == 2
        assert result.roots == [(0, 1), (1, 1), (-1, 1)]
        assert result.split
        assert result.value() == poly("2*x^3 - 2*x")

    def test_factor_poly_residual(self):
        result = factor_poly(poly("x^3 + x"))
        assert result.roots == [(0, 1)]
        assert result.residual == poly("x^2 + 1")
        assert not result.split

    def test_irreducible(self):
        assert is_irreducible_poly(poly("x^2 + 1"))
        assert not is_irreducible_poly(poly("x^2 - 1"))
        assert not is_irreducible_poly(poly("3"))


class TestExactRightDivide:
    """Tests for right division."""

    def test_integers(self):
        assert exact_right_divide(12, 4, ZZ) == 3
        assert exact_right_divide(12, 5, ZZ) is None

    def test_by_x(self):
        assert exact_right_divide(weyl("x^2*d"), weyl("x"), WEYL) == weyl("x*d - 1")

    def test_by_d(self):
        q = exact_right_divide(weyl("d*x*d"), weyl("d"), WEYL)
        assert q is not None
        assert q * WeylOp.d() == weyl("d*x*d")

    def test_not_divisible(self):
        assert exact_right_divide(weyl("d"), weyl("x"), WEYL) is None

    def test_zero_divisor(self):
        with pytest.raises(ZeroInputError):
            exact_right_divide(4, 0, ZZ)

    def test_unsupported_shape(self):
        with pytest.raises(UnsupportedDivisorError):
            exact_right_divide(weyl("d"), weyl("x + d"), WEYL)

    def test_general_division(self):
        divisor = weyl("x + d")
        p = weyl("x*d + 2") * divisor
        assert exact_right_divide(p, divisor, WEYL, general=True) == weyl("x*d + 2")
