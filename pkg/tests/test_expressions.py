"""
Tests for the element grammar.
"""

from fractions import Fraction

import pytest

from core.expressions import parse_element, ring_eval
from core.rings import QX, WEYL, ZZ, RingId, UniPoly, WeylOp, format_element
from utils.exceptions import ParseError, RingMismatchError


class TestWeylParsing:
    """Tests for expressions in the Weyl algebra."""

    def test_normal_ordering(self):
        assert format_element(ring_eval("d*x", WEYL)) == "x*d + 1"

    def test_commutator(self):
        assert ring_eval("d*x - x*d", WEYL) == 1

    def test_theta_and_partial_sign(self):
        assert ring_eval("theta", WEYL) == WeylOp.theta()
        assert ring_eval("∂", WEYL) == WeylOp.d()

    def test_precedence(self):
        assert ring_eval("-x^2", WEYL) == -(WeylOp.x() ** 2)
        assert ring_eval("2*x + 3*d", WEYL) == WeylOp.x() * 2 + WeylOp.d() * 3
        assert ring_eval("(x + d)^2", WEYL) == (WeylOp.x() + WeylOp.d()) ** 2

    def test_rational_coefficients(self):
        assert ring_eval("1/2*x", WEYL) == WeylOp.monomial(1, 0, Fraction(1, 2))

    def test_printed_form_reparses(self):
        op = ring_eval("d^2*x^2 - 1/3*x + 7", WEYL)
        for compact in (False, True):
            assert parse_element(format_element(op, compact), WEYL) == op


class TestCommutativeParsing:
    """Tests for Z and Q[x]."""

    def test_integer_arithmetic(self):
        assert ring_eval("2*3 - 4^2", ZZ) == -10

    def test_integral_fraction_in_z(self):
        assert ring_eval("6/3", ZZ) == 2

    def test_non_integer_in_z(self):
        with pytest.raises(ParseError):
            ring_eval("1/2", ZZ)

    def test_polynomial(self):
        assert ring_eval("(x - 1)*(x + 1)", QX) == UniPoly((-1, 0, 1))

    def test_custom_variable(self):
        ring = RingId.parse("QX[t]")
        assert ring_eval("t^2", ring) == UniPoly.monomial(2, var="t")


class TestParseErrors:
    """Tests for rejected input."""

    @pytest.mark.parametrize("text", ["x +", "", "   ", "(x", "x ^ d", "3 $ 4"])
    def test_syntax_errors(self, text):
        with pytest.raises(ParseError):
            ring_eval(text, WEYL)

    def test_unknown_symbol(self):
        with pytest.raises(ParseError):
            ring_eval("foo", WEYL)

    def test_zero_denominator(self):
        with pytest.raises(ParseError):
            ring_eval("1/0", QX)

    def test_x_in_z(self):
        with pytest.raises(RingMismatchError):
            ring_eval("x", ZZ)

    def test_d_in_qx(self):
        with pytest.raises(RingMismatchError):
            ring_eval("d + 1", QX)
