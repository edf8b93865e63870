"""
Graded structure of the first Weyl algebra.

With ``deg x = -1`` and ``deg d = +1`` every operator splits into
homogeneous parts. A homogeneous operator of degree ``k`` is a polynomial in
the Euler operator ``theta = x*d`` times ``d^k`` (``k >= 0``) or ``x^-k``
(``k < 0``), which is what :func:`theta_form` computes. The commutation rule
``(theta + z + k) * h = h * (theta + z)`` for ``h`` of degree ``k`` drives
the Euler-set Ore solver.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from core.rings import (
    WEYL,
    UniPoly,
    WeylOp,
    exact_right_divide,
)
from utils.exceptions import NotHomogeneousError, VerificationError, ZeroInputError
from utils.logging_utils import ContextLogger

logger = ContextLogger("weyl")

THETA_VAR = "theta"


@dataclass(frozen=True)
class GradedPart:
    """Homogeneous component of degree ``degree``."""

    degree: int
    component: WeylOp


def grade_decompose(r: WeylOp) -> List[GradedPart]:
    """Split ``r`` into homogeneous parts sorted by degree."""
    if r.is_zero():
        raise ZeroInputError("Cannot decompose the zero operator")
    buckets: dict = {}
    for (a, b), coeff in r.terms.items():
        buckets.setdefault(b - a, {})[(a, b)] = coeff
    return [GradedPart(k, WeylOp(buckets[k])) for k in sorted(buckets)]


@dataclass(frozen=True)
class ThetaForm:
    """``coeff * tpoly(theta) * y^n`` with ``tpoly`` monic.

    ``y`` is ``"x"``, ``"d"`` or None; ``n == 0`` exactly when ``y`` is None.
    """

    coeff: Fraction
    tpoly: UniPoly
    y: Optional[str]
    n: int

    def __post_init__(self) -> None:
        if (self.n == 0) != (self.y is None):
            raise ValueError("ThetaForm needs n = 0 exactly when y is None")

    @property
    def degree(self) -> int:
        if self.y == "x":
            return -self.n
        return self.n

    def __str__(self) -> str:
        factor = "" if self.y is None else f"*{self.y}^{self.n}"
        return f"{self.coeff}*({self.tpoly}){factor}"


def theta_form(h: WeylOp) -> ThetaForm:
    """Write a homogeneous operator as ``c * t(theta) * y^n``.

    Uses ``x^a d^a = theta (theta - 1) ... (theta - a + 1)`` and, for
    negative degree, ``x^n s(theta) = s(theta - n) x^n``.

    Raises:
        NotHomogeneousError: if ``h`` has more than one graded part
        ZeroInputError: if ``h`` is zero
    """
    if h.is_zero():
        raise ZeroInputError("Zero has no theta form")
    degrees = h.grading_degrees()
    if len(degrees) != 1:
        raise NotHomogeneousError(f"{h} has graded parts of degrees {degrees}")
    k = degrees[0]
    n = abs(k)
    poly = UniPoly((), THETA_VAR)
    for (a, b), coeff in h.terms.items():
        # the shared theta-part has x^j d^j with j = min(a, b)
        j = min(a, b)
        poly = poly + UniPoly.falling_factorial(j, THETA_VAR).scale(coeff)
    if k < 0:
        poly = poly.shift(-n)
    lead = poly.lc
    y = None if k == 0 else ("d" if k > 0 else "x")
    return ThetaForm(lead, poly.monic(), y, n)


def from_theta_form(form: ThetaForm) -> WeylOp:
    op = WeylOp.from_theta_poly(form.tpoly).scale(form.coeff)
    if form.y == "x":
        return op * WeylOp.x(form.n)
    if form.y == "d":
        return op * WeylOp.d(form.n)
    return op


def fourier(r: WeylOp) -> WeylOp:
    """Fourier automorphism ``x -> -d``, ``d -> x``."""
    return r.fourier()


def inverse_fourier(r: WeylOp) -> WeylOp:
    """Inverse Fourier automorphism ``x -> d``, ``d -> -x``."""
    return r.inverse_fourier()


def adjoint(r: WeylOp) -> WeylOp:
    """Anti-automorphism ``x -> x``, ``d -> -d``; an involution."""
    return r.adjoint()


def left_exact_divide(p: WeylOp, s: WeylOp) -> Optional[WeylOp]:
    """Find ``m`` with ``s * m == p`` or return None."""
    quotient = exact_right_divide(adjoint(p), adjoint(s), WEYL, general=True)
    if quotient is None:
        return None
    assert isinstance(quotient, WeylOp)
    return adjoint(quotient)


def euler_factor(z: Union[int, Fraction], shift: Union[int, Fraction] = 0) -> WeylOp:
    """The operator ``theta + z + shift``."""
    return WeylOp.theta() + Fraction(z) + Fraction(shift)


def ore_solve_euler(z: Union[int, Fraction], r: WeylOp) -> Tuple[WeylOp, WeylOp]:
    """Solve ``s~ * r == r~ * (theta + z)`` with ``s~`` a product of Euler factors.

    ``s~`` is the product of ``theta + z + k`` over the degrees ``k`` of the
    graded parts of ``r``, and ``r~`` sums each part multiplied by the
    factors belonging to the other parts.

    Raises:
        ZeroInputError: if ``r`` is zero
        VerificationError: if the identity fails its expansion check
    """
    parts = grade_decompose(r)
    factors = [euler_factor(z, part.degree) for part in parts]
    s_tilde = WeylOp.constant(1)
    for factor in factors:
        s_tilde = s_tilde * factor
    r_tilde = WeylOp()
    for i, part in enumerate(parts):
        cofactor = WeylOp.constant(1)
        for j, factor in enumerate(factors):
            if j != i:
                cofactor = cofactor * factor
        r_tilde = r_tilde + cofactor * part.component
    if s_tilde * r != r_tilde * euler_factor(z):
        logger.error(f"Euler Ore identity failed for z={z}, r={r}")
        raise VerificationError(f"Euler Ore identity failed for z={z}, r={r}")
    logger.debug(f"Euler Ore pair for z={z}: s~={s_tilde}, r~={r_tilde}")
    return s_tilde, r_tilde
