"""
Exact arithmetic for the base rings of the kernel.

Elements are plain Python ``int`` for the integers, :class:`UniPoly` for
univariate polynomials over the rationals and :class:`WeylOp` for the first
Weyl algebra ``D = Q<x, d | d*x = x*d + 1>``. Coefficients are always
``fractions.Fraction``; no floating point value ever enters a computation.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb, perm
from typing import (
    Any,
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import sympy

from utils.config import DEFAULT_CONFIG, KernelConfig
from utils.exceptions import (
    FactorizationLimitError,
    RingMismatchError,
    UnsupportedDivisorError,
    ZeroInputError,
)
from utils.logging_utils import ContextLogger

logger = ContextLogger("rings")

Scalar = Union[int, Fraction]
Exponent = Tuple[int, int]


class Tri(str, Enum):
    """Three-valued answer of membership and decision procedures."""

    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag: bool) -> "Tri":
        return cls.YES if flag else cls.NO

    def __and__(self, other: "Tri") -> "Tri":
        if self is Tri.NO or other is Tri.NO:
            return Tri.NO
        if self is Tri.UNKNOWN or other is Tri.UNKNOWN:
            return Tri.UNKNOWN
        return Tri.YES

    def __or__(self, other: "Tri") -> "Tri":
        if self is Tri.YES or other is Tri.YES:
            return Tri.YES
        if self is Tri.UNKNOWN or other is Tri.UNKNOWN:
            return Tri.UNKNOWN
        return Tri.NO


class RingTag(str, Enum):
    """Base ring families."""

    Z = "Z"
    QX = "QX"
    WEYL = "weyl"


@dataclass(frozen=True)
class RingId:
    """Identifies the ring an element belongs to."""

    tag: RingTag
    var: str = "x"

    @property
    def is_commutative(self) -> bool:
        return self.tag is not RingTag.WEYL

    @classmethod
    def parse(cls, name: str) -> "RingId":
        """Parse ``Z``, ``QX``, ``QX[t]`` or ``weyl`` (case-insensitive)."""
        text = name.strip()
        lowered = text.lower()
        if lowered == "z":
            return ZZ
        if lowered in ("weyl", "d"):
            return WEYL
        if lowered == "qx":
            return QX
        if lowered.startswith("qx[") and text.endswith("]"):
            var = text[3:-1].strip()
            if var.isidentifier() and var not in ("d", "theta"):
                return cls(RingTag.QX, var)
        raise ValueError(f"Unknown ring: {name!r}")

    def __str__(self) -> str:
        if self.tag is RingTag.QX and self.var != "x":
            return f"QX[{self.var}]"
        return self.tag.value


ZZ = RingId(RingTag.Z, "")
QX = RingId(RingTag.QX, "x")
WEYL = RingId(RingTag.WEYL, "x")


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"Expected an exact rational, got {type(value).__name__}")


def _format_rational(value: Fraction) -> str:
    return str(value)


def format_terms(terms: Sequence[Tuple[Fraction, str]], compact: bool = False) -> str:
    """Render ``(coefficient, monomial)`` pairs in the element grammar.

    The monomial text is empty for the constant term.
    """
    if not terms:
        return "0"
    plus, minus = ("+", "-") if compact else (" + ", " - ")
    pieces: List[str] = []
    for index, (coeff, mono) in enumerate(terms):
        magnitude = abs(coeff)
        if not mono:
            body = _format_rational(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{_format_rational(magnitude)}*{mono}"
        if index == 0:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f"{minus if coeff < 0 else plus}{body}")
    return "".join(pieces)


def _power_text(symbol: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return symbol
    return f"{symbol}^{exponent}"


@dataclass(frozen=True, eq=False)
class UniPoly:
    """Dense univariate polynomial over Q, coefficients from degree 0 upward."""

    coeffs: Tuple[Fraction, ...] = ()
    var: str = "x"

    def __post_init__(self) -> None:
        cleaned = [_to_fraction(c) for c in self.coeffs]
        while cleaned and cleaned[-1] == 0:
            cleaned.pop()
        object.__setattr__(self, "coeffs", tuple(cleaned))

    # construction

    @classmethod
    def constant(cls, value: Scalar, var: str = "x") -> "UniPoly":
        return cls((_to_fraction(value),), var)

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1, var: str = "x") -> "UniPoly":
        return cls(tuple([Fraction(0)] * degree + [_to_fraction(coeff)]), var)

    @classmethod
    def gen(cls, var: str = "x") -> "UniPoly":
        return cls.monomial(1, 1, var)

    @classmethod
    def from_roots(
        cls, roots: Iterable[Tuple[Scalar, int]], var: str = "x"
    ) -> "UniPoly":
        """Monic polynomial with the given ``(root, multiplicity)`` pairs."""
        result = cls.constant(1, var)
        for root, multiplicity in roots:
            factor = cls((-_to_fraction(root), Fraction(1)), var)
            result = result * factor**multiplicity
        return result

    @classmethod
    def falling_factorial(cls, n: int, var: str = "x") -> "UniPoly":
        """``t (t-1) ... (t-n+1)``; the empty product for ``n = 0``."""
        return cls.from_roots(((i, 1) for i in range(n)), var)

    # inspection

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    # arithmetic

    def _coerce(self, other: Any) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.var != self.var:
                raise RingMismatchError(
                    f"Polynomials in {self.var!r} and {other.var!r} cannot be combined"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.constant(other, self.var)
        if isinstance(other, WeylOp):
            raise RingMismatchError("Cannot combine a polynomial with a Weyl operator")
        return NotImplemented

    def __add__(self, other: Any) -> "UniPoly":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        size = max(len(self.coeffs), len(rhs.coeffs))
        a = self.coeffs + (Fraction(0),) * (size - len(self.coeffs))
        b = rhs.coeffs + (Fraction(0),) * (size - len(rhs.coeffs))
        return UniPoly(tuple(x + y for x, y in zip(a, b)), self.var)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other: Any) -> "UniPoly":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: Any) -> "UniPoly":
        return (-self) + other

    def __mul__(self, other: Any) -> "UniPoly":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        if not self.coeffs or not rhs.coeffs:
            return UniPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(rhs.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(rhs.coeffs):
                out[i + j] += a * b
        return UniPoly(tuple(out), self.var)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "UniPoly":
        if exponent < 0:
            raise ValueError("Negative exponent")
        result = UniPoly.constant(1, self.var)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def divmod(self, divisor: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        """Euclidean division with remainder of degree below the divisor's."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroInputError("Polynomial division by zero")
        rem = list(self.coeffs)
        quotient = [Fraction(0)] * max(len(rem) - len(divisor.coeffs) + 1, 0)
        lead = divisor.lc
        shift = len(divisor.coeffs) - 1
        for position in range(len(rem) - 1, shift - 1, -1):
            coeff = rem[position]
            if coeff == 0:
                continue
            factor = coeff / lead
            quotient[position - shift] = factor
            for k, d in enumerate(divisor.coeffs):
                rem[position - shift + k] -= factor * d
        return UniPoly(tuple(quotient), self.var), UniPoly(tuple(rem), self.var)

    def exact_div(self, divisor: "UniPoly") -> Optional["UniPoly"]:
        """Quotient when ``divisor`` divides ``self``, else None."""
        quotient, remainder = self.divmod(divisor)
        return quotient if remainder.is_zero() else None

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc)

    def scale(self, factor: Scalar) -> "UniPoly":
        factor = _to_fraction(factor)
        return UniPoly(tuple(c * factor for c in self.coeffs), self.var)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Monic greatest common divisor (zero only if both are zero)."""
        a, b = self, self._coerce(other)
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def lcm(self, other: "UniPoly") -> "UniPoly":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return UniPoly((), self.var)
        quotient = (self * other).exact_div(self.gcd(other))
        assert quotient is not None
        return quotient.monic()

    def shift(self, amount: Scalar) -> "UniPoly":
        """Return ``p(t + amount)``."""
        step = UniPoly((_to_fraction(amount), Fraction(1)), self.var)
        result = UniPoly((), self.var)
        for coeff in reversed(self.coeffs):
            result = result * step + coeff
        return result

    def __call__(self, value: Scalar) -> Fraction:
        value = _to_fraction(value)
        result = Fraction(0)
        for coeff in reversed(self.coeffs):
            result = result * value + coeff
        return result

    # comparison and printing

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.constant(other, self.var).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self.constant_value())
        return hash((self.var, self.coeffs))

    def format(self, compact: bool = False) -> str:
        terms = [
            (c, _power_text(self.var, k))
            for k, c in reversed(list(enumerate(self.coeffs)))
            if c != 0
        ]
        return format_terms(terms, compact)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"UniPoly({self.format()!r}, var={self.var!r})"


def weyl_order_key(exponent: Exponent) -> Tuple[int, int, int]:
    """Degree-compatible monomial order: total degree, then d-exponent, then x."""
    a, b = exponent
    return (a + b, b, a)


class WeylOp:
    """Element ``sum c_ab x^a d^b`` of the first Weyl algebra in normal form.

    Instances are immutable. Zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Exponent, Any]] = None) -> None:
        cleaned: Dict[Exponent, Fraction] = {}
        for (a, b), coeff in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"Negative exponent in Weyl monomial {(a, b)}")
            value = _to_fraction(coeff)
            if value != 0:
                cleaned[(int(a), int(b))] = value
        self._terms = cleaned
        self._hash: Optional[int] = None

    # construction

    @classmethod
    def constant(cls, value: Scalar) -> "WeylOp":
        return cls({(0, 0): value})

    @classmethod
    def monomial(cls, a: int, b: int, coeff: Scalar = 1) -> "WeylOp":
        return cls({(a, b): coeff})

    @classmethod
    def x(cls, power: int = 1) -> "WeylOp":
        return cls.monomial(power, 0)

    @classmethod
    def d(cls, power: int = 1) -> "WeylOp":
        return cls.monomial(0, power)

    @classmethod
    def theta(cls) -> "WeylOp":
        return cls.monomial(1, 1)

    @classmethod
    def from_x_poly(cls, poly: UniPoly) -> "WeylOp":
        return cls({(k, 0): c for k, c in enumerate(poly.coeffs)})

    @classmethod
    def from_d_poly(cls, poly: UniPoly) -> "WeylOp":
        return cls({(0, k): c for k, c in enumerate(poly.coeffs)})

    @classmethod
    def from_theta_poly(cls, poly: UniPoly) -> "WeylOp":
        """Evaluate ``poly`` at the Euler operator ``theta = x*d``."""
        theta = cls.theta()
        result = cls()
        for coeff in reversed(poly.coeffs):
            result = result * theta + coeff
        return result

    # inspection

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def coefficient(self, a: int, b: int) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    def items(self) -> List[Tuple[Exponent, Fraction]]:
        """Terms in printing order: d-degree descending, then x-degree descending."""
        return sorted(self._terms.items(), key=lambda kv: (-kv[0][1], -kv[0][0]))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(key == (0, 0) for key in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((0, 0), Fraction(0))

    def leading_term(self) -> Tuple[Exponent, Fraction]:
        if not self._terms:
            raise ZeroInputError("The zero operator has no leading term")
        exponent = max(self._terms, key=weyl_order_key)
        return exponent, self._terms[exponent]

    @property
    def leading_exponent(self) -> Exponent:
        return self.leading_term()[0]

    @property
    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    @property
    def total_degree(self) -> int:
        return max((a + b for a, b in self._terms), default=-1)

    @property
    def x_degree(self) -> int:
        return max((a for a, _ in self._terms), default=-1)

    @property
    def d_degree(self) -> int:
        return max((b for _, b in self._terms), default=-1)

    def is_pure_x(self) -> bool:
        return all(b == 0 for _, b in self._terms)

    def is_pure_d(self) -> bool:
        return all(a == 0 for a, _ in self._terms)

    def grading_degrees(self) -> List[int]:
        """Sorted degrees ``b - a`` occurring in the element."""
        return sorted({b - a for a, b in self._terms})

    def is_homogeneous(self) -> bool:
        return len(self.grading_degrees()) == 1

    def x_coefficient(self, b: int) -> UniPoly:
        """Polynomial in x multiplying ``d^b`` (coefficients to the left)."""
        size = max((a for a, bb in self._terms if bb == b), default=-1) + 1
        coeffs = [Fraction(0)] * size
        for (a, bb), c in self._terms.items():
            if bb == b:
                coeffs[a] = c
        return UniPoly(tuple(coeffs), "x")

    def as_x_poly(self) -> UniPoly:
        if not self.is_pure_x():
            raise ValueError(f"{self} is not a polynomial in x")
        return self.x_coefficient(0)

    def as_d_poly(self) -> UniPoly:
        if not self.is_pure_d():
            raise ValueError(f"{self} is not a polynomial in d")
        size = self.d_degree + 1
        coeffs = [self.coefficient(0, b) for b in range(size)]
        return UniPoly(tuple(coeffs), "d")

    # arithmetic

    @staticmethod
    def _coerce(other: Any) -> "WeylOp":
        if isinstance(other, WeylOp):
            return other
        if isinstance(other, (int, Fraction)):
            return WeylOp.constant(other)
        if isinstance(other, UniPoly):
            raise RingMismatchError("Cannot combine a Weyl operator with a polynomial")
        return NotImplemented

    def __add__(self, other: Any) -> "WeylOp":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for key, coeff in rhs._terms.items():
            acc[key] = acc.get(key, Fraction(0)) + coeff
        return WeylOp(acc)

    __radd__ = __add__

    def __neg__(self) -> "WeylOp":
        return WeylOp({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Any) -> "WeylOp":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: Any) -> "WeylOp":
        return (-self) + other

    def __mul__(self, other: Any) -> "WeylOp":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        acc: Dict[Exponent, Fraction] = {}
        for (a, b), c1 in self._terms.items():
            for (c, d), c2 in rhs._terms.items():
                coeff = c1 * c2
                # d^b x^c = sum_j C(b, j) c!/(c-j)! x^(c-j) d^(b-j)
                for j in range(min(b, c) + 1):
                    key = (a + c - j, b + d - j)
                    acc[key] = acc.get(key, Fraction(0)) + coeff * comb(b, j) * perm(
                        c, j
                    )
        return WeylOp(acc)

    def __rmul__(self, other: Any) -> "WeylOp":
        lhs = self._coerce(other)
        if lhs is NotImplemented:
            return NotImplemented
        return lhs * self

    def __pow__(self, exponent: int) -> "WeylOp":
        if exponent < 0:
            raise ValueError("Negative exponent")
        result = WeylOp.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor: Scalar) -> "WeylOp":
        factor = _to_fraction(factor)
        return WeylOp({k: c * factor for k, c in self._terms.items()})

    def monic(self) -> "WeylOp":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient)

    def substitute(
        self, x_image: "WeylOp", d_image: "WeylOp", anti: bool = False
    ) -> "WeylOp":
        """Apply the (anti-)homomorphism determined by the images of x and d.

        For ``anti=False`` the monomial ``x^a d^b`` maps to ``X^a D^b``;
        for ``anti=True`` it maps to ``D^b X^a``.
        """
        x_powers: List[WeylOp] = [WeylOp.constant(1)]
        d_powers: List[WeylOp] = [WeylOp.constant(1)]
        for _ in range(max(self.x_degree, 0)):
            x_powers.append(x_powers[-1] * x_image)
        for _ in range(max(self.d_degree, 0)):
            d_powers.append(d_powers[-1] * d_image)
        result = WeylOp()
        for (a, b), coeff in self._terms.items():
            if anti:
                image = d_powers[b] * x_powers[a]
            else:
                image = x_powers[a] * d_powers[b]
            result = result + image.scale(coeff)
        return result

    def adjoint(self) -> "WeylOp":
        """Formal adjoint: the anti-automorphism fixing x and sending d to -d."""
        return self.substitute(WeylOp.x(), -WeylOp.d(), anti=True)

    def fourier(self) -> "WeylOp":
        """Fourier automorphism x -> -d, d -> x."""
        return self.substitute(-WeylOp.d(), WeylOp.x())

    def inverse_fourier(self) -> "WeylOp":
        return self.substitute(WeylOp.d(), -WeylOp.x())

    # comparison and printing

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = WeylOp.constant(other)
        if isinstance(other, WeylOp):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def format(self, compact: bool = False) -> str:
        terms = []
        for (a, b), coeff in self.items():
            mono = "*".join(p for p in (_power_text("x", a), _power_text("d", b)) if p)
            terms.append((coeff, mono))
        return format_terms(terms, compact)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"WeylOp({self.format()!r})"


Element = Union[int, UniPoly, WeylOp]


# generic element helpers


def ring_of(element: Any) -> RingId:
    """Ring of an element; bare integers are read as elements of Z."""
    if isinstance(element, WeylOp):
        return WEYL
    if isinstance(element, UniPoly):
        return QX if element.var == "x" else RingId(RingTag.QX, element.var)
    if isinstance(element, int):
        return ZZ
    raise RingMismatchError(f"Not a ring element: {element!r}")


def coerce(value: Any, ring: RingId) -> Element:
    """Convert ``value`` into an element of ``ring``.

    Integers embed into every ring, rationals into QX and WEYL only.
    """
    if ring.tag is RingTag.Z:
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise RingMismatchError(f"{value} is not an integer")
            return int(value)
        if isinstance(value, int):
            return int(value)
    elif ring.tag is RingTag.QX:
        if isinstance(value, (int, Fraction)):
            return UniPoly.constant(value, ring.var)
        if isinstance(value, UniPoly) and value.var == ring.var:
            return value
    else:
        if isinstance(value, (int, Fraction)):
            return WeylOp.constant(value)
        if isinstance(value, WeylOp):
            return value
    raise RingMismatchError(f"{value!r} is not an element of {ring}")


def check_ring(ring: RingId, *elements: Any) -> None:
    """Raise RingMismatchError unless every element belongs to ``ring``."""
    for element in elements:
        coerce(element, ring)


def one(ring: RingId) -> Element:
    return coerce(1, ring)


def zero(ring: RingId) -> Element:
    return coerce(0, ring)


def is_zero(element: Element) -> bool:
    if isinstance(element, int):
        return element == 0
    return element.is_zero()


def is_unit(element: Element, ring: RingId) -> bool:
    """Units: +-1 in Z, nonzero constants in QX and in the Weyl algebra."""
    element = coerce(element, ring)
    if isinstance(element, int):
        return element in (1, -1)
    if isinstance(element, UniPoly):
        return element.degree == 0
    return element.is_constant() and not element.is_zero()


def format_element(element: Element, compact: bool = False) -> str:
    """Canonical text of an element in the element grammar."""
    if isinstance(element, (int, Fraction)):
        return str(element)
    return element.format(compact)


# factorization


class IntFactorization(NamedTuple):
    unit: int
    factors: List[Tuple[int, int]]

    def value(self) -> int:
        result = self.unit
        for prime, multiplicity in self.factors:
            result *= prime**multiplicity
        return result


def factor_int(n: int, config: KernelConfig = DEFAULT_CONFIG) -> IntFactorization:
    """Factor a nonzero integer into a sign and ascending prime powers.

    Raises:
        ZeroInputError: for ``n == 0``
        FactorizationLimitError: if a composite cofactor remains after trial
            division up to ``config.factor_bound``
    """
    if n == 0:
        raise ZeroInputError("Cannot factor zero")
    unit = 1 if n > 0 else -1
    magnitude = abs(n)
    if magnitude == 1:
        return IntFactorization(unit, [])
    found = sympy.factorint(magnitude, limit=config.factor_bound)
    factors: List[Tuple[int, int]] = []
    for prime, multiplicity in sorted(found.items()):
        if not sympy.isprime(prime):
            logger.warning(
                f"Composite cofactor {prime} left after trial division"
                f" up to {config.factor_bound}"
            )
            raise FactorizationLimitError(
                f"{n} has a factor beyond the trial bound {config.factor_bound}"
            )
        factors.append((int(prime), int(multiplicity)))
    return IntFactorization(unit, factors)


def prime_support(n: int, config: KernelConfig = DEFAULT_CONFIG) -> List[int]:
    return [p for p, _ in factor_int(n, config).factors]


class PolyFactorization(NamedTuple):
    content: Fraction
    roots: List[Tuple[Fraction, int]]
    residual: UniPoly

    @property
    def split(self) -> bool:
        return self.residual.degree == 0

    def value(self) -> UniPoly:
        var = self.residual.var
        return UniPoly.from_roots(self.roots, var) * self.residual * self.content


def to_sympy_poly(poly: UniPoly) -> sympy.Poly:
    symbol = sympy.Symbol(poly.var)
    coeffs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(poly.coeffs)]
    return sympy.Poly(coeffs or [0], symbol, domain=sympy.QQ)


def from_sympy_poly(poly: sympy.Poly, var: str) -> UniPoly:
    return UniPoly(
        tuple(Fraction(str(c)) for c in reversed(poly.all_coeffs())), var
    )


def _root_order(root: Fraction) -> Tuple[Fraction, bool]:
    return (abs(root), root < 0)


def factor_poly(poly: UniPoly) -> PolyFactorization:
    """Split off the rational roots of ``poly``.

    Returns the leading coefficient, the rational roots with multiplicities
    (ordered by absolute value, positive before negative) and the monic
    residual, which has no rational root.
    """
    if poly.is_zero():
        raise ZeroInputError("Cannot factor the zero polynomial")
    _, factors = to_sympy_poly(poly).factor_list()
    roots: List[Tuple[Fraction, int]] = []
    for factor, multiplicity in factors:
        if factor.degree() == 1:
            a, b = (Fraction(str(c)) for c in factor.all_coeffs())
            roots.append((-b / a, int(multiplicity)))
    roots.sort(key=lambda rm: _root_order(rm[0]))
    content = poly.lc
    linear = UniPoly.from_roots(roots, poly.var)
    residual = poly.scale(1 / content).exact_div(linear)
    assert residual is not None
    return PolyFactorization(content, roots, residual.monic())


def is_irreducible_poly(poly: UniPoly) -> bool:
    if poly.degree < 1:
        return False
    return bool(to_sympy_poly(poly).is_irreducible)


# exact division


def _divide_pure_x(p: WeylOp, divisor: UniPoly) -> Optional[WeylOp]:
    """Peel terms of ``p`` by descending d-degree against a divisor in K[x]."""
    f = WeylOp.from_x_poly(divisor)
    quotient = WeylOp()
    rest = p
    while not rest.is_zero():
        top = rest.d_degree
        q_poly = rest.x_coefficient(top).exact_div(divisor)
        if q_poly is None:
            return None
        term = WeylOp.from_x_poly(q_poly) * WeylOp.d(top)
        quotient = quotient + term
        rest = rest - term * f
    return quotient


def leading_term_divide(p: WeylOp, divisor: WeylOp) -> Optional[WeylOp]:
    """Right division by leading terms; exact for every nonzero divisor.

    ``{divisor}`` is a left Gröbner basis of ``D*divisor`` under the
    degree-compatible order, so the leading monomial of every member is
    divisible by the divisor's leading monomial.
    """
    (da, db), dc = divisor.leading_term()
    quotient = WeylOp()
    rest = p
    while not rest.is_zero():
        (a, b), c = rest.leading_term()
        if a < da or b < db:
            return None
        term = WeylOp.monomial(a - da, b - db, c / dc)
        quotient = quotient + term
        rest = rest - term * divisor
    return quotient


def exact_right_divide(
    p: Element, divisor: Element, ring: RingId, general: bool = False
) -> Optional[Element]:
    """Find ``q`` with ``q * divisor == p``, or return None when none exists.

    Weyl divisors are restricted to polynomials in x, polynomials in d and
    graded elements unless ``general`` is set, in which case leading-term
    division handles every nonzero divisor.

    Raises:
        ZeroInputError: if ``divisor`` is zero
        UnsupportedDivisorError: for a Weyl divisor outside the supported shapes
    """
    p = coerce(p, ring)
    divisor = coerce(divisor, ring)
    if is_zero(divisor):
        raise ZeroInputError("Division by zero")
    if isinstance(divisor, int):
        assert isinstance(p, int)
        return p // divisor if p % divisor == 0 else None
    if isinstance(divisor, UniPoly):
        assert isinstance(p, UniPoly)
        return p.exact_div(divisor)
    assert isinstance(p, WeylOp)
    if divisor.is_pure_x():
        return _divide_pure_x(p, divisor.as_x_poly())
    if divisor.is_pure_d():
        q = _divide_pure_x(p.fourier(), divisor.fourier().as_x_poly())
        return None if q is None else q.inverse_fourier()
    if divisor.is_homogeneous() or general:
        return leading_term_divide(p, divisor)
    raise UnsupportedDivisorError(
        f"Unsupported divisor shape {divisor}; expected f(x), g(d) or a graded element"
    )
