"""
Descriptors of multiplicative sets and exact membership tests.

:class:`OreSetDesc` describes a multiplicative set symbolically (a monoid
on generators, the Euler set ``[theta + z + Z]``, unions, all nonzero
elements, units, saturated prime sets and hat-sets of principal ideals).
:class:`SaturatedSetDesc` is the canonical normal form of a saturated set
in Z or Q[x]: a finite list of irreducibles that are invertible, or a
finite list of irreducibles that are not.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import sympy

from core.rings import (
    WEYL,
    Element,
    RingId,
    RingTag,
    Tri,
    UniPoly,
    WeylOp,
    check_ring,
    exact_right_divide,
    factor_poly,
    format_element,
    is_irreducible_poly,
    is_unit,
    is_zero,
    one,
)
from core.weyl import euler_factor, theta_form
from utils.config import DEFAULT_CONFIG, KernelConfig
from utils.exceptions import UnsupportedSetError, ZeroInputError
from utils.logging_utils import ContextLogger

logger = ContextLogger("sets")


class SatMode(str, Enum):
    """Finite: the listed irreducibles are invertible. Cofinite: all others are."""

    FINITE = "finite"
    COFINITE = "cofinite"


def _poly_sort_key(p: UniPoly) -> Tuple[int, Tuple[Fraction, ...]]:
    return (p.degree, tuple(reversed(p.coeffs)))


@dataclass(frozen=True)
class SaturatedSetDesc:
    """Saturated multiplicative set of Z or Q[x] in irreducible normal form.

    Use :meth:`create` to validate and canonicalize: positive primes in
    ascending order for Z, monic irreducibles ordered by degree then
    coefficients for Q[x].
    """

    ring: RingId
    mode: SatMode
    irreducibles: Tuple[Element, ...] = ()

    @classmethod
    def create(
        cls, ring: RingId, mode: SatMode, irreducibles: Iterable[Element]
    ) -> "SaturatedSetDesc":
        if ring.tag is RingTag.Z:
            primes = set()
            for p in irreducibles:
                check_ring(ring, p)
                assert isinstance(p, int)
                if not sympy.isprime(abs(p)):
                    raise ValueError(f"{p} is not a prime")
                primes.add(abs(p))
            return cls(ring, SatMode(mode), tuple(sorted(primes)))
        if ring.tag is RingTag.QX:
            polys = set()
            for q in irreducibles:
                check_ring(ring, q)
                assert isinstance(q, UniPoly)
                if not is_irreducible_poly(q):
                    raise ValueError(f"{q} is not irreducible over Q")
                polys.add(q.monic())
            return cls(ring, SatMode(mode), tuple(sorted(polys, key=_poly_sort_key)))
        raise UnsupportedSetError("Saturated normal forms exist only for Z and QX")

    @classmethod
    def units(cls, ring: RingId) -> "SaturatedSetDesc":
        return cls(ring, SatMode.FINITE, ())

    @classmethod
    def everything(cls, ring: RingId) -> "SaturatedSetDesc":
        """All nonzero elements."""
        return cls(ring, SatMode.COFINITE, ())

    @property
    def complement(self) -> "SaturatedSetDesc":
        """Same irreducibles, opposite mode."""
        other = SatMode.COFINITE if self.mode is SatMode.FINITE else SatMode.FINITE
        return SaturatedSetDesc(self.ring, other, self.irreducibles)

    def _multiplicity(self, r: Element, q: Element) -> Tuple[int, Element]:
        """Strip ``q`` from ``r``; return the multiplicity and the cofactor."""
        count = 0
        while True:
            quotient = exact_right_divide(r, q, self.ring)
            if quotient is None:
                return count, r
            count += 1
            r = quotient

    def contains_irreducible(self, q: Element) -> bool:
        listed = q in self.irreducibles
        return listed if self.mode is SatMode.FINITE else not listed

    def is_member(self, r: Element) -> bool:
        """Exact membership by trial division against the listed irreducibles."""
        check_ring(self.ring, r)
        if is_zero(r):
            return False
        if self.mode is SatMode.FINITE:
            rest = r
            for q in self.irreducibles:
                _, rest = self._multiplicity(rest, q)
            return is_unit(rest, self.ring)
        return all(
            exact_right_divide(r, q, self.ring) is None for q in self.irreducibles
        )

    def split(self, r: Element) -> Tuple[Element, Element]:
        """Return ``(s_part, rest)`` with ``r = s_part * rest``.

        ``s_part`` collects the irreducible factors inside the set, ``rest``
        those outside; the unit of ``r`` stays with ``rest`` in Z (sign) and
        with ``s_part`` in Q[x] so that ``rest`` is monic.
        """
        check_ring(self.ring, r)
        if is_zero(r):
            raise ZeroInputError("Cannot split zero")
        listed_part: Element = one(self.ring)
        rest = r
        for q in self.irreducibles:
            k, rest = self._multiplicity(rest, q)
            listed_part = listed_part * q**k
        if self.mode is SatMode.FINITE:
            s_part, outside = listed_part, rest
        else:
            s_part, outside = rest, listed_part
        if isinstance(r, int):
            assert isinstance(s_part, int) and isinstance(outside, int)
            sign = 1 if r > 0 else -1
            return abs(s_part), sign * abs(outside)
        assert isinstance(outside, UniPoly) and isinstance(s_part, UniPoly)
        lead = outside.lc
        return s_part.scale(lead), outside.monic()

    def s_part(self, r: Element) -> Element:
        return self.split(r)[0]

    def is_finite_mode(self) -> bool:
        return self.mode is SatMode.FINITE

    def describe(self) -> str:
        items = ", ".join(format_element(q) for q in self.irreducibles)
        return f"{self.mode.value}{{{items}}}"


class OreSetKind(str, Enum):
    MONOID = "monoid"
    EULER = "euler"
    UNION = "union"
    NONZERO = "nonzero"
    UNITS = "units"
    PRIMES = "primes"
    IDEAL_HAT = "ideal-hat"


def _is_weyl_gen_ore(gens: Sequence[Element]) -> bool:
    ops = [g for g in gens if isinstance(g, WeylOp)]
    return all(g.is_pure_x() for g in ops) or all(g.is_pure_d() for g in ops)


@dataclass(frozen=True)
class OreSetDesc:
    """Symbolic multiplicative set with a flag for the known left Ore property.

    Construct through the classmethods, which validate and normalize.
    """

    ring: RingId
    kind: OreSetKind
    gens: Tuple[Element, ...] = ()
    z: Fraction = Fraction(0)
    parts: Tuple["OreSetDesc", ...] = ()
    primes: Optional[SaturatedSetDesc] = None
    is_known_ore: bool = True
    label: str = field(default="", compare=False)

    # construction

    @classmethod
    def monoid(cls, ring: RingId, gens: Iterable[Element]) -> "OreSetDesc":
        """Monoid ``[gens]`` of finite products.

        In the Weyl algebra a mix of polynomials in x and polynomials in d is
        stored as the union of the two monoids. Other Weyl generators give a
        set that is not known to be Ore.
        """
        gens = tuple(gens)
        check_ring(ring, *gens)
        for g in gens:
            if is_zero(g):
                raise ValueError("0 cannot generate a multiplicative set")
            if ring.tag is RingTag.QX and is_unit(g, ring) and g != 1:
                raise ValueError("Constant generators other than 1 are not supported")
            if ring.tag is RingTag.WEYL and is_unit(g, ring) and g != 1:
                raise ValueError("Constant generators other than 1 are not supported")
        gens = tuple(g for g in gens if g != 1)
        if ring.tag is RingTag.WEYL:
            ops = [g for g in gens if isinstance(g, WeylOp)]
            xs = tuple(g for g in ops if g.is_pure_x())
            ds = tuple(g for g in ops if g.is_pure_d() and not g.is_pure_x())
            if xs and ds and len(xs) + len(ds) == len(gens):
                return cls.union([cls.monoid(ring, xs), cls.monoid(ring, ds)])
            known = _is_weyl_gen_ore(gens)
            return cls(ring, OreSetKind.MONOID, gens, is_known_ore=known)
        return cls(ring, OreSetKind.MONOID, gens)

    @classmethod
    def euler(cls, z: Fraction) -> "OreSetDesc":
        """The Euler set ``[theta + z + k | k in Z]`` of the Weyl algebra."""
        z = Fraction(z)
        # only z modulo Z matters
        z = z - (z.numerator // z.denominator)
        return cls(WEYL, OreSetKind.EULER, z=z)

    @classmethod
    def union(cls, parts: Iterable["OreSetDesc"]) -> "OreSetDesc":
        """Monoid generated by the union of the parts."""
        flat: List[OreSetDesc] = []
        for part in parts:
            flat.extend(part.parts if part.kind is OreSetKind.UNION else (part,))
        if not flat:
            raise ValueError("A union needs at least one part")
        ring = flat[0].ring
        if any(part.ring != ring for part in flat):
            raise ValueError("Union components must share the ring")
        if ring.is_commutative:
            if any(part.kind is not OreSetKind.MONOID for part in flat):
                raise UnsupportedSetError(
                    "Commutative unions are supported for monoid parts only"
                )
            gens: List[Element] = []
            for part in flat:
                gens.extend(g for g in part.gens if g not in gens)
            return cls(ring, OreSetKind.MONOID, tuple(gens))
        for part in flat:
            if part.kind not in (OreSetKind.MONOID, OreSetKind.EULER):
                raise UnsupportedSetError(
                    f"Weyl unions support monoid and euler parts, not {part.kind.value}"
                )
        if len(flat) == 1:
            return flat[0]
        known = all(part.is_known_ore for part in flat)
        return cls(ring, OreSetKind.UNION, parts=tuple(flat), is_known_ore=known)

    @classmethod
    def nonzero(cls, ring: RingId) -> "OreSetDesc":
        return cls(ring, OreSetKind.NONZERO)

    @classmethod
    def units(cls, ring: RingId) -> "OreSetDesc":
        return cls(ring, OreSetKind.UNITS)

    @classmethod
    def prime_set(
        cls, sat: SaturatedSetDesc, ring: Optional[RingId] = None
    ) -> "OreSetDesc":
        """Saturated set of Z or Q[x]; with ``ring=WEYL`` its image in K[x] inside D."""
        target = ring or sat.ring
        if target.tag is RingTag.WEYL and not (
            sat.ring.tag is RingTag.QX and sat.ring.var == "x"
        ):
            raise UnsupportedSetError("Weyl prime sets live in Q[x]")
        if target.tag is not RingTag.WEYL and target != sat.ring:
            raise ValueError("Prime set ring does not match")
        return cls(target, OreSetKind.PRIMES, primes=sat)

    @classmethod
    def ideal_hat(cls, ring: RingId, generator: Element) -> "OreSetDesc":
        """``(I minus 0) + {1}`` for the principal ideal ``I = (generator)``."""
        if not ring.is_commutative:
            raise UnsupportedSetError("Hat sets are defined for commutative rings only")
        check_ring(ring, generator)
        if is_zero(generator):
            raise ZeroInputError("The ideal generator must be nonzero")
        return cls(ring, OreSetKind.IDEAL_HAT, gens=(generator,))

    # inspection

    @property
    def is_commutative(self) -> bool:
        return self.ring.is_commutative

    def all_generators(self) -> Tuple[Element, ...]:
        """Generators of a monoid or of the monoid parts of a union."""
        if self.kind is OreSetKind.MONOID:
            return self.gens
        if self.kind is OreSetKind.UNION:
            out: List[Element] = []
            for part in self.parts:
                out.extend(part.all_generators())
            return tuple(out)
        if self.kind is OreSetKind.UNITS:
            return ()
        raise UnsupportedSetError(f"{self.kind.value} sets are not generator-presented")

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.kind is OreSetKind.MONOID:
            return "[" + ", ".join(format_element(g) for g in self.gens) + "]"
        if self.kind is OreSetKind.EULER:
            return f"Theta_{self.z}"
        if self.kind is OreSetKind.UNION:
            return " u ".join(part.describe() for part in self.parts)
        if self.kind is OreSetKind.PRIMES:
            assert self.primes is not None
            return f"primes {self.primes.describe()}"
        if self.kind is OreSetKind.IDEAL_HAT:
            return f"hat({format_element(self.gens[0])})"
        return self.kind.value

    def __str__(self) -> str:
        return self.describe()


# Euler sets


def euler_shifts(z: Fraction, r: WeylOp) -> Optional[List[int]]:
    """Integers ``k_i`` with ``r = prod(theta + z + k_i)``, or None."""
    if r.is_zero() or not r.is_homogeneous() or r.grading_degrees() != [0]:
        return None
    form = theta_form(r)
    if form.coeff != 1:
        return None
    if form.tpoly.degree == 0:
        return []
    factored = factor_poly(form.tpoly)
    if not factored.split:
        return None
    shifts: List[int] = []
    for root, multiplicity in factored.roots:
        # theta + z + k has root -z - k
        k = -(root + z)
        if k.denominator != 1:
            return None
        shifts.extend([int(k)] * multiplicity)
    return sorted(shifts)


def euler_member(z: Fraction, r: WeylOp) -> bool:
    return euler_shifts(Fraction(z), r) is not None


# monoid factor search


@dataclass(frozen=True)
class MonoidFactorization:
    """Outcome of a factor search; ``factors`` are ``(part, element)`` left to right."""

    status: Tri
    factors: Tuple[Tuple[int, Element], ...] = ()


class _PeelSearch:
    """Depth-first right-factor peeling with memo and node budget."""

    def __init__(
        self,
        ring: RingId,
        atoms: Sequence[Tuple[int, Element]],
        whole: Sequence[Tuple[int, Callable[[Element], bool]]],
        accept_unit: Callable[[Element], bool],
        config: KernelConfig,
    ) -> None:
        self.ring = ring
        self.atoms = atoms
        self.whole = whole
        self.accept_unit = accept_unit
        self.limit = config.search_node_limit
        self.nodes = 0
        self.exhausted = False
        self.memo: Dict[Element, Optional[List[Tuple[int, Element]]]] = {}

    def visit(self, q: Element) -> Optional[List[Tuple[int, Element]]]:
        if q == 1:
            return []
        if q in self.memo:
            return self.memo[q]
        if is_unit(q, self.ring):
            return [(-1, q)] if self.accept_unit(q) else None
        self.nodes += 1
        if self.nodes > self.limit:
            self.exhausted = True
            return None
        for index, test in self.whole:
            if test(q):
                self.memo[q] = [(index, q)]
                return self.memo[q]
        for index, atom in self.atoms:
            quotient = exact_right_divide(q, atom, self.ring, general=True)
            if quotient is None:
                continue
            found = self.visit(quotient)
            if found is not None:
                self.memo[q] = found + [(index, atom)]
                return self.memo[q]
        self.memo[q] = None
        return None


def factor_in_monoid(
    S: OreSetDesc, r: Element, config: KernelConfig = DEFAULT_CONFIG
) -> MonoidFactorization:
    """Write ``r`` as a product of generators (monoid) or part elements (union).

    Part index -1 marks a unit factor such as ``-1`` in Z.
    """
    check_ring(S.ring, r)
    if is_zero(r):
        return MonoidFactorization(Tri.NO)
    truncated = False
    atoms: List[Tuple[int, Element]] = []
    whole: List[Tuple[int, Callable[[Element], bool]]] = []
    unit_gens: List[Element] = []
    if S.kind is OreSetKind.MONOID:
        for g in S.gens:
            if is_unit(g, S.ring):
                unit_gens.append(g)
            else:
                atoms.append((0, g))
    elif S.kind is OreSetKind.UNION:
        for index, part in enumerate(S.parts):
            if part.kind is OreSetKind.MONOID:
                atoms.extend((index, g) for g in part.gens)
            else:
                z = part.z
                whole.append(
                    (index, lambda q, z=z: isinstance(q, WeylOp) and euler_member(z, q))
                )
                bound = config.budget_exponent
                atoms.extend(
                    (index, euler_factor(z, k)) for k in range(-bound, bound + 1)
                )
                truncated = True
    else:
        raise UnsupportedSetError(f"No factor search for {S.kind.value} sets")

    def accept_unit(u: Element) -> bool:
        return u == 1 or (u == -1 and -1 in unit_gens)

    search = _PeelSearch(S.ring, atoms, whole, accept_unit, config)
    found = search.visit(r)
    if found is not None:
        return MonoidFactorization(Tri.YES, tuple(found))
    if search.exhausted or truncated:
        logger.warning(
            f"Factor search for {format_element(r)} in {S} ended without an answer",
        )
        return MonoidFactorization(Tri.UNKNOWN)
    return MonoidFactorization(Tri.NO)


def contains(
    S: OreSetDesc, r: Element, config: KernelConfig = DEFAULT_CONFIG
) -> Tri:
    """Membership of ``r`` in ``S``; UNKNOWN only when a search budget runs out.

    Raises:
        RingMismatchError: if ``r`` is not an element of ``S.ring``
    """
    check_ring(S.ring, r)
    if is_zero(r):
        return Tri.NO
    kind = S.kind
    if kind is OreSetKind.NONZERO:
        return Tri.YES
    if kind is OreSetKind.UNITS:
        return Tri.of(is_unit(r, S.ring))
    if kind is OreSetKind.EULER:
        assert isinstance(r, WeylOp)
        return Tri.of(euler_member(S.z, r))
    if kind is OreSetKind.PRIMES:
        assert S.primes is not None
        if isinstance(r, WeylOp):
            if not r.is_pure_x():
                return Tri.NO
            return Tri.of(S.primes.is_member(r.as_x_poly()))
        return Tri.of(S.primes.is_member(r))
    if kind is OreSetKind.IDEAL_HAT:
        return Tri.of(r == 1 or exact_right_divide(r, S.gens[0], S.ring) is not None)
    return factor_in_monoid(S, r, config).status

