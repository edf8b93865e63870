"""
Left saturations: exact membership, irreducible normal forms over Z and
Q[x], closure equality, classification and the lattice of saturated sets.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from core.rings import (
    WEYL,
    Element,
    RingId,
    RingTag,
    Tri,
    UniPoly,
    WeylOp,
    check_ring,
    from_sympy_poly,
    is_zero,
    prime_support,
    to_sympy_poly,
)
from core.ore_sets import lsat_witness, weyl_theta_lsat
from core.sets import OreSetDesc, OreSetKind, SatMode, SaturatedSetDesc
from core.weyl import euler_factor
from utils.config import DEFAULT_CONFIG, KernelConfig
from utils.exceptions import UnsupportedSetError, ZeroInputError
from utils.logging_utils import ContextLogger

logger = ContextLogger("saturation")

SetLike = Union[OreSetDesc, SaturatedSetDesc]


class WeylSatKind(str, Enum):
    EULER_CLOSURE = "euler-closure"
    UNION_XD = "union-xd"


@dataclass(frozen=True)
class WeylSatDesc:
    """``LSat(Theta_z)`` or ``LSat([x, d])``; the latter equals ``LSat(Theta_0)``."""

    kind: WeylSatKind
    z: Fraction = Fraction(0)

    @classmethod
    def of(cls, S: OreSetDesc) -> Optional["WeylSatDesc"]:
        if S.kind is OreSetKind.EULER:
            return cls(WeylSatKind.EULER_CLOSURE, S.z)
        if S.kind is OreSetKind.UNION and all(
            p.kind is OreSetKind.MONOID for p in S.parts
        ):
            if set(S.all_generators()) == {WeylOp.x(), WeylOp.d()}:
                return cls(WeylSatKind.UNION_XD)
        return None

    def canonical(self) -> "WeylSatDesc":
        if self.kind is WeylSatKind.UNION_XD:
            return WeylSatDesc(WeylSatKind.EULER_CLOSURE, Fraction(0))
        return self

    def as_set(self) -> OreSetDesc:
        if self.kind is WeylSatKind.UNION_XD:
            return OreSetDesc.monoid(WEYL, [WeylOp.x(), WeylOp.d()])
        return OreSetDesc.euler(self.z)

    def is_member(self, r: WeylOp) -> bool:
        """Exact test; raises NonSplitError on a non-split theta polynomial."""
        result = weyl_theta_lsat(self.as_set(), r)
        assert result is not None
        return result.tri is Tri.YES


def irreducible_factors(poly: UniPoly) -> List[UniPoly]:
    """Distinct monic irreducible factors over Q."""
    if poly.degree < 1:
        return []
    _, factors = to_sympy_poly(poly).factor_list()
    return [from_sympy_poly(f, poly.var).monic() for f, _ in factors]


def _irreducibles_of(ring: RingId, r: Element, config: KernelConfig) -> List[Element]:
    if ring.tag is RingTag.Z:
        assert isinstance(r, int)
        return list(prime_support(abs(r), config))
    assert isinstance(r, UniPoly)
    return list(irreducible_factors(r))


def lsat_generators(
    S: SetLike, config: KernelConfig = DEFAULT_CONFIG
) -> SaturatedSetDesc:
    """Irreducible normal form of ``LSat(S)`` over Z or Q[x]."""
    if isinstance(S, SaturatedSetDesc):
        return S
    ring = S.ring
    if ring.tag is RingTag.WEYL:
        raise UnsupportedSetError("Irreducible normal forms exist only over Z and QX")
    if S.kind is OreSetKind.MONOID:
        found: List[Element] = []
        for g in S.gens:
            found.extend(q for q in _irreducibles_of(ring, g, config) if q not in found)
        return SaturatedSetDesc.create(ring, SatMode.FINITE, found)
    if S.kind is OreSetKind.UNITS:
        return SaturatedSetDesc.units(ring)
    if S.kind in (OreSetKind.NONZERO, OreSetKind.IDEAL_HAT):
        return SaturatedSetDesc.everything(ring)
    if S.kind is OreSetKind.PRIMES:
        assert S.primes is not None
        return S.primes
    raise UnsupportedSetError(f"No normal form for {S.kind.value} sets")


def lsat_member(
    S: SetLike, r: Element, config: KernelConfig = DEFAULT_CONFIG
) -> Tri:
    """Membership in ``LSat(S)``.

    Raises:
        ZeroInputError: if ``r`` is zero
        NonSplitError: for a Weyl element whose theta polynomial does not split
    """
    check_ring(S.ring, r)
    if is_zero(r):
        raise ZeroInputError("LSat membership of zero requested")
    if isinstance(S, SaturatedSetDesc) or S.ring.is_commutative:
        return Tri.of(lsat_generators(S, config).is_member(r))
    assert isinstance(r, WeylOp)
    return lsat_witness(S, r, config).tri


def _weyl_generators(
    S: OreSetDesc, config: KernelConfig
) -> Tuple[Tuple[WeylOp, ...], bool]:
    """Generators of ``S``; the flag is False when the list is a finite sample."""
    if S.kind is OreSetKind.EULER:
        bound = config.budget_exponent
        return tuple(euler_factor(S.z, k) for k in range(-bound, bound + 1)), False
    if S.kind is OreSetKind.UNION:
        gens: List[WeylOp] = []
        complete = True
        for part in S.parts:
            part_gens, part_complete = _weyl_generators(part, config)
            gens.extend(part_gens)
            complete = complete and part_complete
        return tuple(gens), complete
    ops = tuple(g for g in S.all_generators() if isinstance(g, WeylOp))
    return ops, True


def lsat_included(
    S: SetLike, T: SetLike, config: KernelConfig = DEFAULT_CONFIG
) -> Tri:
    """``LSat(S)`` is contained in ``LSat(T)`` iff the generators of S are."""
    if S.ring != T.ring:
        return Tri.NO
    if isinstance(S, SaturatedSetDesc) or S.ring.is_commutative:
        return Tri.of(leq(lsat_generators(S, config), lsat_generators(T, config)))
    assert isinstance(S, OreSetDesc) and isinstance(T, OreSetDesc)
    gens, complete = _weyl_generators(S, config)
    result = Tri.YES
    for g in gens:
        result = result & lsat_member(T, g, config)
        if result is Tri.NO:
            return Tri.NO
    if not complete and result is Tri.YES:
        return Tri.UNKNOWN
    return result


def closure_equal(
    S1: SetLike, S2: SetLike, config: KernelConfig = DEFAULT_CONFIG
) -> Tri:
    """Decide ``LSat(S1) == LSat(S2)``."""
    if S1.ring != S2.ring:
        return Tri.NO
    if isinstance(S1, SaturatedSetDesc) or S1.ring.is_commutative:
        return Tri.of(lsat_generators(S1, config) == lsat_generators(S2, config))
    assert isinstance(S1, OreSetDesc) and isinstance(S2, OreSetDesc)
    sat1, sat2 = WeylSatDesc.of(S1), WeylSatDesc.of(S2)
    if sat1 is not None and sat2 is not None:
        return Tri.of(sat1.canonical() == sat2.canonical())
    return lsat_included(S1, S2, config) & lsat_included(S2, S1, config)


# classification


class Maximality(str, Enum):
    MAXIMAL = "maximal"
    PRE_MAXIMAL = "pre-maximal"
    NEITHER = "neither"


class IntegerType(str, Enum):
    FINITE_INVERTIBLE = "finite-invertible"
    COFINITE_INVERTIBLE = "cofinite-invertible"
    NA = "NA"


@dataclass(frozen=True)
class Classification:
    maximality: Maximality
    integer_type: IntegerType
    special: Optional[str]
    normal_form: SaturatedSetDesc


def classify(S: SetLike, config: KernelConfig = DEFAULT_CONFIG) -> Classification:
    """Maximal, pre-maximal or neither, plus the type of the invertible primes.

    Sets with infinitely many invertible and infinitely many non-invertible
    primes have no finite normal form and never reach this function.
    """
    sat = lsat_generators(S, config)
    listed = len(sat.irreducibles)
    cofinite = sat.mode is SatMode.COFINITE
    if cofinite and listed == 0:
        maximality = Maximality.MAXIMAL
    elif cofinite and listed == 1:
        maximality = Maximality.PRE_MAXIMAL
    else:
        maximality = Maximality.NEITHER
    if sat.ring.tag is not RingTag.Z:
        integer_type = IntegerType.NA
    elif cofinite:
        integer_type = IntegerType.COFINITE_INVERTIBLE
    else:
        integer_type = IntegerType.FINITE_INVERTIBLE
    special = None
    if not cofinite and listed == 0:
        special = "units-only"
    elif not cofinite and listed == 1:
        special = "single-prime"
    elif cofinite and listed == 1:
        special = "local"
    elif cofinite:
        special = "fraction-field"
    return Classification(maximality, integer_type, special, sat)


def ideal_hat(
    ring: RingId, generator: Element, config: KernelConfig = DEFAULT_CONFIG
) -> Tuple[OreSetDesc, Classification]:
    """The hat-set of a principal ideal and its classification (always maximal)."""
    S = OreSetDesc.ideal_hat(ring, generator)
    return S, classify(S, config)


# lattice of saturated sets


def _listed(sat: SaturatedSetDesc) -> Set[Element]:
    return set(sat.irreducibles)


def _build(ring: RingId, mode: SatMode, items: Iterable[Element]) -> SaturatedSetDesc:
    return SaturatedSetDesc.create(ring, mode, items)


def join(a: SaturatedSetDesc, b: SaturatedSetDesc) -> SaturatedSetDesc:
    """Smallest saturated set containing both: union of the invertible primes."""
    _same_ring(a, b)
    A, B = _listed(a), _listed(b)
    if a.is_finite_mode() and b.is_finite_mode():
        return _build(a.ring, SatMode.FINITE, A | B)
    if a.is_finite_mode():
        return _build(a.ring, SatMode.COFINITE, B - A)
    if b.is_finite_mode():
        return _build(a.ring, SatMode.COFINITE, A - B)
    return _build(a.ring, SatMode.COFINITE, A & B)


def meet(a: SaturatedSetDesc, b: SaturatedSetDesc) -> SaturatedSetDesc:
    """Intersection of the invertible primes."""
    _same_ring(a, b)
    A, B = _listed(a), _listed(b)
    if a.is_finite_mode() and b.is_finite_mode():
        return _build(a.ring, SatMode.FINITE, A & B)
    if a.is_finite_mode():
        return _build(a.ring, SatMode.FINITE, A - B)
    if b.is_finite_mode():
        return _build(a.ring, SatMode.FINITE, B - A)
    return _build(a.ring, SatMode.COFINITE, A | B)


def leq(a: SaturatedSetDesc, b: SaturatedSetDesc) -> bool:
    """``a <= b``: every prime invertible in ``a`` is invertible in ``b``."""
    _same_ring(a, b)
    A, B = _listed(a), _listed(b)
    if a.is_finite_mode() and b.is_finite_mode():
        return A <= B
    if a.is_finite_mode():
        return not (A & B)
    if b.is_finite_mode():
        return False
    return B <= A


def _same_ring(a: SaturatedSetDesc, b: SaturatedSetDesc) -> None:
    if a.ring != b.ring:
        raise ValueError(f"Cannot compare saturated sets over {a.ring} and {b.ring}")


def subset_label(primes: Sequence[int]) -> str:
    return "{" + ",".join(str(p) for p in primes) + "}"


def lattice_graph(primes: Sequence[int]) -> nx.DiGraph:
    """Hasse diagram of the finite-mode sets over ``primes``.

    Nodes are sorted tuples of invertible primes; an edge ``A -> B`` adds
    one prime and carries it as ``prime``.
    """
    primes = sorted(set(primes))
    order = nx.DiGraph()
    subsets: List[Tuple[int, ...]] = [
        combo for size in range(len(primes) + 1) for combo in combinations(primes, size)
    ]
    order.add_nodes_from(subsets)
    for small in subsets:
        for big in subsets:
            if small != big and set(small) <= set(big):
                order.add_edge(small, big)
    hasse = nx.transitive_reduction(order)
    hasse.add_nodes_from(order.nodes)
    for small, big in hasse.edges:
        (added,) = set(big) - set(small)
        hasse.edges[small, big]["prime"] = added
    logger.debug(
        f"Lattice over {list(primes)}: {hasse.number_of_nodes()} nodes, "
        f"{hasse.number_of_edges()} edges"
    )
    return hasse


def tree_graph(primes: Sequence[int]) -> nx.DiGraph:
    """Binary decision tree: level ``i`` decides whether the i-th prime is inverted.

    Nodes are tuples of booleans (the decisions so far); edges carry
    ``prime`` and ``inverted``.
    """
    primes = sorted(set(primes))
    tree = nx.DiGraph()
    tree.add_node(())
    frontier: List[Tuple[bool, ...]] = [()]
    for p in primes:
        next_frontier = []
        for node in frontier:
            for inverted in (False, True):
                child = node + (inverted,)
                tree.add_edge(node, child, prime=p, inverted=inverted)
                next_frontier.append(child)
        frontier = next_frontier
    return tree


def invertible_primes(node: Tuple[bool, ...], primes: Sequence[int]) -> Tuple[int, ...]:
    ordered = sorted(set(primes))
    return tuple(p for p, flag in zip(ordered, node) if flag)


# localization types


class LocType(str, Enum):
    MONOIDAL = "monoidal"
    GEOMETRIC = "geometric"
    RATIONAL = "rational"


def loc_type_tags(S: OreSetDesc) -> FrozenSet[LocType]:
    """Types recognized from the shape of the descriptor.

    Monoidal: explicitly generated (monoids, unions, Euler sets).
    Geometric: ``T minus p`` for a prime ``p`` of a commutative subring,
    i.e. cofinite prime sets with at most one excluded irreducible and the
    nonzero elements of a commutative ring.
    Rational: ``S + {0}`` is a subring.
    """
    tags: Set[LocType] = set()
    kind = S.kind
    if kind in (OreSetKind.MONOID, OreSetKind.UNION, OreSetKind.EULER):
        tags.add(LocType.MONOIDAL)
    if kind is OreSetKind.PRIMES:
        assert S.primes is not None
        if S.primes.mode is SatMode.COFINITE and len(S.primes.irreducibles) <= 1:
            tags.add(LocType.GEOMETRIC)
        if S.primes.mode is SatMode.COFINITE and not S.primes.irreducibles:
            tags.add(LocType.RATIONAL)
    if kind is OreSetKind.NONZERO:
        tags.add(LocType.RATIONAL)
        if S.ring.is_commutative:
            tags.add(LocType.GEOMETRIC)
    if kind is OreSetKind.UNITS and S.ring.tag is not RingTag.Z:
        # units and zero form the field of constants
        tags.add(LocType.RATIONAL)
    return frozenset(tags)
