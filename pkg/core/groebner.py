"""
Left Gröbner bases in the first Weyl algebra.

Monomials ``x^a d^b`` are ordered by total degree, then d-exponent, then
x-exponent. For this degree-compatible order the leading monomial of
``m * f`` is the exponent sum of the leading monomials, so left reduction
and left S-polynomials work as in the commutative case. The product
criterion does not hold in the Weyl algebra; every pair is reduced.
"""

from collections import deque
from dataclasses import dataclass
from typing import Deque, Iterable, Iterator, List, Optional, Sequence, Tuple

from core.rings import Exponent, WeylOp, weyl_order_key
from utils.config import DEFAULT_CONFIG, KernelConfig
from utils.exceptions import BudgetExceededError, ZeroInputError
from utils.logging_utils import ContextLogger

logger = ContextLogger("groebner")

ORDER_NAME = "deg-d-x"


def _divides(small: Exponent, big: Exponent) -> bool:
    return small[0] <= big[0] and small[1] <= big[1]


def spoly(f: WeylOp, g: WeylOp) -> WeylOp:
    """Left S-polynomial of ``f`` and ``g``; monomials multiply from the left."""
    (fa, fb), fc = f.leading_term()
    (ga, gb), gc = g.leading_term()
    la, lb = max(fa, ga), max(fb, gb)
    left = WeylOp.monomial(la - fa, lb - fb, 1 / fc) * f
    right = WeylOp.monomial(la - ga, lb - gb, 1 / gc) * g
    return left - right


def reduce(f: WeylOp, basis: Sequence[WeylOp]) -> WeylOp:
    """Fully left-reduce ``f`` by ``basis`` and return the remainder."""
    leads = [(g.leading_term(), g) for g in basis if not g.is_zero()]
    remainder = WeylOp()
    rest = f
    while not rest.is_zero():
        (a, b), c = rest.leading_term()
        for ((ga, gb), gc), g in leads:
            if ga <= a and gb <= b:
                rest = rest - WeylOp.monomial(a - ga, b - gb, c / gc) * g
                break
        else:
            term = WeylOp.monomial(a, b, c)
            remainder = remainder + term
            rest = rest - term
    return remainder


def minimalize(basis: Sequence[WeylOp]) -> List[WeylOp]:
    """Drop elements whose leading monomial is divisible by another's."""
    ordered = sorted(basis, key=lambda h: weyl_order_key(h.leading_exponent))
    minimal: List[WeylOp] = []
    for f in ordered:
        if all(not _divides(g.leading_exponent, f.leading_exponent) for g in minimal):
            minimal.append(f)
    return minimal


def interreduce(basis: Sequence[WeylOp]) -> List[WeylOp]:
    """Reduced basis from a minimal one: tails reduced, elements monic."""
    reduced = []
    for i, g in enumerate(basis):
        others = list(basis[:i]) + list(basis[i + 1 :])
        reduced.append(reduce(g, others).monic())
    return sorted(reduced, key=lambda h: weyl_order_key(h.leading_exponent))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic left Gröbner basis sorted by leading monomial."""

    generators: Tuple[WeylOp, ...]
    order: str = ORDER_NAME

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[WeylOp]:
        return iter(self.generators)

    @property
    def is_whole_ring(self) -> bool:
        return len(self.generators) == 1 and self.generators[0] == 1


def groebner_basis(
    gens: Iterable[WeylOp], config: KernelConfig = DEFAULT_CONFIG
) -> GroebnerBasis:
    """Left Buchberger completion with a first-in-first-out pair queue.

    Raises:
        ZeroInputError: if no generator is nonzero
        BudgetExceededError: if more than ``config.gb_pair_limit`` pairs are
            processed
    """
    basis: List[WeylOp] = [g.monic() for g in gens if not g.is_zero()]
    if not basis:
        raise ZeroInputError("Gröbner basis of the zero ideal requested")
    logger.info(f"Computing left Gröbner basis of {len(basis)} generators")

    pairs: Deque[Tuple[int, int]] = deque(
        (i, j) for j in range(len(basis)) for i in range(j)
    )
    processed = 0
    while pairs:
        if processed >= config.gb_pair_limit:
            logger.warning(
                f"Pair limit {config.gb_pair_limit} reached with {len(basis)} elements"
            )
            raise BudgetExceededError(
                f"Gröbner pair limit {config.gb_pair_limit} exceeded"
            )
        i, j = pairs.popleft()
        processed += 1
        remainder = reduce(spoly(basis[i], basis[j]), basis)
        if remainder.is_zero():
            continue
        basis.append(remainder.monic())
        logger.debug(
            f"Pair {(i, j)} added element with leading monomial "
            f"{remainder.leading_exponent}"
        )
        if remainder.is_constant():
            basis = [WeylOp.constant(1)]
            break
        new = len(basis) - 1
        pairs.extend((k, new) for k in range(new))

    result = interreduce(minimalize(basis))
    logger.info(f"Gröbner basis has {len(result)} elements after {processed} pairs")
    return GroebnerBasis(tuple(result))


def normal_form(r: WeylOp, gb: GroebnerBasis) -> WeylOp:
    return reduce(r, gb.generators)


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    normal_form: WeylOp


def ideal_member(r: WeylOp, gb: GroebnerBasis) -> MembershipResult:
    """Decide ``r`` in the left ideal of ``gb`` by reduction to zero."""
    remainder = normal_form(r, gb)
    return MembershipResult(remainder.is_zero(), remainder)


class LeftIdeal:
    """Left ideal given by generators, with its reduced basis computed lazily."""

    def __init__(
        self, generators: Iterable[WeylOp], config: KernelConfig = DEFAULT_CONFIG
    ) -> None:
        self.generators: Tuple[WeylOp, ...] = tuple(
            g for g in generators if not g.is_zero()
        )
        if not self.generators:
            raise ZeroInputError("A left ideal needs a nonzero generator")
        self.config = config
        self._gb: Optional[GroebnerBasis] = None

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            if len(self.generators) == 1:
                # a single element is already a Gröbner basis
                self._gb = GroebnerBasis((self.generators[0].monic(),))
            else:
                self._gb = groebner_basis(self.generators, self.config)
        return self._gb

    def __contains__(self, r: WeylOp) -> bool:
        return r.is_zero() or ideal_member(r, self.gb).member

    def issubset(self, other: "LeftIdeal") -> bool:
        return all(g in other for g in self.generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LeftIdeal):
            return NotImplemented
        return self.gb.generators == other.gb.generators

    def __hash__(self) -> int:
        return hash(self.gb.generators)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"LeftIdeal({gens})"
