"""
Left fractions ``s^-1 r`` over a left Ore set.

Fractions are kept as unreduced representatives; equality is decided by
:func:`frac_equals`. All operations go through :func:`core.ore_sets.ore_solve`,
so they work verbatim for commutative and Weyl-algebra base rings.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from core.ore_sets import (
    WitnessOutcome,
    common_left_multiple,
    lsat_witness,
    ore_solve,
)
from core.rings import (
    Element,
    RingId,
    Tri,
    UniPoly,
    WeylOp,
    check_ring,
    coerce,
    format_element,
    is_zero,
    one,
    zero,
)
from core.saturation import join, lsat_generators, lsat_included, lsat_member
from core.sets import OreSetDesc, OreSetKind, contains, euler_shifts, factor_in_monoid
from utils.config import DEFAULT_CONFIG, KernelConfig
from utils.exceptions import (
    MissingWitnessError,
    NonSplitError,
    NotInSetError,
    NotOreError,
    UnsupportedSetError,
    VerificationError,
    ZeroInputError,
)
from utils.logging_utils import ContextLogger

logger = ContextLogger("localization")


@dataclass(frozen=True)
class LocCtx:
    """The localization ``S^-1 R``."""

    S: OreSetDesc
    config: KernelConfig = DEFAULT_CONFIG

    def __post_init__(self) -> None:
        if not self.S.is_known_ore:
            raise NotOreError(f"{self.S} is not known to be a left Ore set")

    @property
    def ring(self) -> RingId:
        return self.S.ring

    def fraction(self, s: Any, r: Any) -> "OreFraction":
        """Validated fraction ``s^-1 r``.

        Raises:
            NotInSetError: if ``s`` is not provably in ``S``
        """
        s = coerce(s, self.ring)
        r = coerce(r, self.ring)
        if contains(self.S, s, self.config) is not Tri.YES:
            raise NotInSetError(f"Denominator {format_element(s)} is not in {self.S}")
        return OreFraction(self, s, r)

    def one(self) -> "OreFraction":
        return OreFraction(self, one(self.ring), one(self.ring))

    def zero(self) -> "OreFraction":
        return OreFraction(self, one(self.ring), zero(self.ring))


@dataclass(frozen=True, eq=False)
class OreFraction:
    """Left fraction with denominator ``s`` and numerator ``r``."""

    ctx: LocCtx
    s: Element
    r: Element

    def is_zero(self) -> bool:
        return is_zero(self.r)

    def __add__(self, other: "OreFraction") -> "OreFraction":
        return frac_add(self, other)

    def __mul__(self, other: "OreFraction") -> "OreFraction":
        return frac_mul(self, other)

    def __neg__(self) -> "OreFraction":
        return OreFraction(self.ctx, self.s, -self.r)

    def __sub__(self, other: "OreFraction") -> "OreFraction":
        return frac_add(self, -other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OreFraction):
            return NotImplemented
        return frac_equals(self, other)

    def __str__(self) -> str:
        return f"({format_element(self.s)})^-1 * ({format_element(self.r)})"


def _check_same(a: OreFraction, b: OreFraction) -> LocCtx:
    if a.ctx.S != b.ctx.S:
        raise ValueError("Fractions belong to different localizations")
    return a.ctx


def embed(ctx: LocCtx, r: Any) -> OreFraction:
    """Structural homomorphism ``r -> (1, r)``."""
    check_ring(ctx.ring, r)
    return OreFraction(ctx, one(ctx.ring), coerce(r, ctx.ring))


def frac_equals(a: OreFraction, b: OreFraction) -> bool:
    """``(s1, r1) == (s2, r2)`` iff ``s^ r2 == r^ r1`` where ``s^ s2 == r^ s1``."""
    ctx = _check_same(a, b)
    pair = ore_solve(ctx.S, a.s, b.s, ctx.config)
    return pair.s_tilde * b.r == pair.r_tilde * a.r


def frac_add(a: OreFraction, b: OreFraction) -> OreFraction:
    ctx = _check_same(a, b)
    pair = ore_solve(ctx.S, b.s, a.s, ctx.config)
    den = pair.s_tilde * a.s
    num = pair.s_tilde * a.r + pair.r_tilde * b.r
    return OreFraction(ctx, den, num)


def frac_mul(a: OreFraction, b: OreFraction) -> OreFraction:
    ctx = _check_same(a, b)
    pair = ore_solve(ctx.S, b.s, a.r, ctx.config)
    return OreFraction(ctx, pair.s_tilde * a.s, pair.r_tilde * b.r)


# units


@dataclass(frozen=True)
class UnitResult:
    status: Tri
    inverse: Optional[OreFraction] = None

    @property
    def is_unit(self) -> bool:
        return self.status is Tri.YES


def unit_invert(a: OreFraction) -> UnitResult:
    """Invert ``(s, r)`` through a witness ``w`` with ``w * r`` in ``S``.

    The inverse is ``(w * r, w) * (1, s)``, re-checked by multiplying back.

    Raises:
        ZeroInputError: if ``a`` is zero
    """
    ctx = a.ctx
    if a.is_zero():
        raise ZeroInputError("Zero is not invertible")
    if a.s == a.r:
        return UnitResult(Tri.YES, ctx.one())
    found = lsat_witness(ctx.S, a.r, ctx.config)
    if found.outcome is WitnessOutcome.PROVEN_ABSENT:
        return UnitResult(Tri.NO)
    if found.outcome is WitnessOutcome.UNKNOWN:
        logger.warning(f"Unit status of {a} is unknown within the search budget")
        return UnitResult(Tri.UNKNOWN)
    w = found.witness
    assert w is not None
    inverse = frac_mul(OreFraction(ctx, w * a.r, w), embed(ctx, a.s))
    if not frac_equals(frac_mul(inverse, a), ctx.one()):
        logger.error(f"Inverse check failed for {a}")
        raise VerificationError(f"Computed inverse of {a} does not multiply to 1")
    return UnitResult(Tri.YES, inverse)


def unit_group_saturated(a: OreFraction, b: OreFraction) -> Tri:
    """If ``a * b`` is a unit then both factors are units.

    Returns YES when the implication is confirmed, NO on a counterexample
    and UNKNOWN when a unit status could not be decided.
    """
    product = unit_invert(frac_mul(a, b)).status
    if product is Tri.NO:
        return Tri.YES
    if product is Tri.UNKNOWN:
        return Tri.UNKNOWN
    return unit_invert(a).status & unit_invert(b).status


# canonical homomorphisms


def _generator_factors(
    S: OreSetDesc, s: Element, config: KernelConfig
) -> Optional[List[Element]]:
    """``s`` as a product of generators of ``S``, left to right."""
    if S.kind in (OreSetKind.MONOID, OreSetKind.UNION):
        found = factor_in_monoid(S, s, config)
        if found.status is Tri.YES:
            return [u for _, u in found.factors]
        return None
    if S.kind is OreSetKind.EULER and isinstance(s, WeylOp):
        shifts = euler_shifts(S.z, s)
        if shifts is None:
            return None
        theta = WeylOp.theta()
        return [theta + (S.z + k) for k in shifts]
    return None


def _witness(
    T: OreSetDesc,
    u: Element,
    witnesses: Mapping[Element, Element],
    config: KernelConfig,
) -> Element:
    if u in witnesses:
        w = witnesses[u]
        if contains(T, w * u, config) is Tri.NO:
            raise MissingWitnessError(
                f"Supplied witness {format_element(w)} does not map "
                f"{format_element(u)} into {T}"
            )
        return w
    found = lsat_witness(T, u, config)
    if found.witness is None:
        raise MissingWitnessError(
            f"No witness for {format_element(u)} in LSat({T}): {found.outcome.value}"
        )
    return found.witness


def omega_witness(
    S: OreSetDesc,
    T: OreSetDesc,
    s: Element,
    witnesses: Optional[Mapping[Element, Element]] = None,
    config: KernelConfig = DEFAULT_CONFIG,
) -> Element:
    """``w_s`` with ``w_s * s`` in ``T``, assembled from generator witnesses.

    For ``s = p * q`` with ``w_p * p = t_p`` and ``w_q * q = t_q`` in T, the
    Ore pair ``s~ * w_q == r~ * t_p`` gives ``r~ * w_p * p * q == s~ * t_q``.
    """
    supplied: Mapping[Element, Element] = witnesses or {}
    if s not in supplied and contains(T, s, config) is Tri.YES:
        return one(T.ring)
    factors = _generator_factors(S, s, config)
    if factors is None or len(factors) < 2:
        return _witness(T, s, supplied, config)
    prefix = factors[0]
    w_prefix = _witness(T, prefix, supplied, config)
    for q in factors[1:]:
        w_q = _witness(T, q, supplied, config)
        pair = ore_solve(T, w_prefix * prefix, w_q, config)
        w_prefix = pair.r_tilde * w_prefix
        prefix = prefix * q
    return w_prefix


def omega_map(
    target: LocCtx,
    a: OreFraction,
    witnesses: Optional[Mapping[Element, Element]] = None,
) -> OreFraction:
    """The R-fixing homomorphism ``S^-1 R -> T^-1 R``: ``(s, r) -> (w_s s, w_s r)``.

    The map exists only when every generator of ``S`` lies in ``LSat(T)``;
    that inclusion is checked before any witness is assembled.

    Raises:
        MissingWitnessError: if ``S`` is not contained in ``LSat(T)``, or some
            ``w_s`` cannot be found within budget
    """
    S, T = a.ctx.S, target.S
    if S.ring != T.ring:
        raise ValueError("omega needs both sets in the same ring")
    included = lsat_included(S, T, target.config)
    if included is Tri.NO:
        raise MissingWitnessError(f"{S} is not contained in LSat({T})")
    if included is Tri.UNKNOWN:
        logger.warning(f"Inclusion of {S} in LSat({T}) is undecided within budget")
    w = omega_witness(S, T, a.s, witnesses, target.config)
    image = OreFraction(target, w * a.s, w * a.r)
    logger.debug(f"omega({a}) = {image}")
    return image


class HomKind(str, Enum):
    NONE = "none"
    HOM = "hom"
    ISO = "iso"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class HomIsoResult:
    forward: Tri
    backward: Tri

    @property
    def kind(self) -> HomKind:
        if self.forward is Tri.NO:
            return HomKind.NONE
        if self.forward is Tri.UNKNOWN:
            return HomKind.UNKNOWN
        return HomKind.ISO if self.backward is Tri.YES else HomKind.HOM

    @property
    def is_definite(self) -> bool:
        return self.forward is Tri.NO or (
            self.forward is Tri.YES and self.backward is not Tri.UNKNOWN
        )


def hom_iso_check(
    S: OreSetDesc, T: OreSetDesc, config: KernelConfig = DEFAULT_CONFIG
) -> HomIsoResult:
    """Hom iff every S-generator is in ``LSat(T)``; iso iff also conversely."""
    if S.ring != T.ring:
        return HomIsoResult(Tri.NO, Tri.NO)
    forward = lsat_included(S, T, config)
    backward = lsat_included(T, S, config)
    return HomIsoResult(forward, backward)


# commutative constructions


def _require_commutative(ctx: LocCtx) -> None:
    if not ctx.ring.is_commutative:
        raise UnsupportedSetError(
            f"Only commutative base rings are supported, not {ctx.ring}"
        )


def frac_ore_pair(a: OreFraction, b: OreFraction) -> Tuple[OreFraction, OreFraction]:
    """Fractions ``x != 0`` and ``y`` with ``x * a == y * b``.

    With ``x' * r1 == y' * r2`` in R, take ``x = (1, x' s1)`` and
    ``y = (1, y' s2)``.
    """
    ctx = _check_same(a, b)
    _require_commutative(ctx)
    if b.is_zero():
        raise ZeroInputError("The second fraction must be nonzero")
    if frac_equals(a, b):
        return ctx.one(), ctx.one()
    x = embed(ctx, b.r * a.s)
    y = embed(ctx, a.r * b.s)
    if not frac_equals(frac_mul(x, a), frac_mul(y, b)):
        raise VerificationError("Ore pair of fractions failed its check")
    return x, y


def _commutative_union(
    S: OreSetDesc, T: OreSetDesc, config: KernelConfig
) -> OreSetDesc:
    """``[S u T]``, or its saturation when a part is not a monoid."""
    if all(part.kind is OreSetKind.MONOID for part in (S, T)):
        return OreSetDesc.union([S, T])
    sat = join(lsat_generators(S, config), lsat_generators(T, config))
    return OreSetDesc.prime_set(sat)


def two_step_compose(
    S: OreSetDesc, T: OreSetDesc, t: Element, inner: OreFraction
) -> OreFraction:
    """``((1, t), (s, r)) -> (s t, r)`` into ``[S u T]^-1 R``.

    When ``S`` or ``T`` is a prime set, a hat set or another saturated
    description, the target is the saturated join of both, which localizes
    to the same ring.
    """
    inner_ctx = inner.ctx
    _require_commutative(inner_ctx)
    if inner_ctx.S != S:
        raise ValueError("The inner fraction must live over S")
    config = inner_ctx.config
    if contains(T, t, config) is not Tri.YES:
        raise NotInSetError(f"{format_element(t)} is not in {T}")
    W = LocCtx(_commutative_union(S, T, config), config)
    return W.fraction(inner.s * t, inner.r)


def normalize(a: OreFraction) -> Tuple[Element, Element]:
    """Display form of a fraction over Z or Q[x] with the gcd divided out.

    The reduced denominator need not lie in ``S``.
    """
    _require_commutative(a.ctx)
    s, r = a.s, a.r
    if isinstance(s, int) and isinstance(r, int):
        g = math.gcd(s, r) or 1
        s, r = s // g, r // g
        if s < 0:
            s, r = -s, -r
        return s, r
    assert isinstance(s, UniPoly) and isinstance(r, UniPoly)
    g_poly = s.gcd(r) if not r.is_zero() else s.monic()
    s_red = s.exact_div(g_poly)
    r_red = r.exact_div(g_poly)
    assert s_red is not None and r_red is not None
    lead = s_red.lc
    return s_red.scale(1 / lead), r_red.scale(1 / lead)


# equality criteria


@dataclass(frozen=True)
class EqualityCharacterizations:
    """The equivalent equality criteria evaluated on one pair of fractions.

    ``x_ring`` is the element of the last criterion: ``s_ring * s2 ==
    x_ring * s1`` and ``s_ring * r2 == x_ring * r1`` with ``s_ring`` in ``S``
    and ``x_ring`` in ``LSat(S)``.
    """

    similar: bool
    for_all: bool
    exists: bool
    approx: bool
    lsat_form: bool
    s_ring: Element
    x_ring: Element
    x_ring_in_lsat: Tri

    @property
    def agree(self) -> bool:
        values = {self.similar, self.for_all, self.exists, self.approx, self.lsat_form}
        return len(values) == 1

    def as_dict(self) -> Dict[str, bool]:
        return {
            "similar": self.similar,
            "for_all": self.for_all,
            "exists": self.exists,
            "approx": self.approx,
            "lsat_form": self.lsat_form,
        }


Pair = Tuple[Element, Element]


def _checked(pair: Pair, s1: Element, s2: Element) -> Pair:
    s_hat, r_hat = pair
    if s_hat * s2 != r_hat * s1:
        raise VerificationError("Ore pair of denominators failed its check")
    return pair


def _ore_pairs(
    S: OreSetDesc, s1: Element, s2: Element, config: KernelConfig
) -> List[Pair]:
    """Separately solved pairs ``(s^, r^)`` with ``s^ * s2 == r^ * s1``.

    Besides the direct solution, the equation is solved again for ``t * s2``
    and for ``t * s1`` with ``t`` in ``{s1, s2}``.
    """
    direct = ore_solve(S, s1, s2, config)
    pairs = [_checked((direct.s_tilde, direct.r_tilde), s1, s2)]
    for t in (s1, s2):
        right = ore_solve(S, s1, t * s2, config)
        pairs.append(_checked((right.s_tilde * t, right.r_tilde), s1, s2))
        left = ore_solve(S, t * s1, s2, config)
        pairs.append(_checked((left.s_tilde, left.r_tilde * t), s1, s2))
    return pairs


def _equal_after_multiplier(
    multipliers: Sequence[Element], left: Element, right: Element
) -> bool:
    """Some ``u`` from ``S`` has ``u * left == u * right``."""
    return any(u * left == u * right for u in multipliers)


def equality_characterizations(
    a: OreFraction, b: OreFraction
) -> EqualityCharacterizations:
    """Evaluate every equality criterion from its own construction.

    * similar: one Ore pair ``(s~, r~)`` of the denominators.
    * for all: every pair from :func:`_ore_pairs` is cancelled by some
      element of ``S``.
    * exists: a pair from the common left multiple, cancelled by some element
      of ``S``.
    * approx: ``c2 * s2 == c1 * s1 in S`` and ``c2 * r2 == c1 * r1``.
    * LSat form: ``w * c2`` in ``S`` for a witness ``w`` of ``c2``, with
      ``x = w * c1`` checked by :func:`lsat_member`.
    """
    ctx = _check_same(a, b)
    S, config = ctx.S, ctx.config
    s1, r1, s2, r2 = a.s, a.r, b.s, b.r
    multipliers = [one(ctx.ring), s1, s2]

    pairs = _ore_pairs(S, s1, s2, config)
    s_tilde, r_tilde = pairs[0]
    similar = s_tilde * r2 == r_tilde * r1
    for_all = all(
        _equal_after_multiplier(multipliers, s_hat * r2, r_hat * r1)
        for s_hat, r_hat in pairs
    )

    multiple = common_left_multiple(S, [s1, s2], config)
    c1, c2 = multiple.cofactors
    approx = c2 * r2 == c1 * r1

    candidates: List[Pair] = []
    if contains(S, c2, config) is Tri.YES:
        candidates.append(_checked((c2, c1), s1, s2))
    else:
        candidates.append(pairs[0])
    exists = any(
        _equal_after_multiplier(multipliers, s_hat * r2, r_hat * r1)
        for s_hat, r_hat in candidates
    )

    found = lsat_witness(S, c2, config)
    if found.witness is not None:
        s_ring, x_ring = _checked((found.witness * c2, found.witness * c1), s1, s2)
    else:
        logger.debug(f"No witness for {format_element(c2)}; using the Ore pair")
        s_ring, x_ring = s_tilde, r_tilde
    try:
        in_lsat = lsat_member(S, x_ring, config)
    except NonSplitError:
        in_lsat = Tri.UNKNOWN
    lsat_form = s_ring * r2 == x_ring * r1 and in_lsat is not Tri.NO
    return EqualityCharacterizations(
        similar, for_all, exists, approx, lsat_form, s_ring, x_ring, in_lsat
    )
