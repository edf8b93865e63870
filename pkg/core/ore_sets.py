"""
Left Ore solvers, common left multiples, saturation witnesses and
Ore-condition falsification.

Every pair returned by :func:`ore_solve` satisfies ``s~ * r == r~ * s`` and
is re-checked by expansion before it leaves this module.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from core.rings import (
    QX,
    WEYL,
    Element,
    RingId,
    RingTag,
    Tri,
    UniPoly,
    WeylOp,
    check_ring,
    coerce,
    exact_right_divide,
    factor_poly,
    format_element,
    is_zero,
    one,
)
from core.sets import (
    OreSetDesc,
    OreSetKind,
    contains,
    euler_shifts,
    factor_in_monoid,
)
from core.weyl import euler_factor, ore_solve_euler, theta_form
from utils.config import DEFAULT_CONFIG, KernelConfig
from utils.exceptions import (
    NonSplitError,
    NotInSetError,
    NotOreError,
    UnsupportedSetError,
    VerificationError,
    ZeroInputError,
)
from utils.logging_utils import ContextLogger

logger = ContextLogger("ore_sets")


@dataclass(frozen=True)
class OrePair:
    """``(s~, r~)`` with ``s~ * r == r~ * s`` for the query ``(s, r)``."""

    s_tilde: Element
    r_tilde: Element


class WitnessOutcome(str, Enum):
    FOUND = "found"
    PROVEN_ABSENT = "proven-absent"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class WitnessResult:
    outcome: WitnessOutcome
    witness: Optional[Element] = None

    @property
    def tri(self) -> Tri:
        if self.outcome is WitnessOutcome.FOUND:
            return Tri.YES
        if self.outcome is WitnessOutcome.PROVEN_ABSENT:
            return Tri.NO
        return Tri.UNKNOWN

    @classmethod
    def found(cls, witness: Element) -> "WitnessResult":
        return cls(WitnessOutcome.FOUND, witness)


ABSENT = WitnessResult(WitnessOutcome.PROVEN_ABSENT)
UNKNOWN = WitnessResult(WitnessOutcome.UNKNOWN)


def _fourier_set(S: OreSetDesc) -> OreSetDesc:
    images = [g.fourier() for g in S.gens if isinstance(g, WeylOp)]
    return OreSetDesc.monoid(WEYL, images)


def _is_pure_x_set(S: OreSetDesc) -> bool:
    if S.ring.tag is not RingTag.WEYL:
        return False
    if S.kind is OreSetKind.PRIMES:
        return True
    return S.kind is OreSetKind.MONOID and all(
        isinstance(g, WeylOp) and g.is_pure_x() for g in S.gens
    )


def _is_pure_d_set(S: OreSetDesc) -> bool:
    return (
        S.ring.tag is RingTag.WEYL
        and S.kind is OreSetKind.MONOID
        and bool(S.gens)
        and all(isinstance(g, WeylOp) and g.is_pure_d() for g in S.gens)
    )


# Ore solvers


def _solve_pure_x(S: OreSetDesc, s: WeylOp, r: WeylOp) -> OrePair:
    k = max(r.d_degree, 0)
    s_tilde = s ** (1 + k)
    if S.kind is OreSetKind.MONOID and len(S.gens) == 1:
        f = S.gens[0]
        assert isinstance(f, WeylOp)
        n = s.x_degree // f.x_degree
        if f**n == s:
            s_tilde = f ** (n + k)
    r_tilde = exact_right_divide(s_tilde * r, s, WEYL)
    if r_tilde is None:
        raise VerificationError(f"{s_tilde} * {r} is not divisible by {s}")
    return OrePair(s_tilde, r_tilde)


def _solve_chain(
    factors: Sequence[Tuple[OreSetDesc, Element]],
    r: Element,
    config: KernelConfig,
) -> OrePair:
    """Compose solutions over ``s = u_1 ... u_m`` peeling from the right."""
    current = r
    acc: Element = WeylOp.constant(1)
    for part, u in reversed(factors):
        pair = ore_solve(part, u, current, config)
        acc = pair.s_tilde * acc
        current = pair.r_tilde
    return OrePair(acc, current)


def ore_solve(
    S: OreSetDesc, s: Element, r: Element, config: KernelConfig = DEFAULT_CONFIG
) -> OrePair:
    """Solve the left Ore condition: ``s~ in S`` with ``s~ * r == r~ * s``.

    Raises:
        NotOreError: if ``S`` is not known to be a left Ore set
        NotInSetError: if ``s`` is not (provably) in ``S``
        UnsupportedSetError: for the Weyl algebra minus zero
        VerificationError: if the computed identity fails its re-check
    """
    check_ring(S.ring, s, r)
    if not S.is_known_ore:
        raise NotOreError(f"{S} is not known to satisfy the left Ore condition")
    if contains(S, s, config) is not Tri.YES:
        raise NotInSetError(f"{format_element(s)} is not an element of {S}")
    ring = S.ring
    s = coerce(s, ring)
    r = coerce(r, ring)

    if s == 1:
        pair = OrePair(one(ring), r)
    elif is_zero(r):
        pair = OrePair(one(ring), r)
    elif ring.is_commutative:
        pair = OrePair(s, r)
    elif S.kind is OreSetKind.UNITS:
        assert isinstance(s, WeylOp) and isinstance(r, WeylOp)
        pair = OrePair(one(ring), r.scale(1 / s.constant_value()))
    elif _is_pure_x_set(S):
        assert isinstance(s, WeylOp) and isinstance(r, WeylOp)
        pair = _solve_pure_x(S, s, r)
    elif _is_pure_d_set(S):
        assert isinstance(s, WeylOp) and isinstance(r, WeylOp)
        image = ore_solve(_fourier_set(S), s.fourier(), r.fourier(), config)
        assert isinstance(image.s_tilde, WeylOp) and isinstance(image.r_tilde, WeylOp)
        pair = OrePair(image.s_tilde.inverse_fourier(), image.r_tilde.inverse_fourier())
    elif S.kind is OreSetKind.EULER:
        assert isinstance(s, WeylOp) and isinstance(r, WeylOp)
        shifts = euler_shifts(S.z, s)
        assert shifts is not None
        current, acc = r, WeylOp.constant(1)
        for w in reversed(shifts):
            s_step, current = ore_solve_euler(S.z + w, current)
            acc = s_step * acc
        pair = OrePair(acc, current)
    elif S.kind is OreSetKind.UNION:
        found = factor_in_monoid(S, s, config)
        if found.status is not Tri.YES:
            raise NotInSetError(f"No factorization of {format_element(s)} in {S}")
        pair = _solve_chain([(S.parts[i], u) for i, u in found.factors], r, config)
    else:
        raise UnsupportedSetError(f"No Ore solver for {S.kind.value} sets in {ring}")

    if pair.s_tilde * r != pair.r_tilde * s:
        logger.error(
            f"Ore identity failed for s={format_element(s)}, r={format_element(r)}"
        )
        raise VerificationError("Ore pair failed its identity check")
    logger.debug(
        f"Ore pair in {S}: s~={format_element(pair.s_tilde)}, "
        f"r~={format_element(pair.r_tilde)}"
    )
    return pair


# common multiples and generator inclusions


@dataclass(frozen=True)
class CommonMultiple:
    multiple: Element
    cofactors: Tuple[Element, ...]


def _theta_lcm(elems: Sequence[WeylOp]) -> Optional[CommonMultiple]:
    forms = [theta_form(e) for e in elems]
    lcm = forms[0].tpoly
    for form in forms[1:]:
        lcm = lcm.lcm(form.tpoly)
    multiple = WeylOp.from_theta_poly(lcm)
    cofactors: List[Element] = []
    for form in forms:
        quotient = lcm.exact_div(form.tpoly)
        if quotient is None:
            return None
        cofactors.append(WeylOp.from_theta_poly(quotient).scale(1 / form.coeff))
    return CommonMultiple(multiple, tuple(cofactors))


def _commutative_lcm(ring: RingId, elems: Sequence[Element]) -> CommonMultiple:
    if ring.tag is RingTag.Z:
        multiple: Element = math.lcm(*(e for e in elems if isinstance(e, int)))
    else:
        polys = [e for e in elems if isinstance(e, UniPoly)]
        multiple = polys[0]
        for p in polys[1:]:
            multiple = multiple.lcm(p)
    cofactors = []
    for e in elems:
        quotient = exact_right_divide(multiple, e, ring)
        assert quotient is not None
        cofactors.append(quotient)
    return CommonMultiple(multiple, tuple(cofactors))


def common_left_multiple(
    S: OreSetDesc, elems: Sequence[Element], config: KernelConfig = DEFAULT_CONFIG
) -> CommonMultiple:
    """``m in S`` with ``m == c_i * e_i`` for every element ``e_i``.

    Least common multiples are used where they are computable and stay in
    ``S``; otherwise the multiple is built by iterated Ore solving.
    """
    if not elems:
        raise ValueError("No elements given")
    check_ring(S.ring, *elems)
    for e in elems:
        if contains(S, e, config) is not Tri.YES:
            raise NotInSetError(f"{format_element(e)} is not an element of {S}")
    candidate: Optional[CommonMultiple] = None
    if S.ring.is_commutative:
        candidate = _commutative_lcm(S.ring, elems)
    elif S.kind is OreSetKind.EULER:
        candidate = _theta_lcm([e for e in elems if isinstance(e, WeylOp)])
    if candidate is not None and contains(S, candidate.multiple, config) is Tri.YES:
        result = candidate
    else:
        multiple = elems[0]
        cofactors: List[Element] = [one(S.ring)]
        for e in elems[1:]:
            pair = ore_solve(S, e, multiple, config)
            multiple = pair.s_tilde * multiple
            cofactors = [pair.s_tilde * c for c in cofactors] + [pair.r_tilde]
        result = CommonMultiple(multiple, tuple(cofactors))
    for c, e in zip(result.cofactors, elems):
        if c * e != result.multiple:
            raise VerificationError("Common multiple cofactor check failed")
    return result


def subset_on_generators(
    S: OreSetDesc, T: OreSetDesc, config: KernelConfig = DEFAULT_CONFIG
) -> Tri:
    """``S`` is contained in ``T`` iff every generator of ``S`` lies in ``T``."""
    if S.ring != T.ring:
        return Tri.NO
    if S.kind is OreSetKind.UNITS:
        sample = -1 if S.ring.tag is RingTag.Z else 2
        return contains(T, coerce(sample, S.ring), config)
    if S.kind is OreSetKind.EULER:
        if T.kind is OreSetKind.NONZERO:
            return Tri.YES
        if T.kind is OreSetKind.EULER and T.z == S.z:
            return Tri.YES
        if T.kind is OreSetKind.UNION and any(
            p.kind is OreSetKind.EULER and p.z == S.z for p in T.parts
        ):
            return Tri.YES
        if contains(T, euler_factor(S.z), config) is Tri.NO:
            return Tri.NO
        return Tri.UNKNOWN
    result = Tri.YES
    for g in S.all_generators():
        result = result & contains(T, g, config)
        if result is Tri.NO:
            break
    return result


# saturation witnesses


def _commutative_monoid_witness(
    ring: RingId, gens: Sequence[Element], r: Element
) -> WitnessResult:
    """``w = G^k / r`` with ``G`` the product of the generators."""
    product: Element = one(ring)
    for g in gens:
        product = product * g
    if isinstance(r, int):
        bound = abs(r).bit_length() + 1
    else:
        assert isinstance(r, UniPoly)
        bound = r.degree + 1
    power = one(ring)
    for _ in range(bound + 1):
        quotient = exact_right_divide(power, r, ring)
        if quotient is not None:
            return WitnessResult.found(quotient)
        power = power * product
    return ABSENT


def weyl_theta_lsat(S: OreSetDesc, r: WeylOp) -> Optional[WitnessResult]:
    """Exact witnesses for Euler sets and for the union of ``[x]`` and ``[d]``.

    Returns None when ``S`` has no exact rule here.

    Raises:
        NonSplitError: if the theta polynomial has a non-split residual
    """
    integral = False
    if S.kind is OreSetKind.EULER:
        integral = S.z.denominator == 1
    elif S.kind is OreSetKind.UNION and _is_x_d_union(S):
        integral = True
    else:
        return None
    if r.is_zero():
        raise ZeroInputError("Witness requested for zero")
    if not r.is_homogeneous():
        return ABSENT
    form = theta_form(r)
    z = S.z if S.kind is OreSetKind.EULER else Fraction(0)
    if form.tpoly.degree > 0:
        factored = factor_poly(form.tpoly)
        if not factored.split:
            raise NonSplitError(
                f"theta polynomial {form.tpoly} of {r} does not split over Q"
            )
        if any((root + z).denominator != 1 for root, _ in factored.roots):
            return ABSENT
    if not integral and form.n != 0:
        return ABSENT
    # w0 * r lies in Theta_z
    if form.y == "x":
        w0 = WeylOp.d(form.n).scale(1 / form.coeff)
    elif form.y == "d":
        w0 = WeylOp.x(form.n).scale(1 / form.coeff)
    else:
        w0 = WeylOp.constant(1 / form.coeff)
    if S.kind is OreSetKind.EULER:
        return WitnessResult.found(w0)
    product = w0 * r
    shifts_in_theta = euler_shifts(Fraction(0), product)
    assert shifts_in_theta is not None
    lift = WeylOp.constant(1)
    for k in shifts_in_theta:
        lift = lift * _monomial_lift(k)
    return WitnessResult.found(lift * w0)


def _monomial_lift(k: int) -> WeylOp:
    """``W`` with ``W * (theta + k)`` equal to ``d^k x^k`` or ``x^m d^m``."""
    out = WeylOp.constant(1)
    if k >= 1:
        for i in range(1, k):
            out = out * euler_factor(i)
    else:
        for i in range(0, -k):
            out = out * euler_factor(-i)
    return out


def _is_x_d_union(S: OreSetDesc) -> bool:
    if S.kind is not OreSetKind.UNION:
        return False
    if any(p.kind is not OreSetKind.MONOID for p in S.parts):
        return False
    return set(S.all_generators()) == {WeylOp.x(), WeylOp.d()}


def _candidate_witnesses(config: KernelConfig) -> Iterator[WeylOp]:
    """Monomials by total degree, then monomials times a theta shift."""
    for total in range(config.budget_degree + 1):
        for b in range(total + 1):
            yield WeylOp.monomial(total - b, b)
    bound = config.budget_exponent
    for total in range(config.budget_degree):
        for b in range(total + 1):
            mono = WeylOp.monomial(total - b, b)
            for c in range(-bound, bound + 1):
                yield euler_factor(c) * mono


def _search_witness(S: OreSetDesc, r: WeylOp, config: KernelConfig) -> WitnessResult:
    log = logger.bind(set=S, degree=config.budget_degree)
    tried = 0
    for w in _candidate_witnesses(config):
        tried += 1
        if tried > config.search_node_limit:
            break
        product = w * r
        if product.is_zero():
            continue
        scale = 1 / product.leading_coefficient
        options = ((product, w), (product.scale(scale), w.scale(scale)))
        for candidate, witness in options:
            if contains(S, candidate, config) is Tri.YES:
                log.debug(f"Witness {witness} found after {tried} candidates")
                return WitnessResult.found(witness)
    log.warning(f"No witness for {r} after {tried} candidates")
    return UNKNOWN


def lsat_witness(
    S: OreSetDesc, r: Element, config: KernelConfig = DEFAULT_CONFIG
) -> WitnessResult:
    """Find ``w`` with ``w * r in S``.

    PROVEN_ABSENT is returned only by exact rules: commutative sets, Euler
    sets, the union of ``[x]`` and ``[d]``, and monoids of polynomials in x
    or in d. Other sets fall back to a bounded search that ends in UNKNOWN.
    """
    check_ring(S.ring, r)
    if is_zero(r):
        raise ZeroInputError("Witness requested for zero")
    r = coerce(r, S.ring)
    result = _lsat_witness(S, r, config)
    if result.outcome is WitnessOutcome.FOUND:
        assert result.witness is not None
        if contains(S, result.witness * r, config) is not Tri.YES:
            raise VerificationError(
                f"Witness {format_element(result.witness)} does not map "
                f"{format_element(r)} into {S}"
            )
    return result


def _lsat_witness(S: OreSetDesc, r: Element, config: KernelConfig) -> WitnessResult:
    if contains(S, r, config) is Tri.YES:
        return WitnessResult.found(one(S.ring))
    kind = S.kind
    if kind in (OreSetKind.NONZERO, OreSetKind.UNITS):
        return ABSENT
    if kind is OreSetKind.IDEAL_HAT:
        return WitnessResult.found(S.gens[0])
    if kind is OreSetKind.PRIMES:
        # saturated already, and w * r in K[x] forces r in K[x] in the Weyl case
        return ABSENT
    if S.ring.is_commutative:
        return _commutative_monoid_witness(S.ring, S.gens, r)
    assert isinstance(r, WeylOp)
    exact = weyl_theta_lsat(S, r)
    if exact is not None:
        return exact
    if _is_pure_x_set(S):
        # d-orders add under multiplication, so w * r in K[x] forces r in K[x]
        if not r.is_pure_x():
            return ABSENT
        gens = [g.as_x_poly() for g in S.gens if isinstance(g, WeylOp)]
        found = _commutative_monoid_witness(QX, gens, r.as_x_poly())
        if found.witness is None:
            return found
        assert isinstance(found.witness, UniPoly)
        return WitnessResult.found(WeylOp.from_x_poly(found.witness))
    if _is_pure_d_set(S):
        image = _lsat_witness(_fourier_set(S), r.fourier(), config)
        if image.witness is None:
            return image
        assert isinstance(image.witness, WeylOp)
        return WitnessResult.found(image.witness.inverse_fourier())
    return _search_witness(S, r, config)


# Ore condition falsification


@dataclass(frozen=True)
class FalsifyReport:
    """Result of searching for an Ore pair among small elements of ``S``."""

    solution: Optional[OrePair]
    bound: int
    checked: int
    truncated: bool

    @property
    def message(self) -> str:
        if self.solution is not None:
            return "solution found"
        if self.truncated:
            return "search truncated"
        return "no solution up to bound"


def enumerate_set(S: OreSetDesc, bound: int) -> Iterator[Element]:
    """Distinct elements of ``S`` that are products of at most ``bound`` atoms.

    Euler parts contribute the atoms ``theta + z + k`` with ``|k| <= bound``.
    """
    if S.kind is OreSetKind.MONOID:
        atoms = list(S.gens)
    elif S.kind is OreSetKind.EULER:
        atoms = [euler_factor(S.z, k) for k in range(-bound, bound + 1)]
    elif S.kind is OreSetKind.UNION:
        atoms = []
        for part in S.parts:
            if part.kind is OreSetKind.MONOID:
                atoms.extend(part.gens)
            else:
                atoms.extend(euler_factor(part.z, k) for k in range(-bound, bound + 1))
    else:
        raise UnsupportedSetError(f"Cannot enumerate {S.kind.value} sets")
    seen: Dict[Element, None] = {}
    layer: List[Element] = [one(S.ring)]
    for length in range(bound + 1):
        next_layer: List[Element] = []
        for element in layer:
            if element in seen:
                continue
            seen[element] = None
            yield element
            if length < bound:
                next_layer.extend(a * element for a in atoms)
        layer = next_layer


def ore_falsify(
    S: OreSetDesc,
    s: Element,
    r: Element,
    bound: int,
    config: KernelConfig = DEFAULT_CONFIG,
) -> FalsifyReport:
    """Check every ``s~`` of ``S`` up to ``bound`` atoms for ``s~ * r in R * s``."""
    check_ring(S.ring, s, r)
    if is_zero(s):
        raise ZeroInputError("s must be nonzero")
    checked = 0
    for candidate in enumerate_set(S, bound):
        if checked >= config.brute_force_limit:
            logger.warning(f"Falsification stopped after {checked} candidates")
            return FalsifyReport(None, bound, checked, True)
        checked += 1
        quotient = exact_right_divide(candidate * r, s, S.ring, general=True)
        if quotient is not None:
            logger.info(f"Ore pair found after {checked} candidates")
            return FalsifyReport(OrePair(candidate, quotient), bound, checked, False)
    logger.info(f"No Ore pair among {checked} elements up to {bound} atoms")
    return FalsifyReport(None, bound, checked, False)
