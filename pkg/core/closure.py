"""
Local closures ``P^S`` and S-torsion.

Integer lattices are closed exactly through their Smith form: with
``U * A * V == D`` the rows of ``V_inv`` form a basis ``w_i`` of Z^n in which
``P`` is spanned by ``d_i * w_i``; the closure replaces ``d_i`` by ``d_i``
with its S-part divided out. Principal ideals of Q[x] drop their S-factors.
Weyl-algebra ideals are only verified, with certificates ``s * g in L``.
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import (
    Callable,
    Generic,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
    TypeVar,
    Union,
)

from core.groebner import LeftIdeal
from core.normal_forms import (
    HermiteResult,
    Matrix,
    SmithResult,
    hermite_normal_form,
    identity,
    smith_normal_form,
)
from core.ore_sets import enumerate_set
from core.rings import RingTag, UniPoly, WeylOp, format_element
from core.sets import OreSetDesc, SaturatedSetDesc
from core.weyl import left_exact_divide
from utils.config import DEFAULT_CONFIG, KernelConfig
from utils.exceptions import BudgetExceededError, NotOreError, UnsupportedSetError
from utils.logging_utils import ContextLogger

logger = ContextLogger("closure")

Vector = Tuple[int, ...]


class IntLattice:
    """Sublattice of Z^n generated by integer rows; equal iff Hermite forms agree."""

    def __init__(self, ambient: int, rows: Iterable[Sequence[int]] = ()) -> None:
        self.ambient = ambient
        self.rows: Matrix = [[int(v) for v in row] for row in rows]
        for row in self.rows:
            if len(row) != ambient:
                raise ValueError(f"Row {row} does not have length {ambient}")
        self._hnf: Optional[HermiteResult] = None

    @classmethod
    def full(cls, ambient: int) -> "IntLattice":
        return cls(ambient, identity(ambient))

    @property
    def hnf(self) -> HermiteResult:
        if self._hnf is None:
            self._hnf = hermite_normal_form(self.rows, self.ambient)
        return self._hnf

    @property
    def basis(self) -> Tuple[Vector, ...]:
        return tuple(tuple(row) for row in self.hnf.basis)

    @property
    def rank(self) -> int:
        return self.hnf.rank

    def reduce(self, v: Sequence[int]) -> Vector:
        """Residue of ``v`` modulo the lattice; canonical for full-rank lattices."""
        rest = list(v)
        for row in self.hnf.basis:
            col = next(i for i, a in enumerate(row) if a)
            q = rest[col] // row[col]
            rest = [a - q * b for a, b in zip(rest, row)]
        return tuple(rest)

    def __contains__(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def issubset(self, other: "IntLattice") -> bool:
        return all(tuple(row) in other for row in self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntLattice):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"IntLattice({self.ambient}, {[list(b) for b in self.basis]})"


class PresentedModule:
    """``M = Z^n / P`` with its Smith form computed on demand."""

    def __init__(self, relations: IntLattice) -> None:
        self.relations = relations
        self._snf: Optional[SmithResult] = None

    @property
    def snf(self) -> SmithResult:
        if self._snf is None:
            self._snf = smith_normal_form(self.relations.rows, self.relations.ambient)
        return self._snf

    @property
    def is_finite(self) -> bool:
        return self.relations.rank == self.relations.ambient

    def order(self) -> Optional[int]:
        if not self.is_finite:
            return None
        result = 1
        for d in self.snf.invariant_factors:
            result *= d
        return result


def _require_integer_set(S: SaturatedSetDesc) -> None:
    if S.ring.tag is not RingTag.Z:
        raise UnsupportedSetError("Lattice closures need a prime set of Z")


def lattice_closure_z(P: IntLattice, S: SaturatedSetDesc) -> IntLattice:
    """``P^S = {v : s * v in P for some s in S}``."""
    _require_integer_set(S)
    snf = PresentedModule(P).snf
    rows = []
    for i, d in enumerate(snf.invariant_factors):
        s_part = S.s_part(d)
        assert isinstance(s_part, int)
        rows.append([(d // s_part) * a for a in snf.V_inv[i]])
    closure = IntLattice(P.ambient, rows)
    logger.debug(f"Closure of {P} at {S.describe()}: {closure}")
    return closure


@dataclass(frozen=True)
class TorsionReport:
    """``t_S(M) = P^S / P`` as a sum of cyclic groups ``Z/e_i``."""

    generators: Tuple[Vector, ...]
    invariant_factors: Tuple[int, ...]
    torsion_free: bool
    is_torsion: bool

    @property
    def order(self) -> int:
        result = 1
        for e in self.invariant_factors:
            result *= e
        return result


def torsion_z(M: PresentedModule, S: SaturatedSetDesc) -> TorsionReport:
    _require_integer_set(S)
    snf = M.snf
    generators = []
    factors = []
    whole = True
    for i, d in enumerate(snf.invariant_factors):
        s_part = S.s_part(d)
        assert isinstance(s_part, int)
        if s_part != d:
            whole = False
        if s_part == 1:
            continue
        generators.append(tuple((d // s_part) * a for a in snf.V_inv[i]))
        factors.append(s_part)
    is_torsion = whole and M.is_finite
    return TorsionReport(tuple(generators), tuple(factors), not factors, is_torsion)


def poly_ideal_closure(f: UniPoly, S: SaturatedSetDesc) -> UniPoly:
    """Generator of ``(f)^S``: ``f`` with its S-factors divided out, made monic."""
    if S.ring.tag is not RingTag.QX:
        raise UnsupportedSetError("Polynomial closures need an irreducible set of QX")
    _, rest = S.split(f)
    assert isinstance(rest, UniPoly)
    return rest


# brute-force oracles


def _s_divisors(n: int, S: SaturatedSetDesc) -> List[int]:
    """Divisors of ``n`` that lie in ``S``."""
    n = abs(n)
    return [k for k in range(1, n + 1) if n % k == 0 and S.is_member(k)]


def _exponent(P: IntLattice) -> int:
    """A multiple of every invariant factor."""
    result = 1
    for d in PresentedModule(P).snf.invariant_factors:
        result *= d
    return result


def _box(ambient: int, low: int, high: int, config: KernelConfig) -> Iterable[Vector]:
    size = (high - low) ** ambient
    if size > config.brute_force_limit:
        raise BudgetExceededError(
            f"Brute force over {size} vectors exceeds {config.brute_force_limit}"
        )
    return itertools.product(range(low, high), repeat=ambient)


def epsilon_kernel_bruteforce(
    M: PresentedModule, S: SaturatedSetDesc, config: KernelConfig = DEFAULT_CONFIG
) -> Set[Vector]:
    """Residues of the finite module ``M`` killed by some element of ``S``."""
    _require_integer_set(S)
    if not M.is_finite:
        raise UnsupportedSetError("Brute-force kernels need a finite module")
    P = M.relations
    e = _exponent(P)
    multipliers = _s_divisors(e, S)
    killed = set()
    for v in _box(P.ambient, 0, e, config):
        if any(tuple(s * a for a in v) in P for s in multipliers):
            killed.add(P.reduce(v))
    return killed


@dataclass(frozen=True)
class ExtContrReport:
    """Extension-contraction check on the vectors of a finite box."""

    closure: IntLattice
    contains_original: bool
    matches_closure: bool
    checked: int


def ext_contr_check(
    P: IntLattice, S: SaturatedSetDesc, config: KernelConfig = DEFAULT_CONFIG
) -> ExtContrReport:
    """Compare ``P^S`` with the contraction of ``S^-1 P`` by brute force.

    A vector ``v`` lies in the contraction iff ``s * v`` is in ``P`` for some
    ``s`` in ``S``; it suffices to try the S-divisors of the exponent.
    """
    _require_integer_set(S)
    closure = lattice_closure_z(P, S)
    e = _exponent(P)
    multipliers = _s_divisors(e, S)
    bound = max([abs(a) for row in P.rows for a in row] + [e, 1])
    contains_original = True
    matches = True
    checked = 0
    for v in _box(P.ambient, -bound, bound + 1, config):
        checked += 1
        contracted = any(tuple(s * a for a in v) in P for s in multipliers)
        if v in P and not contracted:
            contains_original = False
        if contracted != (v in closure):
            matches = False
    return ExtContrReport(closure, contains_original, matches, checked)


# iterated closures

State = TypeVar("State")
SetSpec = Union[OreSetDesc, SaturatedSetDesc]


@dataclass(frozen=True)
class ClosurePlan:
    """Sets ``S_i``, a finite schedule of indices and the commuting flag."""

    sets: Tuple[SetSpec, ...]
    schedule: Tuple[int, ...]
    commuting: bool = False

    def __post_init__(self) -> None:
        if not self.schedule:
            raise ValueError("A closure plan needs a nonempty schedule")
        for index in self.schedule:
            if not 0 <= index < len(self.sets):
                raise ValueError(f"Schedule index {index} has no set")
        for S in self.sets:
            if isinstance(S, OreSetDesc) and not S.is_known_ore:
                raise NotOreError(f"{S} is not known to be a left Ore set")

    @property
    def indices(self) -> Set[int]:
        return set(range(len(self.sets)))


@dataclass(frozen=True)
class TraceStep(Generic[State]):
    step: int
    index: int
    state: State
    changed: bool


class Verdict(str, Enum):
    STABILIZED = "stabilized"
    NOT_STABILIZED = "not-stabilized"


@dataclass(frozen=True)
class ClosureTrace(Generic[State]):
    steps: Tuple[TraceStep[State], ...]
    verdict: Verdict

    @property
    def result(self) -> Optional[State]:
        return self.steps[-1].state if self.steps else None


Oracle = Callable[[State], State]


def iterated_closure(
    P: State,
    plan: ClosurePlan,
    oracles: Mapping[int, Oracle],
    config: KernelConfig = DEFAULT_CONFIG,
) -> Tuple[State, ClosureTrace[State]]:
    """Apply ``P_i = P_(i-1)^(S_f(i))`` along the schedule.

    Without the commuting flag the driver stops only after a run of
    unchanged steps that visits every index; the schedule is repeated at
    most ``config.max_closure_rounds`` times. With the flag one pass over the
    indices suffices.
    """
    missing = plan.indices - set(oracles)
    if missing:
        raise ValueError(f"No closure oracle for sets {sorted(missing)}")
    state = P
    steps: List[TraceStep[State]] = []
    log = logger.bind(sets=len(plan.sets), commuting=plan.commuting)
    log.info("Iterated closure started")

    def apply(index: int) -> bool:
        nonlocal state
        new = oracles[index](state)
        changed = new != state
        state = new
        steps.append(TraceStep(len(steps) + 1, index, state, changed))
        return changed

    if plan.commuting:
        order = list(dict.fromkeys(plan.schedule))
        order += sorted(plan.indices - set(order))
        for index in order:
            apply(index)
        return state, ClosureTrace(tuple(steps), Verdict.STABILIZED)

    unchanged_since: Set[int] = set()
    for _ in range(config.max_closure_rounds):
        for index in plan.schedule:
            if apply(index):
                unchanged_since = set()
            else:
                unchanged_since.add(index)
            if unchanged_since >= plan.indices:
                log.info(f"Closure stabilized after {len(steps)} steps")
                return state, ClosureTrace(tuple(steps), Verdict.STABILIZED)
    log.warning(f"Closure did not stabilize within {config.max_closure_rounds} rounds")
    return state, ClosureTrace(tuple(steps), Verdict.NOT_STABILIZED)


def closure_oracle(S: SaturatedSetDesc) -> Oracle:
    """Exact oracle for a prime set of Z or an irreducible set of Q[x]."""
    if S.ring.tag is RingTag.Z:
        return lambda P: lattice_closure_z(P, S)
    if S.ring.tag is RingTag.QX:
        return lambda f: poly_ideal_closure(f, S)
    raise UnsupportedSetError(f"No exact closure oracle over {S.ring}")


# Weyl verification


@dataclass(frozen=True)
class SaturationCertificate:
    """``multiplier * generator`` lies in the old ideal."""

    generator: WeylOp
    multiplier: WeylOp

    def verify(self, ideal: LeftIdeal) -> bool:
        return (self.multiplier * self.generator) in ideal


class WeylVerdict(str, Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class WeylVerifyReport:
    contains_old: bool
    certificates: Tuple[SaturationCertificate, ...]
    missing: Tuple[WeylOp, ...]
    stable: Optional[bool] = None
    new_member: Optional[WeylOp] = None
    budget: int = 0

    @property
    def verdict(self) -> WeylVerdict:
        if not self.contains_old or self.stable is False:
            return WeylVerdict.REFUTED
        if self.missing:
            return WeylVerdict.BUDGET_EXHAUSTED
        return WeylVerdict.VERIFIED


def _set_elements(S: OreSetDesc, budget: int, limit: int) -> List[WeylOp]:
    if S.ring.tag is not RingTag.WEYL:
        raise UnsupportedSetError("Weyl verification needs a Weyl-algebra set")
    elements = itertools.islice(enumerate_set(S, budget), limit)
    return [s for s in elements if isinstance(s, WeylOp)]


def stability_check(
    candidate: LeftIdeal,
    S: OreSetDesc,
    budget: int,
    config: KernelConfig = DEFAULT_CONFIG,
) -> Optional[WeylOp]:
    """Peel ``s`` off the left of each basis element; return a new member if any."""
    for h in candidate.gb:
        for s in _set_elements(S, budget, config.search_node_limit):
            if s == 1:
                continue
            q = left_exact_divide(h, s)
            if q is not None and q not in candidate:
                logger.info(f"{format_element(q)} lies in the closure, not the ideal")
                return q
    return None


def weyl_saturation_verify(
    old_gens: Sequence[WeylOp],
    candidate_gens: Sequence[WeylOp],
    S: OreSetDesc,
    budget: Optional[int] = None,
    check_stability: bool = True,
    config: KernelConfig = DEFAULT_CONFIG,
) -> WeylVerifyReport:
    """Certify that ``candidate`` lies between ``L`` and ``L^S``.

    Checks that every old generator lies in the candidate ideal and finds,
    for each candidate generator ``g``, an ``s`` in ``S`` with ``s * g in L``.
    Stability reports whether ``S``-peeling of the candidate's basis stays
    inside it up to ``budget``. Maximality of the candidate is not proven.
    """
    budget = config.budget_exponent if budget is None else budget
    old = LeftIdeal(old_gens, config)
    candidate = LeftIdeal(candidate_gens, config)
    contains_old = old.issubset(candidate)
    elements = _set_elements(S, budget, config.search_node_limit)
    certificates: List[SaturationCertificate] = []
    missing: List[WeylOp] = []
    for g in candidate.generators:
        found = next((s for s in elements if (s * g) in old), None)
        if found is None:
            logger.warning(f"No certificate for {format_element(g)} up to {budget}")
            missing.append(g)
        else:
            certificates.append(SaturationCertificate(g, found))
    stable: Optional[bool] = None
    new_member = None
    if check_stability:
        new_member = stability_check(candidate, S, budget, config)
        stable = new_member is None
    return WeylVerifyReport(
        contains_old, tuple(certificates), tuple(missing), stable, new_member, budget
    )


@dataclass
class WeylVerifyOracle:
    """Closure oracle for one Weyl set, choosing among known candidate ideals.

    Candidates are listed in ascending order; the oracle returns the last one
    that contains the current ideal and is certified against it, or the
    current ideal when none is.
    """

    S: OreSetDesc
    candidates: Sequence[LeftIdeal]
    budget: Optional[int] = None
    config: KernelConfig = DEFAULT_CONFIG
    reports: List[WeylVerifyReport] = field(default_factory=list)

    def __call__(self, state: LeftIdeal) -> LeftIdeal:
        chosen = state
        for candidate in self.candidates:
            if candidate == state or not state.issubset(candidate):
                continue
            report = weyl_saturation_verify(
                state.generators,
                candidate.generators,
                self.S,
                self.budget,
                check_stability=False,
                config=self.config,
            )
            self.reports.append(report)
            if report.verdict is WeylVerdict.VERIFIED:
                chosen = candidate
        return chosen
