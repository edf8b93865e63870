"""
Pydantic models for the JSON interfaces of the kernel.

Each wire model validates its payload and converts it into the kernel's own
descriptor through ``to_domain``. Elements travel as strings in the element
grammar of their ring.
"""

import json
from fractions import Fraction
from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.closure import ClosurePlan, IntLattice, PresentedModule
from core.expressions import parse_element
from core.localization import LocCtx, OreFraction
from core.rings import QX, RingId, RingTag
from core.sets import OreSetDesc, OreSetKind, SatMode, SaturatedSetDesc
from utils.config import DEFAULT_CONFIG, KernelConfig
from utils.exceptions import ParseError
from utils.logging_utils import ContextLogger

# Create a logger for the data models module
logger = ContextLogger("data_models")


def _check_ring_name(v: str) -> str:
    try:
        RingId.parse(v)
    except ValueError as exc:
        logger.warning(f"Invalid ring name: {v}")
        raise ValueError(str(exc)) from exc
    return v


class SaturatedSetModel(BaseModel):
    """Model for a saturated set of Z or Q[x] given by its irreducibles."""

    ring: str = Field("Z", description="Ring name, Z or QX")
    mode: SatMode = Field(..., description="finite or cofinite")
    irreducibles: List[str] = Field(
        default_factory=list, description="Invertible (finite) or excluded irreducibles"
    )

    @field_validator("ring")
    @classmethod
    def validate_ring(cls, v: str) -> str:
        """Only commutative rings carry irreducible normal forms."""
        _check_ring_name(v)
        if not RingId.parse(v).is_commutative:
            raise ValueError("Saturated sets are given over Z or QX")
        return v

    def to_domain(self) -> SaturatedSetDesc:
        ring = RingId.parse(self.ring)
        items = [parse_element(text, ring) for text in self.irreducibles]
        return SaturatedSetDesc.create(ring, self.mode, items)


class OreSetModel(BaseModel):
    """Model for an OreSetDesc payload."""

    ring: str = Field("Z", description="Z, QX or weyl")
    kind: OreSetKind = Field(..., description="Descriptor variant")
    gens: List[str] = Field(default_factory=list, description="Generators")
    z: str = Field("0", description="Rational shift of an Euler set")
    parts: List["OreSetModel"] = Field(
        default_factory=list, description="Components of a union"
    )
    primes: Optional[SaturatedSetModel] = Field(
        None, description="Irreducible description of a prime set"
    )

    @field_validator("ring")
    @classmethod
    def validate_ring(cls, v: str) -> str:
        return _check_ring_name(v)

    @field_validator("z")
    @classmethod
    def validate_z(cls, v: str) -> str:
        """The shift must be an exact rational."""
        try:
            Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            logger.warning(f"Invalid Euler shift: {v}")
            raise ValueError(f"z must be a rational number, got {v!r}") from exc
        return v.strip()

    @model_validator(mode="after")
    def check_kind_fields(self) -> "OreSetModel":
        """Every kind needs its own fields and nothing that contradicts them."""
        ring = RingId.parse(self.ring)
        kind = self.kind
        if kind is OreSetKind.EULER and ring.tag is not RingTag.WEYL:
            raise ValueError("Euler sets live in the Weyl algebra")
        if kind is OreSetKind.UNION and not self.parts:
            raise ValueError("A union needs parts")
        if kind is OreSetKind.PRIMES and self.primes is None:
            raise ValueError("A prime set needs its primes")
        if kind is OreSetKind.IDEAL_HAT and len(self.gens) != 1:
            raise ValueError("An ideal-hat set needs exactly one generator")
        if kind is OreSetKind.MONOID and not self.gens:
            raise ValueError("A monoid needs at least one generator")
        for part in self.parts:
            if RingId.parse(part.ring) != ring:
                raise ValueError("Union parts must share the ring")
        logger.debug(f"Validated {kind.value} set over {ring}")
        return self

    def to_domain(self) -> OreSetDesc:
        ring = RingId.parse(self.ring)
        kind = self.kind
        if kind is OreSetKind.MONOID:
            return OreSetDesc.monoid(ring, [parse_element(g, ring) for g in self.gens])
        if kind is OreSetKind.EULER:
            return OreSetDesc.euler(Fraction(self.z))
        if kind is OreSetKind.UNION:
            return OreSetDesc.union(part.to_domain() for part in self.parts)
        if kind is OreSetKind.NONZERO:
            return OreSetDesc.nonzero(ring)
        if kind is OreSetKind.UNITS:
            return OreSetDesc.units(ring)
        if kind is OreSetKind.PRIMES:
            assert self.primes is not None
            return OreSetDesc.prime_set(self.primes.to_domain(), ring)
        return OreSetDesc.ideal_hat(ring, parse_element(self.gens[0], ring))


OreSetModel.model_rebuild()


class FractionModel(BaseModel):
    """Model for a left fraction ``den^-1 num`` over an Ore set."""

    model_config = ConfigDict(populate_by_name=True)

    den: str = Field(..., description="Denominator s")
    num: str = Field(..., description="Numerator r")
    ore_set: OreSetModel = Field(..., alias="set", description="Denominator set")

    def to_domain(self, config: KernelConfig = DEFAULT_CONFIG) -> OreFraction:
        S = self.ore_set.to_domain()
        ctx = LocCtx(S, config)
        den = parse_element(self.den, S.ring)
        return ctx.fraction(den, parse_element(self.num, S.ring))


class LatticeModel(BaseModel):
    """Model for a lattice (or the relations of a module) inside Z^n."""

    ambient: int = Field(..., ge=0, description="Rank n of the ambient Z^n")
    rows: List[List[int]] = Field(default_factory=list, description="Generators")

    @model_validator(mode="after")
    def check_row_lengths(self) -> "LatticeModel":
        for row in self.rows:
            if len(row) != self.ambient:
                logger.warning(f"Row {row} does not fit Z^{self.ambient}")
                raise ValueError(f"Every row must have length {self.ambient}")
        return self

    def to_domain(self) -> IntLattice:
        return IntLattice(self.ambient, self.rows)

    def to_module(self) -> PresentedModule:
        return PresentedModule(self.to_domain())


class ClosurePlanModel(BaseModel):
    """Model for the sets and schedule of an iterated closure."""

    sets: List[OreSetModel] = Field(..., min_length=1, description="Sets S_i")
    schedule: List[int] = Field(
        ..., min_length=1, description="Indices f(1), f(2), ..."
    )
    commuting: bool = Field(False, description="The sets commute pairwise")

    @model_validator(mode="after")
    def check_schedule(self) -> "ClosurePlanModel":
        bad = [i for i in self.schedule if not 0 <= i < len(self.sets)]
        if bad:
            raise ValueError(f"Schedule indices {bad} have no set")
        return self

    def to_domain(self) -> ClosurePlan:
        return ClosurePlan(
            tuple(S.to_domain() for S in self.sets),
            tuple(self.schedule),
            self.commuting,
        )


# set shorthands


def _split_items(text: str) -> List[str]:
    items = [item.strip() for item in text.split(",")]
    if any(not item for item in items):
        raise ParseError(f"Empty item in {text!r}")
    return items


def _prime_ring(ring: RingId) -> RingId:
    """Prime sets of the Weyl algebra are written in Q[x]."""
    return QX if ring.tag is RingTag.WEYL else ring


def parse_set(text: str, ring: RingId) -> OreSetDesc:
    """Parse a set shorthand or an OreSetDesc JSON object.

    Shorthands: ``theta<z>``, ``[g1,g2]``, ``primes:2,3``, ``coprimes:2``,
    ``nonzero``, ``units``, ``ideal:<g>``; several sets joined by `` u ``
    form their union.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            data: Any = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"Invalid set JSON: {exc}") from exc
        return OreSetModel.model_validate(data).to_domain()
    if " u " in text:
        return OreSetDesc.union(parse_set(part, ring) for part in text.split(" u "))
    lowered = text.lower()
    if lowered.startswith("theta"):
        return OreSetDesc.euler(Fraction(text[5:].strip() or "0"))
    if lowered == "nonzero":
        return OreSetDesc.nonzero(ring)
    if lowered == "units":
        return OreSetDesc.units(ring)
    if text.startswith("[") and text.endswith("]"):
        gens = [parse_element(g, ring) for g in _split_items(text[1:-1])]
        return OreSetDesc.monoid(ring, gens)
    for prefix, mode in (("primes:", SatMode.FINITE), ("coprimes:", SatMode.COFINITE)):
        if lowered.startswith(prefix):
            body = text[len(prefix) :].strip()
            base = _prime_ring(ring)
            items = [parse_element(p, base) for p in _split_items(body)] if body else []
            sat = SaturatedSetDesc.create(base, mode, items)
            return OreSetDesc.prime_set(sat, ring)
    if lowered.startswith("ideal:"):
        return OreSetDesc.ideal_hat(ring, parse_element(text[6:], ring))
    raise ParseError(f"Unknown set description {text!r}")


def parse_saturated(text: str, ring: RingId) -> SaturatedSetDesc:
    """``primes:...``/``coprimes:...`` or SaturatedSetDesc JSON."""
    text = text.strip()
    if text.startswith("{"):
        try:
            data: Any = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"Invalid saturated-set JSON: {exc}") from exc
        return SaturatedSetModel.model_validate(data).to_domain()
    S = parse_set(text, ring)
    if S.kind is not OreSetKind.PRIMES or S.primes is None:
        raise ParseError(f"{text!r} is not a saturated-set description")
    return S.primes


def parse_fraction(text: str, S: OreSetDesc, config: KernelConfig) -> OreFraction:
    """``"s | r"`` over ``S``, or a Fraction JSON object."""
    text = text.strip()
    if text.startswith("{"):
        try:
            data: Any = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"Invalid fraction JSON: {exc}") from exc
        return FractionModel.model_validate(data).to_domain(config)
    if text.count("|") != 1:
        raise ParseError(f"Fractions are written 's | r', got {text!r}")
    den, num = text.split("|")
    ctx = LocCtx(S, config)
    return ctx.fraction(parse_element(den, S.ring), parse_element(num, S.ring))


def parse_lattice(text: str) -> IntLattice:
    try:
        return LatticeModel.model_validate_json(text).to_domain()
    except ValueError as exc:
        raise ParseError(f"Invalid lattice JSON: {exc}") from exc
