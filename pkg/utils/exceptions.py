"""
Exception hierarchy for the ore-kernel.

Every error raised deliberately by the kernel derives from OreKernelError so
the CLI can map it to exit code 1 with a typed JSON error payload.
"""


class OreKernelError(Exception):
    """Base class for all kernel errors."""


class ParseError(OreKernelError, ValueError):
    """Element text does not follow the element grammar."""


class RingMismatchError(OreKernelError, TypeError):
    """Operands or symbols belong to different rings."""


class ZeroInputError(OreKernelError, ValueError):
    """A nonzero element was required."""


class FactorizationLimitError(OreKernelError):
    """An integer has a prime factor beyond the configured trial bound."""


class NonSplitError(OreKernelError):
    """A polynomial part has no splitting into rational linear factors."""


class UnsupportedDivisorError(OreKernelError):
    """Exact division was asked for with a divisor shape it cannot handle."""


class NotHomogeneousError(OreKernelError, ValueError):
    """A graded operation received an element with several graded parts."""


class NotInSetError(OreKernelError, ValueError):
    """A denominator or Ore query element is not a member of the set."""


class NotOreError(OreKernelError):
    """The set is not known to satisfy the left Ore condition."""


class UnsupportedSetError(OreKernelError):
    """The operation is not implemented for this set descriptor."""


class BudgetExceededError(OreKernelError):
    """A pair limit or search node limit was exhausted."""


class MissingWitnessError(OreKernelError):
    """No saturation witness could be produced for a generator."""


class VerificationError(OreKernelError, AssertionError):
    """A computed identity failed its exact re-check."""
