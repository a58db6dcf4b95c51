from __future__ import annotations


class RhythmboolError(Exception):
    """Base class for every error raised by rhythmbool."""


class ModulusError(RhythmboolError, ValueError):
    """Modulus out of range, residue out of range, or operands from different moduli."""


class ConventionMismatch(RhythmboolError, TypeError):
    """Nonneg and signed values were mixed without an explicit conversion."""


class InvalidRhythm(RhythmboolError, ValueError):
    pass


class DuplicateOnset(InvalidRhythm):
    pass


class WrapSumViolation(InvalidRhythm):
    """The cyclic gaps sum to a multiple of N other than N (the tuple winds more than once)."""


class NotIncreasing(InvalidRhythm):
    pass


class EmptyRhythm(RhythmboolError, ValueError):
    pass


class ImproperInput(RhythmboolError, ValueError):
    """An argument is outside the domain an operation is defined on."""


class BoundExceeded(RhythmboolError, RuntimeError):
    def __init__(self, what: str, n: int, bound: int):
        super().__init__(f"{what}: N={n} exceeds the exhaustive bound {bound}")
        self.what = what
        self.n = n
        self.bound = bound


class ParseError(RhythmboolError, ValueError):
    pass
