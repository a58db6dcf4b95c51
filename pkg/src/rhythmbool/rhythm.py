from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

from .errors import (
    ConventionMismatch,
    DuplicateOnset,
    EmptyRhythm,
    ImproperInput,
    ModulusError,
    NotIncreasing,
    ParseError,
    WrapSumViolation,
)
from .modular import ModulusContext, SignedIndex, ZnElement, av_int, phi_int, phi_inv_int

_LITERAL = re.compile(r"^\(\s*(-?\d+(\s*,\s*-?\d+)*)?\s*\)$")


def _check_onsets(values: Tuple[int, ...], n: int) -> None:
    if len(set(values)) != len(values):
        raise DuplicateOnset(f"Onsets {values} are not pairwise distinct")
    if len(values) >= 2:
        total = sum((values[(i + 1) % len(values)] - values[i]) % n for i in range(len(values)))
        if total != n:
            raise WrapSumViolation(f"Cyclic gaps of {values} sum to {total}, expected {n}")


def _parse_ints(text: str) -> Tuple[int, ...]:
    match = _LITERAL.match(text.strip())
    if match is None:
        raise ParseError(f"Malformed tuple literal {text!r}; expected e.g. (2,3,7) or ()")
    body = match.group(1)
    return tuple(int(item) for item in body.split(",")) if body else ()


def _render(values: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


@dataclass(frozen=True, slots=True)
class Rhythm:
    """A rhythm mod N: distinct onsets whose cyclic gaps sum to exactly N."""

    values: Tuple[int, ...]
    ctx: ModulusContext

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        for value in self.values:
            if not 0 <= value < self.ctx.n:
                raise ModulusError(f"Onset {value} is not a residue in Z_{self.ctx.n}")
        _check_onsets(self.values, self.ctx.n)

    @classmethod
    def parse(cls, text: str, ctx: ModulusContext) -> "Rhythm":
        return cls(_parse_ints(text), ctx)

    @property
    def onsets(self) -> Tuple[ZnElement, ...]:
        return tuple(ZnElement(v, self.ctx) for v in self.values)

    @property
    def is_increasing(self) -> bool:
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    def __len__(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return _render(self.values)


@dataclass(frozen=True, slots=True)
class IncreasingRhythm(Rhythm):
    """Canonical representative of a rotation class: 0 <= a_0 < ... < a_{n-1} < N."""

    def __post_init__(self) -> None:
        Rhythm.__post_init__(self)
        if not self.is_increasing:
            raise NotIncreasing(f"Onsets {self.values} are not strictly increasing")


@dataclass(frozen=True, slots=True)
class SignedRhythm:
    """Image of a rhythm under phi, onsets in Z_{N,±}."""

    values: Tuple[int, ...]
    ctx: ModulusContext

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        for value in self.values:
            if not self.ctx.least <= value <= self.ctx.greatest:
                raise ModulusError(f"Onset {value} is not a least absolute remainder mod {self.ctx.n}")
        _check_onsets(tuple(phi_inv_int(v, self.ctx.n) for v in self.values), self.ctx.n)

    @classmethod
    def parse(cls, text: str, ctx: ModulusContext) -> "SignedRhythm":
        return cls(_parse_ints(text), ctx)

    @classmethod
    def from_rhythm(cls, r: Rhythm) -> "SignedRhythm":
        return cls(tuple(phi_int(v, r.ctx.n) for v in r.values), r.ctx)

    def to_rhythm(self) -> Rhythm:
        return Rhythm(tuple(phi_inv_int(v, self.ctx.n) for v in self.values), self.ctx)

    @property
    def onsets(self) -> Tuple[SignedIndex, ...]:
        return tuple(SignedIndex(v, self.ctx) for v in self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return _render(self.values)


AnyOnset = Union[ZnElement, int]


def validate(onsets: Iterable[AnyOnset], ctx: Optional[ModulusContext] = None) -> Rhythm:
    """Build a Rhythm from onsets, raising DuplicateOnset or WrapSumViolation."""

    values = []
    for onset in onsets:
        if isinstance(onset, SignedIndex):
            raise ConventionMismatch("validate takes Z_N residues; map signed onsets with phi_inv first")
        if isinstance(onset, ZnElement):
            if ctx is None:
                ctx = onset.ctx
            elif onset.ctx != ctx:
                raise ModulusError(f"Onset from Z_{onset.ctx.n} in a Z_{ctx.n} rhythm")
            values.append(onset.value)
        else:
            values.append(int(onset))
    if ctx is None:
        raise ModulusError("A modulus is required to validate an empty rhythm of plain ints")
    return Rhythm(tuple(values), ctx)


def rav(r: Rhythm) -> Rhythm:
    """Discrete average over cyclically adjacent onsets."""

    values, n = r.values, r.ctx.n
    if len(values) < 2:
        return Rhythm(values, r.ctx)
    size = len(values)
    return Rhythm(tuple(av_int(values[i], values[(i + 1) % size], n) for i in range(size)), r.ctx)


def rot(r: Rhythm) -> Rhythm:
    values = r.values
    if len(values) < 2:
        return Rhythm(values, r.ctx)
    return Rhythm(values[-1:] + values[:-1], r.ctx)


def tr(r: Rhythm) -> Rhythm:
    n = r.ctx.n
    return Rhythm(tuple((v + 1) % n for v in r.values), r.ctx)


def jumping_number(r: Rhythm) -> int:
    """Index j with a_{j-1} > a_j; the unique descent of the cyclic tuple."""

    values = r.values
    if not values:
        raise EmptyRhythm("The empty rhythm has no jumping number")
    size = len(values)
    if size == 1:
        return 0
    for j in range(size):
        if values[j - 1] > values[j]:
            return j
    raise AssertionError(f"No descent in validated rhythm {values}")  # pragma: no cover


def pr_i(r: Rhythm) -> IncreasingRhythm:
    """Rotate r into its increasing representative: rot^(n -_n j)."""

    values = r.values
    size = len(values)
    if size < 2:
        return IncreasingRhythm(values, r.ctx)
    shift = (size - jumping_number(r)) % size
    if shift:
        values = values[-shift:] + values[:-shift]
    return IncreasingRhythm(values, r.ctx)


def _as_increasing(r: Rhythm) -> IncreasingRhythm:
    return r if isinstance(r, IncreasingRhythm) else IncreasingRhythm(r.values, r.ctx)


def is_proper(r: Rhythm) -> bool:
    """N - a_{n-1} > a_0 for an increasing rhythm with at least two onsets."""

    inc = _as_increasing(r)
    if len(inc) < 2:
        raise ImproperInput(f"Properness needs at least two onsets, got {inc}")
    return inc.ctx.n - inc.values[-1] > inc.values[0]


def iav(r: Rhythm) -> IncreasingRhythm:
    inc = _as_increasing(r)
    if len(inc) < 2:
        return inc
    averaged = rav(inc)
    if not is_proper(inc):
        averaged = rot(averaged)
    return IncreasingRhythm(averaged.values, inc.ctx)


def rav_signed(r: SignedRhythm) -> SignedRhythm:
    return SignedRhythm.from_rhythm(rav(r.to_rhythm()))


# ----------------------------------------------------------------------
# Enumeration
# ----------------------------------------------------------------------
def enumerate_increasing(ctx: ModulusContext, size: Optional[int] = None) -> Iterator[IncreasingRhythm]:
    """All of I_N^n, or of I_N when size is None, in (size, lexicographic) order."""

    sizes = range(ctx.n + 1) if size is None else (size,)
    for k in sizes:
        for subset in combinations(range(ctx.n), k):
            yield IncreasingRhythm(subset, ctx)


def enumerate_rhythms(ctx: ModulusContext, size: Optional[int] = None) -> Iterator[Rhythm]:
    """All of R_N^n: every increasing rhythm together with its n rotations."""

    for inc in enumerate_increasing(ctx, size):
        values = inc.values
        if len(values) < 2:
            yield Rhythm(values, ctx)
            continue
        for shift in range(len(values)):
            yield Rhythm(values[shift:] + values[:shift], ctx)
