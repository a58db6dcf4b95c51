from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, Iterator, Tuple, Union

from .errors import ConventionMismatch, ModulusError, ParseError
from .modular import ModulusContext, av_int, phi_int, phi_inv_int
from .rhythm import IncreasingRhythm, Rhythm, SignedRhythm

_COMPACT = re.compile(r"^[01]+$")


class Convention(str, Enum):
    NONNEG = "nonneg"
    SIGNED = "signed"


@dataclass(frozen=True, slots=True)
class BoolVec:
    """A vector in F_2^N packed into an int.

    Bit position p holds index p (nonneg) or index p + least (signed), so
    position 0 is always the first coordinate in printed order.
    """

    bits: int
    ctx: ModulusContext
    convention: Convention = Convention.NONNEG

    def __post_init__(self) -> None:
        if not 0 <= self.bits < (1 << self.ctx.n):
            raise ModulusError(f"Bit pattern {self.bits:#x} does not fit in {self.ctx.n} coordinates")
        object.__setattr__(self, "convention", Convention(self.convention))

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------
    @classmethod
    def from_bits(
        cls, bits: Iterable[int], ctx: ModulusContext, convention: Convention = Convention.NONNEG
    ) -> "BoolVec":
        items = [int(b) for b in bits]
        if len(items) != ctx.n:
            raise ParseError(f"Expected {ctx.n} bits, got {len(items)}")
        packed = 0
        for position, bit in enumerate(items):
            if bit not in (0, 1):
                raise ParseError(f"Bit {bit!r} at position {position} is not 0 or 1")
            packed |= bit << position
        return cls(packed, ctx, convention)

    @classmethod
    def parse(cls, text: str, ctx: ModulusContext, convention: Convention = Convention.NONNEG) -> "BoolVec":
        """Accept ``(0,0,1,1)`` or the compact ``0011``."""

        body = text.strip()
        if _COMPACT.match(body):
            return cls.from_bits((int(ch) for ch in body), ctx, convention)
        if not (body.startswith("(") and body.endswith(")")):
            raise ParseError(f"Malformed vector literal {text!r}; expected e.g. (0,1,1)")
        inner = body[1:-1].strip()
        items = [item.strip() for item in inner.split(",")] if inner else []
        if any(item not in ("0", "1") for item in items):
            raise ParseError(f"Malformed vector literal {text!r}; entries must be 0 or 1")
        return cls.from_bits((int(item) for item in items), ctx, convention)

    @classmethod
    def from_support(
        cls, indices: Iterable[int], ctx: ModulusContext, convention: Convention = Convention.NONNEG
    ) -> "BoolVec":
        convention = Convention(convention)
        packed = 0
        for index in indices:
            packed |= 1 << _position(index, ctx, convention)
        return cls(packed, ctx, convention)

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "BoolVec":
        ctx = ModulusContext(int(data["n"]))
        convention = Convention(data["convention"])
        if convention is Convention.SIGNED:
            bits = data["bits"]
            return cls.from_support((int(k) for k, bit in bits.items() if int(bit)), ctx, convention)
        return cls.from_bits(data["bits"], ctx, convention)

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------
    def indices(self) -> range:
        if self.convention is Convention.SIGNED:
            return range(self.ctx.least, self.ctx.greatest + 1)
        return range(self.ctx.n)

    def bit(self, index: int) -> int:
        return (self.bits >> _position(index, self.ctx, self.convention)) & 1

    def as_tuple(self) -> Tuple[int, ...]:
        return tuple((self.bits >> p) & 1 for p in range(self.ctx.n))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def complement(self) -> "BoolVec":
        return BoolVec(self.bits ^ ((1 << self.ctx.n) - 1), self.ctx, self.convention)

    def to_signed(self) -> "BoolVec":
        if self.convention is Convention.SIGNED:
            return self
        return BoolVec.from_support((phi_int(i, self.ctx.n) for i in _support(self)), self.ctx, Convention.SIGNED)

    def to_nonneg(self) -> "BoolVec":
        if self.convention is Convention.NONNEG:
            return self
        return BoolVec.from_support((phi_inv_int(j, self.ctx.n) for j in _support(self)), self.ctx)

    def to_json(self) -> Dict[str, Any]:
        record: Dict[str, Any] = {"n": self.ctx.n, "convention": self.convention.value}
        if self.convention is Convention.SIGNED:
            record["bits"] = {str(j): self.bit(j) for j in self.indices()}
        else:
            record["bits"] = list(self.as_tuple())
        return record

    def __str__(self) -> str:
        return "(" + ",".join(str(b) for b in self.as_tuple()) + ")"


def _position(index: int, ctx: ModulusContext, convention: Convention) -> int:
    if convention is Convention.SIGNED:
        if not ctx.least <= index <= ctx.greatest:
            raise ModulusError(f"Index {index} outside Z_{ctx.n},± = [{ctx.least}, {ctx.greatest}]")
        return index - ctx.least
    if not 0 <= index < ctx.n:
        raise ModulusError(f"Index {index} outside Z_{ctx.n}")
    return index


def _support(v: BoolVec) -> Iterator[int]:
    offset = v.ctx.least if v.convention is Convention.SIGNED else 0
    bits = v.bits
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1 + offset
        bits ^= low


def all_vectors(ctx: ModulusContext, convention: Convention = Convention.NONNEG) -> Iterator[BoolVec]:
    for bits in range(1 << ctx.n):
        yield BoolVec(bits, ctx, convention)


def supp(v: BoolVec) -> FrozenSet[int]:
    return frozenset(_support(v))


# ----------------------------------------------------------------------
# Rhythms <-> vectors
# ----------------------------------------------------------------------
def rtob(r: Union[Rhythm, SignedRhythm]) -> BoolVec:
    """Characteristic vector; forgets the order of the onsets."""

    convention = Convention.SIGNED if isinstance(r, SignedRhythm) else Convention.NONNEG
    return BoolVec.from_support(r.values, r.ctx, convention)


def itob(a: Union[IncreasingRhythm, SignedRhythm]) -> BoolVec:
    return rtob(a)


def btoi(v: BoolVec) -> Union[IncreasingRhythm, SignedRhythm]:
    """Onsets of v in increasing order (signed order for signed vectors)."""

    onsets = tuple(_support(v))
    if v.convention is Convention.SIGNED:
        return SignedRhythm(onsets, v.ctx)
    return IncreasingRhythm(onsets, v.ctx)


def btr(v: BoolVec) -> BoolVec:
    """(v_{N-1}, v_0, ..., v_{N-2})."""

    if v.convention is not Convention.NONNEG:
        raise ConventionMismatch("btr is defined on nonneg vectors; convert with to_nonneg() first")
    n = v.ctx.n
    mask = (1 << n) - 1
    return BoolVec(((v.bits << 1) | (v.bits >> (n - 1))) & mask, v.ctx)


def btr_inverse(v: BoolVec) -> BoolVec:
    if v.convention is not Convention.NONNEG:
        raise ConventionMismatch("btr is defined on nonneg vectors; convert with to_nonneg() first")
    n = v.ctx.n
    return BoolVec((v.bits >> 1) | ((v.bits & 1) << (n - 1)), v.ctx)


# ----------------------------------------------------------------------
# Boolean average
# ----------------------------------------------------------------------
def bav_bits(bits: int, n: int) -> int:
    """Bav on a packed nonneg vector.

    Rotating a rhythm only permutes its onsets, so ItoB(Iav(a)) is the
    characteristic vector of Rav(a) whether or not a is proper.
    """

    onsets = []
    rest = bits
    while rest:
        low = rest & -rest
        onsets.append(low.bit_length() - 1)
        rest ^= low
    size = len(onsets)
    if size < 2:
        return bits
    out = 0
    for k in range(size):
        out |= 1 << av_int(onsets[k], onsets[(k + 1) % size], n)
    return out


def bav(v: BoolVec) -> BoolVec:
    if v.convention is Convention.SIGNED:
        return bav(v.to_nonneg()).to_signed()
    return BoolVec(bav_bits(v.bits, v.ctx.n), v.ctx)


def bav_component(i: int, v: BoolVec) -> int:
    """The i-th coordinate of bav(v), i in the index set of v's convention."""

    return bav(v).bit(i)
