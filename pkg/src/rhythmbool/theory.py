"""Parental pairs of zero, ancestor families and the polynomial Bav_N^0.

Everything here is in the signed world: indices run over Z_{N,±} and the
polynomials use the negated variables y_j = v_j + 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple, Union

from .anf import AnfPoly, Basis, embed, from_table_bits, shift_variables, to_basis
from .boolvec import BoolVec, Convention, bav_bits
from .config import Settings
from .errors import BoundExceeded, ConventionMismatch, ImproperInput
from .modular import ModulusContext, SignedIndex, av_int, av_signed_int
from .rhythm import Rhythm, SignedRhythm, rav, rav_signed

logger = logging.getLogger(__name__)

PairLike = Union["ParentalPair", Tuple[int, int]]


class PairKind(str, Enum):
    PAR0 = "par0"
    PAR1 = "par1"


@dataclass(frozen=True, slots=True)
class ParentalPair:
    """(a, b) in Z_{N,±}^2 with av_signed(a, b) = 0.

    par0 pairs are (-k, k), par1 pairs are (-k, k + 1).
    """

    a: SignedIndex
    b: SignedIndex
    kind: PairKind

    def __post_init__(self) -> None:
        if self.a.ctx != self.b.ctx:
            raise ImproperInput(f"Pair ({self.a}, {self.b}) mixes moduli {self.a.ctx.n} and {self.b.ctx.n}")
        a, b, n = self.a.value, self.b.value, self.a.ctx.n
        if av_signed_int(a, b, n) != 0:
            raise ImproperInput(f"({a}, {b}) is not a parental pair of zero mod {n}")
        expected = PairKind.PAR0 if a + b == 0 else PairKind.PAR1 if a + b == 1 else None
        if expected is not PairKind(self.kind):
            raise ImproperInput(f"({a}, {b}) is not of kind {PairKind(self.kind).value}")
        object.__setattr__(self, "kind", expected)

    @classmethod
    def of(cls, a: int, b: int, ctx: ModulusContext) -> "ParentalPair":
        kind = PairKind.PAR0 if a + b == 0 else PairKind.PAR1
        return cls(SignedIndex(a, ctx), SignedIndex(b, ctx), kind)

    @property
    def ctx(self) -> ModulusContext:
        return self.a.ctx

    @property
    def width(self) -> int:
        return self.b.value - self.a.value

    @property
    def is_zero(self) -> bool:
        return self.a.value == 0 and self.b.value == 0

    def as_tuple(self) -> Tuple[int, int]:
        return (self.a.value, self.b.value)

    def to_json(self) -> Dict[str, Any]:
        return {"a": self.a.value, "b": self.b.value}

    def __str__(self) -> str:
        return f"({self.a.value},{self.b.value})"


def _as_pair(pair: PairLike, ctx: Optional[ModulusContext]) -> ParentalPair:
    if isinstance(pair, ParentalPair):
        if ctx is not None and pair.ctx != ctx:
            raise ImproperInput(f"Pair {pair} belongs to N={pair.ctx.n}, not N={ctx.n}")
        return pair
    if ctx is None:
        raise ImproperInput("A modulus is required for a plain (a, b) pair")
    a, b = pair
    if not (ctx.least <= a <= ctx.greatest and ctx.least <= b <= ctx.greatest):
        raise ImproperInput(f"({a}, {b}) is outside Z_{ctx.n},±")
    return ParentalPair.of(a, b, ctx)


# ----------------------------------------------------------------------
# Parental pairs
# ----------------------------------------------------------------------
def parental_pairs(ctx: ModulusContext) -> List[ParentalPair]:
    """Par_N ordered by interval width: (0,0), (0,1), (-1,1), (-1,2), ..."""

    pairs = []
    for width in range(ctx.n):
        half = width // 2
        if width % 2 == 0:
            pairs.append(ParentalPair(SignedIndex(-half, ctx), SignedIndex(half, ctx), PairKind.PAR0))
        else:
            pairs.append(ParentalPair(SignedIndex(-half, ctx), SignedIndex(half + 1, ctx), PairKind.PAR1))
    return pairs


def brute_force_parental_pairs(ctx: ModulusContext) -> Set[Tuple[int, int]]:
    indices = range(ctx.least, ctx.greatest + 1)
    return {(a, b) for a in indices for b in indices if av_signed_int(a, b, ctx.n) == 0}


def parental_pairs_nonneg(ctx: ModulusContext) -> List[Tuple[int, int]]:
    """Zero-average pairs in Z_N by congruence.

    a = 0 pairs with b in {0, 1}; a = 1 never averages to zero; a >= 2 needs
    b < a and a + b congruent to 0 or 1.
    """

    n = ctx.n
    pairs = [(0, 0), (0, 1)]
    for a in range(2, n):
        for b in range(a):
            if (a + b) % n in (0, 1):
                pairs.append((a, b))
    return pairs


def brute_force_parental_pairs_nonneg(ctx: ModulusContext) -> Set[Tuple[int, int]]:
    n = ctx.n
    return {(a, b) for a in range(n) for b in range(n) if av_int(a, b, n) == 0}


# ----------------------------------------------------------------------
# Ancestors
# ----------------------------------------------------------------------
def ancestor_count(pair: PairLike, ctx: Optional[ModulusContext] = None) -> int:
    pair = _as_pair(pair, ctx)
    if pair.is_zero:
        return 1
    return 1 << (pair.ctx.n - 1 - pair.width)


def _interval_mask(pair: ParentalPair) -> Tuple[int, int]:
    """Masks of [a, b] and of its endpoints, as signed bit positions."""

    least = pair.ctx.least
    lo, hi = pair.a.value - least, pair.b.value - least
    span = ((1 << (hi - lo + 1)) - 1) << lo
    return span, (1 << lo) | (1 << hi)


def iter_ancestors(pair: PairLike, ctx: Optional[ModulusContext] = None) -> Iterator[BoolVec]:
    pair = _as_pair(pair, ctx)
    ctx = pair.ctx
    if pair.is_zero:
        yield BoolVec.from_support([0], ctx, Convention.SIGNED)
        return
    span, ends = _interval_mask(pair)
    free = ((1 << ctx.n) - 1) & ~span
    sub = 0
    while True:
        yield BoolVec(ends | sub, ctx, Convention.SIGNED)
        sub = (sub - free) & free
        if sub == 0:
            break


def enumerate_ancestors(
    pair: PairLike, ctx: Optional[ModulusContext] = None, bound: Optional[int] = None
) -> List[BoolVec]:
    """Signed vectors equal to (1,0,...,0,1) on [a, b] and free elsewhere."""

    pair = _as_pair(pair, ctx)
    bound = Settings().ancestor_bound if bound is None else bound
    if pair.ctx.n > bound:
        raise BoundExceeded("enumerate_ancestors", pair.ctx.n, bound)
    return list(iter_ancestors(pair))


def is_ancestor(r: Union[Rhythm, SignedRhythm]) -> bool:
    """True when 0 is an onset of the discrete average of r."""

    if isinstance(r, SignedRhythm):
        return 0 in rav_signed(r).values
    return 0 in rav(r).values


@dataclass(frozen=True, slots=True)
class AncestorFamily:
    pair: ParentalPair

    @property
    def ctx(self) -> ModulusContext:
        return self.pair.ctx

    @property
    def count(self) -> int:
        return ancestor_count(self.pair)

    def contains(self, v: BoolVec) -> bool:
        v = v.to_signed()
        if self.pair.is_zero:
            return v.bits == 1 << -self.ctx.least
        span, ends = _interval_mask(self.pair)
        return v.bits & span == ends

    def members(self, bound: Optional[int] = None) -> List[BoolVec]:
        return enumerate_ancestors(self.pair, bound=bound)

    def indicator(self) -> AnfPoly:
        if self.pair.is_zero:
            return f_zero(self.ctx)
        return f_interval(self.pair)


def ancestor_families(ctx: ModulusContext) -> List[AncestorFamily]:
    return [AncestorFamily(pair) for pair in parental_pairs(ctx)]


# ----------------------------------------------------------------------
# Building blocks and Bav_N^0
# ----------------------------------------------------------------------
def _y(index: int, ctx: ModulusContext) -> AnfPoly:
    return AnfPoly.variable(index, ctx, Convention.SIGNED, Basis.Y)


def _product(indices: range, ctx: ModulusContext) -> AnfPoly:
    return AnfPoly.from_terms([list(indices)], ctx, Convention.SIGNED, Basis.Y)


def f_interval(pair: PairLike, ctx: Optional[ModulusContext] = None) -> AnfPoly:
    """(y_a + 1) * y_{a+1} ... y_{b-1} * (y_b + 1)."""

    pair = _as_pair(pair, ctx)
    if pair.is_zero:
        raise ImproperInput("f_interval is undefined for (0,0); use f_zero")
    ctx = pair.ctx
    a, b = pair.as_tuple()
    return (_y(a, ctx) + 1) * _product(range(a + 1, b), ctx) * (_y(b, ctx) + 1)


def f_zero(ctx: ModulusContext) -> AnfPoly:
    """(y_0 + 1) times every other y_k."""

    others = [k for k in range(ctx.least, ctx.greatest + 1) if k != 0]
    block = AnfPoly.from_terms([others], ctx, Convention.SIGNED, Basis.Y)
    return (_y(0, ctx) + 1) * block


def closed_form_bav0(ctx: ModulusContext) -> AnfPoly:
    """Sum of f_[a,b] over the nonzero parental pairs, plus f_zero."""

    total = f_zero(ctx)
    for pair in parental_pairs(ctx):
        if not pair.is_zero:
            total = total + f_interval(pair)
    return total


def bav0_table(ctx: ModulusContext, bound: Optional[int] = None) -> int:
    """Packed truth table of v -> Bav(v)_0 over nonneg vectors."""

    bound = Settings().enumerate_bound if bound is None else bound
    if ctx.n > bound:
        raise BoundExceeded("bav0_table", ctx.n, bound)
    n = ctx.n
    table = 0
    for bits in range(1 << n):
        if bav_bits(bits, n) & 1:
            table |= 1 << bits
    return table


def enumerated_bav0(ctx: ModulusContext, basis: Basis = Basis.V, bound: Optional[int] = None) -> AnfPoly:
    """Bav_N^0 derived from its truth table by the Möbius transform."""

    logger.debug("tabulating Bav_%d^0", ctx.n)
    derived = from_table_bits(bav0_table(ctx, bound), ctx)
    return to_basis(derived, basis)


def coordinate_polynomial(ctx: ModulusContext, i: int, basis: Basis = Basis.V) -> AnfPoly:
    """Bav_N^i as a cyclic shift of the variables of Bav_N^0."""

    base = to_basis(closed_form_bav0(ctx), Basis.V)
    return to_basis(shift_variables(base, i % ctx.n), basis)


# ----------------------------------------------------------------------
# Recurrence
# ----------------------------------------------------------------------
def recurrence_increment(ctx: ModulusContext) -> AnfPoly:
    """Bav_N^0 - Bav_{N-1}^0 as a y-basis polynomial over Z_{N,±}.

    Empty products are 1.
    """

    n = ctx.n
    if n < 4:
        raise ImproperInput(f"The recurrence starts at N=4, got N={n}")
    m = n // 2
    if n % 2 == 0:
        left, negated, pivot = range(-m + 2, 0), m, -m + 1
    else:
        left, negated, pivot = range(-m + 1, 0), -m, m
    core = _product(left, ctx) * _product(range(1, m), ctx)
    return core * (_y(negated, ctx) + 1) * (_y(0, ctx) + _y(pivot, ctx))


def recurrence_step(prev: AnfPoly) -> AnfPoly:
    """Bav_N^0 from Bav_{N-1}^0, both in the signed y-basis."""

    if prev.index_set is not Convention.SIGNED or prev.basis is not Basis.Y:
        raise ConventionMismatch(
            f"recurrence_step expects a signed y-basis polynomial, got {prev.index_set.value}/{prev.basis.value}"
        )
    ctx = ModulusContext(prev.ctx.n + 1)
    return embed(prev, ctx) + recurrence_increment(ctx)


def recurrence_chain(ctx: ModulusContext, seed: Optional[AnfPoly] = None) -> List[AnfPoly]:
    """Bav_3^0, ..., Bav_N^0 by the recurrence, seeded with the enumerated N=3 polynomial."""

    current = seed if seed is not None else enumerated_bav0(ModulusContext(3), Basis.Y)
    chain = [current]
    while current.ctx.n < ctx.n:
        current = recurrence_step(current)
        chain.append(current)
    return chain


def recurrence_bav0(ctx: ModulusContext) -> AnfPoly:
    return recurrence_chain(ctx)[-1]
