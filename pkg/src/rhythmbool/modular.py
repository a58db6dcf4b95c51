"""Arithmetic on Z_N and on the least absolute remainders Z_{N,±}.

Two residue types are kept apart on purpose: ``ZnElement`` lives in
``{0, ..., N-1}`` and ``SignedIndex`` in ``{-(N-1)//2, ..., N//2}``. The only
way across is ``phi`` / ``phi_inv``. The ``*_int`` kernels work on plain ints
and are what the rhythm and Boolean layers call in their inner loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Literal, Tuple

from .errors import ConventionMismatch, ImproperInput, ModulusError

MIN_MODULUS = 3
MAX_MODULUS = 2**16

IntervalKind = Literal["closed", "half_open_right", "half_open_left"]
INTERVAL_KINDS: Tuple[str, ...] = ("closed", "half_open_right", "half_open_left")


@dataclass(frozen=True, slots=True)
class ModulusContext:
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or not MIN_MODULUS <= self.n <= MAX_MODULUS:
            raise ModulusError(f"Modulus must be an integer in [{MIN_MODULUS}, {MAX_MODULUS}], got {self.n!r}")

    @property
    def least(self) -> int:
        """Smallest signed index, -floor((N-1)/2)."""

        return -((self.n - 1) // 2)

    @property
    def greatest(self) -> int:
        """Largest signed index, floor(N/2)."""

        return self.n // 2

    def element(self, value: int) -> "ZnElement":
        return ZnElement(value, self)

    def signed(self, value: int) -> "SignedIndex":
        return SignedIndex(value, self)

    def residues(self) -> Tuple["ZnElement", ...]:
        return tuple(ZnElement(k, self) for k in range(self.n))

    def signed_indices(self) -> Tuple["SignedIndex", ...]:
        return tuple(SignedIndex(j, self) for j in range(self.least, self.greatest + 1))


@dataclass(frozen=True, slots=True)
class ZnElement:
    value: int
    ctx: ModulusContext

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.ctx.n:
            raise ModulusError(f"{self.value} is not a residue in Z_{self.ctx.n}")

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, slots=True)
class SignedIndex:
    value: int
    ctx: ModulusContext

    def __post_init__(self) -> None:
        if not self.ctx.least <= self.value <= self.ctx.greatest:
            raise ModulusError(
                f"{self.value} is not a least absolute remainder mod {self.ctx.n} "
                f"(range {self.ctx.least}..{self.ctx.greatest})"
            )

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


# ----------------------------------------------------------------------
# Integer kernels
# ----------------------------------------------------------------------
def add_int(a: int, b: int, n: int) -> int:
    return (a + b) % n


def sub_int(a: int, b: int, n: int) -> int:
    return (a - b) % n


def av_int(a: int, b: int, n: int) -> int:
    """a +_N floor((b -_N a) / 2)."""

    return (a + ((b - a) % n) // 2) % n


def av_oracle_int(a: int, b: int, n: int) -> int:
    if a <= b:
        return (a + b) // 2
    return ((a + b + n) // 2) % n


def phi_int(k: int, n: int) -> int:
    return k if k <= n // 2 else k - n


def phi_inv_int(j: int, n: int) -> int:
    return j % n


def av_signed_int(a: int, b: int, n: int) -> int:
    return phi_int(av_int(a % n, b % n, n), n)


def interval_int(a: int, b: int, n: int, kind: str = "closed") -> List[int]:
    span = (b - a) % n
    if kind == "closed":
        steps = range(span + 1)
    elif kind == "half_open_right":
        steps = range(span)
    elif kind == "half_open_left":
        steps = range(1, span + 1)
    else:
        raise ImproperInput(f"Unknown interval kind '{kind}'")
    return [(a + k) % n for k in steps]


# ----------------------------------------------------------------------
# Typed operations
# ----------------------------------------------------------------------
def _pair(a: ZnElement, b: ZnElement) -> ModulusContext:
    for item in (a, b):
        if not isinstance(item, ZnElement):
            raise ConventionMismatch(f"Expected ZnElement, got {type(item).__name__}")
    if a.ctx != b.ctx:
        raise ModulusError(f"Operands live in Z_{a.ctx.n} and Z_{b.ctx.n}")
    return a.ctx


def _signed_pair(a: SignedIndex, b: SignedIndex) -> ModulusContext:
    for item in (a, b):
        if not isinstance(item, SignedIndex):
            raise ConventionMismatch(f"Expected SignedIndex, got {type(item).__name__}")
    if a.ctx != b.ctx:
        raise ModulusError(f"Operands live in Z_{a.ctx.n},± and Z_{b.ctx.n},±")
    return a.ctx


def add_mod(a: ZnElement, b: ZnElement) -> ZnElement:
    ctx = _pair(a, b)
    return ZnElement(add_int(a.value, b.value, ctx.n), ctx)


def sub_mod(a: ZnElement, b: ZnElement) -> ZnElement:
    ctx = _pair(a, b)
    return ZnElement(sub_int(a.value, b.value, ctx.n), ctx)


def interval_zn(a: ZnElement, b: ZnElement, kind: IntervalKind = "closed") -> List[ZnElement]:
    """Wrap-around interval from a to b; half-open kinds drop b or a."""

    ctx = _pair(a, b)
    return [ZnElement(k, ctx) for k in interval_int(a.value, b.value, ctx.n, kind)]


def interval_signed(a: SignedIndex, b: SignedIndex, kind: IntervalKind = "closed") -> List[SignedIndex]:
    ctx = _signed_pair(a, b)
    n = ctx.n
    return [
        SignedIndex(phi_int(k, n), ctx)
        for k in interval_int(phi_inv_int(a.value, n), phi_inv_int(b.value, n), n, kind)
    ]


def distance_zn(a: ZnElement, b: ZnElement) -> int:
    """Directed distance from a to b, i.e. b -_N a."""

    ctx = _pair(a, b)
    return sub_int(b.value, a.value, ctx.n)


def av_zn(a: ZnElement, b: ZnElement) -> ZnElement:
    ctx = _pair(a, b)
    return ZnElement(av_int(a.value, b.value, ctx.n), ctx)


def av_zn_oracle(a: ZnElement, b: ZnElement) -> ZnElement:
    ctx = _pair(a, b)
    return ZnElement(av_oracle_int(a.value, b.value, ctx.n), ctx)


def phi(k: ZnElement) -> SignedIndex:
    if not isinstance(k, ZnElement):
        raise ConventionMismatch(f"phi expects a ZnElement, got {type(k).__name__}")
    return SignedIndex(phi_int(k.value, k.ctx.n), k.ctx)


def phi_inv(j: SignedIndex) -> ZnElement:
    if not isinstance(j, SignedIndex):
        raise ConventionMismatch(f"phi_inv expects a SignedIndex, got {type(j).__name__}")
    return ZnElement(phi_inv_int(j.value, j.ctx.n), j.ctx)


def av_signed(a: SignedIndex, b: SignedIndex) -> SignedIndex:
    ctx = _signed_pair(a, b)
    return SignedIndex(av_signed_int(a.value, b.value, ctx.n), ctx)
