"""Multilinear polynomials over F_2 in algebraic normal form.

A polynomial is a frozenset of monomials, each monomial an int bitmask over
variable positions (position p is index p for the nonneg index set and index
p + least for the signed one). Coefficients live in F_2, so adding toggles set
membership and x*x = x is a bitwise OR.

Truth tables are packed the same way: bit x of a table is the value at the
assignment whose bits are x. The Möbius transform on such a table is a
butterfly over the N variable masks and is its own inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .boolvec import BoolVec, Convention, all_vectors
from .config import Settings
from .errors import BoundExceeded, ConventionMismatch, ModulusError
from .modular import ModulusContext, phi_int, phi_inv_int

Monomial = Tuple[int, ...]


class Basis(str, Enum):
    V = "v"
    W = "w"
    Y = "y"


# Bases whose variables are negated vector bits: x_i = v_i + 1.
NEGATED_BASES = frozenset({Basis.W, Basis.Y})

_ALLOWED = {
    Convention.NONNEG: frozenset({Basis.V, Basis.W}),
    Convention.SIGNED: frozenset({Basis.V, Basis.Y}),
}


@dataclass(frozen=True, slots=True)
class AnfPoly:
    terms: FrozenSet[int]
    ctx: ModulusContext
    index_set: Convention = Convention.NONNEG
    basis: Basis = Basis.V

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", frozenset(self.terms))
        object.__setattr__(self, "index_set", Convention(self.index_set))
        object.__setattr__(self, "basis", Basis(self.basis))
        if self.basis not in _ALLOWED[self.index_set]:
            raise ConventionMismatch(f"Basis {self.basis.value} is not used with the {self.index_set.value} index set")
        limit = 1 << self.ctx.n
        for term in self.terms:
            if not 0 <= term < limit:
                raise ModulusError(f"Monomial mask {term:#x} uses variables outside the {self.ctx.n} indices")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, ctx: ModulusContext, index_set: Convention = Convention.NONNEG, basis: Basis = Basis.V) -> "AnfPoly":
        return cls(frozenset(), ctx, index_set, basis)

    @classmethod
    def one(cls, ctx: ModulusContext, index_set: Convention = Convention.NONNEG, basis: Basis = Basis.V) -> "AnfPoly":
        return cls(frozenset({0}), ctx, index_set, basis)

    @classmethod
    def variable(
        cls, index: int, ctx: ModulusContext, index_set: Convention = Convention.NONNEG, basis: Basis = Basis.V
    ) -> "AnfPoly":
        return cls.from_terms([[index]], ctx, index_set, basis)

    @classmethod
    def from_terms(
        cls,
        terms: Iterable[Iterable[int]],
        ctx: ModulusContext,
        index_set: Convention = Convention.NONNEG,
        basis: Basis = Basis.V,
    ) -> "AnfPoly":
        """Build from index lists; repeated monomials cancel mod 2."""

        offset = _offset(ctx, Convention(index_set))
        collected: set[int] = set()
        for term in terms:
            mask = 0
            for index in term:
                position = index - offset
                if not 0 <= position < ctx.n:
                    raise ModulusError(f"Variable index {index} outside the {Convention(index_set).value} index set")
                mask |= 1 << position
            collected ^= {mask}
        return cls(frozenset(collected), ctx, index_set, basis)

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "AnfPoly":
        return cls.from_terms(
            data["terms"], ModulusContext(int(data["n"])), Convention(data["index_set"]), Basis(data["basis"])
        )

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------
    def monomials(self) -> List[Monomial]:
        """Terms as sorted index tuples in canonical order."""

        offset = _offset(self.ctx, self.index_set)
        tuples = [tuple(p + offset for p in _positions(term)) for term in self.terms]
        return sorted(tuples, key=lambda t: (len(t), t))

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.ctx.n,
            "index_set": self.index_set.value,
            "basis": self.basis.value,
            "terms": [list(t) for t in self.monomials()],
        }

    def __str__(self) -> str:
        return to_text(self)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: Union["AnfPoly", int]) -> "AnfPoly":
        lifted = self._lift(other)
        return NotImplemented if lifted is NotImplemented else add(self, lifted)

    __radd__ = __add__

    def __mul__(self, other: Union["AnfPoly", int]) -> "AnfPoly":
        lifted = self._lift(other)
        return NotImplemented if lifted is NotImplemented else multiply(self, lifted)

    __rmul__ = __mul__

    def _lift(self, other: Union["AnfPoly", int]) -> "AnfPoly":
        if isinstance(other, AnfPoly):
            return other
        if other in (0, 1):
            terms = frozenset({0}) if other else frozenset()
            return AnfPoly(terms, self.ctx, self.index_set, self.basis)
        return NotImplemented  # type: ignore[return-value]


def _offset(ctx: ModulusContext, index_set: Convention) -> int:
    return ctx.least if index_set is Convention.SIGNED else 0


def _positions(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_compatible(p: AnfPoly, q: AnfPoly) -> None:
    if p.ctx != q.ctx:
        raise ModulusError(f"Polynomials over {p.ctx.n} and {q.ctx.n} variables")
    if p.index_set is not q.index_set or p.basis is not q.basis:
        raise ConventionMismatch(
            f"Cannot combine {p.index_set.value}/{p.basis.value} with {q.index_set.value}/{q.basis.value}"
        )


# ----------------------------------------------------------------------
# Arithmetic and evaluation
# ----------------------------------------------------------------------
def evaluate(p: AnfPoly, assignment: BoolVec) -> int:
    """Plug the bits of the assignment straight into the variables."""

    if assignment.convention is not p.index_set:
        raise ConventionMismatch(
            f"{assignment.convention.value} assignment for a {p.index_set.value} polynomial"
        )
    if assignment.ctx != p.ctx:
        raise ModulusError(f"Assignment of length {assignment.ctx.n} for {p.ctx.n} variables")
    bits = assignment.bits
    return sum(1 for term in p.terms if bits & term == term) & 1


def value_at(p: AnfPoly, v: BoolVec) -> int:
    """Value of the Boolean function p represents at the vector v.

    In the w and y bases every variable is a negated coordinate, so the
    polynomial is evaluated at the complement of v.
    """

    if p.basis in NEGATED_BASES:
        return evaluate(p, v.complement())
    return evaluate(p, v)


def add(p: AnfPoly, q: AnfPoly) -> AnfPoly:
    _check_compatible(p, q)
    return AnfPoly(p.terms ^ q.terms, p.ctx, p.index_set, p.basis)


def multiply(p: AnfPoly, q: AnfPoly) -> AnfPoly:
    _check_compatible(p, q)
    product: set[int] = set()
    for a in p.terms:
        for b in q.terms:
            product ^= {a | b}
    return AnfPoly(frozenset(product), p.ctx, p.index_set, p.basis)


# ----------------------------------------------------------------------
# Truth tables
# ----------------------------------------------------------------------
@lru_cache(maxsize=8)
def _low_masks(n: int) -> Tuple[int, ...]:
    """For each variable i, the table of assignments with bit i clear."""

    width = 1 << n
    full = (1 << width) - 1
    masks = []
    for i in range(n):
        step = 1 << i
        masks.append(full // ((1 << (2 * step)) - 1) * ((1 << step) - 1))
    return tuple(masks)


def mobius_transform(table: int, n: int) -> int:
    """In-place butterfly over the subset lattice; an involution on packed tables."""

    for i, low in enumerate(_low_masks(n)):
        table ^= (table & low) << (1 << i)
    return table


def coefficients(p: AnfPoly) -> int:
    packed = 0
    for term in p.terms:
        packed |= 1 << term
    return packed


def from_coefficients(
    packed: int, ctx: ModulusContext, index_set: Convention = Convention.NONNEG, basis: Basis = Basis.V
) -> AnfPoly:
    return AnfPoly(frozenset(_positions(packed)), ctx, index_set, basis)


def truth_table(p: AnfPoly) -> int:
    """Packed table of p evaluated literally: bit x is evaluate(p, x)."""

    return mobius_transform(coefficients(p), p.ctx.n)


def from_table_bits(
    table: int, ctx: ModulusContext, index_set: Convention = Convention.NONNEG, basis: Basis = Basis.V
) -> AnfPoly:
    return from_coefficients(mobius_transform(table, ctx.n), ctx, index_set, basis)


def tabulate(f: Callable[[BoolVec], int], ctx: ModulusContext, index_set: Convention = Convention.NONNEG) -> int:
    table = 0
    for v in all_vectors(ctx, index_set):
        if f(v) & 1:
            table |= 1 << v.bits
    return table


def from_truth_table(
    f: Callable[[BoolVec], int],
    ctx: ModulusContext,
    index_set: Convention = Convention.NONNEG,
    bound: Optional[int] = None,
) -> AnfPoly:
    """The unique v-basis polynomial agreeing with f on every vector."""

    bound = Settings().enumerate_bound if bound is None else bound
    if ctx.n > bound:
        raise BoundExceeded("from_truth_table", ctx.n, bound)
    return from_table_bits(tabulate(f, ctx, index_set), ctx, index_set, Basis.V)


def from_truth_table_dnf(
    f: Callable[[BoolVec], int],
    ctx: ModulusContext,
    index_set: Convention = Convention.NONNEG,
    bound: Optional[int] = None,
) -> AnfPoly:
    """Sum, over the 1-rows b of f, of prod_i x_i^(b_i) with x^(1) = x and x^(0) = x + 1.

    Each product expands to every monomial between the ones of b and all of
    the variables.
    """

    bound = Settings().dnf_bound if bound is None else bound
    if ctx.n > bound:
        raise BoundExceeded("from_truth_table_dnf", ctx.n, bound)
    full = (1 << ctx.n) - 1
    terms: set[int] = set()
    for v in all_vectors(ctx, index_set):
        if not f(v) & 1:
            continue
        zeros = full & ~v.bits
        sub = zeros
        while True:
            terms ^= {v.bits | sub}
            if sub == 0:
                break
            sub = (sub - 1) & zeros
    return AnfPoly(frozenset(terms), ctx, index_set, Basis.V)


def ones_count(p: AnfPoly, bound: Optional[int] = None) -> int:
    bound = Settings().balanced_bound if bound is None else bound
    if p.ctx.n > bound:
        raise BoundExceeded("ones_count", p.ctx.n, bound)
    return truth_table(p).bit_count()


def is_balanced(p: AnfPoly, bound: Optional[int] = None) -> bool:
    """Exactly 2^(N-1) ones over all 2^N inputs."""

    return ones_count(p, bound) == 1 << (p.ctx.n - 1)


# ----------------------------------------------------------------------
# Changes of variables
# ----------------------------------------------------------------------
_NEGATED = {
    (Convention.NONNEG, Basis.V): Basis.W,
    (Convention.NONNEG, Basis.W): Basis.V,
    (Convention.SIGNED, Basis.Y): Basis.V,
    (Convention.SIGNED, Basis.V): Basis.Y,
}


def _reverse_table(table: int, n: int) -> int:
    width = 1 << n
    return int(format(table, f"0{width}b")[::-1], 2)


def negate_variables(p: AnfPoly) -> AnfPoly:
    """Substitute x -> x + 1 in every variable and re-expand.

    On tables this is x -> complement(x), i.e. reversing the packed bits.
    """

    n = p.ctx.n
    table = _reverse_table(truth_table(p), n)
    return from_table_bits(table, p.ctx, p.index_set, _NEGATED[(p.index_set, p.basis)])


def _remap(p: AnfPoly, positions: Sequence[int], index_set: Convention, basis: Basis) -> AnfPoly:
    terms = set()
    for term in p.terms:
        mask = 0
        for position in _positions(term):
            mask |= 1 << positions[position]
        terms.add(mask)
    return AnfPoly(frozenset(terms), p.ctx, index_set, basis)


def relabel_signed(p: AnfPoly) -> AnfPoly:
    """Rename w_i to y_{phi(i)} (and v_i to the signed v_{phi(i)})."""

    if p.index_set is not Convention.NONNEG:
        raise ConventionMismatch("relabel_signed expects a nonneg polynomial")
    ctx = p.ctx
    positions = [phi_int(i, ctx.n) - ctx.least for i in range(ctx.n)]
    return _remap(p, positions, Convention.SIGNED, Basis.Y if p.basis is Basis.W else Basis.V)


def relabel_nonneg(p: AnfPoly) -> AnfPoly:
    if p.index_set is not Convention.SIGNED:
        raise ConventionMismatch("relabel_nonneg expects a signed polynomial")
    ctx = p.ctx
    positions = [phi_inv_int(position + ctx.least, ctx.n) for position in range(ctx.n)]
    return _remap(p, positions, Convention.NONNEG, Basis.W if p.basis is Basis.Y else Basis.V)


def to_basis(p: AnfPoly, basis: Basis) -> AnfPoly:
    """Convert between the nonneg v, nonneg w and signed y bases."""

    basis = Basis(basis)
    if p.index_set is Convention.SIGNED:
        if basis is Basis.Y and p.basis is Basis.Y:
            return p
        p = relabel_nonneg(p)
    if basis is Basis.Y:
        return relabel_signed(p if p.basis is Basis.W else negate_variables(p))
    return p if p.basis is basis else negate_variables(p)


def shift_variables(p: AnfPoly, k: int) -> AnfPoly:
    """Rename every index i to i +_N k."""

    if p.index_set is not Convention.NONNEG:
        raise ConventionMismatch("shift_variables expects a nonneg polynomial")
    n = p.ctx.n
    return _remap(p, [(i + k) % n for i in range(n)], p.index_set, p.basis)


def embed(p: AnfPoly, ctx: ModulusContext) -> AnfPoly:
    """View p inside a larger index set, keeping every variable's integer index."""

    if ctx.n < p.ctx.n:
        raise ModulusError(f"Cannot embed {p.ctx.n} variables into {ctx.n}")
    shift = _offset(p.ctx, p.index_set) - _offset(ctx, p.index_set)
    return AnfPoly(frozenset(term << shift for term in p.terms), ctx, p.index_set, p.basis)


# ----------------------------------------------------------------------
# Statistics and rendering
# ----------------------------------------------------------------------
def degree(p: AnfPoly) -> int:
    return max((term.bit_count() for term in p.terms), default=0)


def term_count(p: AnfPoly) -> int:
    return len(p.terms)


def _variable(prefix: str, index: int) -> str:
    label = str(index)
    return f"{prefix}_{label}" if len(label) == 1 else f"{prefix}_{{{label}}}"


def to_text(p: AnfPoly, names: Optional[Sequence[str]] = None) -> str:
    """Canonical rendering: by degree, then by sorted index tuple.

    ``names`` replaces the basis prefix with one name per variable position.
    """

    if not p.terms:
        return "0"
    offset = _offset(p.ctx, p.index_set)
    rendered = []
    for monomial in p.monomials():
        if not monomial:
            rendered.append("1")
        elif names is not None:
            rendered.append("".join(names[index - offset] for index in monomial))
        else:
            rendered.append("".join(_variable(p.basis.value, index) for index in monomial))
    return "+".join(rendered)

