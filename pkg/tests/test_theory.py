import pytest

from rhythmbool.anf import AnfPoly, Basis, is_balanced, ones_count, to_basis, to_text, value_at
from rhythmbool.boolvec import Convention, all_vectors, bav_component, btoi, itob
from rhythmbool.errors import BoundExceeded, ConventionMismatch, ImproperInput
from rhythmbool.modular import ModulusContext
from rhythmbool.rhythm import IncreasingRhythm, Rhythm
from rhythmbool.theory import (
    AncestorFamily,
    ParentalPair,
    PairKind,
    ancestor_count,
    ancestor_families,
    brute_force_parental_pairs,
    brute_force_parental_pairs_nonneg,
    closed_form_bav0,
    coordinate_polynomial,
    enumerate_ancestors,
    enumerated_bav0,
    f_interval,
    f_zero,
    is_ancestor,
    parental_pairs,
    parental_pairs_nonneg,
    recurrence_chain,
    recurrence_increment,
    recurrence_step,
)

N3 = ModulusContext(3)
N6 = ModulusContext(6)
SIGNED = Convention.SIGNED


def _y(terms, ctx):
    return AnfPoly.from_terms(terms, ctx, SIGNED, Basis.Y)


def test_parental_pairs_listing():
    assert [p.as_tuple() for p in parental_pairs(N6)] == [(0, 0), (0, 1), (-1, 1), (-1, 2), (-2, 2), (-2, 3)]
    assert [p.as_tuple() for p in parental_pairs(N3)] == [(0, 0), (0, 1), (-1, 1)]
    assert [p.kind for p in parental_pairs(N3)] == [PairKind.PAR0, PairKind.PAR1, PairKind.PAR0]
    assert str(parental_pairs(N6)[-1]) == "(-2,3)"
    assert parental_pairs(N6)[3].to_json() == {"a": -1, "b": 2}


@pytest.mark.parametrize("n", range(3, 33))
def test_parental_pairs_match_brute_force(n):
    ctx = ModulusContext(n)
    pairs = parental_pairs(ctx)
    assert len(pairs) == n
    assert {p.as_tuple() for p in pairs} == brute_force_parental_pairs(ctx)


@pytest.mark.parametrize("n", range(3, 25))
def test_nonneg_parental_pairs_match_brute_force(n):
    ctx = ModulusContext(n)
    listed = parental_pairs_nonneg(ctx)
    assert len(listed) == len(set(listed)) == n
    assert set(listed) == brute_force_parental_pairs_nonneg(ctx)


def test_pair_validation():
    with pytest.raises(ImproperInput):
        ParentalPair.of(1, 2, N6)
    with pytest.raises(ImproperInput):
        ParentalPair(N6.signed(-1), N6.signed(1), PairKind.PAR1)
    with pytest.raises(ImproperInput):
        ancestor_count((3, 3), N6)
    with pytest.raises(ImproperInput):
        ancestor_count((0, 1))


def test_building_blocks():
    assert f_interval((0, 1), N3) == _y([[0, 1], [0], [1], []], N3)
    assert f_zero(N3) == _y([[-1, 0, 1], [-1, 1]], N3)
    expected = _y([[-2, -1, 0, 1, 2, 3], [-1, 0, 1, 2, 3], [-2, -1, 0, 1, 2], [-1, 0, 1, 2]], N6)
    assert f_interval((-2, 3), N6) == expected
    assert f_zero(N6) == _y([[-2, -1, 0, 1, 2, 3], [-2, -1, 1, 2, 3]], N6)
    with pytest.raises(ImproperInput):
        f_interval((0, 0), N6)


@pytest.mark.parametrize("n", range(3, 11))
def test_f_zero_marks_single_onset_at_zero(n):
    ctx = ModulusContext(n)
    target = itob(IncreasingRhythm((0,), ctx)).to_signed()
    block = f_zero(ctx)
    for v in all_vectors(ctx, SIGNED):
        assert value_at(block, v) == (v == target)


@pytest.mark.parametrize("n", range(3, 11))
def test_indicator_matches_ancestor_enumeration(n):
    ctx = ModulusContext(n)
    for family in ancestor_families(ctx):
        members = set(family.members())
        indicator = family.indicator()
        for v in all_vectors(ctx, SIGNED):
            assert value_at(indicator, v) == (v in members)
            assert family.contains(v) == (v in members)


def test_closed_form_small_cases():
    assert to_text(closed_form_bav0(N3)) == "1+y_1+y_{-1}y_0+y_{-1}y_1"
    assert to_text(closed_form_bav0(ModulusContext(4))) == "1+y_1+y_{-1}y_0+y_0y_1+y_{-1}y_1y_2+y_0y_1y_2"


@pytest.mark.parametrize("n", range(3, 13))
def test_closed_form_matches_enumeration(n):
    ctx = ModulusContext(n)
    assert closed_form_bav0(ctx) == enumerated_bav0(ctx, Basis.Y)


def test_recurrence_increments():
    n4 = ModulusContext(4)
    assert recurrence_increment(n4) == _y([[0, 1, 2], [-1, 1, 2], [0, 1], [-1, 1]], n4)
    n5 = ModulusContext(5)
    expected = _y([[-2, -1, 0, 1], [-2, -1, 1, 2], [-1, 0, 1], [-1, 1, 2]], n5)
    assert recurrence_increment(n5) == expected
    with pytest.raises(ImproperInput):
        recurrence_increment(N3)


def test_recurrence_step_needs_signed_y_basis():
    with pytest.raises(ConventionMismatch):
        recurrence_step(to_basis(closed_form_bav0(N3), Basis.V))


def test_recurrence_chain_matches_closed_form():
    chain = recurrence_chain(ModulusContext(12))
    assert [p.ctx.n for p in chain] == list(range(3, 13))
    for poly in chain:
        assert poly == closed_form_bav0(poly.ctx)
    for n in range(4, 13):
        assert recurrence_step(closed_form_bav0(ModulusContext(n - 1))) == closed_form_bav0(ModulusContext(n))


def test_ancestor_counts_for_six():
    counts = {p.as_tuple(): ancestor_count(p) for p in parental_pairs(N6)}
    assert counts == {(-2, 3): 1, (-2, 2): 2, (-1, 2): 4, (-1, 1): 8, (0, 1): 16, (0, 0): 1}
    assert len(enumerate_ancestors((-2, 2), N6)) == 2
    (only,) = enumerate_ancestors((0, 0), N6)
    assert only.as_tuple() == (0, 0, 1, 0, 0, 0)


@pytest.mark.parametrize("n", range(3, 21))
def test_ancestor_counts_sum(n):
    ctx = ModulusContext(n)
    assert sum(ancestor_count(p) for p in parental_pairs(ctx)) == 2 ** (n - 1)


@pytest.mark.parametrize("n", range(3, 13))
def test_ancestor_families_partition_the_ancestors(n):
    ctx = ModulusContext(n)
    seen = set()
    for family in ancestor_families(ctx):
        members = family.members()
        assert len(members) == family.count
        assert seen.isdisjoint(members)
        seen.update(members)
        for v in members:
            assert is_ancestor(btoi(v))
    ancestors = {v for v in all_vectors(ctx, SIGNED) if is_ancestor(btoi(v))}
    assert seen == ancestors


def test_ancestor_enumeration_bound():
    big = ModulusContext(20)
    with pytest.raises(BoundExceeded):
        enumerate_ancestors((0, 1), big, bound=16)
    assert AncestorFamily(parental_pairs(big)[-1]).count == 1


def test_is_ancestor():
    n8 = ModulusContext(8)
    assert is_ancestor(Rhythm((2, 3, 7), n8))
    assert not is_ancestor(Rhythm((1, 3, 5), n8))


@pytest.mark.parametrize("n", range(3, 17))
def test_closed_form_is_balanced(n):
    poly = closed_form_bav0(ModulusContext(n))
    assert is_balanced(poly)
    assert ones_count(poly) == 2 ** (n - 1)


@pytest.mark.parametrize("n", range(3, 9))
def test_coordinate_polynomials(n):
    ctx = ModulusContext(n)
    for i in range(n):
        poly = coordinate_polynomial(ctx, i)
        for v in all_vectors(ctx):
            assert value_at(poly, v) == bav_component(i, v)


def test_blocks_have_disjoint_supports():
    product = f_interval((0, 1), N3) * f_zero(N3)
    assert product == AnfPoly.zero(N3, SIGNED, Basis.Y)
    for v in all_vectors(N3, SIGNED):
        assert value_at(product, v) == 0
