from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .anf import AnfPoly, Basis, ones_count, to_text, truth_table
from .boolvec import BoolVec, Convention, all_vectors, bav, btoi, btr, rtob
from .config import Settings
from .errors import BoundExceeded, InvalidRhythm
from .modular import ModulusContext
from .rhythm import (
    enumerate_rhythms,
    iav,
    is_proper,
    jumping_number,
    pr_i,
    rav,
    rav_signed,
    rot,
    tr,
)
from .theory import (
    ancestor_count,
    ancestor_families,
    bav0_table,
    brute_force_parental_pairs,
    brute_force_parental_pairs_nonneg,
    closed_form_bav0,
    enumerated_bav0,
    parental_pairs,
    parental_pairs_nonneg,
    recurrence_bav0,
    recurrence_step,
)

logger = logging.getLogger(__name__)


class Check(str, Enum):
    BALANCED = "balanced"
    CYCLICITY = "cyclicity"
    CLOSED_FORM = "closed-form"
    RECURRENCE = "recurrence"
    PARENTAL = "parental"
    ANCESTORS = "ancestors"
    CLOSURE = "closure"
    COMMUTE = "commute"


@dataclass(slots=True)
class VerificationReport:
    check: str
    n: int
    passed: bool
    counterexample: Optional[Dict[str, Any]] = None
    counts: Dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0

    def as_record(self, timings: bool = False) -> Dict[str, Any]:
        record: Dict[str, Any] = {
            "check": self.check,
            "n": self.n,
            "passed": self.passed,
            "counts": dict(self.counts),
        }
        if self.counterexample is not None:
            record["counterexample"] = self.counterexample
        if timings:
            record["elapsed"] = round(self.elapsed, 4)
        return record


class _Failure(Exception):
    def __init__(self, **counterexample: Any):
        super().__init__(counterexample)
        self.counterexample = counterexample


def _expect(condition: bool, **counterexample: Any) -> None:
    if not condition:
        raise _Failure(**counterexample)


def _attempt(operation: Callable[[], Any], **counterexample: Any) -> Any:
    """Run operation, turning a rejected rhythm into a counterexample."""

    try:
        return operation()
    except InvalidRhythm as exc:
        raise _Failure(error=str(exc), **counterexample) from None


def _first_difference(left: int, right: int) -> Optional[int]:
    diff = left ^ right
    return None if diff == 0 else (diff & -diff).bit_length() - 1


def _poly_diff(left: AnfPoly, right: AnfPoly) -> Dict[str, str]:
    return {
        "only_left": to_text(AnfPoly(left.terms - right.terms, left.ctx, left.index_set, left.basis)),
        "only_right": to_text(AnfPoly(right.terms - left.terms, right.ctx, right.index_set, right.basis)),
    }


# ----------------------------------------------------------------------
# Checks, one N at a time
# ----------------------------------------------------------------------
def _check_balanced(ctx: ModulusContext, settings: Settings) -> Dict[str, int]:
    poly = closed_form_bav0(ctx)
    ones = ones_count(poly, settings.balanced_bound)
    expected = 1 << (ctx.n - 1)
    _expect(ones == expected, ones=ones, expected=expected, polynomial=to_text(poly))
    return {"ones": ones}


def _check_cyclicity(ctx: ModulusContext, settings: Settings) -> Dict[str, int]:
    n = ctx.n
    checked = 0
    for v in all_vectors(ctx):
        shifted = btr(v)
        image = bav(v)
        _expect(bav(shifted) == btr(image), vector=str(v), property="bav(btr(v)) == btr(bav(v))")
        shifted_image = bav(shifted)
        for i in range(n):
            _expect(
                shifted_image.bit(i) == image.bit((i - 1) % n),
                vector=str(v),
                coordinate=i,
                property="Bav^i(btr(v)) == Bav^(i-1)(v)",
            )
        checked += 1
    return {"vectors": checked}


def _check_closed_form(ctx: ModulusContext, settings: Settings) -> Dict[str, int]:
    closed = closed_form_bav0(ctx)
    derived = enumerated_bav0(ctx, Basis.Y, settings.enumerate_bound)
    if closed != derived:
        # The y-basis table is indexed by complemented vectors.
        x = _first_difference(truth_table(closed), truth_table(derived))
        witness = BoolVec(x, ctx, Convention.SIGNED).complement() if x is not None else None
        raise _Failure(vector=str(witness), **_poly_diff(closed, derived))
    # Bav(v)_0 = 1 exactly when 0 is an onset of Rav(BtoI(v)).
    table = bav0_table(ctx, settings.enumerate_bound)
    for v in all_vectors(ctx):
        _expect(
            ((table >> v.bits) & 1) == (0 in rav(btoi(v)).values),
            vector=str(v),
            property="Bav^0(v) = 1 iff 0 in Rav(BtoI(v))",
        )
    return {"terms": len(closed), "ones": table.bit_count()}


def _check_recurrence(ctx: ModulusContext, settings: Settings) -> Dict[str, int]:
    closed = closed_form_bav0(ctx)
    if ctx.n > 3:
        stepped = recurrence_step(closed_form_bav0(ModulusContext(ctx.n - 1)))
        if stepped != closed:
            raise _Failure(source="step from closed form", **_poly_diff(stepped, closed))
    chained = recurrence_bav0(ctx)
    if chained != closed:
        raise _Failure(source="chain from N=3", **_poly_diff(chained, closed))
    return {"terms": len(closed)}


def _check_parental(ctx: ModulusContext, settings: Settings) -> Dict[str, int]:
    pairs = parental_pairs(ctx)
    found = {p.as_tuple() for p in pairs}
    brute = brute_force_parental_pairs(ctx)
    _expect(len(pairs) == ctx.n, pairs=[str(p) for p in pairs], expected_count=ctx.n)
    _expect(found == brute, missing=sorted(brute - found), extra=sorted(found - brute))
    nonneg = set(parental_pairs_nonneg(ctx))
    brute_nonneg = brute_force_parental_pairs_nonneg(ctx)
    _expect(
        nonneg == brute_nonneg,
        missing=sorted(brute_nonneg - nonneg),
        extra=sorted(nonneg - brute_nonneg),
        index_set="nonneg",
    )
    return {"pairs": len(pairs)}


def _check_ancestors(ctx: ModulusContext, settings: Settings) -> Dict[str, int]:
    seen: Dict[int, str] = {}
    total = 0
    union_table = 0
    for family in ancestor_families(ctx):
        members = family.members(settings.ancestor_bound)
        _expect(len(members) == ancestor_count(family.pair), pair=str(family.pair), size=len(members))
        member_table = 0
        for v in members:
            _expect(v.bits not in seen, vector=str(v), pairs=[seen.get(v.bits), str(family.pair)])
            seen[v.bits] = str(family.pair)
            _expect(0 in rav_signed(btoi(v)).values, vector=str(v), pair=str(family.pair))
            member_table |= 1 << v.complement().bits
        indicator = truth_table(family.indicator())
        x = _first_difference(indicator, member_table)
        _expect(x is None, pair=str(family.pair), vector=str(BoolVec(x or 0, ctx, Convention.SIGNED).complement()))
        union_table |= member_table
        total += len(members)
    expected = 1 << (ctx.n - 1)
    _expect(total == expected, total=total, expected=expected)
    # Every vector where Bav^0 is 1 is an ancestor and conversely.
    table = bav0_table(ctx, settings.ancestor_bound)
    for bits in range(1 << ctx.n):
        signed = BoolVec(bits, ctx).to_signed()
        is_member = (union_table >> signed.complement().bits) & 1
        _expect(is_member == ((table >> bits) & 1), vector=str(BoolVec(bits, ctx)))
    return {"families": ctx.n, "ancestors": total}


def _check_closure(ctx: ModulusContext, settings: Settings) -> Dict[str, int]:
    checked = 0
    for r in enumerate_rhythms(ctx):
        averaged = _attempt(lambda: rav(r), rhythm=str(r), property="Rav preserves onset count")
        _expect(rtob(rot(r)) == rtob(r), rhythm=str(r), property="RtoB(rot(a)) == RtoB(a)")
        if len(r) >= 1:
            size = len(r)
            _expect(
                jumping_number(rot(r)) == (jumping_number(r) + 1) % size,
                rhythm=str(r),
                property="j(rot(a)) == j(a) + 1",
            )
            representative = pr_i(r)
            _expect(jumping_number(representative) == 0, rhythm=str(r), property="pr_I lands in I_N")
            image = _attempt(lambda: iav(representative), rhythm=str(r), property="Iav lands in I_N")
            _expect(
                image == pr_i(averaged),
                rhythm=str(r),
                property="Iav(pr_I(a)) == pr_I(Rav(a))",
            )
            if size >= 2 and not is_proper(representative):
                _expect(
                    rav(representative).values[-1] < representative.values[0],
                    rhythm=str(representative),
                    property="improper: last onset of Rav(a) < a_0",
                )
        checked += 1
    return {"rhythms": checked}


def _check_commute(ctx: ModulusContext, settings: Settings) -> Dict[str, int]:
    checked = 0
    for r in enumerate_rhythms(ctx):
        _expect(rot(rav(r)) == rav(rot(r)), rhythm=str(r), property="rot o Rav == Rav o rot")
        _expect(tr(rav(r)) == rav(tr(r)), rhythm=str(r), property="tr o Rav == Rav o tr")
        _expect(btr(rtob(r)) == rtob(tr(r)), rhythm=str(r), property="Btr o RtoB == RtoB o tr")
        checked += 1
    return {"rhythms": checked}


_CHECKS: Dict[Check, Tuple[Callable[[ModulusContext, Settings], Dict[str, int]], Optional[str]]] = {
    Check.BALANCED: (_check_balanced, "balanced_bound"),
    Check.CYCLICITY: (_check_cyclicity, "sweep_bound"),
    Check.CLOSED_FORM: (_check_closed_form, "enumerate_bound"),
    Check.RECURRENCE: (_check_recurrence, None),
    Check.PARENTAL: (_check_parental, None),
    Check.ANCESTORS: (_check_ancestors, "ancestor_bound"),
    Check.CLOSURE: (_check_closure, "sweep_bound"),
    Check.COMMUTE: (_check_commute, "sweep_bound"),
}


def bound_for(check: Check, settings: Settings) -> Optional[int]:
    attribute = _CHECKS[Check(check)][1]
    return None if attribute is None else getattr(settings, attribute)


def run_check(check: Check, n: int, settings: Optional[Settings] = None) -> VerificationReport:
    check = Check(check)
    settings = settings or Settings()
    bound = bound_for(check, settings)
    if bound is not None and n > bound:
        raise BoundExceeded(check.value, n, bound)
    runner = _CHECKS[check][0]
    started = time.perf_counter()
    try:
        counts = runner(ModulusContext(n), settings)
        report = VerificationReport(check.value, n, True, counts=counts)
    except _Failure as failure:
        report = VerificationReport(check.value, n, False, counterexample=failure.counterexample)
    except InvalidRhythm as exc:
        report = VerificationReport(check.value, n, False, counterexample={"error": str(exc)})
    report.elapsed = time.perf_counter() - started
    logger.info("%s N=%d %s in %.3fs", check.value, n, "pass" if report.passed else "FAIL", report.elapsed)
    return report


def _run_item(item: Tuple[str, int, Dict[str, int]]) -> VerificationReport:
    check, n, settings = item
    return run_check(Check(check), n, Settings(**settings))


def run_checks(
    checks: Iterable[Check], ns: Sequence[int], settings: Optional[Settings] = None, jobs: Optional[int] = None
) -> List[VerificationReport]:
    """Run every (check, N) pair; reports come back sorted by N, then check name."""

    settings = settings or Settings()
    jobs = settings.jobs if jobs is None else jobs
    items = [(Check(check).value, n, settings.as_record()) for check in checks for n in ns]
    for check, n, _ in items:
        bound = bound_for(Check(check), settings)
        if bound is not None and n > bound:
            raise BoundExceeded(check, n, bound)
    logger.info("running %d verification items with %d job(s)", len(items), jobs)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_item, items))
    else:
        reports = [_run_item(item) for item in items]
    return sorted(reports, key=lambda r: (r.n, r.check))


def all_passed(reports: Iterable[VerificationReport]) -> bool:
    return all(report.passed for report in reports)
