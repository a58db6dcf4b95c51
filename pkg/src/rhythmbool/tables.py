from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .anf import AnfPoly, Basis, from_truth_table, from_truth_table_dnf, term_count, to_text
from .boolvec import BoolVec, bav, btoi
from .config import Settings
from .errors import ParseError
from .modular import ModulusContext
from .rhythm import iav
from .theory import AncestorFamily, ancestor_families, enumerated_bav0, parental_pairs

TABLE_IDS: Tuple[str, ...] = ("4.1", "4.2", "4.3", "4.4", "4.5", "5.1", "5.2")
FORMATS: Tuple[str, ...] = ("text", "json", "csv")


@dataclass(slots=True)
class Table:
    id: str
    title: str
    columns: Sequence[str]
    rows: List[Dict[str, Any]]
    notes: List[str] = field(default_factory=list)

    def as_record(self) -> Dict[str, Any]:
        return {
            "table": self.id,
            "title": self.title,
            "columns": list(self.columns),
            "rows": [{key: _json_cell(row[key]) for key in self.columns} for row in self.rows],
            "notes": list(self.notes),
        }


def _json_cell(value: Any) -> Any:
    if isinstance(value, AnfPoly):
        return value.to_json()
    return value


def _text_cell(value: Any) -> str:
    if isinstance(value, AnfPoly):
        return to_text(value)
    return str(value)


# ----------------------------------------------------------------------
# Builders
# ----------------------------------------------------------------------
def _or_and(v: BoolVec) -> int:
    x, y, z = v.as_tuple()
    return (x | y) & (y | z)


def _literal(name: str, bit: int) -> str:
    return name if bit else f"(1+{name})"


def example_truth_table() -> Table:
    ctx = ModulusContext(3)
    names = ("x", "y", "z")
    rows = []
    for number, (x, y, z) in enumerate(product((0, 1), repeat=3), start=1):
        value = _or_and(BoolVec.from_bits((x, y, z), ctx))
        term = "".join(_literal(name, bit) for name, bit in zip(names, (x, y, z))) if value else ""
        rows.append({"row": f"({number})", "x": x, "y": y, "z": z, "x|y": x | y, "y|z": y | z, "P": value, "term": term})
    poly = from_truth_table(_or_and, ctx)
    if poly != from_truth_table_dnf(_or_and, ctx):
        raise AssertionError("Möbius and DNF derivations disagree on (x|y)&(y|z)")
    return Table(
        "4.1",
        "Truth table for P = (x or y) and (y or z)",
        ("row", "x", "y", "z", "x|y", "y|z", "P", "term"),
        rows,
        notes=[f"B_P = {to_text(poly, names)}"],
    )


def boolean_averages(n: int = 3) -> Table:
    ctx = ModulusContext(n)
    rows = []
    for bits in product((0, 1), repeat=n):
        v = BoolVec.from_bits(bits, ctx)
        onsets = btoi(v)
        rows.append({"v": str(v), "BtoI(v)": str(onsets), "Iav(BtoI(v))": str(iav(onsets)), "Bav(v)": str(bav(v))})
    return Table("4.2", f"Boolean averages of {n}-dimensional vectors", ("v", "BtoI(v)", "Iav(BtoI(v))", "Bav(v)"), rows)


def bav0_polynomials(table_id: str, basis: Basis, ns: Sequence[int], settings: Optional[Settings] = None) -> Table:
    bound = (settings or Settings()).enumerate_bound
    rows = []
    for n in ns:
        poly = enumerated_bav0(ModulusContext(n), basis, bound)
        rows.append({"N": n, "Bav_N^0": poly, "terms": term_count(poly)})
    notes = []
    if basis is Basis.Y and 6 in ns:
        notes.append("N=6 is the computed polynomial; its degree-4 terms are y_{-2}y_{-1}y_0y_1 and y_{-1}y_0y_1y_2")
    labels = {Basis.V: "v_i", Basis.W: "w_i = v_i + 1", Basis.Y: "y_j, j in Z_N,±"}
    return Table(table_id, f"Bav_N^0 in variables {labels[basis]}", ("N", "Bav_N^0", "terms"), rows, notes)


def parental_pair_table(ns: Sequence[int] = (3, 4, 5, 6)) -> Table:
    rows = []
    for n in ns:
        pairs = parental_pairs(ModulusContext(n))
        rows.append({"N": n, "Par_N": ", ".join(str(p) for p in pairs), "count": len(pairs)})
    return Table("5.1", "Parental pairs of zero", ("N", "Par_N", "count"), rows)


def _family_members(family: AncestorFamily) -> str:
    if family.pair.is_zero:
        return "{" + str(BoolVec.from_support([0], family.ctx).to_signed()) + "}"
    a, b = family.pair.as_tuple()
    if family.count == 1:
        return f"{{e_[{a},{b}]}}"
    return f"pr_[{a},{b}]^-1(e_[{a},{b}])"


def ancestor_table(n: int = 6) -> Table:
    ctx = ModulusContext(n)
    families = ancestor_families(ctx)
    ordered = sorted((f for f in families if not f.pair.is_zero), key=lambda f: -f.pair.width)
    ordered += [f for f in families if f.pair.is_zero]
    rows = []
    for number, family in enumerate(ordered, start=1):
        rows.append(
            {
                "name": f"({number})",
                "pair": str(family.pair),
                "ancestors": _family_members(family),
                "indicator": family.indicator(),
                "count": family.count,
            }
        )
    total = sum(row["count"] for row in rows)
    return Table(
        "5.2",
        f"Families of ancestors of zero for N={n}",
        ("name", "pair", "ancestors", "indicator", "count"),
        rows,
        notes=[f"Total {total} (= 2^{n - 1})"],
    )


_BUILDERS: Dict[str, Callable[[Settings], Table]] = {
    "4.1": lambda settings: example_truth_table(),
    "4.2": lambda settings: boolean_averages(),
    "4.3": lambda settings: bav0_polynomials("4.3", Basis.V, (3, 4, 5), settings),
    "4.4": lambda settings: bav0_polynomials("4.4", Basis.W, (3, 4, 5, 6), settings),
    "4.5": lambda settings: bav0_polynomials("4.5", Basis.Y, (3, 4, 5, 6), settings),
    "5.1": lambda settings: parental_pair_table(),
    "5.2": lambda settings: ancestor_table(),
}


def build_table(table_id: str, settings: Optional[Settings] = None) -> Table:
    try:
        builder = _BUILDERS[table_id]
    except KeyError:
        raise ParseError(f"Unknown table '{table_id}'; choose from {', '.join(TABLE_IDS)}") from None
    return builder(settings or Settings())


# ----------------------------------------------------------------------
# Rendering
# ----------------------------------------------------------------------
def render_text(table: Table) -> str:
    cells = [[_text_cell(row[key]) for key in table.columns] for row in table.rows]
    widths = [max([len(col)] + [len(line[i]) for line in cells]) for i, col in enumerate(table.columns)]
    lines = [f"Table {table.id}. {table.title}"]
    lines.append(" | ".join(col.ljust(w) for col, w in zip(table.columns, widths)).rstrip())
    lines.append("-+-".join("-" * w for w in widths))
    for line in cells:
        lines.append(" | ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())
    lines.extend(table.notes)
    return "\n".join(lines) + "\n"


def render_csv(table: Table) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_text_cell(row[key]) for key in table.columns])
    return buffer.getvalue()


def render_json(table: Table) -> str:
    return json.dumps(table.as_record(), indent=2) + "\n"


_RENDERERS: Dict[str, Callable[[Table], str]] = {"text": render_text, "json": render_json, "csv": render_csv}


def render(table: Table, fmt: str = "text") -> str:
    if fmt not in _RENDERERS:
        raise ParseError(f"Unknown format '{fmt}'; choose from {', '.join(FORMATS)}")
    return _RENDERERS[fmt](table)
