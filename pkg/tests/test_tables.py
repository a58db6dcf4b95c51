import csv
import io
import json
from pathlib import Path

import pytest

from rhythmbool.anf import AnfPoly
from rhythmbool.config import Settings
from rhythmbool.errors import BoundExceeded, ParseError
from rhythmbool.tables import TABLE_IDS, build_table, render, render_csv, render_json, render_text


def test_truth_table_rows():
    table = build_table("4.1")
    assert [row["P"] for row in table.rows] == [0, 0, 1, 1, 0, 1, 1, 1]
    assert table.rows[2]["term"] == "(1+x)y(1+z)"
    assert table.rows[0]["term"] == ""
    assert table.notes == ["B_P = y+xz+xyz"]


def test_boolean_averages_rows():
    rows = {row["v"]: row for row in build_table("4.2").rows}
    assert len(rows) == 8
    assert rows["(0,1,1)"]["BtoI(v)"] == "(1,2)"
    assert rows["(0,1,1)"]["Iav(BtoI(v))"] == "(0,1)"
    assert rows["(0,1,1)"]["Bav(v)"] == "(1,1,0)"
    assert rows["(1,0,1)"]["Bav(v)"] == "(0,1,1)"


@pytest.mark.parametrize("table_id,terms", [("4.3", [3, 7, 15]), ("4.4", [4, 6, 8, 10]), ("4.5", [4, 6, 8, 10])])
def test_polynomial_tables(table_id, terms):
    table = build_table(table_id)
    assert [row["terms"] for row in table.rows] == terms


def test_parental_pair_table():
    last = build_table("5.1").rows[-1]
    assert last == {"N": 6, "Par_N": "(0,0), (0,1), (-1,1), (-1,2), (-2,2), (-2,3)", "count": 6}


def test_ancestor_table():
    table = build_table("5.2")
    assert [row["pair"] for row in table.rows] == ["(-2,3)", "(-2,2)", "(-1,2)", "(-1,1)", "(0,1)", "(0,0)"]
    assert [row["count"] for row in table.rows] == [1, 2, 4, 8, 16, 1]
    assert [row["name"] for row in table.rows] == [f"({k})" for k in range(1, 7)]
    assert table.rows[0]["ancestors"] == "{e_[-2,3]}"
    assert table.notes == ["Total 32 (= 2^5)"]


def test_text_rendering():
    text = render_text(build_table("5.1"))
    lines = text.splitlines()
    assert lines[0] == "Table 5.1. Parental pairs of zero"
    assert lines[1].split(" | ")[0].strip() == "N"
    assert text.endswith("\n")


def test_csv_rendering():
    rows = list(csv.reader(io.StringIO(render_csv(build_table("4.5")))))
    assert rows[0] == ["N", "Bav_N^0", "terms"]
    assert rows[1] == ["3", "1+y_1+y_{-1}y_0+y_{-1}y_1", "4"]


def test_json_rendering():
    record = json.loads(render_json(build_table("4.5")))
    assert record["table"] == "4.5"
    first = AnfPoly.from_json(record["rows"][0]["Bav_N^0"])
    assert str(first) == "1+y_1+y_{-1}y_0+y_{-1}y_1"
    assert record["notes"]


@pytest.mark.parametrize("table_id", TABLE_IDS)
def test_every_table_renders(table_id):
    table = build_table(table_id)
    for fmt in ("text", "json", "csv"):
        assert render(table, fmt)


def test_unknown_table_and_format():
    with pytest.raises(ParseError):
        build_table("9.9")
    with pytest.raises(ParseError):
        render(build_table("5.1"), "xml")


def test_polynomial_table_matches_golden_files():
    golden = json.loads((Path(__file__).parent / "golden" / "bav0_y.json").read_text(encoding="utf-8"))
    for row in build_table("4.5").rows:
        assert row["Bav_N^0"] == AnfPoly.from_json(golden[str(row["N"])])


def test_polynomial_tables_respect_enumeration_bound():
    tight = Settings(enumerate_bound=5)
    with pytest.raises(BoundExceeded):
        build_table("4.5", tight)
    assert [row["N"] for row in build_table("4.3", tight).rows] == [3, 4, 5]
