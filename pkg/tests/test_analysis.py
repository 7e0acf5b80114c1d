import csv
import io
import json
from fractions import Fraction

import numpy as np
import pytest

from arithgames import analysis
from arithgames.analysis import (
    export_sequence, occurrence_report, ratio_report, reduce_display, reduced_options, scatter_svg,
    smallest_ratios,
)
from arithgames.engine import sg_table
from arithgames.errors import DomainError
from arithgames.rulesets import lookup

from .tables import REDUCED_TABLES, SALIQUANT_EVEN, SALIQUANT_EVEN_RATIOS, parse_options


def _nim(heaps, table):
    x = 0
    for h in heaps:
        x ^= table[h]
    return x


def test_bfile_example():
    out = export_sequence(sg_table("totative", 8), "bfile")
    assert out == b"1 0\n2 1\n3 2\n4 1\n5 3\n6 1\n7 4\n8 1\n"


def test_csv_and_json_lines_match_bfile():
    t = sg_table("divide-and-residue", 300)
    rows = list(csv.reader(io.StringIO(export_sequence(t, "csv").decode())))
    assert rows[0] == ["n", "sg"]
    assert [(int(a), int(b)) for a, b in rows[1:]] == list(t.items())
    recs = [json.loads(line) for line in export_sequence(t, "json-lines").decode().splitlines()]
    assert [(r["n"], r["sg"]) for r in recs] == list(t.items())
    assert export_sequence(t) == export_sequence(sg_table("divide-and-residue", 300))


def test_export_empty_table():
    rs = lookup("maliquot")
    empty = sg_table(rs, rs.domain_min - 1)
    assert export_sequence(empty, "csv") == b"n,sg\n"
    assert export_sequence(empty, "bfile") == b""
    with pytest.raises(ValueError):
        export_sequence(empty, "xml")


def test_occurrences_divide_and_residue():
    t = sg_table("divide-and-residue", 20_000)
    rep = occurrence_report(t)
    one = rep.occurrences[1]
    assert (one.count, one.first, one.last) == (3, 2, 25)
    assert sum(o.count for o in rep.occurrences.values()) == len(t)
    assert len(export_sequence(t).splitlines()) == len(t)
    assert rep.max_value == max(t.sequence()) and t[rep.argmax] == rep.max_value


def test_occurrences_complement_grundy():
    rep = occurrence_report(sg_table("complement-grundy", 2000))
    assert {12, 15, 20} <= set(rep.missing())
    assert "absent below max" in rep.summary()


def test_saliquant_even_ratios():
    t = sg_table("saliquant", 48)
    got = ratio_report(t, "even")
    assert [n for n, _ in got] == list(range(2, 49, 2))
    assert [str(r) for _, r in got] == SALIQUANT_EVEN_RATIOS
    assert dict(got)[6] == Fraction(1, 6) and dict(got)[18] == Fraction(2, 9)
    assert [t[n] for n in range(0, 49, 2)] == SALIQUANT_EVEN


def test_smallest_ratios():
    t = sg_table("saliquant", 48)
    assert smallest_ratios(t, 7, "even") == [(6, 1), (10, 2), (18, 4), (22, 5), (34, 8), (38, 9), (46, 11)]
    assert smallest_ratios(t, 3) == [(6, 1), (10, 2), (18, 4)]


def test_ratio_trend_blocks():
    trend = analysis.ratio_trend(sg_table("saliquant", 1000), blocks=5)
    assert len(trend) == 5 and trend[-1][0] == 1000


# the printed row lists a lone 2, which no division of 9 with k >= 2 reduces to
_ROW_MISPRINT = pytest.mark.xfail(strict=True, reason="printed option set for 9 has an unreachable 2")


@pytest.mark.parametrize("name,n", [
    pytest.param(name, n, marks=_ROW_MISPRINT if (name, n) == ("complement-grundy", 9) else ())
    for name in sorted(REDUCED_TABLES) for n in REDUCED_TABLES[name]
])
def test_reduced_tables(name, n):
    text, sg = REDUCED_TABLES[name][n]
    assert sg_table(name, n)[n] == sg
    assert set(reduced_options(name, n)) == parse_options(text)


def test_complement_grundy_nine_by_hand():
    # 4+4+1, 3+3+3, 2+2+2+2+1 and nine 1s
    assert set(reduced_options("complement-grundy", 9)) == {(3,), (1,)}


def test_reduce_display_examples():
    assert reduce_display((5, 5), "dividing") == ()
    assert reduce_display((1, 1), "dividing") == ()
    assert reduce_display((1, 1), "dividing", as_option=True) == (1,)
    assert reduce_display((3, 3, 2, 1), "divide-and-residue") == (2,)
    with pytest.raises(DomainError):
        reduce_display((2,), "saliquot")


def test_reduce_display_keeps_nim_sum():
    t = sg_table("divide-and-residue", 40)
    rng = np.random.default_rng(99)
    for _ in range(1000):
        heaps = tuple(sorted(rng.integers(1, 41, size=rng.integers(0, 9)).tolist(), reverse=True))
        assert _nim(reduce_display(heaps, "divide-and-residue"), t) == _nim(heaps, t)


def test_format_sum():
    assert analysis.format_sum((3, 2)) == "3+2"
    assert analysis.format_sum(()) == "0-sum"


def test_svg_is_deterministic(tmp_path):
    t = sg_table("saliquant", 300)
    a = scatter_svg(t, tmp_path / "a.svg")
    b = scatter_svg(sg_table("saliquant", 300))
    assert a == b == (tmp_path / "a.svg").read_text()
    assert a.startswith("<svg") and a.count("<circle") == len(t)


def test_svg_empty_table():
    text = scatter_svg(sg_table("maliquot", 0))
    assert "<circle" not in text and text.rstrip().endswith("</svg>")
