import io
import json

from hypothesis import given, settings
from hypothesis import strategies as st

from extremal_arith import sweep
from extremal_arith.evaluate import evaluate_range, resolve
from extremal_arith.report import TABULATE_HEADER, dumps, fmt_number, loads, summary_csv, tabulate_csv

SCHEMA_KEYS = {"assertion", "kernels", "range", "checked", "skipped", "skip_reasons", "violations", "min_slack",
               "equality_witnesses", "diagnostics"}


@settings(max_examples=300)
@given(st.floats(allow_nan=False, allow_infinity=False))
def test_floats_round_trip(x):
    assert float(fmt_number(x)) == x


def test_fmt_number_forms():
    assert fmt_number(3) == "3"
    assert fmt_number(0.1) == "0.1"
    assert fmt_number(True) == "true"
    assert "," not in fmt_number(1234567.5)


def test_json_round_trip(table):
    reps = [sweep("a6", ["ratio2"], 3000, table=table), sweep("a2", ["ln_tau_over_p"], 3000, table=table),
            sweep("a8", ["sigma_k:2"], 3000, table=table)]
    for r in reps:
        assert loads(dumps(r)) == r
        assert SCHEMA_KEYS <= set(json.loads(dumps(r)))
    assert loads(dumps(reps)) == reps


def test_tabulate_csv(table):
    ev = evaluate_range(resolve("a7", ["ln_phi"]), 11, 13, table, top=13)
    buf = io.StringIO()
    tabulate_csv([ev], buf)
    lines = buf.getvalue().split("\n")
    assert lines[0] == ",".join(TABULATE_HEADER) == "n,assertion,kernel,lhs,rhs,slack,exact"
    row = lines[2].split(",")
    assert row[:3] == ["12", "a7", "ln_phi"]
    assert float(row[3]) == 0.6931471805599453 and float(row[4]) == 1.3862943611198906
    assert "\r" not in buf.getvalue()


def test_summary_csv(table):
    text = summary_csv([sweep("a6", ["ratio2"], 1000, table=table)])
    head, row, end = text.split("\n")
    assert end == ""
    assert row.startswith("a6,ratio2,2,1000,499,500,0,5,0.0,")
