"""JSON and CSV serialization for sweep reports and per-n tables."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence

import numpy as np

from .evaluate import RangeEvaluation
from .verify import AssertionReport

TABULATE_HEADER = ("n", "assertion", "kernel", "lhs", "rhs", "slack", "exact")
SUMMARY_HEADER = (
    "assertion", "kernels", "lo", "hi", "checked", "skipped", "violation_count",
    "min_slack_n", "min_slack", "equality_count",
)


def fmt_number(x) -> str:
    """Shortest round-trip text for floats (at most 17 significant digits), plain ints otherwise."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def dumps(reports: AssertionReport | Sequence[AssertionReport]) -> str:
    """One report serializes to an object, several to an array of objects."""
    if isinstance(reports, AssertionReport):
        payload = reports.to_dict()
    else:
        payload = [r.to_dict() for r in reports]
    return json.dumps(payload, indent=2) + "\n"


def loads(text: str) -> AssertionReport | list[AssertionReport]:
    data = json.loads(text)
    if isinstance(data, list):
        return [AssertionReport.from_dict(d) for d in data]
    return AssertionReport.from_dict(data)


def _writer(buf) -> csv.writer:
    return csv.writer(buf, lineterminator="\n")


def summary_csv(reports: Iterable[AssertionReport]) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(SUMMARY_HEADER)
    for r in reports:
        ms = r.min_slack or {}
        w.writerow([
            r.assertion.lower(), "+".join(r.kernels), r.range[0], r.range[1], r.checked, r.skipped,
            r.violation_count, ms.get("n", ""), fmt_number(ms["slack"]) if ms else "", r.equality_count,
        ])
    return buf.getvalue()


def tabulate_rows(ev: RangeEvaluation) -> Iterable[list[str]]:
    """CSV rows for every checked n of one evaluated block."""
    aid = ev.plan.assertion.lower()
    kid = "+".join(ev.plan.kernel_ids)
    exact = fmt_number(ev.exact)
    for i in np.flatnonzero(ev.checked).tolist():
        yield [str(ev.lo + i), aid, kid, fmt_number(ev.lhs[i]), fmt_number(ev.rhs[i]), fmt_number(ev.slack[i]), exact]


def tabulate_csv(evaluations: Iterable[RangeEvaluation], out) -> None:
    w = _writer(out)
    w.writerow(TABULATE_HEADER)
    for ev in evaluations:
        w.writerows(tabulate_rows(ev))
