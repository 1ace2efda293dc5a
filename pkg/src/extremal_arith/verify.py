"""Range-sweep harness: runs an assertion over [2, N] and aggregates an AssertionReport."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import _backend
from .bounds import DEFAULT_POLICY, TolerancePolicy
from .errors import DomainError, RangeError
from .evaluate import SKIP_REASONS, Plan, RangeEvaluation, evaluate_range, resolve
from .kernels import get_kernel
from .oracle import brute_force_oracle  # noqa: F401  re-exported
from .primes import PrimeTable, get_table

logger = logging.getLogger(__name__)

CHUNK = 1 << 17
VIOLATION_CAP = 100
WITNESS_CAP = 1000


def _num(x):
    """numpy scalar -> plain int/float for reports."""
    return int(x) if isinstance(x, (np.integer, int)) else float(x)


@dataclass
class AssertionReport:
    """Aggregate of one sweep. Violation and witness lists are capped; their counts are exact."""

    assertion: str
    kernels: list[str]
    range: tuple[int, int]
    checked: int = 0
    skipped: int = 0
    skip_reasons: dict[str, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    violation_count: int = 0
    min_slack: dict | None = None
    equality_witnesses: list[int] = field(default_factory=list)
    equality_count: int = 0
    exact: bool = False
    diagnostics: dict[str, dict] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["range"] = list(self.range)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "AssertionReport":
        d = dict(d)
        d["range"] = tuple(d["range"])
        return cls(**d)


def _partial(ev: RangeEvaluation, policy: TolerancePolicy, violation_cap: int, witness_cap: int) -> AssertionReport:
    n = ev.n
    checked = ev.checked
    rep = AssertionReport(ev.plan.assertion, ev.plan.kernel_ids, (ev.lo, ev.hi), exact=ev.exact)
    rep.checked = int(checked.sum())
    rep.skipped = int(checked.size - rep.checked)
    for code, name in SKIP_REASONS.items():
        c = int((ev.skip == code).sum())
        if c:
            rep.skip_reasons[name] = c
    counted = checked & ev.enforced
    bad = np.flatnonzero(counted & ~ev.holds)
    rep.violation_count = int(bad.size)
    rep.violations = [
        {"n": int(n[i]), "lhs": _num(ev.lhs[i]), "rhs": _num(ev.rhs[i]), "slack": _num(ev.slack[i])}
        for i in bad[:violation_cap]
    ]
    idx = np.flatnonzero(counted)
    if idx.size:
        j = idx[int(np.argmin(ev.slack[idx]))]
        rep.min_slack = {"n": int(n[j]), "slack": _num(ev.slack[j])}
    if ev.exact:
        eq = np.flatnonzero(counted & (ev.slack == 0))
    else:
        eq = np.flatnonzero(counted & (np.abs(ev.slack) <= policy.abs))
    rep.equality_count = int(eq.size)
    rep.equality_witnesses = n[eq[:witness_cap]].tolist()
    for name, (kind, arr) in ev.diagnostics.items():
        if np.isnan(arr).all():
            continue
        j = int(np.nanargmax(arr) if kind == "max" else np.nanargmin(arr))
        rep.diagnostics[name] = {"value": float(arr[j]), "n": int(n[j])}
    return rep


def _better(kind: str, a: dict, b: dict) -> dict:
    # ties go to the smaller n so the merge is order independent
    if a["value"] == b["value"]:
        return a if a["n"] < b["n"] else b
    if kind.startswith("max"):
        return a if a["value"] > b["value"] else b
    return a if a["value"] < b["value"] else b


def merge_reports(parts: Sequence[AssertionReport], violation_cap: int = VIOLATION_CAP,
                  witness_cap: int = WITNESS_CAP) -> AssertionReport:
    """Combine partial reports of disjoint blocks. Associative and order independent."""
    parts = sorted(parts, key=lambda r: r.range[0])
    first = parts[0]
    out = AssertionReport(first.assertion, list(first.kernels),
                          (min(p.range[0] for p in parts), max(p.range[1] for p in parts)),
                          exact=all(p.exact for p in parts))
    for p in parts:
        out.checked += p.checked
        out.skipped += p.skipped
        for k, v in p.skip_reasons.items():
            out.skip_reasons[k] = out.skip_reasons.get(k, 0) + v
        out.violation_count += p.violation_count
        out.violations.extend(p.violations)
        out.equality_count += p.equality_count
        out.equality_witnesses.extend(p.equality_witnesses)
        if p.min_slack is not None:
            m = out.min_slack
            if m is None or p.min_slack["slack"] < m["slack"] or (
                p.min_slack["slack"] == m["slack"] and p.min_slack["n"] < m["n"]
            ):
                out.min_slack = dict(p.min_slack)
        for name, d in p.diagnostics.items():
            cur = out.diagnostics.get(name)
            out.diagnostics[name] = dict(d) if cur is None else _better(name, cur, d)
    out.violations = sorted(out.violations, key=lambda v: v["n"])[:violation_cap]
    out.equality_witnesses = sorted(out.equality_witnesses)[:witness_cap]
    out.skip_reasons = dict(sorted(out.skip_reasons.items()))
    out.diagnostics = dict(sorted(out.diagnostics.items()))
    return out


def _blocks(lo: int, hi: int, chunk: int) -> list[tuple[int, int]]:
    return [(s, min(s + chunk - 1, hi)) for s in range(lo, hi + 1, chunk)]


def _prepare(assertion, kernels, N, table):
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    plan = assertion if isinstance(assertion, Plan) else resolve(assertion, kernels)
    if table is None:
        table = get_table(N)
    elif table.limit < N:
        raise RangeError(f"table limit {table.limit} < N={N}")
    return plan, table


def sweep(
    assertion,
    kernels: Sequence = (),
    N: int = 10**4,
    policy: TolerancePolicy = DEFAULT_POLICY,
    workers: int = 1,
    table: PrimeTable | None = None,
    chunk: int = CHUNK,
    violation_cap: int = VIOLATION_CAP,
    witness_cap: int = WITNESS_CAP,
) -> AssertionReport:
    """Check ``assertion`` for every n in [2, N].

    Blocks of ``chunk`` consecutive n are evaluated independently (each starts
    its sup tracker with one full scan) and merged in ascending order, so the
    report does not depend on ``workers``.

    Raises:
        MisuseError, UnknownKernelError: from :func:`resolve`.
        RangeError: ``table`` smaller than N.
    """
    plan, table = _prepare(assertion, kernels, N, table)
    blocks = _blocks(2, N, chunk)
    logger.debug("sweep %s %s N=%d blocks=%d backend=%s", plan.assertion, plan.kernel_ids, N, len(blocks), _backend.NAME)

    def run(block):
        ev = evaluate_range(plan, block[0], block[1], table, policy, top=N)
        return _partial(ev, policy, violation_cap, witness_cap)

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, blocks))
    else:
        parts = [run(b) for b in blocks]
    return merge_reports(parts, violation_cap, witness_cap)


def find_extremal(
    assertion,
    kernels: Sequence = (),
    N: int = 10**4,
    policy: TolerancePolicy = DEFAULT_POLICY,
    table: PrimeTable | None = None,
    chunk: int = CHUNK,
) -> list[int]:
    """All n in [2, N] whose slack is within ``policy.abs`` of the minimum slack, ascending."""
    plan, table = _prepare(assertion, kernels, N, table)
    cands: list[tuple[int, float]] = []
    best = None
    for lo, hi in _blocks(2, N, chunk):
        ev = evaluate_range(plan, lo, hi, table, policy, top=N)
        idx = np.flatnonzero(ev.checked & ev.enforced)
        if not idx.size:
            continue
        s = ev.slack[idx].astype(np.float64)
        m = float(s.min())
        sel = idx[s <= m + policy.abs]
        cands.extend(zip(ev.n[sel].tolist(), ev.slack[sel].astype(np.float64).tolist()))
        best = m if best is None else min(best, m)
    if best is None:
        return []
    return [n for n, s in cands if s <= best + policy.abs]


def theta_lemma(N: int, table: PrimeTable | None = None) -> dict:
    """Largest theta(p_omega(n)) - ln n over [2, N], and largest p_omega(n) / ln n."""
    rep = sweep("A2", ["inv_p_minus_1"], N, table=table)
    return {
        "max_theta_excess": rep.diagnostics["max_theta_excess"],
        "max_p_omega_over_ln_n": rep.diagnostics["max_p_omega_over_ln_n"],
    }


def estimate_ordering(N: int, table: PrimeTable | None = None, policy: TolerancePolicy = DEFAULT_POLICY) -> AssertionReport:
    """ln phi(n) <= omega(n) * sup_{x<=n} ln phi(x) for n in [3, N].

    The left side is the additive bound through phi(n); the right is the
    sup-based bound for the same strongly additive sum.
    """
    if N < 3:
        raise DomainError("ordering check needs N >= 3")
    k = get_kernel("ln_phi")
    if table is None:
        table = get_table(N)
    parts = []
    for lo, hi in _blocks(3, N, CHUNK):
        a1 = evaluate_range(resolve("A1", [k]), lo, hi, table, policy, top=N)
        a7 = evaluate_range(resolve("A7", ["ln_phi"]), lo, hi, table, policy, top=N)
        lhs = a7.rhs
        rhs = a1.rhs
        slack = rhs - lhs
        holds = slack >= -(policy.rel * np.maximum(1.0, np.abs(rhs)) + policy.abs)
        ev = RangeEvaluation(
            Plan("ORDER", (k,)), lo, hi, lhs, rhs, slack, np.ones(slack.size, np.int8), holds,
            np.zeros(slack.size, np.int8), np.ones(slack.size, bool), False, "ORDER", {},
        )
        parts.append(_partial(ev, policy, VIOLATION_CAP, WITNESS_CAP))
    return merge_reports(parts)
