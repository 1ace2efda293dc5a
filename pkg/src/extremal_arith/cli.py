"""Command-line front end: verify, tabulate, extremal and paper-examples.

Exit codes: 0 when every enforced check holds, 1 when any check is violated,
2 on usage or configuration errors (bad flags, misuse, unknown kernels).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from . import report
from .bounds import TolerancePolicy
from .errors import ExtremalArithError
from .evaluate import evaluate_range, normalize_assertion, resolve
from .worked_examples import run_examples
from .primes import get_table
from .verify import CHUNK, AssertionReport, find_extremal, sweep

FORMATS = ("json", "csv")
GROUPED = ("A5C", "A6C")


class UsageError(Exception):
    """Configuration problem detected after argparse succeeded."""


@dataclass
class RunConfig:
    command: str
    assertions: list[str] = field(default_factory=list)
    kernels: list[str] = field(default_factory=list)
    min_n: int = 2
    max_n: int = 10**4
    workers: int = 1
    policy: TolerancePolicy = field(default_factory=TolerancePolicy)
    out: Path | None = None
    format: str = "json"


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="extremal-arith", description=__doc__.splitlines()[0])
    ap.add_argument("--log-level", default="WARNING", help="logging level for diagnostics on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, default_max: int, formats=True) -> None:
        p.add_argument("--assertion", action="append", default=[], help="a1..a8, a5c, a6c, maxord (repeatable)")
        p.add_argument("--kernel", action="append", default=[], help="kernel id, e.g. ln_phi or sigma_k:2 (repeatable)")
        p.add_argument("--max", dest="max_n", type=int, default=default_max, help="largest n to check")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--rel-tol", type=float, default=1e-12)
        p.add_argument("--abs-tol", type=float, default=1e-12)
        p.add_argument("--out", type=Path, default=None, help="output file; stdout when omitted")
        if formats:
            p.add_argument("--format", choices=FORMATS, default=None)

    common(sub.add_parser("verify", help="sweep assertions over [2, max] and write reports"), 10**4)
    tab = sub.add_parser("tabulate", help="per-n CSV of lhs, rhs and slack")
    common(tab, 10**3)
    tab.add_argument("--min", dest="min_n", type=int, default=2, help="smallest n to tabulate")
    common(sub.add_parser("extremal", help="n attaining the minimum slack"), 10**4)
    common(sub.add_parser("paper-examples", help="recompute each worked example"), 10**4, formats=False)
    return ap


def _config(ns: argparse.Namespace) -> RunConfig:
    fmt = getattr(ns, "format", None)
    if ns.out is not None and ns.out.suffix.lower().lstrip(".") in FORMATS:
        inferred = ns.out.suffix.lower().lstrip(".")
        if fmt is not None and fmt != inferred:
            raise UsageError(f"--format {fmt} does not match output file {ns.out}")
        fmt = inferred
    fmt = fmt or ("csv" if ns.command == "tabulate" else "json")
    cfg = RunConfig(
        command=ns.command,
        assertions=[normalize_assertion(a) for a in ns.assertion],
        kernels=list(ns.kernel),
        min_n=getattr(ns, "min_n", 2),
        max_n=ns.max_n,
        workers=ns.workers,
        policy=TolerancePolicy(ns.rel_tol, ns.abs_tol),
        out=ns.out,
        format=fmt,
    )
    if cfg.max_n < 2:
        raise UsageError(f"--max must be >= 2, got {cfg.max_n}")
    if cfg.workers < 1:
        raise UsageError("--workers must be >= 1")
    if cfg.policy.rel < 0 or cfg.policy.abs < 0:
        raise UsageError("tolerances must be non-negative")
    if cfg.command in ("verify", "tabulate", "extremal") and not cfg.assertions:
        raise UsageError("at least one --assertion is required")
    return cfg


def _jobs(cfg: RunConfig) -> list[tuple[str, list[str]]]:
    """Pair assertions with kernels: corollaries take all kernels at once, others one kernel per job."""
    jobs = []
    for a in cfg.assertions:
        if a == "MAXORD":
            jobs.append((a, []))
        elif a in GROUPED:
            jobs.append((a, list(cfg.kernels)))
        elif not cfg.kernels:
            raise UsageError(f"{a.lower()} needs at least one --kernel")
        else:
            jobs.extend((a, [k]) for k in cfg.kernels)
    for a, ks in jobs:
        resolve(a, ks)  # reject misuse before any sweep runs
    return jobs


@contextmanager
def _output(path: Path | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def cmd_verify(cfg: RunConfig) -> int:
    jobs = _jobs(cfg)
    table = get_table(cfg.max_n)
    reports: list[AssertionReport] = [
        sweep(a, ks, cfg.max_n, cfg.policy, workers=cfg.workers, table=table) for a, ks in jobs
    ]
    text = report.dumps(reports[0] if len(reports) == 1 else reports) if cfg.format == "json" \
        else report.summary_csv(reports)
    with _output(cfg.out) as fh:
        fh.write(text)
    for r in reports:
        print(f"{r.assertion.lower()} {'+'.join(r.kernels) or '-'}: checked={r.checked} skipped={r.skipped} "
              f"violations={r.violation_count}", file=sys.stderr)
    return 0 if all(r.ok for r in reports) else 1


def cmd_tabulate(cfg: RunConfig) -> int:
    if cfg.format != "csv":
        raise UsageError("tabulate writes CSV only")
    lo, hi = max(cfg.min_n, 2), cfg.max_n
    if lo > hi:
        raise UsageError(f"empty range [{cfg.min_n}, {cfg.max_n}]")
    jobs = _jobs(cfg)
    table = get_table(hi)
    plans = [resolve(a, ks) for a, ks in jobs]
    violated = False

    def evaluations(plan):
        nonlocal violated
        for start in range(lo, hi + 1, CHUNK):
            ev = evaluate_range(plan, start, min(start + CHUNK - 1, hi), table, cfg.policy, top=hi)
            violated |= bool((ev.checked & ev.enforced & ~ev.holds).any())
            yield ev

    with _output(cfg.out) as fh:
        report.tabulate_csv((ev for p in plans for ev in evaluations(p)), fh)
    return 1 if violated else 0


def cmd_extremal(cfg: RunConfig) -> int:
    jobs = _jobs(cfg)
    table = get_table(cfg.max_n)
    out = []
    for a, ks in jobs:
        rep = sweep(a, ks, cfg.max_n, cfg.policy, workers=cfg.workers, table=table)
        wit = find_extremal(a, ks, cfg.max_n, cfg.policy, table=table)
        out.append({"assertion": a, "kernels": rep.kernels, "range": [2, cfg.max_n],
                    "min_slack": rep.min_slack, "extremal_n": wit})
    if cfg.format == "csv":
        text = "assertion,kernels,min_slack,extremal_n\n" + "".join(
            f"{o['assertion']},{'+'.join(o['kernels'])},"
            f"{report.fmt_number(o['min_slack']['slack']) if o['min_slack'] else ''},"
            f"{' '.join(map(str, o['extremal_n']))}\n" for o in out)
    else:
        text = json.dumps(out[0] if len(out) == 1 else out, indent=2) + "\n"
    with _output(cfg.out) as fh:
        fh.write(text)
    return 0


def cmd_worked_examples(cfg: RunConfig) -> int:
    if cfg.max_n < 16:
        raise UsageError("paper-examples needs --max >= 16")
    blocks = run_examples(cfg.max_n, get_table(cfg.max_n), cfg.policy)
    with _output(cfg.out) as fh:
        for b in blocks:
            fh.write(b.render() + "\n")
        failed = [b.label for b in blocks if b.theorem and not b.passed]
        fh.write(f"theorem blocks failed: {', '.join(failed) if failed else 'none'}\n")
    return 1 if failed else 0


COMMANDS = {
    "verify": cmd_verify,
    "tabulate": cmd_tabulate,
    "extremal": cmd_extremal,
    "paper-examples": cmd_worked_examples,
}


def main(argv: list[str] | None = None) -> int:
    ap = _parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return int(exc.code or 0)
    logging.basicConfig(level=getattr(logging, str(ns.log_level).upper(), logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(ns)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, ExtremalArithError, ValueError) as exc:
        print(f"{ap.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
