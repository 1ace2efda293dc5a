"""Vectorized evaluation of one assertion over a contiguous block of n."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _backend
from .arith import PrimePowerKernel, multiplicative_int_array
from .bounds import (
    ASSERTION_IDS,
    DEFAULT_POLICY,
    make_check,
    EULER_GAMMA,
    GE,
    LE,
    ROBIN_THRESHOLD,
    BoundCheck,
    TolerancePolicy,
    zeta,
)
from .errors import (
    ArithmeticOverflowError,
    DomainError,
    KernelDomainError,
    MisuseError,
    PositivityError,
)
from .kernels import (
    PrimeKernel,
    SupTracker,
    get_kernel,
    get_prime_power_kernel,
    positivity_at_least,
)
from .primes import PrimeTable

CHECKED = 0
SKIP_REASONS = {1: "kernel_domain", 2: "mixed_probe", 3: "below_threshold"}
KERNEL_DOMAIN, MIXED_PROBE, BELOW_THRESHOLD = 1, 2, 3

_LESS = 2  # flag bit set by the backend when some k(p^a) < k(p)


@dataclass(frozen=True)
class Plan:
    """A validated (assertion, kernels) pairing."""

    assertion: str
    kernels: tuple

    @property
    def kernel_ids(self) -> list[str]:
        return [k.id for k in self.kernels]

    @property
    def p_min(self) -> int:
        return max((getattr(k, "p_min", 2) for k in self.kernels), default=2)


def normalize_assertion(aid: str) -> str:
    a = aid.strip().upper()
    if a not in ASSERTION_IDS:
        raise DomainError(f"unknown assertion {aid!r}; expected one of {', '.join(x.lower() for x in ASSERTION_IDS)}")
    return a


def resolve(assertion: str, kernels: Sequence[str | PrimeKernel | PrimePowerKernel] = ()) -> Plan:
    """Look kernels up and check the assertion's declared hypotheses.

    Raises:
        MisuseError: kernel metadata does not satisfy the assertion's hypotheses.
        UnknownKernelError: a kernel id is not registered.
    """
    aid = normalize_assertion(assertion)
    if aid == "MAXORD":
        return Plan(aid, ())
    if not kernels:
        raise MisuseError(f"{aid} needs at least one kernel")
    if aid in ("A7", "A8"):
        ks = tuple(get_prime_power_kernel(k) for k in kernels)
    else:
        ks = tuple(get_kernel(k) for k in kernels)
    if aid not in ("A5C", "A6C") and len(ks) != 1:
        raise MisuseError(f"{aid} takes exactly one kernel, got {len(ks)}")
    for k in ks:
        if aid in ("A2", "A4"):
            if not k.decreasing:
                raise MisuseError(f"{aid} needs a decreasing kernel; {k.id} is declared {k.monotonicity}")
            if k.p_min != 2:
                raise MisuseError(f"{aid} sums over the first primes and needs p_min = 2; {k.id} has {k.p_min}")
        if aid in ("A3", "A4") and not positivity_at_least(k.positivity, "f>0"):
            raise MisuseError(f"{aid} needs a positive kernel; {k.id} is declared {k.positivity}")
        if aid in ("A5", "A5C", "A6", "A6C") and not k.increasing:
            raise MisuseError(f"{aid} needs an increasing-from-a kernel; {k.id} is declared {k.monotonicity}")
        if aid in ("A5", "A5C") and not positivity_at_least(k.positivity, "f>=0"):
            raise MisuseError(f"{aid} needs f >= 0; {k.id} is declared {k.positivity}")
        if aid in ("A6", "A6C") and not positivity_at_least(k.positivity, "g>=1"):
            raise MisuseError(f"{aid} needs g >= 1; {k.id} is declared {k.positivity}")
    return Plan(aid, ks)


@dataclass
class RangeEvaluation:
    """Per-n arrays for n in [lo, hi]; rows with ``skip != 0`` carry no check."""

    plan: Plan
    lo: int
    hi: int
    lhs: np.ndarray
    rhs: np.ndarray
    slack: np.ndarray
    direction: np.ndarray
    holds: np.ndarray
    skip: np.ndarray
    enforced: np.ndarray
    exact: bool
    label: str
    diagnostics: dict

    @property
    def n(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1, dtype=np.int64)

    @property
    def checked(self) -> np.ndarray:
        return self.skip == CHECKED

    def check(self, n: int) -> BoundCheck | None:
        i = n - self.lo
        if self.skip[i] != CHECKED:
            return None
        conv = int if self.exact else float
        return BoundCheck(
            self.plan.assertion, n, conv(self.lhs[i]), conv(self.rhs[i]),
            LE if self.direction[i] > 0 else GE, conv(self.slack[i]), bool(self.holds[i]),
            self.exact, self.label, bool(self.enforced[i]),
        )


def _omega_diagnostics(table: PrimeTable, ns: np.ndarray, w: np.ndarray) -> dict:
    ok = w > 0
    wi = np.where(ok, w - 1, 0)
    ln_n = np.log(ns.astype(np.float64))
    return {
        "max_p_omega_over_ln_n": ("max", np.where(ok, table.prime_list[wi] / ln_n, np.nan)),
        "max_theta_excess": ("max", np.where(ok, table.theta_prefix[wi] - ln_n, np.nan)),
    }


def _sup_values(k: PrimeKernel, values: np.ndarray, lo: int, hi: int) -> np.ndarray:
    # chunk-local start: one full scan over [p_min, lo - 1], then incremental
    tracker = SupTracker.from_values(values, start=k.p_min)
    if lo - 1 > tracker.current_n:
        tracker.advance_range(lo - 1)
    out = np.full(hi - lo + 1, -np.inf)
    first = max(lo, tracker.current_n + 1)
    if first <= hi:
        out[first - lo :] = tracker.advance_range(hi)
    return out


def evaluate_range(
    plan: Plan,
    lo: int,
    hi: int,
    table: PrimeTable,
    policy: TolerancePolicy = DEFAULT_POLICY,
    top: int | None = None,
) -> RangeEvaluation:
    """Evaluate ``plan`` at every n in [lo, hi].

    ``top`` is the end of the enclosing sweep; derived per-table arrays are
    built once up to ``top`` and shared between blocks.
    """
    if lo < 2 or hi < lo:
        raise DomainError(f"invalid block [{lo}, {hi}]")
    top = hi if top is None else top
    if top > table.limit:
        from .errors import RangeError

        raise RangeError(f"sweep end {top} exceeds table limit {table.limit}")
    bk = _backend.kernels
    spf = table.smallest_prime_factor
    pidx = table.prime_index
    ns = np.arange(lo, hi + 1, dtype=np.int64)
    size = ns.size
    aid = plan.assertion
    ks = plan.kernels
    skip = np.zeros(size, dtype=np.int8)
    direction = np.ones(size, dtype=np.int8)
    enforced = np.ones(size, dtype=bool)
    diagnostics: dict = {}
    exact = False
    label = aid

    if ks and aid not in ("A7", "A8"):
        skip[spf[lo : hi + 1] < plan.p_min] = KERNEL_DOMAIN

    if aid in ("A1", "A3"):
        (k,) = ks
        vals = k.values(table)
        ext = k.extension_values(table, top)
        w = bk.omega_range(spf, lo, hi)
        if aid == "A1":
            lhs = bk.strong_sum(spf, pidx, vals, lo, hi)
            rhs = w * _sup_values(k, ext, lo, hi)
        else:
            seg = ext[k.p_min : hi + 1]
            if not (seg > 0).all():
                x = k.p_min + int(np.argmax(~(seg > 0)))
                raise PositivityError(f"A3 needs g(x) > 0 on [2, n]; integer extension of {k.id} is {ext[x]} at x={x}")
            with np.errstate(divide="ignore", invalid="ignore"):
                log_ext = np.log(ext[: hi + 1])
            lhs = bk.strong_prod(spf, pidx, vals, lo, hi)
            rhs = np.exp(w * _sup_values(k, log_ext, lo, hi))
        direction[:] = 1
    elif aid in ("A2", "A4"):
        (k,) = ks
        vals = k.values(table)
        w = bk.omega_range(spf, lo, hi)
        wi = w - 1
        if aid == "A2":
            lhs = bk.strong_sum(spf, pidx, vals, lo, hi)
            rhs = np.cumsum(vals[: int(w.max())])[wi]
        else:
            head = vals[: int(w.max())]
            if not (head > 0).all():
                raise PositivityError(f"A4 needs g > 0 on the first primes; {k.id} is not")
            lhs = bk.strong_prod(spf, pidx, vals, lo, hi)
            rhs = np.cumprod(head)[wi]
        diagnostics.update(_omega_diagnostics(table, ns, w))
    elif aid in ("A5", "A5C", "A6", "A6C"):
        a = max(k.threshold for k in ks)
        additive = aid in ("A5", "A5C")
        lhs = np.zeros(size) if additive else np.ones(size)
        rhs = 0.0 if additive else 1.0
        for k in ks:
            vals = k.values(table)
            if additive:
                lhs += bk.strong_sum(spf, pidx, vals, lo, hi)
                rhs += float(vals[pidx[a]])
            else:
                lhs *= bk.strong_prod(spf, pidx, vals, lo, hi)
                rhs *= float(vals[pidx[a]])
        rhs = np.full(size, rhs)
        direction[:] = -1
        label = f"{aid}[a={a}]"
    elif aid in ("A7", "A8"):
        (k,) = ks
        ppv = k.table_values(table, top)
        if aid == "A7":
            full, base, flags = bk.pp_sum_probe(spf, ppv, lo, hi)
        elif k.exact is not None:
            if (ppv < 1).any():
                raise PositivityError(f"{k.id} has prime-power values below 1; exact mode needs >= 1")
            full, base, flags, overflow = bk.pp_prod_probe_int(spf, ppv, lo, hi)
            if overflow:
                raise ArithmeticOverflowError(f"{k.id} overflows int64 below n={hi}")
            exact = True
        else:
            finite = ppv[np.isfinite(ppv)]
            if (finite <= 0).any():
                raise PositivityError(f"A8 needs a positive kernel; {k.id} is not")
            full, base, flags = bk.pp_prod_probe(spf, ppv, lo, hi)
        lhs, rhs = base, full
        skip[flags == 3] = MIXED_PROBE
        direction[:] = np.where(flags & _LESS, -1, 1)
    elif aid == "MAXORD":
        sig = multiplicative_int_array(table, top, "sigma", 1)[lo : hi + 1]
        x = ns.astype(np.float64)
        valid = ns >= 3
        with np.errstate(divide="ignore", invalid="ignore"):
            llog = np.where(valid, np.log(np.log(x)), np.nan)
        lhs = sig
        rhs = math.exp(EULER_GAMMA) * x * llog
        skip[ns <= ROBIN_THRESHOLD] = BELOW_THRESHOLD
        label = "sigma_egamma"
        with np.errstate(divide="ignore", invalid="ignore"):
            diagnostics["max_sigma_over_robin_envelope"] = ("max", np.where(valid, sig / rhs, np.nan))
            for kk in (2, 3):
                sk = multiplicative_int_array(table, top, "sigma", kk)[lo : hi + 1].astype(np.float64)
                diagnostics[f"max_sigma{kk}_over_n{kk}"] = ("max", sk / x**kk)
            tau_v = multiplicative_int_array(table, top, "sigma", 0)[lo : hi + 1]
            diagnostics["max_tau_over_envelope"] = ("max", np.where(valid, tau_v / x ** (math.log(2) / llog), np.nan))
            phi_v = multiplicative_int_array(table, top, "phi")[lo : hi + 1]
            diagnostics["min_phi_lnln_over_n"] = ("min", np.where(valid, phi_v * llog / x, np.nan))
        lhs = lhs.astype(np.float64)
    else:  # pragma: no cover - normalize_assertion guards this
        raise DomainError(aid)

    checked = skip == CHECKED
    if exact:
        slack = np.where(direction > 0, rhs - lhs, lhs - rhs)
        holds = slack >= 0
    else:
        with np.errstate(invalid="ignore"):
            slack = np.where(direction > 0, rhs - lhs, lhs - rhs)
            tol = policy.rel * np.maximum(1.0, np.abs(rhs)) + policy.abs
            holds = slack >= -tol
    holds = holds | ~checked
    for name, (kind, arr) in list(diagnostics.items()):
        diagnostics[name] = (kind, np.where(checked | (aid == "MAXORD"), arr, np.nan))
    return RangeEvaluation(plan, lo, hi, lhs, rhs, slack, direction, holds, skip, enforced, exact, label, diagnostics)


def evaluate_one(plan: Plan, n: int, table: PrimeTable, policy: TolerancePolicy = DEFAULT_POLICY) -> BoundCheck:
    """Fast-path check at a single n (raises KernelDomainError/InapplicableError when skipped)."""
    ev = evaluate_range(plan, n, n, table, policy)
    chk = ev.check(n)
    if chk is None:
        reason = SKIP_REASONS[int(ev.skip[0])]
        if reason == "below_threshold" and plan.assertion == "MAXORD" and n >= 3:
            # sweeps skip these n; per-n callers get the comparison marked report-only
            return make_check("MAXORD", n, float(ev.lhs[0]), float(ev.rhs[0]), LE, policy,
                              label=ev.label, enforced=False)
        if reason == "mixed_probe":
            from .errors import InapplicableError

            raise InapplicableError(f"mixed prime-power comparisons at n={n}")
        if reason == "kernel_domain":
            raise KernelDomainError(f"n={n} has a prime below p_min={plan.p_min}")
        raise DomainError(f"n={n} is {reason.replace('_', ' ')}")
    return chk
