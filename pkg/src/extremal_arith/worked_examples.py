"""Recomputes each worked example over [2, N] as a labelled block.

Theorem blocks must hold at every n; report blocks print empirical extremes
for statements whose constants are unspecified or that are only asymptotic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import multiplicative_int_array, totient_product_identity
from .bounds import DEFAULT_POLICY, EULER_GAMMA, ROBIN_THRESHOLD, TolerancePolicy, zeta
from .evaluate import evaluate_range, resolve
from .primes import PrimeTable, get_table, omega_array
from .verify import estimate_ordering, find_extremal, sweep


@dataclass
class ExampleBlock:
    label: str
    title: str
    theorem: bool
    passed: bool = True
    lines: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if not self.theorem:
            return "REPORT"
        return "PASS" if self.passed else "FAIL"

    def render(self) -> str:
        head = f"[{self.label}] {self.title} ... {self.status}"
        return "\n".join([head] + [f"    {ln}" for ln in self.lines])


def _powers(base: int, N: int) -> list[int]:
    out, q = [], base
    while q <= N:
        out.append(q)
        q *= base
    return out


def _sweep_line(rep) -> str:
    ms = rep.min_slack or {}
    return (f"{rep.assertion}/{'+'.join(rep.kernels)}: checked={rep.checked} skipped={rep.skipped} "
            f"violations={rep.violation_count} min_slack={ms.get('slack')} at n={ms.get('n')}")


def _theorem_sweep(label, title, assertion, kernels, N, table, policy) -> ExampleBlock:
    rep = sweep(assertion, kernels, N, policy, table=table)
    return ExampleBlock(label, title, True, rep.ok, [_sweep_line(rep)])


def _witness_block(label, title, assertion, kernels, N, table, policy, base, value) -> ExampleBlock:
    rep = sweep(assertion, kernels, N, policy, table=table)
    ext = find_extremal(assertion, kernels, N, policy, table=table)
    expected = _powers(base, N)
    plan = resolve(assertion, kernels)
    ev = evaluate_range(plan, ext[0], ext[0], table, policy) if ext else None
    minimum = float(ev.lhs[0]) if ev is not None else math.nan
    ok = rep.ok and ext == expected and abs(minimum - value) <= policy.abs
    return ExampleBlock(label, title, True, ok, [
        _sweep_line(rep),
        f"minimum {minimum!r} (expected {value!r}) attained at {ext[:12]}{' ...' if len(ext) > 12 else ''}",
        f"witness set equals powers of {base} up to N: {ext == expected}",
    ])


def run_examples(N: int = 10**4, table: PrimeTable | None = None,
                 policy: TolerancePolicy = DEFAULT_POLICY) -> list[ExampleBlock]:
    if N < 16:
        raise ValueError("worked examples need N >= 16")
    table = table or get_table(N)
    blocks: list[ExampleBlock] = []
    ns = np.arange(2, N + 1, dtype=np.int64)
    x = ns.astype(np.float64)
    big = ns >= 16
    with np.errstate(divide="ignore", invalid="ignore"):
        llog = np.log(np.log(x))

    a1 = evaluate_range(resolve("A1", ["ln_phi"]), 2, N, table, policy)
    lnm1 = np.log(table.prime_list[table.prime_list <= N] - 1.0)
    rough = np.cumsum(lnm1)[np.searchsorted(table.prime_list, ns, side="right") - 1]
    worse = np.flatnonzero(a1.rhs > rough)
    b = ExampleBlock("2.4/2.5", "omega(n) sup ln phi(x) against sum_{p<=n} ln(p-1)", False)
    b.lines.append(f"sup bound tighter at {int((a1.rhs <= rough).sum())} of {ns.size} n")
    if worse.size:
        b.lines.append(f"sup bound looser at {worse.size} n, largest such n = {int(ns[worse[-1]])}")
    blocks.append(b)

    phi = multiplicative_int_array(table, N, "phi")[2:]
    ln_ratio = np.log(x / phi)
    j = int(np.argmax(ln_ratio))
    blocks.append(ExampleBlock("2.8", "ln(n/phi(n)) against ln ln ln n", False, lines=[
        f"max ln(n/phi(n)) = {float(ln_ratio[j])!r} at n={int(ns[j])}; ln ln ln N = {math.log(math.log(math.log(N)))!r}",
    ]))

    a3 = sweep("A3", ["phi"], N, policy, table=table)
    ev3 = evaluate_range(resolve("A3", ["phi"]), 2, N, table, policy)
    w = omega_array(table, 2, N)
    chain = bool((np.log(ev3.lhs) <= w * np.log(x) + 1e-12).all())
    c_emp = w[big] * llog[big] / np.log(x[big])
    jc = int(np.argmax(c_emp))
    blocks.append(ExampleBlock("2.12", "prod phi(p) <= exp(omega sup ln phi) <= n^omega(n)", True,
                               a3.ok and chain, [
        _sweep_line(a3), f"prod phi(p) <= n^omega(n) everywhere: {chain}",
        f"empirical c in omega(n) <= c ln n / ln ln n (n >= 16): {float(c_emp[jc])!r} at n={int(ns[big][jc])}",
    ]))

    blocks.append(_theorem_sweep("2.16", "n/phi(n) = prod p/(p-1) <= A(n)", "A4", ["n_over_phi"], N, table, policy))

    ident = totient_product_identity(table, 2, N)
    ratio = x / phi
    e_c = ratio[big] / llog[big]
    jr = int(np.argmax(e_c))
    blocks.append(ExampleBlock("2.17", "n * prod(p-1) == phi(n) * prod p", True, bool(ident.all()), [
        f"exact identity holds at {int(ident.sum())} of {ident.size} n",
        f"empirical e^c in n/phi(n) <= e^c ln ln n (n >= 16): {float(e_c[jr])!r} at n={int(ns[big][jr])}",
    ]))

    mo = sweep("MAXORD", [], N, policy, table=table)
    d = mo.diagnostics
    blocks.append(ExampleBlock("2.18", "phi(n) ln ln n / n lower envelope", False, lines=[
        f"inf phi(n) ln ln n / n over [3, N] = {d['min_phi_lnln_over_n']['value']!r} at n={d['min_phi_lnln_over_n']['n']}",
    ]))

    blocks.append(_witness_block("2.20", "sum (p^2+p+1)/(p-1) >= f(3) = 6.5", "A5", ["ratio1"], N, table, policy, 3, 6.5))
    b24 = _witness_block("2.24", "prod (p^2+p+1)/(p-2) >= g(5) = 31/3 over odd n", "A6", ["ratio2"], N, table, policy,
                         5, 31 / 3)
    blocks.append(b24)

    a7 = sweep("A7", ["ln_phi"], N, policy, table=table)
    ordering = estimate_ordering(N, table, policy)
    lower = find_extremal("A5", ["ln_phi"], N, policy, table=table)
    ok34 = a7.ok and ordering.ok and lower == _powers(2, N)
    blocks.append(ExampleBlock("3.4", "sum ln phi(p) <= ln phi(n) <= ln n; >= 0 with equality at 2^m", True, ok34, [
        _sweep_line(a7),
        f"ln phi(n) <= omega(n) sup ln phi(x) for n in [3, N]: violations={ordering.violation_count}",
        f"A5 lower bound 0 attained exactly at powers of 2: {lower == _powers(2, N)}",
    ]))

    a7t = sweep("A7", ["ln_tau_over_id"], N, policy, table=table)
    tau = multiplicative_int_array(table, N, "sigma", 0)[2:]
    tail = bool((tau >= 2).all())
    blocks.append(ExampleBlock("3.5", "sum ln(tau(p)/p) >= ln(tau(n)/n) >= ln(2/n)", True, a7t.ok and tail, [
        _sweep_line(a7t), f"tau(n) >= 2 for all n: {tail}",
    ]))

    a2 = sweep("A2", ["ln_tau_over_p"], N, policy, table=table)
    blocks.append(ExampleBlock("3.6", "sum ln(2/p) <= sum_{p <= p_omega} ln(2/p)", True, a2.ok, [
        _sweep_line(a2),
        f"max p_omega(n)/ln n = {a2.diagnostics['max_p_omega_over_ln_n']['value']!r}",
        f"max theta(p_omega(n)) - ln n = {a2.diagnostics['max_theta_excess']['value']!r}",
    ]))

    reps = [sweep("A8", [f"sigma_k:{k}"], N, policy, table=table) for k in (1, 2, 3)]
    blocks.append(ExampleBlock("3.12", "prod (p^k+1) <= sigma_k(n), exact integers", True,
                               all(r.ok and r.exact for r in reps), [_sweep_line(r) for r in reps]))

    blocks.append(ExampleBlock("3.13", "sigma_k(n) / n^k against zeta(k)", False, lines=[
        f"k={k}: max {d[f'max_sigma{k}_over_n{k}']['value']!r} at n={d[f'max_sigma{k}_over_n{k}']['n']}, zeta(k)={zeta(k)!r}"
        for k in (2, 3)
    ]))

    robin = ["range ends at or below 5040; nothing enforced"]
    if N > ROBIN_THRESHOLD:
        sig = multiplicative_int_array(table, N, "sigma", 1)[ROBIN_THRESHOLD + 1:].astype(np.float64)
        tail = x[ROBIN_THRESHOLD - 1:]
        env = sig / (math.exp(EULER_GAMMA) * tail * np.log(np.log(tail)))
        jt = int(np.argmax(env))
        robin = [_sweep_line(mo), f"max sigma(n) / (e^gamma n ln ln n) over (5040, N] = {float(env[jt])!r} "
                                  f"at n={int(tail[jt])}"]
    blocks.append(ExampleBlock("3.14", "sigma(n) <= e^gamma n ln ln n for n > 5040", True, mo.ok, robin + [
        f"max sigma(n) / (e^gamma n ln ln n) over [3, N] = {d['max_sigma_over_robin_envelope']['value']!r} "
        f"at n={d['max_sigma_over_robin_envelope']['n']}",
    ]))

    tau_rep = sweep("A8", ["tau"], N, policy, table=table)
    blocks.append(ExampleBlock("3.15", "2^omega(n) <= tau(n) <= n^(ln 2 / ln ln n)", True, tau_rep.ok, [
        _sweep_line(tau_rep),
        f"max tau(n) / n^(ln2/lnln n) (report only) = {d['max_tau_over_envelope']['value']!r} "
        f"at n={d['max_tau_over_envelope']['n']}",
    ]))

    blocks.append(_theorem_sweep("3.16", "prod 2 <= exp(sum_{p <= p_omega} ln 2)", "A4", ["sigma_k:0"], N, table, policy))

    b317 = [_witness_block("3.17", f"prod (p^{k}+1) >= 2^{k}+1", "A6", [f"sigma_k:{k}"], N, table, policy, 2, 2**k + 1.0)
            for k in (1, 2, 3)]
    blocks.append(ExampleBlock("3.17", "prod (p^k+1) >= 2^k+1, equality at n = 2^m", True,
                               all(bb.passed for bb in b317), [ln for bb in b317 for ln in bb.lines]))

    blocks.append(_witness_block("A5C", "sum ln phi(p) + sum ln sigma(p) >= ln 3", "A5C", ["ln_phi", "ln_sigma"], N,
                                 table, policy, 2, math.log(3)))
    blocks.append(_witness_block("A6C", "prod phi(p) * prod sigma_2(p) >= 5", "A6C", ["phi", "sigma2"], N,
                                 table, policy, 2, 5.0))

    lemma = a2.diagnostics["max_theta_excess"]["value"]
    blocks.append(ExampleBlock("A2-lemma", "theta(p_omega(n)) <= ln n", True, lemma <= 1e-9, [
        f"max theta(p_omega(n)) - ln n = {lemma!r} (tolerance 1e-9)",
    ]))
    return blocks
