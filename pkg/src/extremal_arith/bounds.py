"""Per-n bound calculators, one per assertion, plus the maximal-order comparisons."""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .arith import (
    PrimePowerKernel,
    additive_eval,
    euler_phi,
    multiplicative_eval,
    omega,
    sigma_k,
    strongly_additive_eval,
    strongly_multiplicative_eval,
    tau,
)
from .errors import InapplicableError, MisuseError, PositivityError
from .kernels import PrimeKernel, positivity_at_least
from .primes import Factorization, PrimeTable, chebyshev_theta, nth_prime

ASSERTION_IDS = ("A1", "A2", "A3", "A4", "A5", "A6", "A5C", "A6C", "A7", "A8", "MAXORD")
LE = "<="
GE = ">="

EULER_GAMMA = 0.57721566490153286061
ROBIN_THRESHOLD = 5040


@dataclass(frozen=True)
class TolerancePolicy:
    """Floating comparisons pass when slack >= -(rel * max(1, |rhs|) + abs)."""

    rel: float = 1e-12
    abs: float = 1e-12

    def tol(self, rhs: float) -> float:
        return self.rel * max(1.0, abs(rhs)) + self.abs


DEFAULT_POLICY = TolerancePolicy()


@dataclass(frozen=True)
class BoundCheck:
    """One evaluated inequality ``lhs <= rhs`` or ``lhs >= rhs`` at a single n.

    ``exact`` checks compare Python integers and ignore the tolerance policy.
    ``enforced`` is False for report-only comparisons (maximal-order envelopes).
    """

    assertion_id: str
    n: int
    lhs: float | int
    rhs: float | int
    direction: str
    slack: float | int
    holds: bool
    exact: bool = False
    label: str = ""
    enforced: bool = True
    meta: dict = field(default_factory=dict, compare=False)


def make_check(
    assertion_id: str,
    n: int,
    lhs,
    rhs,
    direction: str,
    policy: TolerancePolicy = DEFAULT_POLICY,
    exact: bool = False,
    **extra,
) -> BoundCheck:
    slack = rhs - lhs if direction == LE else lhs - rhs
    holds = slack >= 0 if exact else slack >= -policy.tol(rhs)
    return BoundCheck(assertion_id, n, lhs, rhs, direction, slack, bool(holds), exact, **extra)


class ZetaValues(Mapping):
    """Lazy map k -> zeta(k) for integers k >= 2."""

    def __getitem__(self, k: int) -> float:
        if not isinstance(k, int) or k < 2:
            raise KeyError(k)
        return zeta(k)

    def __iter__(self):
        return iter(range(2, 65))

    def __len__(self) -> int:
        return 63


_BERNOULLI = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6)


@lru_cache(maxsize=None)
def zeta(k: int) -> float:
    """Riemann zeta at an integer k >= 2 by Euler-Maclaurin summation.

    Sums j**-k for j < 20 exactly, then adds the integral tail, the half
    endpoint term and seven Bernoulli corrections; the remainder is far
    below one ulp for every k >= 2.
    """
    if k < 2:
        raise ValueError("zeta(k) needs k >= 2")
    m = 20
    terms = [j ** (-float(k)) for j in range(1, m)]
    terms.append(m ** (1.0 - k) / (k - 1))
    terms.append(0.5 * m ** (-float(k)))
    rising = float(k)  # k (k+1) ... (k + 2i - 2)
    fact = 2.0  # (2i)!
    for i, b in enumerate(_BERNOULLI, start=1):
        terms.append(b / fact * rising * m ** (-k - 2.0 * i + 1))
        rising *= (k + 2 * i - 1) * (k + 2 * i)
        fact *= (2 * i + 1) * (2 * i + 2)
    return math.fsum(terms)


@dataclass(frozen=True)
class Constants:
    euler_gamma: float = EULER_GAMMA
    zeta: Mapping = field(default_factory=ZetaValues)


def _empty(assertion_id: str, identity, direction: str) -> BoundCheck:
    return BoundCheck(assertion_id, 1, identity, identity, direction, identity - identity, True)


def _require_decreasing(k: PrimeKernel, aid: str) -> None:
    if not k.decreasing:
        raise MisuseError(f"{aid} needs a decreasing kernel; {k.id} is declared {k.monotonicity}")


def _require_increasing(k: PrimeKernel, aid: str, positivity: str) -> None:
    if not k.increasing:
        raise MisuseError(f"{aid} needs an increasing-from-a kernel; {k.id} is declared {k.monotonicity}")
    if not positivity_at_least(k.positivity, positivity):
        raise MisuseError(f"{aid} needs positivity {positivity}; {k.id} is declared {k.positivity}")


def _positive_values(k: PrimeKernel, primes) -> list[float]:
    out = []
    for p in primes:
        v = k(p)
        if not v > 0:
            raise PositivityError(f"{k.id}({p}) = {v} is not positive")
        out.append(v)
    return out


def bound_a1(f: Factorization, k: PrimeKernel, sup_value: float, policy: TolerancePolicy = DEFAULT_POLICY) -> BoundCheck:
    """sum_{p|n} f(p) <= omega(n) * sup_{x <= n} f(x)."""
    if f.n == 1:
        return _empty("A1", 0.0, LE)
    lhs = strongly_additive_eval(k, f)
    return make_check("A1", f.n, lhs, omega(f) * sup_value, LE, policy)


def _first_primes(table: PrimeTable, w: int) -> list[int]:
    nth_prime(table, w)
    return table.prime_list[:w].tolist()


def _omega_meta(table: PrimeTable, n: int, w: int) -> dict:
    pw = nth_prime(table, w)
    return {
        "p_omega": pw,
        "p_omega_over_ln_n": pw / math.log(n),
        "theta_excess": chebyshev_theta(table, pw) - math.log(n),
    }


def bound_a2(f: Factorization, k: PrimeKernel, table: PrimeTable, policy: TolerancePolicy = DEFAULT_POLICY) -> BoundCheck:
    """sum_{p|n} f(p) <= sum of f over the first omega(n) primes, for decreasing f."""
    _require_decreasing(k, "A2")
    if f.n == 1:
        return _empty("A2", 0.0, LE)
    w = omega(f)
    lhs = strongly_additive_eval(k, f)
    rhs = 0.0
    for p in _first_primes(table, w):
        rhs += strongly_additive_eval(k, Factorization(p, ((p, 1),)))
    return make_check("A2", f.n, lhs, rhs, LE, policy, meta=_omega_meta(table, f.n, w))


def bound_a3(f: Factorization, k: PrimeKernel, sup_log_value: float, policy: TolerancePolicy = DEFAULT_POLICY) -> BoundCheck:
    """prod_{p|n} g(p) <= exp(omega(n) * sup_{x <= n} ln g(x)), for positive g."""
    if f.n == 1:
        return _empty("A3", 1.0, LE)
    _positive_values(k, f.primes)
    lhs = strongly_multiplicative_eval(k, f)
    return make_check("A3", f.n, lhs, math.exp(omega(f) * sup_log_value), LE, policy)


def bound_a4(f: Factorization, k: PrimeKernel, table: PrimeTable, policy: TolerancePolicy = DEFAULT_POLICY) -> BoundCheck:
    """prod_{p|n} g(p) <= A(n) = exp(sum of ln g over the first omega(n) primes)."""
    _require_decreasing(k, "A4")
    if f.n == 1:
        return _empty("A4", 1.0, LE)
    w = omega(f)
    _positive_values(k, f.primes)
    lhs = strongly_multiplicative_eval(k, f)
    # product of g over p_1..p_w equals exp(sum ln g) and is bitwise equal to lhs at primorials
    rhs = 1.0
    for v in _positive_values(k, _first_primes(table, w)):
        rhs *= v
    return make_check("A4", f.n, lhs, rhs, LE, policy, meta=_omega_meta(table, f.n, w))


def bound_a5(f: Factorization, k: PrimeKernel, policy: TolerancePolicy = DEFAULT_POLICY) -> BoundCheck:
    """sum_{p|n} f(p) >= f(a) for f >= 0 increasing from the prime a."""
    return bound_a5_corollary(f, [k], policy, _aid="A5")


def bound_a6(f: Factorization, k: PrimeKernel, policy: TolerancePolicy = DEFAULT_POLICY) -> BoundCheck:
    """prod_{p|n} g(p) >= g(a) for g >= 1 increasing from the prime a."""
    return bound_a6_corollary(f, [k], policy, _aid="A6")


def bound_a5_corollary(
    f: Factorization, ks: Sequence[PrimeKernel], policy: TolerancePolicy = DEFAULT_POLICY, _aid: str = "A5C"
) -> BoundCheck:
    for k in ks:
        _require_increasing(k, _aid, "f>=0")
    if f.n == 1:
        return _empty(_aid, 0.0, GE)
    a = max(k.threshold for k in ks)
    lhs = 0.0
    rhs = 0.0
    for k in ks:
        lhs += strongly_additive_eval(k, f)
        rhs += k(a)
    return make_check(_aid, f.n, lhs, rhs, GE, policy, meta={"a": a})


def bound_a6_corollary(
    f: Factorization, ks: Sequence[PrimeKernel], policy: TolerancePolicy = DEFAULT_POLICY, _aid: str = "A6C"
) -> BoundCheck:
    for k in ks:
        _require_increasing(k, _aid, "g>=1")
    if f.n == 1:
        return _empty(_aid, 1.0, GE)
    a = max(k.threshold for k in ks)
    lhs = 1.0
    rhs = 1.0
    for k in ks:
        lhs *= strongly_multiplicative_eval(k, f)
        rhs *= k(a)
    return make_check(_aid, f.n, lhs, rhs, GE, policy, meta={"a": a})


def probe_direction(k: PrimePowerKernel, f: Factorization) -> str:
    """LE when k(p^a) >= k(p) at every factor, GE when <= everywhere; squarefree n give LE."""
    greater = less = False
    for p, a in f:
        vq, vp = k(p, a), k(p, 1)
        greater |= vq > vp
        less |= vq < vp
    if greater and less:
        raise InapplicableError(f"{k.id}: mixed prime-power comparisons at n={f.n}")
    return GE if less else LE


def bound_a7(f: Factorization, k: PrimePowerKernel, policy: TolerancePolicy = DEFAULT_POLICY) -> BoundCheck:
    """sum_{p|n} f(p) against the additive f(n), direction set by the prime-power probe."""
    if f.n == 1:
        return _empty("A7", 0.0, LE)
    direction = probe_direction(k, f)
    lhs = 0.0
    for p, _ in f:
        lhs += k(p, 1)
    return make_check("A7", f.n, lhs, additive_eval(k, f), direction, policy)


def bound_a8(f: Factorization, k: PrimePowerKernel, policy: TolerancePolicy = DEFAULT_POLICY) -> BoundCheck:
    """prod_{p|n} g(p) against the multiplicative g(n); exact integers when the kernel has them."""
    exact = k.exact is not None
    if f.n == 1:
        return _empty("A8", 1 if exact else 1.0, LE)
    direction = probe_direction(k, f)
    lhs = 1 if exact else 1.0
    for p, a in f:
        for v in (k(p, 1), k(p, a)):
            if not v > 0:
                raise PositivityError(f"{k.id} is not positive at n={f.n}")
        lhs *= k(p, 1)
    return make_check("A8", f.n, lhs, multiplicative_eval(k, f), direction, policy, exact=exact)


def maximal_order_checks(
    f: Factorization,
    c: Constants = Constants(),
    policy: TolerancePolicy = DEFAULT_POLICY,
    zeta_orders: Sequence[int] = (2, 3),
) -> list[BoundCheck]:
    """Envelope comparisons for sigma_k, sigma, tau and phi at n.

    Only the sigma(n) <= e^gamma n ln ln n comparison for n > 5040 is enforced;
    the others are reported. Comparisons whose ln ln n is not positive are omitted.
    """
    n = f.n
    out = []
    if n < 2:
        return out
    for k in zeta_orders:
        out.append(make_check("MAXORD", n, sigma_k(f, k), n**k * c.zeta[k], LE, policy,
                              label=f"sigma_zeta[k={k}]", enforced=False))
    if n < 3:
        return out
    llog = math.log(math.log(n))
    out.append(make_check("MAXORD", n, sigma_k(f, 1), math.exp(c.euler_gamma) * n * llog, LE, policy,
                          label="sigma_egamma", enforced=n > ROBIN_THRESHOLD))
    out.append(make_check("MAXORD", n, tau(f), n ** (math.log(2) / llog), LE, policy,
                          label="tau_envelope", enforced=False))
    out.append(make_check("MAXORD", n, euler_phi(f), n / llog, GE, policy,
                          label="phi_envelope", enforced=False))
    return out
