"""Slow, independent recomputation of any bound check from first principles.

Nothing here touches the sieve, the backend loops, the sup tracker or the
prime-power closed forms: factorizations come from trial division, phi from
Gauss's identity sum_{d|x} phi(d) = x, sigma_k from divisor enumeration.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .arith import IntegerFunction, PrimePowerKernel
from .bounds import (
    DEFAULT_POLICY,
    EULER_GAMMA,
    GE,
    LE,
    ROBIN_THRESHOLD,
    BoundCheck,
    TolerancePolicy,
    make_check,
)
from .errors import DomainError, InapplicableError, KernelDomainError, PositivityError
from .evaluate import Plan, resolve
from .kernels import PrimeKernel

ORACLE_MAX_N = 10**5


def trial_factorize(n: int) -> list[tuple[int, int]]:
    out = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            a = 0
            while m % d == 0:
                m //= d
                a += 1
            out.append((d, a))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def is_prime_trial(n: int) -> bool:
    return n >= 2 and trial_factorize(n) == [(n, 1)]


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def brute_phi(n: int) -> int:
    return n - sum(brute_phi(d) for d in divisors(n)[:-1])


def brute_sigma(n: int, k: int) -> int:
    return sum(d**k for d in divisors(n))


@lru_cache(maxsize=None)
def brute_integer_function(fn: IntegerFunction, x: int, formula_kernel: PrimeKernel | None = None) -> float:
    if fn.base == "formula":
        v = formula_kernel(x)
    elif fn.base == "phi":
        v = brute_phi(x)
    elif fn.base == "sigma":
        v = brute_sigma(x, fn.k)
    elif fn.base == "id_over_phi":
        v = x / brute_phi(x)
    else:
        v = brute_sigma(x, 0) / x
    return math.log(v) if fn.log else float(v)


def _arith(k: PrimePowerKernel, m: int):
    fn = k.arith
    if fn is None:
        raise DomainError(f"{k.id} has no integer form for the oracle")
    if not fn.log and fn.base in ("phi", "sigma"):
        return brute_phi(m) if fn.base == "phi" else brute_sigma(m, fn.k)
    return brute_integer_function(fn, m)


def _kval(k: PrimeKernel, p: int) -> float:
    if p < k.p_min:
        raise KernelDomainError(f"{k.id} undefined at p={p}")
    return k(p)


def _first_primes(count: int) -> list[int]:
    out = []
    m = 1
    while len(out) < count:
        m += 1
        if is_prime_trial(m):
            out.append(m)
    return out


def _sup(k: PrimeKernel, n: int, log: bool = False) -> float:
    best = -math.inf
    for x in range(max(2, k.p_min), n + 1):
        v = brute_integer_function(k.extension, x, k)
        if log:
            if not v > 0:
                raise PositivityError(f"integer extension of {k.id} is {v} at x={x}")
            v = math.log(v)
        best = max(best, v)
    return best


def brute_force_oracle(
    assertion_id: str,
    kernel,
    n: int,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> BoundCheck:
    """Recompute the check for (assertion, kernel(s), n) the slow way.

    ``kernel`` is a kernel, a kernel id, or a list of them (corollaries).
    """
    if n > ORACLE_MAX_N:
        raise DomainError(f"oracle limited to n <= {ORACLE_MAX_N}")
    kernels = kernel if isinstance(kernel, (list, tuple)) else ([kernel] if kernel is not None else [])
    plan: Plan = resolve(assertion_id, kernels)
    aid = plan.assertion
    ks = plan.kernels
    identity_sum = aid in ("A1", "A2", "A5", "A5C", "A7")
    if n == 1:
        ident = 0.0 if identity_sum else (1 if aid == "A8" and ks[0].exact else 1.0)
        return BoundCheck(aid, 1, ident, ident, GE if aid in ("A5", "A5C", "A6", "A6C") else LE, ident - ident, True)
    fac = trial_factorize(n)
    primes = [p for p, _ in fac]
    w = len(fac)

    if aid == "MAXORD":
        if n < 3:
            raise DomainError("ln ln n is not positive")
        sig = brute_sigma(n, 1)
        rhs = math.exp(EULER_GAMMA) * n * math.log(math.log(n))
        return make_check(aid, n, float(sig), rhs, LE, policy, label="sigma_egamma", enforced=n > ROBIN_THRESHOLD)

    if aid in ("A7", "A8"):
        (k,) = ks
        greater = less = False
        for p, a in fac:
            vq, vp = _arith(k, p**a), _arith(k, p)
            greater |= vq > vp
            less |= vq < vp
        if greater and less:
            raise InapplicableError(f"mixed prime-power comparisons at n={n}")
        direction = GE if less else LE
        if aid == "A7":
            lhs = math.fsum(_arith(k, p) for p in primes)
            return make_check(aid, n, lhs, _arith(k, n), direction, policy)
        exact = k.exact is not None
        lhs = 1 if exact else 1.0
        for p in primes:
            v = _arith(k, p)
            if not v > 0:
                raise PositivityError(f"{k.id}({p}) = {v}")
            lhs *= v
        rhs = _arith(k, n)
        return make_check(aid, n, lhs if exact else float(lhs), rhs if exact else float(rhs),
                          direction, policy, exact=exact)

    if aid == "A1":
        (k,) = ks
        lhs = math.fsum(_kval(k, p) for p in primes)
        return make_check(aid, n, lhs, w * _sup(k, n), LE, policy)
    if aid == "A2":
        (k,) = ks
        lhs = math.fsum(_kval(k, p) for p in primes)
        rhs = math.fsum(_kval(k, p) for p in _first_primes(w))
        return make_check(aid, n, lhs, rhs, LE, policy)
    if aid == "A3":
        (k,) = ks
        lhs = math.prod(_kval(k, p) for p in primes)
        return make_check(aid, n, lhs, math.exp(w * _sup(k, n, log=True)), LE, policy)
    if aid == "A4":
        (k,) = ks
        lhs = math.prod(_kval(k, p) for p in primes)
        rhs = math.exp(math.fsum(math.log(_kval(k, p)) for p in _first_primes(w)))
        return make_check(aid, n, lhs, rhs, LE, policy)
    # A5, A5C, A6, A6C
    a = max(k.threshold for k in ks)
    if aid in ("A5", "A5C"):
        lhs = math.fsum(_kval(k, p) for k in ks for p in primes)
        rhs = math.fsum(_kval(k, a) for k in ks)
    else:
        lhs = math.prod(_kval(k, p) for k in ks for p in primes)
        rhs = math.prod(_kval(k, a) for k in ks)
    return make_check(aid, n, lhs, rhs, GE, policy)
