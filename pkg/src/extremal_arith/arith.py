"""Classical arithmetic functions and generic (strongly) additive/multiplicative evaluators."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _backend
from .errors import ArithmeticOverflowError, DomainError, KernelDomainError
from .primes import Factorization, PrimeTable, prime_powers

INT64_MAX = int(np.iinfo(np.int64).max)


def omega(f: Factorization) -> int:
    return len(f.factors)


def big_omega(f: Factorization) -> int:
    return sum(a for _, a in f.factors)


def euler_phi(f: Factorization) -> int:
    out = 1
    for p, a in f:
        out *= p ** (a - 1) * (p - 1)
    return out


def sigma_prime_power(p: int, alpha: int, k: int) -> int:
    """sigma_k(p**alpha) by the geometric closed form, in exact integers."""
    if k == 0:
        return alpha + 1
    pk = p**k
    return (pk ** (alpha + 1) - 1) // (pk - 1)


def sigma_k(f: Factorization, k: int) -> int:
    """Sum of d**k over divisors d of n. ``k = 0`` gives the divisor count."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    out = 1
    for p, a in f:
        out *= sigma_prime_power(p, a, k)
    return out


def tau(f: Factorization) -> int:
    out = 1
    for _, a in f:
        out *= a + 1
    return out


@dataclass(frozen=True)
class IntegerFunction:
    """Names an arithmetic function x -> value, optionally composed with ln.

    ``base`` is one of ``formula`` (the owning kernel's own expression applied to x),
    ``phi``, ``sigma`` (sigma_k with this ``k``), ``id_over_phi`` (x / phi(x)) or
    ``tau_over_id`` (tau(x) / x).
    """

    base: str
    k: int = 1
    log: bool = False

    BASES = ("formula", "phi", "sigma", "id_over_phi", "tau_over_id")

    def __post_init__(self):
        if self.base not in self.BASES:
            raise ValueError(f"unknown integer function base {self.base!r}")

    def with_log(self) -> "IntegerFunction":
        if self.log:
            raise DomainError("integer function is already logarithmic")
        return IntegerFunction(self.base, self.k, True)


def _pp_int_table(table: PrimeTable, hi: int, value: Callable[[int, int], int]) -> np.ndarray:
    """int64 array indexed by q holding value(p, alpha) at every prime power q = p**alpha <= hi."""
    ps, als, qs = prime_powers(table, hi)
    vals = [value(p, a) for p, a in zip(ps.tolist(), als.tolist())]
    if vals and max(vals) > INT64_MAX:
        raise ArithmeticOverflowError("prime-power value exceeds the int64 range")
    out = np.ones(hi + 1, dtype=np.int64)
    out[qs] = vals
    return out


def multiplicative_int_array(table: PrimeTable, hi: int, name: str, k: int = 1) -> np.ndarray:
    """Exact int64 values of phi or sigma_k at every x in [0, hi] (index 0 holds 0).

    Raises:
        ArithmeticOverflowError: if any value leaves the int64 range.
    """

    def build():
        if name == "phi":
            pp = _pp_int_table(table, hi, lambda p, a: p ** (a - 1) * (p - 1))
        elif name == "sigma":
            pp = _pp_int_table(table, hi, lambda p, a: sigma_prime_power(p, a, k))
        else:
            raise ValueError(f"no exact array for {name!r}")
        full, _, _, overflow = _backend.kernels.pp_prod_probe_int(table.smallest_prime_factor, pp, 2, hi)
        if overflow:
            raise ArithmeticOverflowError(f"{name}_{k} exceeds int64 below {hi}")
        out = np.empty(hi + 1, dtype=np.int64)
        out[0] = 0
        out[1] = 1
        out[2:] = full
        out.setflags(write=False)
        return out

    return table.cached(("mult_int", name, k, hi), build)


def integer_function_array(
    fn: IntegerFunction,
    table: PrimeTable,
    hi: int,
    formula: Callable[[np.ndarray], np.ndarray] | None = None,
) -> np.ndarray:
    """Float values of ``fn`` at every x in [0, hi]; entries 0 and 1 are NaN."""

    def build():
        x = np.arange(hi + 1, dtype=np.float64)
        with np.errstate(divide="ignore", invalid="ignore"):
            if fn.base == "formula":
                if formula is None:
                    raise ValueError("formula base needs the kernel expression")
                v = np.asarray(formula(x), dtype=np.float64)
            elif fn.base == "phi":
                v = multiplicative_int_array(table, hi, "phi").astype(np.float64)
            elif fn.base == "sigma":
                v = multiplicative_int_array(table, hi, "sigma", fn.k).astype(np.float64)
            elif fn.base == "id_over_phi":
                v = x / multiplicative_int_array(table, hi, "phi")
            else:
                v = multiplicative_int_array(table, hi, "sigma", 0) / x
            if fn.log:
                v = np.log(v)
        v = v.copy()
        v[:2] = np.nan
        v.setflags(write=False)
        return v

    key = ("intfn", fn, hi, None if formula is None else id(formula))
    return table.cached(key, build)


@dataclass(frozen=True)
class PrimePowerKernel:
    """A map (p, alpha) -> value generating an additive or multiplicative function.

    Attributes:
        id: stable name.
        func: vectorized closed form taking float arrays ``(p, alpha)``.
        exact: optional integer closed form; when present, products are compared exactly.
        arith: the arithmetic function this kernel generates, evaluated on whole
            integers (used by the brute-force oracle).
    """

    id: str
    func: Callable[[np.ndarray, np.ndarray], np.ndarray]
    exact: Callable[[int, int], int] | None = None
    arith: IntegerFunction | None = None

    def __call__(self, p: int, alpha: int):
        if self.exact is not None:
            return self.exact(p, alpha)
        v = float(self.func(np.array([p], dtype=np.float64), np.array([alpha], dtype=np.float64))[0])
        if not math.isfinite(v):
            raise KernelDomainError(f"{self.id} undefined at {p}^{alpha}")
        return v

    def table_values(self, table: PrimeTable, hi: int) -> np.ndarray:
        """Kernel values indexed by prime power q <= hi (int64 when exact, else float)."""

        def build():
            if self.exact is not None:
                out = _pp_int_table(table, hi, self.exact)
            else:
                ps, als, qs = prime_powers(table, hi)
                with np.errstate(divide="ignore", invalid="ignore"):
                    v = self.func(ps.astype(np.float64), als.astype(np.float64))
                out = np.full(hi + 1, np.nan)
                out[qs] = v
            out.setflags(write=False)
            return out

        return table.cached(("ppk", self.id, hi), build)


def additive_eval(k: PrimePowerKernel, f: Factorization) -> float:
    s = 0.0
    for p, a in f:
        s += k(p, a)
    return s


def multiplicative_eval(k: PrimePowerKernel, f: Factorization):
    out = 1 if k.exact is not None else 1.0
    for p, a in f:
        out *= k(p, a)
    return out


def _kernel_value(k, p: int) -> float:
    if p < k.p_min:
        raise KernelDomainError(f"{k.id} undefined at p={p} (p_min={k.p_min})")
    return k(p)


def strongly_additive_eval(k, f: Factorization) -> float:
    """Sum of k(p) over the distinct primes of n, ascending."""
    s = 0.0
    for p, _ in f:
        s += _kernel_value(k, p)
    return s


def strongly_multiplicative_eval(k, f: Factorization) -> float:
    """Product of k(p) over the distinct primes of n, ascending."""
    s = 1.0
    for p, _ in f:
        s *= _kernel_value(k, p)
    return s


def _log_phi_pp(p, a):
    return np.log(p ** (a - 1) * (p - 1))


def _log_tau_over_id_pp(p, a):
    return np.log((a + 1) / p**a)


LN_PHI_PP = PrimePowerKernel("ln_phi", _log_phi_pp, arith=IntegerFunction("phi", log=True))
LN_TAU_OVER_ID_PP = PrimePowerKernel(
    "ln_tau_over_id", _log_tau_over_id_pp, arith=IntegerFunction("tau_over_id", log=True)
)
PHI_PP = PrimePowerKernel(
    "phi",
    lambda p, a: p ** (a - 1) * (p - 1),
    exact=lambda p, a: p ** (a - 1) * (p - 1),
    arith=IntegerFunction("phi"),
)
TAU_PP = PrimePowerKernel("tau", lambda p, a: a + 1, exact=lambda p, a: a + 1, arith=IntegerFunction("sigma", k=0))
BIG_OMEGA_PP = PrimePowerKernel("big_omega", lambda p, a: a * 1.0)


def sigma_k_pp(k: int) -> PrimePowerKernel:
    """Exact sigma_k on prime powers."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    return PrimePowerKernel(
        f"sigma_k:{k}",
        lambda p, a: (p ** ((a + 1) * k) - 1) / (p**k - 1) if k else a + 1,
        exact=lambda p, a: sigma_prime_power(p, a, k),
        arith=IntegerFunction("sigma", k=k),
    )


def totient_product_identity(table: PrimeTable, lo: int, hi: int) -> np.ndarray:
    """Per n in [lo, hi]: does n * prod_{p|n}(p - 1) == phi(n) * prod_{p|n} p hold in integers?"""
    if hi > table.limit:
        raise DomainError(f"{hi} exceeds table limit {table.limit}")
    spf = table.smallest_prime_factor
    pk = _backend.kernels
    phi_pp = _pp_int_table(table, hi, lambda p, a: p ** (a - 1) * (p - 1))
    rad_pp = _pp_int_table(table, hi, lambda p, a: p)
    phi_n, phi_rad, _, o1 = pk.pp_prod_probe_int(spf, phi_pp, lo, hi)
    rad, _, _, o2 = pk.pp_prod_probe_int(spf, rad_pp, lo, hi)
    if o1 or o2 or hi > 3_037_000_499:
        raise ArithmeticOverflowError("identity operands exceed int64")
    n = np.arange(lo, hi + 1, dtype=np.int64)
    return n * phi_rad == phi_n * rad
