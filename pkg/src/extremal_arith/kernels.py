"""Prime kernels with validated analytic metadata, the builtin registry and the sup tracker."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .arith import (
    BIG_OMEGA_PP,
    LN_PHI_PP,
    LN_TAU_OVER_ID_PP,
    PHI_PP,
    TAU_PP,
    IntegerFunction,
    PrimePowerKernel,
    integer_function_array,
    sigma_k_pp,
)
from .errors import (
    DomainError,
    OrderingError,
    PositivityError,
    RegistrationError,
    UnknownKernelError,
)
from .primes import PrimeTable, get_table

DEFAULT_VALIDATION_LIMIT = 10**6

MONOTONICITY = ("increasing", "decreasing", "constant", "none")
# each class implies every class listed before it
POSITIVITY = ("unrestricted", "f>=0", "f>0", "g>=1", "g>1")

_POSITIVITY_TEST = {
    "unrestricted": lambda v: np.ones(v.shape, dtype=bool),
    "f>=0": lambda v: v >= 0,
    "f>0": lambda v: v > 0,
    "g>=1": lambda v: v >= 1,
    "g>1": lambda v: v > 1,
}


def positivity_at_least(have: str, need: str) -> bool:
    return POSITIVITY.index(have) >= POSITIVITY.index(need)


@dataclass(frozen=True)
class PrimeKernel:
    """A real function of a prime with declared monotonicity and positivity.

    ``threshold`` is the prime ``a`` from which an increasing kernel increases;
    it defaults to ``p_min``. ``extension`` names the arithmetic function on all
    integers x >= p_min whose running maximum feeds the sup-based bounds.
    """

    id: str
    func: Callable[[np.ndarray], np.ndarray]
    p_min: int = 2
    monotonicity: str = "none"
    threshold: int | None = None
    positivity: str = "unrestricted"
    extension: IntegerFunction = field(default_factory=lambda: IntegerFunction("formula"))

    def __post_init__(self):
        if self.monotonicity not in MONOTONICITY:
            raise ValueError(f"monotonicity must be one of {MONOTONICITY}")
        if self.positivity not in POSITIVITY:
            raise ValueError(f"positivity must be one of {POSITIVITY}")
        if self.threshold is None:
            object.__setattr__(self, "threshold", self.p_min)

    def __call__(self, p: int) -> float:
        return float(self.func(np.array([p], dtype=np.float64))[0])

    def values(self, table: PrimeTable) -> np.ndarray:
        """Kernel values aligned with ``table.prime_list``; NaN below ``p_min``."""

        def build():
            with np.errstate(divide="ignore", invalid="ignore"):
                v = np.asarray(self.func(table.prime_list.astype(np.float64)), dtype=np.float64).copy()
            v[table.prime_list < self.p_min] = np.nan
            v.setflags(write=False)
            return v

        return table.cached(("kernel", self.id, id(self.func)), build)

    def extension_values(self, table: PrimeTable, hi: int) -> np.ndarray:
        """Integer extension at every x in [0, hi]; NaN below ``p_min``."""
        v = integer_function_array(self.extension, table, hi, self.func)
        if self.p_min > 2:
            v = v.copy()
            v[: self.p_min] = np.nan
        return v

    def integer_extension(self, table: PrimeTable) -> Callable[[int], float]:
        v = self.extension_values(table, table.limit)
        return lambda x: float(v[x])

    @property
    def increasing(self) -> bool:
        return self.monotonicity in ("increasing", "constant")

    @property
    def decreasing(self) -> bool:
        return self.monotonicity in ("decreasing", "constant")


def validate_kernel(k: PrimeKernel, table: PrimeTable, validation_limit: int) -> None:
    """Check declared metadata at every prime in [p_min, validation_limit].

    Raises:
        RegistrationError: naming the first prime that violates a declaration.
    """
    primes = table.prime_list
    sel = (primes >= k.p_min) & (primes <= validation_limit)
    ps = primes[sel]
    if ps.size == 0:
        raise RegistrationError(f"{k.id}: no primes in [{k.p_min}, {validation_limit}]")
    if int(ps[0]) != k.p_min:
        raise RegistrationError(f"{k.id}: p_min={k.p_min} is not prime", witness=k.p_min)
    v = k.values(table)[sel]
    bad = ~np.isfinite(v)
    if bad.any():
        w = int(ps[np.argmax(bad)])
        raise RegistrationError(f"{k.id}: not finite at p={w}", witness=w)
    if k.monotonicity == "increasing":
        if k.threshold < k.p_min or not table.is_prime(k.threshold):
            raise RegistrationError(f"{k.id}: threshold {k.threshold} is not a prime >= p_min")
        tail = ps >= k.threshold
        drops = np.diff(v[tail]) < 0
        if drops.any():
            w = int(ps[tail][1:][np.argmax(drops)])
            raise RegistrationError(f"{k.id}: declared increasing from {k.threshold} but drops at p={w}", witness=w)
    elif k.monotonicity == "decreasing":
        rises = np.diff(v) > 0
        if rises.any():
            w = int(ps[1:][np.argmax(rises)])
            raise RegistrationError(f"{k.id}: declared decreasing but rises at p={w}", witness=w)
    elif k.monotonicity == "constant":
        moves = v != v[0]
        if moves.any():
            w = int(ps[np.argmax(moves)])
            raise RegistrationError(f"{k.id}: declared constant but changes at p={w}", witness=w)
    ok = _POSITIVITY_TEST[k.positivity](v)
    if not ok.all():
        w = int(ps[np.argmax(~ok)])
        raise RegistrationError(f"{k.id}: positivity {k.positivity} fails at p={w}", witness=w)


class KernelRegistry:
    """Name -> validated kernel map. Ids of the form ``sigma_k:K`` are built on demand."""

    def __init__(self, validation_limit: int = DEFAULT_VALIDATION_LIMIT):
        self.validation_limit = validation_limit
        self._kernels: dict[str, PrimeKernel] = {}
        self._lock = threading.Lock()

    def register(self, k: PrimeKernel) -> PrimeKernel:
        validate_kernel(k, get_table(self.validation_limit), self.validation_limit)
        with self._lock:
            self._kernels[k.id] = k
        return k

    def get(self, kid: str) -> PrimeKernel:
        kid = kid.strip().lower()
        with self._lock:
            if kid in self._kernels:
                return self._kernels[kid]
        if kid.startswith("sigma_k"):
            return self.register(sigma_k_kernel(_parse_k(kid)))
        raise UnknownKernelError(f"unknown prime kernel {kid!r}; known: {', '.join(sorted(self._kernels))}")

    def ids(self) -> list[str]:
        return sorted(self._kernels)


def register_kernel(spec: PrimeKernel, validation_limit: int) -> PrimeKernel:
    """Validate ``spec`` against its declared metadata; return it or raise RegistrationError."""
    if validation_limit < spec.p_min:
        raise DomainError(f"validation_limit {validation_limit} below p_min {spec.p_min}")
    validate_kernel(spec, get_table(validation_limit), validation_limit)
    return spec


def _parse_k(kid: str) -> int:
    _, _, tail = kid.partition(":")
    if not tail:
        return 1
    try:
        k = int(tail)
    except ValueError:
        raise UnknownKernelError(f"bad sigma_k order in {kid!r}") from None
    if k < 0:
        raise UnknownKernelError(f"sigma_k order must be >= 0 in {kid!r}")
    return k


def sigma_k_kernel(k: int) -> PrimeKernel:
    """p -> p**k + 1, i.e. sigma_k at a prime."""
    if k == 0:
        return PrimeKernel(
            "sigma_k:0", lambda p: p**0 + 1.0, monotonicity="constant", positivity="g>1",
            extension=IntegerFunction("sigma", k=0),
        )
    return PrimeKernel(
        f"sigma_k:{k}", lambda p: p**k + 1.0, monotonicity="increasing", positivity="g>1",
        extension=IntegerFunction("sigma", k=k),
    )


def _ln_phi(p):
    return np.log(p - 1.0)


def _ln_sigma(p):
    return np.log(p + 1.0)


def _n_over_phi(p):
    return p / (p - 1.0)


def _ln_tau_over_p(p):
    return np.log(2.0 / p)


def _tau_over_p(p):
    return 2.0 / p


def _inv_p_minus_1(p):
    return 1.0 / (p - 1.0)


def _phi(p):
    return p - 1.0


def _sigma2(p):
    return p * p + 1.0


def _ratio1(p):
    return (p * p + p + 1.0) / (p - 1.0)


def _ratio2(p):
    return (p * p + p + 1.0) / (p - 2.0)


LN_PHI = PrimeKernel("ln_phi", _ln_phi, monotonicity="increasing", positivity="f>=0",
                     extension=IntegerFunction("phi", log=True))
LN_SIGMA = PrimeKernel("ln_sigma", _ln_sigma, monotonicity="increasing", positivity="g>1",
                       extension=IntegerFunction("sigma", k=1, log=True))
N_OVER_PHI = PrimeKernel("n_over_phi", _n_over_phi, monotonicity="decreasing", positivity="g>1",
                         extension=IntegerFunction("id_over_phi"))
LN_TAU_OVER_P = PrimeKernel("ln_tau_over_p", _ln_tau_over_p, monotonicity="decreasing",
                            extension=IntegerFunction("tau_over_id", log=True))
TAU_OVER_P = PrimeKernel("tau_over_p", _tau_over_p, monotonicity="decreasing", positivity="f>0",
                         extension=IntegerFunction("tau_over_id"))
INV_P_MINUS_1 = PrimeKernel("inv_p_minus_1", _inv_p_minus_1, monotonicity="decreasing", positivity="f>0")
PHI = PrimeKernel("phi", _phi, monotonicity="increasing", positivity="g>=1", extension=IntegerFunction("phi"))
SIGMA2 = PrimeKernel("sigma2", _sigma2, monotonicity="increasing", positivity="g>1",
                     extension=IntegerFunction("sigma", k=2))
RATIO1 = PrimeKernel("ratio1", _ratio1, monotonicity="increasing", threshold=3, positivity="g>1")
# pole at p = 2, so even n lie outside its domain
RATIO2 = PrimeKernel("ratio2", _ratio2, p_min=3, monotonicity="increasing", threshold=5, positivity="g>1")


def builtin_kernels() -> list[PrimeKernel]:
    return [
        LN_PHI, LN_SIGMA, N_OVER_PHI, LN_TAU_OVER_P, TAU_OVER_P, INV_P_MINUS_1,
        sigma_k_kernel(0), sigma_k_kernel(1), sigma_k_kernel(2), sigma_k_kernel(3),
        PHI, SIGMA2, RATIO1, RATIO2,
    ]


def log_kernel(k: PrimeKernel) -> PrimeKernel:
    """ln of a positive kernel, with monotonicity kept and positivity shifted down."""
    if not positivity_at_least(k.positivity, "f>0"):
        raise PositivityError(f"{k.id} is not declared positive; ln undefined")
    pos = {"g>1": "f>0", "g>=1": "f>=0"}.get(k.positivity, "unrestricted")
    inner = k.func
    return replace(
        k, id=f"ln({k.id})", func=lambda p: np.log(inner(p)), positivity=pos,
        extension=k.extension.with_log(),
    )


_default: KernelRegistry | None = None
_default_lock = threading.Lock()


def default_registry() -> KernelRegistry:
    """Registry holding every builtin kernel, validated at all primes <= 10**6."""
    global _default
    with _default_lock:
        if _default is None:
            reg = KernelRegistry()
            for k in builtin_kernels():
                reg.register(k)
            _default = reg
        return _default


def get_kernel(kid: str | PrimeKernel) -> PrimeKernel:
    if isinstance(kid, PrimeKernel):
        return kid
    return default_registry().get(kid)


_PP_KERNELS = {k.id: k for k in (LN_PHI_PP, LN_TAU_OVER_ID_PP, PHI_PP, TAU_PP, BIG_OMEGA_PP)}


def get_prime_power_kernel(kid: str | PrimePowerKernel) -> PrimePowerKernel:
    if isinstance(kid, PrimePowerKernel):
        return kid
    kid = kid.strip().lower()
    if kid in _PP_KERNELS:
        return _PP_KERNELS[kid]
    if kid.startswith("sigma_k"):
        return sigma_k_pp(_parse_k(kid))
    if kid == "sigma":
        return sigma_k_pp(1)
    raise UnknownKernelError(
        f"unknown prime-power kernel {kid!r}; known: {', '.join(sorted(_PP_KERNELS))}, sigma_k:K"
    )


class SupTracker:
    """Running maximum of an integer function over x in [start, n], forward only.

    >>> t = SupTracker(lambda x: -abs(x - 5))
    >>> t.advance(3), t.advance(9)
    (-2, 0)
    """

    def __init__(self, func: Callable[[int], float], start: int = 2):
        self.func = func
        self.start = start
        self.current_n = start - 1
        self.current_sup = -math.inf
        self._values: np.ndarray | None = None

    @classmethod
    def from_values(cls, values: np.ndarray, start: int = 2) -> "SupTracker":
        t = cls(lambda x: float(values[x]), start)
        t._values = values
        return t

    def advance(self, n: int) -> float:
        if n < self.current_n:
            raise OrderingError(f"tracker at {self.current_n} cannot move back to {n}")
        for x in range(self.current_n + 1, n + 1):
            v = self.func(x)
            if v > self.current_sup:
                self.current_sup = v
        self.current_n = max(self.current_n, n)
        return self.current_sup

    def advance_range(self, hi: int) -> np.ndarray:
        """Advance to ``hi`` returning the sup after each step current_n+1..hi."""
        if hi < self.current_n:
            raise OrderingError(f"tracker at {self.current_n} cannot move back to {hi}")
        lo = self.current_n + 1
        if self._values is None:
            return np.array([self.advance(x) for x in range(lo, hi + 1)], dtype=np.float64)
        seg = np.asarray(self._values[lo : hi + 1], dtype=np.float64)
        out = np.maximum.accumulate(np.concatenate(([self.current_sup], seg)))[1:]
        if out.size:
            self.current_sup = float(out[-1])
        self.current_n = hi
        return out


def sup_advance(t: SupTracker, n: int) -> float:
    return t.advance(n)
