"""Strongly additive / multiplicative arithmetic functions and their extremal bounds."""

from .arith import (
    IntegerFunction,
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
from .bounds import (
    BoundCheck,
    Constants,
    TolerancePolicy,
    bound_a1,
    bound_a2,
    bound_a3,
    bound_a4,
    bound_a5,
    bound_a5_corollary,
    bound_a6,
    bound_a6_corollary,
    bound_a7,
    bound_a8,
    maximal_order_checks,
)
from .kernels import (
    PrimeKernel,
    SupTracker,
    builtin_kernels,
    get_kernel,
    get_prime_power_kernel,
    register_kernel,
    sup_advance,
)
from .primes import Factorization, PrimeTable, build_table, chebyshev_theta, factorize, get_table, nth_prime
from .verify import AssertionReport, brute_force_oracle, find_extremal, sweep

__version__ = "0.1.0"
