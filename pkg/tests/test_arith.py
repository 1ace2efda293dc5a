import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extremal_arith import (
    additive_eval,
    euler_phi,
    factorize,
    get_kernel,
    multiplicative_eval,
    omega,
    sigma_k,
    strongly_additive_eval,
    strongly_multiplicative_eval,
    tau,
)
from extremal_arith.arith import (
    BIG_OMEGA_PP,
    LN_PHI_PP,
    PHI_PP,
    multiplicative_int_array,
    sigma_k_pp,
    totient_product_identity,
)
from extremal_arith.errors import ArithmeticOverflowError, KernelDomainError
from extremal_arith.kernels import PrimeKernel
from extremal_arith.oracle import brute_phi, brute_sigma
from extremal_arith.primes import build_table, get_table

# phi(2..12) counted by hand
PHI_2_TO_12 = [1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]

ONE = PrimeKernel("one", lambda p: np.ones_like(p))
TWO = PrimeKernel("two", lambda p: np.full_like(p, 2.0))


def test_omega(table):
    assert omega(factorize(table, 12)) == 2
    assert omega(factorize(table, 1)) == 0
    assert omega(factorize(table, 2310)) == 5


def test_euler_phi(table):
    assert euler_phi(factorize(table, 1)) == 1
    assert euler_phi(factorize(table, 10)) == 4
    assert euler_phi(factorize(table, 9)) == 6
    assert [euler_phi(factorize(table, n)) for n in range(2, 13)] == PHI_2_TO_12


def test_sigma_and_tau(table):
    for p in (2, 3, 97, 7919):
        for k in range(4):
            assert sigma_k(factorize(table, p), k) == p**k + 1
        assert tau(factorize(table, p)) == 2
    assert sigma_k(factorize(table, 6), 1) == 12
    assert sigma_k(factorize(table, 8), 0) == 4
    assert tau(factorize(table, 1)) == 1
    assert tau(factorize(table, 12)) == 6
    assert tau(factorize(table, 720)) == 30


def test_sigma_scalar_is_unbounded(table):
    # 2^16 sigma_5 exceeds int64; Python ints keep it exact
    f = factorize(table, 65536)
    assert sigma_k(f, 5) == sum(2 ** (5 * i) for i in range(17))


def test_int_array_overflow_raises():
    t = build_table(70000)
    with pytest.raises(ArithmeticOverflowError):
        multiplicative_int_array(t, 70000, "sigma", 4)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3000), st.integers(0, 3))
def test_sigma_phi_against_divisor_enumeration(n, k):
    f = factorize(get_table(10**5), n)
    assert sigma_k(f, k) == brute_sigma(n, k)
    assert euler_phi(f) == brute_phi(n)


def test_int_arrays_match_scalars(table):
    phi = multiplicative_int_array(table, 2000, "phi")
    sig = multiplicative_int_array(table, 2000, "sigma", 2)
    for n in range(1, 2001):
        f = factorize(table, n)
        assert phi[n] == euler_phi(f)
        assert sig[n] == sigma_k(f, 2)


def test_additive_eval(table):
    assert additive_eval(LN_PHI_PP, factorize(table, 12)) == pytest.approx(2 * math.log(2), abs=1e-15)
    assert additive_eval(LN_PHI_PP, factorize(table, 1)) == 0.0
    assert additive_eval(BIG_OMEGA_PP, factorize(table, 72)) == 5


def test_strongly_additive_eval(table):
    ln_phi = get_kernel("ln_phi")
    assert strongly_additive_eval(ln_phi, factorize(table, 12)) == pytest.approx(math.log(2), abs=1e-15)
    assert strongly_additive_eval(ln_phi, factorize(table, 1)) == 0.0
    for n in (1, 2, 30, 2310, 9973, 65536):
        assert strongly_additive_eval(ONE, factorize(table, n)) == omega(factorize(table, n))


def test_multiplicative_eval(table):
    s1 = sigma_k_pp(1)
    assert multiplicative_eval(s1, factorize(table, 6)) == 12
    assert multiplicative_eval(s1, factorize(table, 1)) == 1
    assert multiplicative_eval(PHI_PP, factorize(table, 3**5)) == PHI_PP(3, 5) == 162


def test_strongly_multiplicative_eval(table):
    g = get_kernel("n_over_phi")
    assert strongly_multiplicative_eval(g, factorize(table, 12)) == pytest.approx(3.0, abs=1e-15)
    assert strongly_multiplicative_eval(g, factorize(table, 1)) == 1.0
    for n in (2, 30, 2310, 65536):
        assert strongly_multiplicative_eval(TWO, factorize(table, n)) == 2 ** omega(factorize(table, n))


def test_kernel_domain_error(table):
    with pytest.raises(KernelDomainError):
        strongly_additive_eval(get_kernel("ratio2"), factorize(table, 12))
    with pytest.raises(KernelDomainError):
        strongly_multiplicative_eval(get_kernel("ratio2"), factorize(table, 10))


def test_totient_product_identity(table):
    assert totient_product_identity(table, 2, 5000).all()
