import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extremal_arith import (
    Constants,
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
    factorize,
    get_kernel,
    get_table,
    maximal_order_checks,
)
from extremal_arith.arith import LN_PHI_PP, LN_TAU_OVER_ID_PP, TAU_PP, sigma_k_pp
from extremal_arith.bounds import GE, LE, TolerancePolicy, make_check, zeta
from extremal_arith.errors import KernelDomainError, MisuseError, PositivityError

LN2, LN3 = math.log(2), math.log(3)
# sigma(5041) = 1 + 71 + 5041; e^gamma * 5041 * ln ln 5041 at 30 digits via mpmath
SIGMA_5041 = 5113
ROBIN_RHS_5041 = 19241.0873467417


def F(n):
    return factorize(get_table(10**5), n)


def test_tolerance_rule():
    pol = TolerancePolicy()
    assert make_check("A1", 2, 1.0 + 1.5e-12, 1.0, LE, pol).holds
    assert not make_check("A1", 2, 1.0 + 3e-12, 1.0, LE, pol).holds
    assert make_check("A1", 2, 1e6 + 5e-7, 1e6, LE, pol).holds
    assert not make_check("A1", 2, 1e6 + 2e-6, 1e6, LE, pol).holds
    assert not make_check("A8", 2, 3, 2, LE, pol, exact=True).holds
    assert make_check("A5", 2, 1.0, 1.0, GE, pol).slack == 0.0


def test_a1():
    k = get_kernel("ln_phi")
    c = bound_a1(F(12), k, math.log(10))
    assert c.lhs == pytest.approx(LN2, abs=1e-15)
    assert c.rhs == pytest.approx(2 * math.log(10), abs=1e-15)
    assert c.holds
    c = bound_a1(F(13), k, math.log(12))
    assert c.slack == pytest.approx(math.log(12) - math.log(12), abs=1e-15) and c.holds
    c = bound_a1(F(1), k, 0.0)
    assert (c.lhs, c.rhs, c.slack, c.holds) == (0.0, 0.0, 0.0, True)


def test_a2(table):
    k = get_kernel("ln_tau_over_p")
    c = bound_a2(F(35), k, table)
    assert c.rhs == pytest.approx(math.log(1) + math.log(2 / 3), abs=1e-15)
    assert c.lhs == pytest.approx(math.log(2 / 5) + math.log(2 / 7), abs=1e-15)
    assert c.holds and c.lhs < c.rhs
    assert bound_a2(F(30), k, table).slack == 0.0
    c = bound_a2(F(2**10), get_kernel("inv_p_minus_1"), table)
    assert (c.lhs, c.rhs, c.slack) == (1.0, 1.0, 0.0)
    assert c.meta["p_omega"] == 2
    with pytest.raises(MisuseError):
        bound_a2(F(12), get_kernel("ln_phi"), table)


def test_a3():
    c = bound_a3(F(12), get_kernel("phi"), math.log(10))
    assert c.lhs == 2.0
    assert c.rhs == pytest.approx(100.0, rel=1e-14)
    assert bound_a3(F(13), get_kernel("phi"), math.log(12)).holds
    c = bound_a3(F(1), get_kernel("phi"), 0.0)
    assert (c.lhs, c.rhs, c.holds) == (1.0, 1.0, True)
    with pytest.raises(PositivityError):
        bound_a3(F(6), get_kernel("ln_phi"), 1.0)


def test_a3_is_exp_of_a1_with_log_kernel(table):
    from extremal_arith.kernels import log_kernel

    g = get_kernel("sigma2")
    lg = log_kernel(g)
    ext = g.extension_values(table, 5000)
    sup_log = -math.inf
    for n in range(2, 5001):
        sup_log = max(sup_log, math.log(ext[n]))
        a1 = bound_a1(F(n), lg, sup_log)
        a3 = bound_a3(F(n), g, sup_log)
        assert a3.lhs == pytest.approx(math.exp(a1.lhs), rel=1e-9)
        assert a3.rhs == pytest.approx(math.exp(a1.rhs), rel=1e-9)


def test_a4(table):
    k = get_kernel("n_over_phi")
    c = bound_a4(F(15), k, table)
    assert c.lhs == pytest.approx(15 / 8, rel=1e-15) and c.rhs == 3.0
    assert bound_a4(F(30030), k, table).slack == 0.0
    for n in (2, 12, 360, 9973, 30030):
        assert bound_a4(F(n), k, table).lhs == pytest.approx(n / _phi(n), rel=1e-14)
    with pytest.raises(MisuseError):
        bound_a4(F(6), get_kernel("phi"), table)
    with pytest.raises(MisuseError):
        bound_a4(F(6), get_kernel("ln_sigma"), table)


def _phi(n):
    from extremal_arith import euler_phi

    return euler_phi(F(n))


def test_a5():
    r1 = get_kernel("ratio1")
    c = bound_a5(F(27), r1)
    assert (c.lhs, c.rhs, c.slack) == (6.5, 6.5, 0.0)
    c = bound_a5(F(2), r1)
    assert c.lhs == 7.0 and c.holds
    for n in (2, 3, 10, 9999):
        assert bound_a5(F(n), get_kernel("ln_sigma")).lhs >= LN3 - 1e-15
    with pytest.raises(MisuseError):
        bound_a5(F(6), get_kernel("n_over_phi"))


def test_a6():
    r2 = get_kernel("ratio2")
    c = bound_a6(F(25), r2)
    assert c.lhs == 31 / 3 == c.rhs
    c = bound_a6(F(15), r2)
    assert c.lhs == pytest.approx(13 * 31 / 3, rel=1e-15) and c.holds
    with pytest.raises(KernelDomainError):
        bound_a6(F(10), r2)
    for k in (1, 2, 3):
        c = bound_a6(F(2**7), get_kernel(f"sigma_k:{k}"))
        assert c.lhs == c.rhs == 2**k + 1
    with pytest.raises(MisuseError):
        bound_a6(F(6), get_kernel("ln_phi"))


def test_corollaries():
    pair = [get_kernel("ln_phi"), get_kernel("ln_sigma")]
    for n in (2, 3, 12, 97, 9240):
        c = bound_a5_corollary(F(n), pair)
        assert c.rhs == pytest.approx(LN3, abs=1e-15) and c.holds
    ls = get_kernel("ln_sigma")
    c = bound_a5_corollary(F(2), [ls, ls])
    assert c.lhs == c.rhs == 2 * LN3
    assert bound_a5_corollary(F(12), [ls]).lhs == bound_a5(F(12), ls).lhs
    pair = [get_kernel("phi"), get_kernel("sigma2")]
    for n in (3, 12, 97):
        assert bound_a6_corollary(F(n), pair).holds and bound_a6_corollary(F(n), pair).rhs == 5.0
    c = bound_a6_corollary(F(64), pair)
    assert c.lhs == c.rhs == 5.0
    assert bound_a6_corollary(F(12), [get_kernel("phi")]).lhs == bound_a6(F(12), get_kernel("phi")).lhs


def test_a7():
    c = bound_a7(F(12), LN_PHI_PP)
    assert c.direction == LE
    assert c.lhs == pytest.approx(LN2, abs=1e-15) and c.rhs == pytest.approx(math.log(4), abs=1e-15)
    c = bound_a7(F(12), LN_TAU_OVER_ID_PP)
    assert c.direction == GE
    assert c.lhs == pytest.approx(math.log(2 / 3), abs=1e-15) and c.rhs == pytest.approx(math.log(0.5), abs=1e-15)
    for n in (6, 30, 2310, 9973):
        assert bound_a7(F(n), LN_PHI_PP).slack == 0.0


def test_a8():
    c = bound_a8(F(12), sigma_k_pp(1))
    assert (c.lhs, c.rhs, c.exact) == (12, 28, True)
    c = bound_a8(F(12), TAU_PP)
    assert (c.lhs, c.rhs) == (4, 6)
    assert bound_a8(F(30030), sigma_k_pp(3)).slack == 0
    assert isinstance(bound_a8(F(720), sigma_k_pp(2)).lhs, int)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 10**5), st.integers(0, 3))
def test_a8_sigma_property(n, k):
    c = bound_a8(F(n), sigma_k_pp(k))
    assert c.holds
    assert (c.slack == 0) == F(n).squarefree


def test_zeta_against_mpmath():
    for k in range(2, 20):
        assert zeta(k) == float(mpmath.zeta(k))
    assert Constants().zeta[2] == pytest.approx(math.pi**2 / 6, rel=1e-16)


def test_maximal_order_examples():
    checks = {c.label: c for c in maximal_order_checks(F(5041))}
    robin = checks["sigma_egamma"]
    assert robin.lhs == SIGMA_5041
    assert robin.rhs == pytest.approx(ROBIN_RHS_5041, rel=1e-13)
    assert robin.enforced and robin.holds
    assert not checks["sigma_zeta[k=2]"].enforced
    z2 = {c.label: c for c in maximal_order_checks(F(10**4))}["sigma_zeta[k=2]"]
    assert z2.lhs == 138753241
    assert z2.rhs == pytest.approx(1e8 * math.pi**2 / 6, rel=1e-15)
    assert all(c.label.startswith("sigma_zeta") for c in maximal_order_checks(F(2)))
    assert not {c.label: c for c in maximal_order_checks(F(5040))}["sigma_egamma"].enforced
