import math

import pytest

from extremal_arith import brute_force_oracle, get_table
from extremal_arith.evaluate import evaluate_one, resolve
from extremal_arith.oracle import brute_phi, brute_sigma, divisors, trial_factorize


def test_brute_helpers():
    assert divisors(12) == (1, 2, 3, 4, 6, 12)
    assert [brute_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    assert brute_sigma(720, 0) == 30
    assert trial_factorize(360) == [(2, 3), (3, 2), (5, 1)]


def test_oracle_a1_matches_fast_path(table):
    o = brute_force_oracle("a1", "ln_phi", 12)
    c = evaluate_one(resolve("a1", ["ln_phi"]), 12, table)
    assert o.lhs == pytest.approx(c.lhs, abs=1e-12) and o.rhs == pytest.approx(c.rhs, abs=1e-12)
    assert o.rhs == pytest.approx(2 * math.log(10), abs=1e-15)
    assert o.holds == c.holds


def test_oracle_a8_tau():
    o = brute_force_oracle("a8", "sigma_k:0", 720)
    assert (o.lhs, o.rhs, o.exact) == (8, 30, True)


@pytest.mark.parametrize("aid,ks", [("a1", "ln_phi"), ("a3", "phi"), ("a4", "n_over_phi"), ("a5", "ratio1"),
                                    ("a6", "sigma2"), ("a5c", ["ln_phi", "ln_sigma"]), ("a6c", ["phi", "sigma2"]),
                                    ("a7", "ln_phi"), ("a8", "tau"), ("a2", "inv_p_minus_1")])
def test_oracle_identity_at_one(aid, ks):
    o = brute_force_oracle(aid, ks, 1)
    assert o.lhs == o.rhs and o.slack == 0 and o.holds


def test_oracle_maxord():
    o = brute_force_oracle("maxord", None, 5041)
    assert o.lhs == 5113 and o.enforced and o.holds
    assert brute_force_oracle("maxord", None, 5040).enforced is False
