import math

import pytest

from extremal_arith import AssertionReport, find_extremal, get_table, sweep
from extremal_arith.errors import MisuseError, RangeError, UnknownKernelError
from extremal_arith.evaluate import evaluate_one, evaluate_range, resolve
from extremal_arith.primes import build_table
from extremal_arith.verify import estimate_ordering, merge_reports, theta_lemma


def test_sweep_ratio1_witnesses(table):
    r = sweep("a5", ["ratio1"], 10**4, table=table)
    assert r.violations == [] and r.ok
    assert {3, 9, 81, 6561} <= set(r.equality_witnesses)
    assert r.min_slack == {"n": 3, "slack": 0.0}


def test_sweep_sigma_exact(table):
    r = sweep("a8", ["sigma_k:1"], 10**4, table=table)
    assert r.violations == [] and r.exact
    assert r.checked == 9999


def test_sweep_single_point(table):
    r = sweep("a2", ["ln_tau_over_p"], 2, table=table)
    assert r.checked == 1 and r.equality_witnesses == [2]


def test_ratio2_skips_even(table):
    r = sweep("a6", ["ratio2"], 1000, table=table)
    assert r.skipped == 500 == len(range(2, 1001, 2))
    assert r.skip_reasons == {"kernel_domain": 500}
    assert r.checked == 499


def test_find_extremal(table):
    assert find_extremal("a6", ["ratio2"], 1000, table=table) == [5, 25, 125, 625]
    assert find_extremal("a6", ["sigma_k:2"], 1000, table=table) == [2**m for m in range(1, 10)]
    assert find_extremal("a5", ["ln_phi"], 64, table=table) == [2, 4, 8, 16, 32, 64]


def test_find_extremal_values(table):
    plan = resolve("a6", ["sigma_k:2"])
    assert evaluate_one(plan, 512, table).lhs == 5.0
    assert evaluate_one(resolve("a5", ["ln_phi"]), 64, table).lhs == 0.0


def test_misuse_and_lookup_errors(table):
    with pytest.raises(MisuseError):
        sweep("a2", ["ln_phi"], 100, table=table)
    with pytest.raises(MisuseError):
        sweep("a4", ["ln_tau_over_p"], 100, table=table)
    with pytest.raises(MisuseError):
        sweep("a1", ["ln_phi", "phi"], 100, table=table)
    with pytest.raises(UnknownKernelError):
        sweep("a1", ["zeta"], 100, table=table)
    with pytest.raises(RangeError):
        sweep("a1", ["ln_phi"], 10**5 + 1, table=table)


def test_a3_rejects_nonpositive_kernels(table):
    with pytest.raises(MisuseError):
        sweep("a3", ["ln_phi"], 100, table=table)


def test_range_matches_pointwise(table):
    # the vectorized block path equals the per-n calculators, including sup state at block starts
    for aid, ks in (("A1", ["ln_sigma"]), ("A3", ["ratio1"]), ("A2", ["n_over_phi"]), ("A4", ["inv_p_minus_1"]),
                    ("A5C", ["ln_phi", "ln_sigma"]), ("A7", ["ln_tau_over_id"]), ("A8", ["phi"])):
        plan = resolve(aid, ks)
        ev = evaluate_range(plan, 900, 1400, table, top=1400)
        for n in (900, 901, 1024, 1155, 1399, 1400):
            c = evaluate_one(plan, n, table)
            i = n - 900
            assert ev.lhs[i] == pytest.approx(c.lhs, rel=1e-13, abs=1e-13)
            assert ev.rhs[i] == pytest.approx(c.rhs, rel=1e-13, abs=1e-13)
            assert bool(ev.holds[i]) == c.holds


def test_chunking_does_not_change_reports(table):
    base = sweep("a1", ["ln_phi"], 20000, table=table)
    for chunk in (1, 7, 999, 20000):
        assert sweep("a1", ["ln_phi"], 20000, table=table, chunk=chunk) == base


def test_merge_is_order_independent(table):
    parts = [sweep("a7", ["ln_tau_over_id"], hi, table=table) for hi in (500,)]
    from extremal_arith.verify import _blocks, _partial

    plan = resolve("a7", ["ln_tau_over_id"])
    parts = [_partial(evaluate_range(plan, lo, hi, table, top=5000), __import__("extremal_arith").TolerancePolicy(),
                      100, 1000) for lo, hi in _blocks(2, 5000, 613)]
    assert merge_reports(parts) == merge_reports(parts[::-1])
    assert merge_reports(parts) == sweep("a7", ["ln_tau_over_id"], 5000, table=table)


def test_violation_cap_keeps_exact_count():
    t = build_table(3000)
    # a tolerance below zero turns every equality into a violation
    from extremal_arith import TolerancePolicy

    pol = TolerancePolicy(rel=0.0, abs=-1e-9)
    r = sweep("a7", ["ln_phi"], 3000, pol, table=t, violation_cap=5)
    assert len(r.violations) == 5
    assert r.violation_count > 5


def test_report_round_trips_through_dict(table):
    r = sweep("a2", ["inv_p_minus_1"], 5000, table=table)
    assert AssertionReport.from_dict(r.to_dict()) == r


def test_theta_lemma_and_ordering(table):
    d = theta_lemma(10**4, table)
    assert d["max_theta_excess"]["value"] <= 1e-9
    assert math.isfinite(d["max_p_omega_over_ln_n"]["value"])
    r = estimate_ordering(10**4, table)
    assert r.violation_count == 0 and r.checked == 10**4 - 2


def test_maxord_sweep(table):
    r = sweep("maxord", [], 10**4, table=get_table(10**4))
    assert r.ok and r.checked == 10**4 - 5040
    assert r.diagnostics["min_phi_lnln_over_n"]["n"] == 3


def test_maxord_pointwise_below_threshold_is_report_only(table):
    plan = resolve("maxord", [])
    c = evaluate_one(plan, 5040, table)
    assert not c.enforced and c.label == "sigma_egamma" and c.lhs == 19344.0
    assert evaluate_one(plan, 5041, table).enforced
