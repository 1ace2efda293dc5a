"""The numba kernels and the pure-numpy fallback must agree bit for bit."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from extremal_arith import _backend
from extremal_arith.arith import LN_TAU_OVER_ID_PP, sigma_k_pp
from extremal_arith.kernels import get_kernel

nb = _backend.load("numba")
npk = _backend.load("numpy")

CONFIGS = [
    ("A1", ["ln_phi"]), ("A1", ["ratio1"]), ("A2", ["ln_tau_over_p"]), ("A3", ["sigma2"]),
    ("A4", ["n_over_phi"]), ("A5", ["ratio1"]), ("A6", ["ratio2"]), ("A5C", ["ln_phi", "ln_sigma"]),
    ("A6C", ["phi", "sigma2"]), ("A7", ["ln_phi"]), ("A7", ["ln_tau_over_id"]), ("A8", ["sigma_k:3"]),
    ("A8", ["tau"]), ("MAXORD", []),
]

SCRIPT = """
import json, sys
from extremal_arith import sweep, _backend
from extremal_arith.report import dumps
configs = json.loads(sys.argv[1])
print(_backend.NAME)
for a, ks in configs:
    print(dumps(sweep(a, ks, int(sys.argv[2]), chunk=30011)))
"""


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        _backend.load("fortran")


def test_sieves_identical():
    for limit in (2, 3, 100, 65537, 300000):
        a, b = nb.spf_sieve(limit), npk.spf_sieve(limit)
        assert a.dtype == b.dtype and np.array_equal(a, b)


def test_range_kernels_identical(table):
    spf = table.smallest_prime_factor
    for lo, hi in ((2, 2), (2, 1000), (31000, 99999)):
        assert np.array_equal(nb.omega_range(spf, lo, hi), npk.omega_range(spf, lo, hi))
        for kid in ("ln_phi", "n_over_phi", "ratio2"):
            vals = get_kernel(kid).values(table)
            for fn in ("strong_sum", "strong_prod"):
                x = getattr(nb, fn)(spf, table.prime_index, vals, lo, hi)
                y = getattr(npk, fn)(spf, table.prime_index, vals, lo, hi)
                assert np.array_equal(x, y, equal_nan=True) and x.tobytes() == y.tobytes()
        ppv = LN_TAU_OVER_ID_PP.table_values(table, hi)
        for fn in ("pp_sum_probe", "pp_prod_probe"):
            for x, y in zip(getattr(nb, fn)(spf, ppv, lo, hi), getattr(npk, fn)(spf, ppv, lo, hi)):
                assert x.tobytes() == y.tobytes()
        ppi = sigma_k_pp(3).table_values(table, hi)
        rx, ry = nb.pp_prod_probe_int(spf, ppi, lo, hi), npk.pp_prod_probe_int(spf, ppi, lo, hi)
        assert all(np.array_equal(x, y) for x, y in zip(rx[:3], ry[:3])) and rx[3] == ry[3]


def _run(backend: str, n: int) -> list[str]:
    env = dict(os.environ, EXTREMAL_ARITH_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", SCRIPT, json.dumps(CONFIGS), str(n)], env=env,
                         capture_output=True, text=True, check=True).stdout
    name, _, body = out.partition("\n")
    assert name == backend
    return body


@pytest.mark.slow
def test_sweep_reports_identical_across_backends():
    assert _run("numba", 200000) == _run("numpy", 200000)
