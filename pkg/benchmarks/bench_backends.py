"""Time the numba kernels against the pure-numpy fallback.

Each backend runs in its own interpreter (the backend is fixed at import), so
numba compile time is reported separately from warm timings.

    python benchmarks/bench_backends.py --max 1000000 --repeat 3
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
t0 = time.perf_counter()
from extremal_arith import _backend
from extremal_arith.primes import build_table
from extremal_arith.verify import sweep
N, repeat = int(sys.argv[1]), int(sys.argv[2])
k = _backend.kernels
k.spf_sieve(100)
warmup = time.perf_counter() - t0

def best(fn):
    out = []
    for _ in range(repeat):
        s = time.perf_counter()
        fn()
        out.append(time.perf_counter() - s)
    return min(out)

res = {"backend": _backend.NAME, "import_and_compile_s": warmup, "sieve_s": best(lambda: k.spf_sieve(N))}
table = build_table(N)
for aid, ks in [("A1", ["ln_phi"]), ("A4", ["n_over_phi"]), ("A7", ["ln_tau_over_id"]), ("A8", ["sigma_k:2"]), ("MAXORD", [])]:
    sweep(aid, ks, min(N, 5000), table=table)  # compile and cache outside the timed loop
    res[f"sweep_{aid}_s"] = best(lambda: sweep(aid, ks, N, table=table))
print(json.dumps(res))
"""


def run(backend: str, n: int, repeat: int) -> dict:
    env = dict(os.environ, EXTREMAL_ARITH_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", WORKLOAD, str(n), str(repeat)], env=env, check=True,
                         capture_output=True, text=True).stdout
    return json.loads(out.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=10**6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rows = [run(b, args.max, args.repeat) for b in ("numba", "numpy")]
    keys = [k for k in rows[0] if k != "backend"]
    print(f"N = {args.max}, best of {args.repeat}")
    print(f"{'metric':<24}{'numba':>10}{'numpy':>10}{'speedup':>10}")
    for key in keys:
        a, b = rows[0][key], rows[1][key]
        print(f"{key:<24}{a:>10.3f}{b:>10.3f}{b / a:>10.2f}")


if __name__ == "__main__":
    main()
