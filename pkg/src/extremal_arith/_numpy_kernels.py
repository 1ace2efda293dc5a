"""Pure-numpy fallback for the compiled loops in ``_numba_kernels``.

Instead of factorizing each n, these routines stride over the multiples of each
prime p <= sqrt(hi) in ascending order, dividing a running remainder; whatever
remains above 1 afterwards is the single prime factor > sqrt(hi). Accumulation
order per n is therefore the same ascending-prime order used by the compiled
path.
"""

from math import isqrt

import numpy as np

INT64_MAX = np.iinfo(np.int64).max

GREATER = 1
LESS = 2


def spf_sieve(limit):
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            s = spf[p * p :: p]
            s[s == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


def _walk(spf, lo, hi):
    """Yield ``(index, p, q)`` steps: positions in [lo, hi], their prime, and p^alpha.

    Small-prime steps carry a scalar ``p`` and a slice; the final step carries
    arrays for the large prime factor.
    """
    rem = np.arange(lo, hi + 1, dtype=np.int64)
    r = isqrt(hi)
    small = np.flatnonzero(spf[: r + 1] == np.arange(r + 1))
    for p in small[small >= 2].tolist():
        start = -(-lo // p) * p
        if start > hi:
            continue
        sl = slice(start - lo, None, p)
        sub = rem[sl] // p
        q = np.full(sub.shape, p, dtype=np.int64)
        mask = sub % p == 0
        while mask.any():
            q[mask] *= p
            sub[mask] //= p
            mask = sub % p == 0
        rem[sl] = sub
        yield sl, p, q
    big = np.flatnonzero(rem > 1)
    if big.size:
        pb = rem[big]
        yield big, pb, pb


def omega_range(spf, lo, hi):
    out = np.zeros(hi - lo + 1, dtype=np.int64)
    for idx, _, _ in _walk(spf, lo, hi):
        out[idx] += 1
    return out


def strong_sum(spf, pidx, vals, lo, hi):
    out = np.zeros(hi - lo + 1, dtype=np.float64)
    for idx, p, _ in _walk(spf, lo, hi):
        out[idx] += vals[pidx[p]]
    return out


def strong_prod(spf, pidx, vals, lo, hi):
    out = np.ones(hi - lo + 1, dtype=np.float64)
    for idx, p, _ in _walk(spf, lo, hi):
        out[idx] *= vals[pidx[p]]
    return out


def _flag_update(flags, idx, vq, vp):
    flags[idx] |= np.where(vq > vp, GREATER, 0).astype(np.int8)
    flags[idx] |= np.where(vq < vp, LESS, 0).astype(np.int8)


def pp_sum_probe(spf, ppv, lo, hi):
    size = hi - lo + 1
    full = np.zeros(size, dtype=np.float64)
    base = np.zeros(size, dtype=np.float64)
    flags = np.zeros(size, dtype=np.int8)
    for idx, p, q in _walk(spf, lo, hi):
        vq = ppv[q]
        vp = ppv[p]
        full[idx] += vq
        base[idx] += vp
        _flag_update(flags, idx, vq, vp)
    return full, base, flags


def pp_prod_probe(spf, ppv, lo, hi):
    size = hi - lo + 1
    full = np.ones(size, dtype=np.float64)
    base = np.ones(size, dtype=np.float64)
    flags = np.zeros(size, dtype=np.int8)
    for idx, p, q in _walk(spf, lo, hi):
        vq = ppv[q]
        vp = ppv[p]
        full[idx] *= vq
        base[idx] *= vp
        _flag_update(flags, idx, vq, vp)
    return full, base, flags


def pp_prod_probe_int(spf, ppv, lo, hi):
    size = hi - lo + 1
    full = np.ones(size, dtype=np.int64)
    base = np.ones(size, dtype=np.int64)
    flags = np.zeros(size, dtype=np.int8)
    overflow = False
    for idx, p, q in _walk(spf, lo, hi):
        vq = np.broadcast_to(ppv[q], full[idx].shape)
        vp = np.broadcast_to(ppv[p], full[idx].shape)
        f = full[idx]
        b = base[idx]
        bad = (f > INT64_MAX // vq) | (b > INT64_MAX // vp)
        if bad.any():
            overflow = True
        ok = ~bad
        f[ok] *= vq[ok]
        b[ok] *= vp[ok]
        full[idx] = f
        base[idx] = b
        _flag_update(flags, idx, vq, vp)
    return full, base, flags, overflow
