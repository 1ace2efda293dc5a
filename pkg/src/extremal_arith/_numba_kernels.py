"""numba-compiled inner loops.

Every routine walks n = lo..hi, factorizes n by repeated smallest-prime-factor
division and accumulates over its prime powers in ascending prime order. The
pure-numpy twin in ``_numpy_kernels`` uses the same accumulation order, so
both produce bitwise-identical arrays.
"""

import numpy as np
from numba import njit

INT64_MAX = np.iinfo(np.int64).max

GREATER = 1
LESS = 2


@njit(cache=True, nogil=True)
def spf_sieve(limit):
    spf = np.zeros(limit + 1, dtype=np.int32)
    p = 2
    while p * p <= limit:
        if spf[p] == 0:
            for m in range(p * p, limit + 1, p):
                if spf[m] == 0:
                    spf[m] = p
        p += 1
    for m in range(2, limit + 1):
        if spf[m] == 0:
            spf[m] = m
    return spf


@njit(cache=True, nogil=True)
def omega_range(spf, lo, hi):
    out = np.zeros(hi - lo + 1, dtype=np.int64)
    for i in range(hi - lo + 1):
        m = lo + i
        c = 0
        while m > 1:
            p = spf[m]
            c += 1
            while m % p == 0:
                m //= p
        out[i] = c
    return out


@njit(cache=True, nogil=True)
def strong_sum(spf, pidx, vals, lo, hi):
    out = np.zeros(hi - lo + 1, dtype=np.float64)
    for i in range(hi - lo + 1):
        m = lo + i
        s = 0.0
        while m > 1:
            p = spf[m]
            s += vals[pidx[p]]
            while m % p == 0:
                m //= p
        out[i] = s
    return out


@njit(cache=True, nogil=True)
def strong_prod(spf, pidx, vals, lo, hi):
    out = np.ones(hi - lo + 1, dtype=np.float64)
    for i in range(hi - lo + 1):
        m = lo + i
        s = 1.0
        while m > 1:
            p = spf[m]
            s *= vals[pidx[p]]
            while m % p == 0:
                m //= p
        out[i] = s
    return out


@njit(cache=True, nogil=True)
def pp_sum_probe(spf, ppv, lo, hi):
    size = hi - lo + 1
    full = np.zeros(size, dtype=np.float64)
    base = np.zeros(size, dtype=np.float64)
    flags = np.zeros(size, dtype=np.int8)
    for i in range(size):
        m = lo + i
        f = 0.0
        b = 0.0
        fl = 0
        while m > 1:
            p = spf[m]
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            vq = ppv[q]
            vp = ppv[p]
            f += vq
            b += vp
            if vq > vp:
                fl |= GREATER
            elif vq < vp:
                fl |= LESS
        full[i] = f
        base[i] = b
        flags[i] = fl
    return full, base, flags


@njit(cache=True, nogil=True)
def pp_prod_probe(spf, ppv, lo, hi):
    size = hi - lo + 1
    full = np.ones(size, dtype=np.float64)
    base = np.ones(size, dtype=np.float64)
    flags = np.zeros(size, dtype=np.int8)
    for i in range(size):
        m = lo + i
        f = 1.0
        b = 1.0
        fl = 0
        while m > 1:
            p = spf[m]
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            vq = ppv[q]
            vp = ppv[p]
            f *= vq
            b *= vp
            if vq > vp:
                fl |= GREATER
            elif vq < vp:
                fl |= LESS
        full[i] = f
        base[i] = b
        flags[i] = fl
    return full, base, flags


@njit(cache=True, nogil=True)
def pp_prod_probe_int(spf, ppv, lo, hi):
    # ppv entries must be >= 1; any product exceeding int64 sets the overflow flag
    size = hi - lo + 1
    full = np.ones(size, dtype=np.int64)
    base = np.ones(size, dtype=np.int64)
    flags = np.zeros(size, dtype=np.int8)
    overflow = False
    for i in range(size):
        m = lo + i
        f = np.int64(1)
        b = np.int64(1)
        fl = 0
        while m > 1:
            p = spf[m]
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            vq = ppv[q]
            vp = ppv[p]
            if f > INT64_MAX // vq or b > INT64_MAX // vp:
                overflow = True
            else:
                f *= vq
                b *= vp
            if vq > vp:
                fl |= GREATER
            elif vq < vp:
                fl |= LESS
        full[i] = f
        base[i] = b
        flags[i] = fl
    return full, base, flags, overflow
