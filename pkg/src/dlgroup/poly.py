"""Dense univariate polynomials over Z_q.

A polynomial is a tuple of residues in [0, q), lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  Every function takes the
modulus explicitly so the same helpers serve Z_q and its prime quotients.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# below this length schoolbook multiplication beats the numpy round trip
_NUMPY_CUTOFF = 24

Poly = tuple


def trim(coeffs, q: int) -> Poly:
    out = [c % q for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def add(a: Poly, b: Poly, q: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % q
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def neg(a: Poly, q: int) -> Poly:
    return tuple((-c) % q for c in a)


def sub(a: Poly, b: Poly, q: int) -> Poly:
    return add(a, neg(b, q), q)


def scale(a: Poly, c: int, q: int) -> Poly:
    c %= q
    if c == 0:
        return ()
    return trim([c * x for x in a], q)


def shift(a: Poly, n: int) -> Poly:
    """Multiply by t^n (n >= 0)."""
    if not a or n == 0:
        return a
    return (0,) * n + a


def mul(a: Poly, b: Poly, q: int) -> Poly:
    if not a or not b:
        return ()
    if min(len(a), len(b)) < _NUMPY_CUTOFF:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return trim(out, q)
    # int64 is safe: each output coefficient is below len * q^2
    conv = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    return trim((conv % q).tolist(), q)


def evaluate(a: Poly, x: int, q: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % q
    return acc


def div_linear(a: Poly, c: int, q: int) -> tuple[Poly, int]:
    """Divide by the monic linear polynomial t + c.

    Returns (quotient, remainder); the remainder equals a(-c).
    """
    if not a:
        return (), 0
    root = (-c) % q
    quot = [0] * (len(a) - 1)
    acc = 0
    for k in range(len(a) - 1, 0, -1):
        acc = (acc * root + a[k]) % q
        quot[k - 1] = acc
    rem = (acc * root + a[0]) % q
    return tuple(quot), rem


@lru_cache(maxsize=4096)
def linear_power(c: int, n: int, q: int) -> Poly:
    """(t + c)^n for n >= 0."""
    if n == 0:
        return (1,)
    if n == 1:
        return trim((c, 1), q)
    half = linear_power(c, n // 2, q)
    sq = mul(half, half, q)
    if n % 2:
        sq = mul(sq, trim((c, 1), q), q)
    return sq


def power(a: Poly, n: int, q: int) -> Poly:
    result: Poly = (1,)
    base = a
    while n:
        if n & 1:
            result = mul(result, base, q)
        n >>= 1
        if n:
            base = mul(base, base, q)
    return result


def compose_fraction(f: Poly, num: Poly, den: Poly, q: int) -> Poly:
    """Homogenised composition: sum_n f_n num^n den^(deg f - n).

    This is den^(deg f) * f(num/den), computed by divide and conquer so the
    cost is dominated by a logarithmic number of large multiplications.
    """
    if not f:
        return ()
    cache_num: dict[int, Poly] = {0: (1,)}
    cache_den: dict[int, Poly] = {0: (1,)}

    def pw(cache, base, k):
        if k not in cache:
            cache[k] = power(base, k, q)
        return cache[k]

    def rec(lo: int, hi: int) -> Poly:
        if hi - lo < 8:
            # homogeneous Horner on the short block
            acc = scale((1,), f[hi], q)
            den_pow: Poly = (1,)
            for n in range(hi - 1, lo - 1, -1):
                den_pow = mul(den_pow, den, q)
                acc = add(mul(acc, num, q), scale(den_pow, f[n], q), q)
            return acc
        mid = (lo + hi) // 2
        left = rec(lo, mid)
        right = rec(mid + 1, hi)
        return add(mul(left, pw(cache_den, den, hi - mid), q),
                   mul(pw(cache_num, num, mid + 1 - lo), right, q), q)

    return rec(0, len(f) - 1)


def taylor_shift(a: Poly, c: int, q: int) -> Poly:
    """Return a(t + c) as a polynomial in t."""
    if len(a) <= 1:
        return a
    return compose_fraction(a, trim((c, 1), q), (1,), q)


def series_inverse(g: Poly, prec: int, q: int) -> list[int]:
    """First ``prec`` coefficients of 1/g as a power series; g[0] must be a unit."""
    if prec <= 0:
        return []
    g0_inv = pow(g[0], -1, q)
    h = [0] * prec
    h[0] = g0_inv
    for k in range(1, prec):
        acc = 0
        for i in range(1, min(k, len(g) - 1) + 1):
            acc += g[i] * h[k - i]
        h[k] = (-acc * g0_inv) % q
    return h


def series_mul(a, b, prec: int, q: int) -> list[int]:
    """Product of two power series truncated to ``prec`` coefficients."""
    if prec <= 0:
        return []
    a = tuple(a[:prec])
    b = tuple(b[:prec])
    prod = mul(trim(a, q), trim(b, q), q)
    out = list(prod[:prec])
    out.extend([0] * (prec - len(out)))
    return out
