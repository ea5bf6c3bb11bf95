"""Dense integer polynomial kernels.

A polynomial is a Python list of ints, lowest degree first, without trailing
zeros; the zero polynomial is ``[]``.  These functions are the hot path of the
package: the rational and bivariate layers clear denominators and call into
here.  Large products go through Kronecker substitution so that the heavy
lifting happens inside CPython's big-integer multiply.
"""

from __future__ import annotations

from math import gcd as igcd

import numpy as np

_KRONECKER_CUTOFF = 24


def strip(a: list[int]) -> list[int]:
    while a and not a[-1]:
        a.pop()
    return a


def degree(a) -> int:
    return len(a) - 1


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return strip(out)


def sub(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] -= c
    return strip(out)


def neg(a):
    return [-c for c in a]


def scale(a, c):
    if not c:
        return []
    return [c * x for x in a]


def shift_up(a, k):
    """Multiply by x**k."""
    return [0] * k + list(a) if a else []


def _schoolbook(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pack(a, nbytes):
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in a)
    negs = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in a)
    return int.from_bytes(pos, "little") - int.from_bytes(negs, "little")


def _unpack(v, nbytes, n):
    bits = 8 * nbytes
    total = nbytes * (n + 1)
    raw = v.to_bytes(total, "little", signed=True)
    half = 1 << (bits - 1)
    full = 1 << bits
    out = []
    carry = 0
    for i in range(n):
        d = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") + carry
        if d >= half:
            d -= full
            carry = 1
        else:
            carry = 0
        out.append(d)
    return out


def _kronecker(a, b):
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    bound = ma * mb * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2) // 8 + 1
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    return _unpack(prod, nbytes, len(a) + len(b) - 1)


def mul(a, b):
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_CUTOFF:
        return strip(_schoolbook(a, b))
    return strip(_kronecker(a, b))


def sqr(a):
    return mul(a, a)


def power(a, e):
    result = [1]
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def content(a) -> int:
    g = 0
    for c in a:
        g = igcd(g, c)
        if g == 1:
            break
    return g


def primitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return list(a)
    return [c // g for c in a]


def deriv(a):
    return strip([i * a[i] for i in range(1, len(a))])


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def taylor_shift(a, alpha: int):
    """a(x + alpha) for integer alpha."""
    out = list(a)
    n = len(out)
    if not alpha:
        return out
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            out[k] += alpha * out[k + 1]
    return out


def divexact(a, b):
    """Exact quotient a / b over Z, or None when b does not divide a."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    db = len(b) - 1
    da = len(a) - 1
    if da < db:
        return None
    lb = b[-1]
    r = list(a)
    q = [0] * (da - db + 1)
    for k in range(da - db, -1, -1):
        c = r[k + db]
        if c:
            qk, rem = divmod(c, lb)
            if rem:
                return None
            q[k] = qk
            for j in range(db):
                if b[j]:
                    r[k + j] -= qk * b[j]
    for j in range(db):
        if r[j]:
            return None
    return q


def height(a) -> int:
    return max((abs(c) for c in a), default=0)


# ---------------------------------------------------------------------------
# modular arithmetic

def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while not d & 1:
        d >>= 1
        r += 1
    # deterministic for n < 3.3e24
    for base in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_stream(start: int):
    n = start
    while n > 2:
        if _is_probable_prime(n):
            yield n
        n -= 1


_PRIMES: list[int] = []
_STREAM = _prime_stream((1 << 31) - 1)


def nth_prime(i: int) -> int:
    """i-th prime below 2**31 in descending order (cached)."""
    while len(_PRIMES) <= i:
        _PRIMES.append(next(_STREAM))
    return _PRIMES[i]


def _gcd_mod_p(a, b, p):
    """Monic gcd of two highest-first int64 arrays modulo p."""
    a = np.trim_zeros(a, "f")
    b = np.trim_zeros(b, "f")
    if len(a) < len(b):
        a, b = b, a
    while len(b):
        inv = pow(int(b[0]), -1, p)
        nb = len(b)
        a = a.copy()
        while len(a) >= nb:
            q = int(a[0]) * inv % p
            if q:
                a[:nb] = (a[:nb] - q * b) % p
            a = np.trim_zeros(a[1:], "f") if len(a) > 1 else a[:0]
        a, b = b, a
    inv = pow(int(a[0]), -1, p)
    return (a * inv) % p


def _to_mod_array(a, p):
    """Highest-first numpy representation of a (lowest-first list) mod p."""
    return np.array([c % p for c in reversed(a)], dtype=np.int64)


def gcd(a, b):
    """Primitive gcd over Z (positive leading coefficient), small-primes modular.

    Images modulo primes are combined by CRT until the reconstruction is
    stable, then certified by exact trial division; the result is always
    verified, so a bad prime can only cost time.
    """
    if not a:
        return primitive(b)
    if not b:
        return primitive(a)
    a = primitive(a)
    b = primitive(b)
    if len(a) == 1 or len(b) == 1:
        return [1]
    if len(a) < len(b):
        a, b = b, a
    lc = igcd(a[-1], b[-1])
    best_deg = len(b)
    acc = None
    modulus = 1
    i = 0
    while True:
        p = nth_prime(i)
        i += 1
        if a[-1] % p == 0 or b[-1] % p == 0:
            continue
        h = _gcd_mod_p(_to_mod_array(a, p), _to_mod_array(b, p), p)
        d = len(h) - 1
        if d == 0:
            return [1]
        if d > best_deg:
            continue
        h = [int(c) * lc % p for c in h[::-1]]
        if d < best_deg:
            best_deg = d
            acc = [_sym(c, p) for c in h]
            modulus = p
            if _try_candidate(acc, a, b):
                return primitive(acc)
            continue
        new = _crt(acc, modulus, h, p)
        modulus *= p
        if new == acc:
            cand = primitive(new)
            if divexact(a, cand) is not None and divexact(b, cand) is not None:
                return cand
        acc = new


def _try_candidate(acc, a, b):
    # cheap shot for gcds with small coefficients
    cand = primitive(acc)
    if height(cand) > 1 << 20:
        return False
    return divexact(a, cand) is not None and divexact(b, cand) is not None


def _sym(c, m):
    c %= m
    return c - m if c > m // 2 else c


def _crt(acc, m, h, p):
    minv = pow(m, -1, p)
    mp = m * p
    half = mp // 2
    out = []
    for x, y in zip(acc, h):
        v = x + m * ((y - x) * minv % p)
        v %= mp
        if v > half:
            v -= mp
        out.append(v)
    return out
