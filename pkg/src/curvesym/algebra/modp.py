"""Small dense polynomial routines over GF(p).

Lists of ints in [0, p), lowest degree first, no trailing zeros.  These are
used on short polynomials (interpolation and Pade-style reconstruction in the
bivariate gcd), so plain Python is adequate.
"""

from __future__ import annotations

from math import gcd as igcd, isqrt


def strip(a):
    while a and not a[-1]:
        a.pop()
    return a


def reduce(a, p):
    return strip([c % p for c in a])


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return strip(out)


def sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return strip(out)


def scale(a, c, p):
    c %= p
    if not c:
        return []
    return [x * c % p for x in a]


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return strip([c % p for c in out])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv % p
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
    return strip(q), strip(r[:db])


def monic(a, p):
    if not a:
        return a
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a, b, p):
    while b:
        a, b = b, divmod_(a, b, p)[1]
    return monic(a, p)


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def interpolate(xs, ys, p):
    """Newton interpolation; returns the unique polynomial of degree < len(xs)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(xs[i] - xs[i - j], -1, p) % p
    poly = [coef[-1] % p]
    for i in range(n - 2, -1, -1):
        poly = add(mul(poly, [-xs[i] % p, 1], p), [coef[i]], p)
    return strip(poly)


def rational_reconstruct(u, m, num_deg, p):
    """Find n/d with n = d*u mod m, deg n <= num_deg, d monic.

    Returns (n, d) or None when no fraction with deg d <= deg m - 1 - num_deg
    exists.
    """
    r0, r1 = list(m), list(u)
    t0, t1 = [], [1]
    while r1 and len(r1) - 1 > num_deg:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r1:
        return [], [1]
    if len(t1) - 1 > len(m) - 2 - num_deg:
        return None
    if gcd(t1, m, p) != [1]:
        return None
    inv = pow(t1[-1], -1, p)
    return scale(r1, inv, p), scale(t1, inv, p)


def ratrecon_int(u: int, m: int):
    """Rational number a/b with a = b*u mod m and |a|, b <= sqrt(m/2), or None."""
    bound = isqrt(m // 2)
    r0, r1 = m, u % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if igcd(r1, s1) != 1:
        return None
    return r1, s1
