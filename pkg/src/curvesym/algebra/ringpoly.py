"""Polynomials in t whose coefficients live in an arbitrary commutative ring.

Coefficient lists are lowest degree first.  Ring elements only need ``+``,
``-``, ``*`` and comparison with ``0``; that covers Fraction, RatFunc,
Residue and FieldElem alike.
"""

from __future__ import annotations


def rstrip(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def radd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return rstrip(out)


def rsub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = out[i] - c
    return rstrip(out)


def rscale(a, c):
    return rstrip([x * c for x in a])


def rmul(a, b):
    if not a or not b:
        return []
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            v = x * y
            out[i + j] = v if out[i + j] is None else out[i + j] + v
    zero = a[-1] * b[-1] * 0
    return rstrip([zero if v is None else v for v in out])


def homogeneous_compose(coeffs, num, den, n: int):
    """sum_k coeffs[k] * num**k * den**(n - k) for ring polynomials num, den."""
    if len(coeffs) - 1 > n:
        raise ValueError("homogenization degree below polynomial degree")
    den_pows = [[1]]
    for _ in range(n):
        den_pows.append(rmul(den_pows[-1], den))
    acc = []
    num_pow = [1]
    for k, c in enumerate(coeffs):
        if not c == 0:
            acc = radd(acc, rscale(rmul(num_pow, den_pows[n - k]), c))
        if k + 1 < len(coeffs):
            num_pow = rmul(num_pow, num)
    return acc


def taylor_shift(coeffs, alpha):
    """p(t + alpha) for a ring element alpha."""
    out = list(coeffs)
    n = len(out)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            out[k] = out[k] + alpha * out[k + 1]
    return rstrip(out)


def dilate(coeffs, lam):
    """p(lam * t)."""
    out = []
    pw = None
    for c in coeffs:
        out.append(c if pw is None else c * pw)
        pw = lam if pw is None else pw * lam
    return rstrip(out)


def mobius_homogenize(coeffs, a, b, c, d, n: int, one):
    """sum_k coeffs[k] (a t + b)^k (c t + d)^(n - k), via Taylor shifts.

    Cheaper than :func:`homogeneous_compose` for long inputs: O(n^2) ring
    operations instead of O(n^3).  Requires a d - b c != 0.
    """
    zero = one * 0
    p = [one * x for x in coeffs]
    if len(p) - 1 > n:
        raise ValueError("homogenization degree below polynomial degree")
    if not p:
        return []
    if c == 0:
        # q(u) = sum p_k d^(n-k) u^k evaluated at u = a t + b
        scaled = [x * _pow(d, n - k, one) for k, x in enumerate(p)]
        return dilate(taylor_shift(scaled, b), a)
    # with u = c t + d:  phi(t) = a/c + lam/u,  lam = -(a d - b c)/c
    ic = _inv(c)
    lam = (zero - (a * d - b * c)) * ic
    shifted = taylor_shift(p, a * ic)
    rev = [zero] * (n + 1)
    lam_k = one
    for k, x in enumerate(shifted):
        if not x == 0:
            rev[n - k] = x * lam_k
        lam_k = lam_k * lam
    return dilate(taylor_shift(rev, d), c)


def _pow(x, e, one):
    out = one
    for _ in range(e):
        out = out * x
    return out


def _inv(x):
    return x.inverse() if hasattr(x, "inverse") else 1 / x
