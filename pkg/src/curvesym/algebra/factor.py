"""Squarefree decomposition and factorization over Q.

Irreducible splitting is the classical small-prime route: factor modulo a
prime that keeps the polynomial squarefree (distinct-degree followed by
Cantor-Zassenhaus equal-degree splitting), Hensel-lift the modular factors
past the Mignotte bound, then recombine subsets by trial division.
"""

from __future__ import annotations

import random
from itertools import combinations
from math import isqrt

from . import intpoly as ip
from . import modp
from .unipoly import UniPoly

_SMALL_PRIMES = [p for p in range(3, 400) if all(p % q for q in range(2, isqrt(p) + 1))]
_SEED = 0x5EED


def squarefree_decomposition(p: UniPoly):
    """Yun's algorithm: [(primitive integer factor as UniPoly, multiplicity)]."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    return [(UniPoly.from_ints(g), e) for g, e in _yun(p.int_primitive())]


def squarefree_part(p: UniPoly) -> UniPoly:
    """Product of the distinct irreducible factors, monic."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    f = p.int_primitive()
    if len(f) == 1:
        return UniPoly([1])
    g = ip.gcd(f, ip.deriv(f))
    q = ip.divexact(f, g)
    return UniPoly.from_ints(q).monic()


def factor_rationals(p: UniPoly):
    """Complete factorization over Q as [(irreducible UniPoly, multiplicity)].

    Factors are primitive integer polynomials with positive leading
    coefficient, sorted by (degree, coefficients).  Constants give [].
    """
    if p.is_zero():
        raise ValueError("factorization of the zero polynomial")
    if p.degree < 1:
        return []
    out = []
    for g, e in _yun(p.int_primitive()):
        for h in factor_squarefree(g):
            out.append((UniPoly.from_ints(h), e))
    out.sort(key=lambda fe: (fe[0].degree, fe[0].num))
    return out


def _yun(f):
    """Squarefree decomposition of a primitive integer polynomial (Yun, over Q)."""
    F = UniPoly.from_ints(f)
    dF = F.derivative()
    a = _gcd_q(F, dF)
    b = F.exact_div(a)
    c = dF.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = _gcd_q(b, d)
        if a.degree > 0:
            out.append((ip.primitive(list(a.num)), i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def _gcd_q(a: UniPoly, b: UniPoly) -> UniPoly:
    if b.is_zero():
        return a.monic()
    g = ip.gcd(list(a.num), list(b.num))
    return UniPoly.from_ints(g, g[-1])


# ---------------------------------------------------------------------------

def factor_squarefree(f):
    """Irreducible factors over Z of a squarefree primitive integer polynomial."""
    f = ip.primitive(f)
    if len(f) <= 2:
        return [f]
    out = []
    # pull out the factor t if present
    if f[0] == 0:
        out.append([0, 1])
        f = f[1:]
        if len(f) <= 2:
            return out + ([f] if len(f) == 2 else [])
    rng = random.Random(_SEED)
    p, mod_factors = _choose_prime(f, rng)
    if len(mod_factors) == 1:
        return out + [f]
    lc = f[-1]
    bound = _mignotte(f) * abs(lc) * 2 + 1
    m = p
    k = 1
    while m <= bound:
        m *= m
        k *= 2
    lifted = _hensel_multi(f, mod_factors, p, k)
    return out + _recombine(f, lifted, p ** k)


def _mignotte(f):
    n = len(f) - 1
    norm2 = sum(c * c for c in f)
    return (isqrt(norm2) + 1) * (1 << n)


def _choose_prime(f, rng):
    best = None
    tried = 0
    for p in _SMALL_PRIMES:
        if f[-1] % p == 0:
            continue
        fp = modp.reduce(f, p)
        if modp.gcd(fp, modp.reduce(ip.deriv(f), p), p) != [1]:
            continue
        facs = _factor_mod_p(modp.monic(fp, p), p, rng)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        tried += 1
        if tried >= 4 or len(facs) == 1:
            break
    if best is None:
        raise ArithmeticError("no suitable prime for modular factorization")
    return best


def _powmod(base, e, mod, p):
    result = [1]
    base = modp.divmod_(base, mod, p)[1]
    while e:
        if e & 1:
            result = modp.divmod_(modp.mul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = modp.divmod_(modp.mul(base, base, p), mod, p)[1]
    return result


def _factor_mod_p(f, p, rng):
    """Monic irreducible factors of a monic squarefree polynomial mod p."""
    out = []
    h = [0, 1]
    x = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, f, p)
        g = modp.gcd(modp.sub(h, x, p), f, p)
        if len(g) > 1:
            out.extend(_equal_degree(g, d, p, rng))
            f = modp.divmod_(f, g, p)[0]
            h = modp.divmod_(h, f, p)[1]
    if len(f) > 1:
        out.append(f)
    return out


def _equal_degree(g, d, p, rng):
    n = len(g) - 1
    if n == d:
        return [g]
    e = (p ** d - 1) // 2
    while True:
        a = modp.strip([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        b = _powmod(a, e, g, p)
        h = modp.gcd(modp.sub(b, [1], p), g, p)
        if 1 < len(h) < len(g):
            return (_equal_degree(h, d, p, rng)
                    + _equal_degree(modp.divmod_(g, h, p)[0], d, p, rng))


# -- arithmetic mod a prime power ------------------------------------------

def _mulm(a, b, m):
    return ip.strip([c % m for c in ip.mul(a, b)]) if a and b else []


def _subm(a, b, m):
    return ip.strip([c % m for c in ip.sub(a, b)])


def _addm(a, b, m):
    return ip.strip([c % m for c in ip.add(a, b)])


def _divmod_monic(a, b, m):
    """Division by a monic polynomial modulo m."""
    r = [c % m for c in a]
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], ip.strip(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] % m
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % m
    return ip.strip(q), ip.strip(r[:db])


def _xgcd_mod_p(g, h, p):
    """s, t with s g + t h = 1 mod p."""
    r0, r1 = g, h
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = modp.divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, modp.sub(s0, modp.mul(q, s1, p), p)
        t0, t1 = t1, modp.sub(t0, modp.mul(q, t1, p), p)
    inv = pow(r0[0], -1, p)
    return modp.scale(s0, inv, p), modp.scale(t0, inv, p)


def _hensel_step(f, g, h, s, t, m):
    """Lift f = g h, s g + t h = 1 from modulus m to m^2 (h monic)."""
    m2 = m * m
    e = _subm(f, _mulm(g, h, m2), m2)
    q, r = _divmod_monic(_mulm(s, e, m2), h, m2)
    g2 = _addm(_addm(g, _mulm(t, e, m2), m2), _mulm(q, g, m2), m2)
    h2 = _addm(h, r, m2)
    b = _subm(_addm(_mulm(s, g2, m2), _mulm(t, h2, m2), m2), [1], m2)
    c, d = _divmod_monic(_mulm(s, b, m2), h2, m2)
    s2 = _subm(s, d, m2)
    t2 = _subm(_subm(t, _mulm(t, b, m2), m2), _mulm(c, g2, m2), m2)
    return g2, h2, s2, t2


def _hensel_multi(f, factors, p, k):
    """Lift monic modular factors of f (lc(f) carried separately) to p^k."""
    if len(factors) == 1:
        mk = p ** k
        inv = pow(f[-1], -1, mk)
        return [[c * inv % mk for c in f]]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    g = [f[-1] % p]
    for u in left:
        g = modp.mul(g, u, p)
    h = [1]
    for u in right:
        h = modp.mul(h, u, p)
    s, t = _xgcd_mod_p(g, h, p)
    m = p
    fm = [c % p for c in f]
    while m < p ** k:
        fm = [c % (m * m) for c in f]
        g, h, s, t = _hensel_step(fm, g, h, s, t, m)
        m *= m
    return _hensel_multi(_sym_poly(g, m), left, p, k) + _hensel_multi(h, right, p, k)


def _sym_poly(a, m):
    half = m // 2
    return [c - m if c > half else c for c in a]


def _recombine(f, lifted, M):
    out = []
    remaining = list(lifted)
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for subset in combinations(range(len(remaining)), size):
            g = [f[-1] % M]
            for i in subset:
                g = _mulm(g, remaining[i], M)
            cand = ip.primitive(_sym_poly(g, M))
            q = ip.divexact(f, cand)
            if q is not None:
                out.append(cand)
                f = ip.primitive(q)
                remaining = [u for i, u in enumerate(remaining) if i not in subset]
                found = True
                break
        if not found:
            size += 1
    out.append(ip.primitive(f))
    return out
