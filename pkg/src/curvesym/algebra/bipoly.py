"""Bivariate polynomials over Q in the variables (t, s).

Storage is dense by t-degree: ``rows[i]`` is the integer polynomial in s
multiplying t**i, and ``den`` a common positive denominator.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as igcd

import numpy as np

from . import intpoly as ip
from . import modp
from .unipoly import UniPoly


def _lcm(a, b):
    return a // igcd(a, b) * b


def _strip_rows(rows):
    rows = [ip.strip(list(r)) for r in rows]
    while rows and not rows[-1]:
        rows.pop()
    return rows


class BiPoly:
    __slots__ = ("_rows", "_den")

    def __init__(self, coeffs=None):
        """Build from a mapping {(deg_t, deg_s): rational}."""
        coeffs = coeffs or {}
        den = 1
        fr = {}
        for (i, k), c in coeffs.items():
            c = Fraction(c)
            if c:
                fr[(i, k)] = c
                den = _lcm(den, c.denominator)
        if not fr:
            self._rows, self._den = (), 1
            return
        mt = max(i for i, _ in fr)
        ms = max(k for _, k in fr)
        rows = [[0] * (ms + 1) for _ in range(mt + 1)]
        for (i, k), c in fr.items():
            rows[i][k] = c.numerator * (den // c.denominator)
        self._set(rows, den)

    def _set(self, rows, den):
        rows = _strip_rows(rows)
        if not rows:
            self._rows, self._den = (), 1
            return
        g = den
        for r in rows:
            g = igcd(g, ip.content(r))
            if g == 1:
                break
        if g != 1:
            rows = [[c // g for c in r] for r in rows]
            den //= g
        self._rows = tuple(tuple(r) for r in rows)
        self._den = den

    @classmethod
    def from_rows(cls, rows, den: int = 1) -> "BiPoly":
        obj = cls.__new__(cls)
        if den < 0:
            rows, den = [[-c for c in r] for r in rows], -den
        obj._set(rows, den)
        return obj

    @classmethod
    def from_uni_t(cls, p: UniPoly) -> "BiPoly":
        return cls.from_rows([[c] for c in p.num], p.den)

    @classmethod
    def from_uni_s(cls, p: UniPoly) -> "BiPoly":
        return cls.from_rows([list(p.num)], p.den)

    @classmethod
    def outer(cls, pt, ps) -> "BiPoly":
        """pt(t) * ps(s) for integer coefficient lists."""
        return cls.from_rows([ip.scale(list(ps), c) for c in pt])

    # -- accessors ---------------------------------------------------------
    @property
    def rows(self):
        return self._rows

    @property
    def den(self):
        return self._den

    @property
    def coeffs(self) -> dict:
        return {(i, k): Fraction(c, self._den)
                for i, r in enumerate(self._rows) for k, c in enumerate(r) if c}

    @property
    def deg_t(self) -> int:
        return len(self._rows) - 1

    @property
    def deg_s(self) -> int:
        return max((len(r) - 1 for r in self._rows), default=-1)

    @property
    def bidegree(self):
        return self.deg_t, self.deg_s

    def is_zero(self) -> bool:
        return not self._rows

    def __bool__(self):
        return bool(self._rows)

    def lex_leading(self):
        """((i, k), coefficient) of the lex-(t, s) largest term."""
        i = len(self._rows) - 1
        k = len(self._rows[i]) - 1
        return (i, k), Fraction(self._rows[i][k], self._den)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly({(0, 0): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = _lcm(self._den, other._den)
        fa, fb = d // self._den, d // other._den
        n = max(len(self._rows), len(other._rows))
        rows = []
        for i in range(n):
            ra = ip.scale(list(self._rows[i]), fa) if i < len(self._rows) else []
            rb = ip.scale(list(other._rows[i]), fb) if i < len(other._rows) else []
            rows.append(ip.add(ra, rb))
        return BiPoly.from_rows(rows, d)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly.from_rows([[-c for c in r] for r in self._rows], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return BiPoly.from_rows([ip.scale(list(r), other.numerator) for r in self._rows],
                                    self._den * other.denominator)
        if not isinstance(other, BiPoly):
            return NotImplemented
        if not self or not other:
            return BiPoly()
        rows = [[] for _ in range(len(self._rows) + len(other._rows) - 1)]
        for i, ra in enumerate(self._rows):
            if ra:
                for j, rb in enumerate(other._rows):
                    if rb:
                        rows[i + j] = ip.add(rows[i + j], ip.mul(list(ra), list(rb)))
        return BiPoly.from_rows(rows, self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = BiPoly({(0, 0): 1})
        for _ in range(e):
            out = out * self
        return out

    # -- evaluation and calculus -------------------------------------------
    def eval_t(self, t0) -> UniPoly:
        """G(t0, s) as a polynomial in s."""
        t0 = Fraction(t0)
        pn, pd = t0.numerator, t0.denominator
        n = len(self._rows) - 1
        acc = []
        for i, r in enumerate(self._rows):
            if r:
                acc = ip.add(acc, ip.scale(list(r), pn ** i * pd ** (n - i)))
        return UniPoly.from_ints(acc, self._den * pd ** max(n, 0))

    def eval_s(self, s0) -> UniPoly:
        """G(t, s0) as a polynomial in t."""
        s0 = Fraction(s0)
        m = self.deg_s
        pn, pd = s0.numerator, s0.denominator
        pows = [pn ** k * pd ** (m - k) for k in range(m + 1)]
        vals = [sum(c * pows[k] for k, c in enumerate(r)) for r in self._rows]
        return UniPoly.from_ints(vals, self._den * pd ** max(m, 0))

    def __call__(self, t0, s0) -> Fraction:
        return self.eval_t(t0)(s0)

    def diff_t(self) -> "BiPoly":
        return BiPoly.from_rows([ip.scale(list(r), i) for i, r in enumerate(self._rows)][1:],
                                self._den)

    def diff_s(self) -> "BiPoly":
        return BiPoly.from_rows([ip.deriv(list(r)) for r in self._rows], self._den)

    def swap(self) -> "BiPoly":
        """G(s, t)."""
        return BiPoly({(k, i): c for (i, k), c in self.coeffs.items()})

    # -- content / normalization ---------------------------------------------
    def int_rows(self):
        return [list(r) for r in self._rows]

    def content_t(self) -> list:
        """gcd of the t-coefficients: an integer polynomial in s (primitive)."""
        return _rows_content([list(r) for r in self._rows])

    def content_s(self) -> list:
        """gcd of the s-coefficients: an integer polynomial in t (primitive)."""
        return _rows_content(_transpose(self._rows))

    def normalized(self) -> "BiPoly":
        """Integer content-free, positive lex-(t, s) leading coefficient."""
        if not self:
            return self
        rows = [list(r) for r in self._rows]
        g = 0
        for r in rows:
            g = igcd(g, ip.content(r))
        if rows[-1][-1] < 0:
            g = -g
        return BiPoly.from_rows([[c // g for c in r] for r in rows], 1)

    def divexact(self, other: "BiPoly"):
        """Exact quotient over Q, or None when other does not divide self."""
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return BiPoly()
        g = other.normalized()
        c = other.lex_leading()[1] / g.lex_leading()[1]
        q = _divexact_rows([list(r) for r in self._rows], [list(r) for r in g._rows])
        if q is None:
            return None
        return BiPoly.from_rows(q, 1) * (Fraction(1, self._den) / c)

    def divides(self, other: "BiPoly") -> bool:
        return other.divexact(self) is not None

    # -- comparison / display ---------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._rows == other._rows and self._den == other._den

    def __hash__(self):
        return hash((self._rows, self._den))

    def __str__(self):
        terms = sorted(self.coeffs.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))
        if not terms:
            return "0"
        out = ""
        for idx, ((i, k), c) in enumerate(terms):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in (("t", i), ("s", k)) if e)
            a = abs(c)
            body = (str(a) if not mono else mono if a == 1 else f"{a}*{mono}")
            if idx == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self):
        return f"BiPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "BiPoly":
        """Parse expanded sums of monomials in t and s, e.g. ``"3*s^4*t^4 - s^2"``."""
        src = text.replace(" ", "").replace("**", "^")
        if not src:
            raise ValueError("empty polynomial string")
        terms = re.findall(r"[+-]?[^+-]+", src)
        if "".join(terms) != src:
            raise ValueError(f"cannot parse polynomial {text!r}")
        coeffs: dict = {}
        for term in terms:
            sign = -1 if term[0] == "-" else 1
            body = term.lstrip("+-")
            c = Fraction(sign)
            i = k = 0
            for f in body.split("*"):
                m = re.fullmatch(r"([ts])(?:\^(\d+))?", f)
                if m:
                    e = int(m.group(2) or 1)
                    if m.group(1) == "t":
                        i += e
                    else:
                        k += e
                elif re.fullmatch(r"\d+(?:/\d+)?", f):
                    c *= Fraction(f)
                else:
                    raise ValueError(f"cannot parse factor {f!r} in {text!r}")
            coeffs[(i, k)] = coeffs.get((i, k), 0) + c
        return cls(coeffs)


# ---------------------------------------------------------------------------
# helpers on integer row lists

def _transpose(rows):
    ms = max((len(r) for r in rows), default=0)
    cols = [[0] * len(rows) for _ in range(ms)]
    for i, r in enumerate(rows):
        for k, c in enumerate(r):
            cols[k][i] = c
    return [ip.strip(c) for c in cols]


def _rows_content(rows):
    """Primitive gcd of a list of integer polynomials."""
    nz = [r for r in rows if r]
    if not nz:
        return []
    if len(nz) == 1:
        return ip.primitive(nz[0])
    nz.sort(key=len)
    g = ip.gcd(nz[0], nz[-1])
    if g == [1]:
        return g
    for r in nz[1:-1]:
        if ip.divexact(r, g) is None:
            g = ip.gcd(g, r)
            if g == [1]:
                break
    return g


def _divexact_rows(a, b):
    """Exact division in Z[s][t] with b primitive over Z; None if inexact."""
    a = _strip_rows(a)
    b = _strip_rows(b)
    if len(a) < len(b):
        return None if a else []
    db = len(b) - 1
    lb = b[-1]
    r = [list(x) for x in a]
    q = [[] for _ in range(len(a) - db)]
    for k in range(len(a) - 1 - db, -1, -1):
        top = r[k + db]
        if top:
            qk = ip.divexact(top, lb)
            if qk is None:
                return None
            q[k] = qk
            for j in range(db):
                if b[j]:
                    r[k + j] = ip.sub(r[k + j], ip.mul(qk, b[j]))
    if any(r[j] for j in range(db)):
        return None
    return q


def _content_split(rows):
    """(content in s, rows of the primitive part with respect to t)."""
    c = _rows_content(rows)
    if c == [1]:
        return c, rows
    return c, [ip.divexact(r, c) if r else [] for r in rows]


# ---------------------------------------------------------------------------
# gcd

def poly_gcd_bi(p: BiPoly, q: BiPoly) -> BiPoly:
    """Bivariate gcd over Q, normalized (integer content-free, lex leading term > 0)."""
    if not p and not q:
        raise ValueError("gcd of two zero polynomials")
    if not p:
        return q.normalized()
    if not q:
        return p.normalized()
    pr = p.normalized().int_rows()
    qr = q.normalized().int_rows()
    cp, pr = _content_split(pr)
    cq, qr = _content_split(qr)
    cs = ip.gcd(cp, cq)
    g = _gcd_primitive(pr, qr)
    rows = [ip.mul(r, cs) for r in g]
    return BiPoly.from_rows(rows).normalized()


def _mod_matrix(rows, p):
    ms = max(len(r) for r in rows)
    arr = np.zeros((len(rows), ms), dtype=np.int64)
    for i, r in enumerate(rows):
        if r:
            arr[i, :len(r)] = [c % p for c in r]
    return arr


def _eval_cols(arr, x, p):
    """Evaluate each row (poly in s) at s = x: result indexed by t-degree."""
    acc = np.zeros(arr.shape[0], dtype=np.int64)
    for k in range(arr.shape[1] - 1, -1, -1):
        acc = (acc * x + arr[:, k]) % p
    return acc


def _eval_rows(arr, x, p):
    """Evaluate at t = x: result indexed by s-degree."""
    acc = np.zeros(arr.shape[1], dtype=np.int64)
    for i in range(arr.shape[0] - 1, -1, -1):
        acc = (acc * x + arr[i]) % p
    return acc


def _uni_gcd_mod(a_low, b_low, p):
    """Monic gcd mod p of lowest-first int64 arrays, returned lowest-first list."""
    h = ip._gcd_mod_p(a_low[::-1].copy(), b_low[::-1].copy(), p)
    return [int(c) for c in h[::-1]]


def _gcd_primitive(pr, qr):
    """gcd of two integer bivariate polys, each primitive with respect to t."""
    if len(pr) == 1 or len(qr) == 1:
        return [[1]]
    acc = None
    modulus = 1
    shape = None
    last = None
    i = 0
    while True:
        p = ip.nth_prime(i)
        i += 1
        img = _gcd_image_mod_p(pr, qr, p)
        if img is None:
            continue
        dt, ds, mat = img
        if dt == 0:
            return [[1]]
        key = (dt, ds)
        if shape is None or key < shape:
            shape, acc, modulus, last = key, mat, p, None
        elif key > shape:
            continue
        else:
            acc = [[_crt1(x, modulus, y, p) for x, y in zip(ra, rb)]
                   for ra, rb in zip(acc, mat)]
            modulus *= p
        cand = _reconstruct(acc, modulus)
        if cand is None:
            continue
        if cand == last or (modulus == p and ip.height([c for r in cand for c in r]) < 1 << 16):
            if (_divexact_rows(pr, cand) is not None
                    and _divexact_rows(qr, cand) is not None):
                return cand
        last = cand


def _crt1(x, m, y, p):
    return x + m * ((y - x) * pow(m, -1, p) % p)


def _reconstruct(acc, modulus):
    """Rational reconstruction of every coefficient, cleared to a primitive integer matrix."""
    fr = []
    den = 1
    for r in acc:
        row = []
        for c in r:
            rr = modp.ratrecon_int(c, modulus)
            if rr is None:
                return None
            row.append(rr)
            den = _lcm(den, rr[1])
        fr.append(row)
    rows = [[a * (den // b) for a, b in row] for row in fr]
    rows = _strip_rows(rows)
    g = 0
    for r in rows:
        g = igcd(g, ip.content(r))
    if rows[-1][-1] < 0:
        g = -g
    return [[c // g for c in r] for r in rows]


def _gcd_image_mod_p(pr, qr, p):
    """Lex-monic image of gcd(P, Q) mod p as (deg_t, deg_s, matrix rows) or None."""
    P = _mod_matrix(pr, p)
    Q = _mod_matrix(qr, p)
    lcP, lcQ = P[-1], Q[-1]
    if not lcP.any() or not lcQ.any():
        return None
    # degree bound in s from a generic vertical line
    lcsP = _lc_s_column(P)
    lcsQ = _lc_s_column(Q)
    ds_bound = None
    for t_star in range(1, 64):
        if modp.evaluate(lcsP, t_star, p) and modp.evaluate(lcsQ, t_star, p):
            a = _eval_rows(P, t_star, p)
            b = _eval_rows(Q, t_star, p)
            ds_bound = len(_uni_gcd_mod(a, b, p)) - 1
            break
    if ds_bound is None:
        return None
    need = 2 * ds_bound + 2
    lcP_l = [int(c) for c in lcP]
    lcQ_l = [int(c) for c in lcQ]
    pts, imgs = [], []
    dt = None
    x = 0
    while len(pts) < need:
        x += 1
        if x >= p:
            return None
        if not modp.evaluate(lcP_l, x, p) or not modp.evaluate(lcQ_l, x, p):
            continue
        h = _uni_gcd_mod(_eval_cols(P, x, p), _eval_cols(Q, x, p), p)
        d = len(h) - 1
        if d == 0:
            return 0, 0, [[1]]
        if dt is None or d < dt:
            dt, pts, imgs = d, [], []
        elif d > dt:
            continue
        pts.append(x)
        imgs.append(h)
    m = [1]
    for x in pts:
        m = modp.mul(m, [(-x) % p, 1], p)
    nums, dens = [], []
    for k in range(dt + 1):
        u = modp.interpolate(pts, [h[k] for h in imgs], p)
        rr = modp.rational_reconstruct(u, m, ds_bound, p)
        if rr is None:
            return None
        nums.append(rr[0])
        dens.append(rr[1])
    L = [1]
    for d in dens:
        L = modp.mul(L, modp.divmod_(d, modp.gcd(L, d, p), p)[0], p)
    rows = [modp.mul(n, modp.divmod_(L, d, p)[0], p) for n, d in zip(nums, dens)]
    top = rows[-1]
    inv = pow(top[-1], -1, p)
    rows = [modp.scale(r, inv, p) for r in rows]
    ds = max(len(r) for r in rows) - 1
    width = ds + 1
    return dt, ds, [r + [0] * (width - len(r)) for r in rows]


def _lc_s_column(arr):
    """Coefficient of the top s-power, as a polynomial in t (lowest first)."""
    nz = np.nonzero(arr.any(axis=0))[0]
    col = arr[:, nz[-1]]
    return modp.strip([int(c) for c in col])
