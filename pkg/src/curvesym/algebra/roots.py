"""Real root isolation by Sturm sequences and real algebraic numbers."""

from __future__ import annotations

from fractions import Fraction

from . import intpoly as ip
from .factor import factor_rationals
from .unipoly import UniPoly


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_at(f, x: Fraction) -> int:
    """Sign of the integer polynomial f at a rational x, without fractions."""
    a, b = x.numerator, x.denominator
    acc = 0
    bp = 1
    # homogeneous Horner: sum f_i a^i b^(n-i)
    for c in reversed(f):
        acc = acc * a + c * bp
        bp *= b
    return _sign(acc)


def sturm_sequence(f):
    """Sturm chain of a squarefree integer polynomial, as primitive integer polys.

    Scaling each remainder by a positive constant keeps sign counts intact.
    """
    seq = [ip.primitive(f), ip.primitive(ip.deriv(f))]
    if not seq[1]:
        return seq[:1]
    while len(seq[-1]) > 1:
        a, b = seq[-2], seq[-1]
        r = _prem(a, b)
        if not r:
            break
        g = ip.content(r)
        seq.append([-c // g for c in r])
    return seq


def _prem(a, b):
    """Remainder of a by b up to a positive factor (pseudo-remainder with |lc|)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    ab = abs(lb)
    sgn = 1 if lb > 0 else -1
    while len(r) - 1 >= db and r:
        c = r[-1]
        k = len(r) - 1 - db
        # r <- |lb| r - sign(lb) c x^k b
        r = [x * ab for x in r]
        for j, y in enumerate(b):
            r[k + j] -= sgn * c * y
        r = ip.strip(r)
        g = ip.content(r)
        if g > 1:
            r = [x // g for x in r]
    return r


def sign_changes(seq, x: Fraction) -> int:
    prev = 0
    n = 0
    for f in seq:
        s = sign_at(f, x)
        if s:
            if prev and s != prev:
                n += 1
            prev = s
    return n


def count_roots(seq, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct roots in (lo, hi]."""
    return sign_changes(seq, lo) - sign_changes(seq, hi)


def _cauchy_bound(f) -> Fraction:
    lc = abs(f[-1])
    return 1 + Fraction(max(abs(c) for c in f[:-1]), lc) if len(f) > 1 else Fraction(1)


def _isolate_irreducible(f):
    """Disjoint isolating intervals (lo, hi), endpoints not roots, sorted."""
    if len(f) == 2:
        r = Fraction(-f[0], f[1])
        return [(r, r)]
    seq = sturm_sequence(f)
    bound = _cauchy_bound(f)
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        # irreducible of degree >= 2 has no rational roots
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return out


def isolate_real_roots(p: UniPoly):
    """One AlgebraicNumber per distinct real root, sorted ascending, disjoint intervals."""
    if p.is_zero():
        raise ValueError("root isolation of the zero polynomial")
    if p.degree < 1:
        return []
    roots = []
    for g, _ in factor_rationals(p):
        for lo, hi in _isolate_irreducible(list(g.num)):
            roots.append(AlgebraicNumber(g, (lo, hi), _checked=True))
    return _separate(roots)


def _separate(roots):
    roots = list(roots)
    changed = True
    while changed:
        changed = False
        roots.sort(key=lambda r: r.interval[0])
        for i in range(len(roots) - 1):
            a, b = roots[i], roots[i + 1]
            if a.interval[1] >= b.interval[0]:
                roots[i] = a.refined()
                roots[i + 1] = b.refined()
                changed = True
    return roots


class AlgebraicNumber:
    """A real root of an irreducible integer polynomial with an isolating interval.

    Rational roots use a degenerate interval internally but expose an open
    interval around them, so the public interval never has root endpoints.
    """

    __slots__ = ("min_poly", "_lo", "_hi", "_seq", "_w")

    def __init__(self, min_poly: UniPoly, interval, *, _checked: bool = False):
        f = min_poly.int_primitive()
        self.min_poly = UniPoly.from_ints(f)
        lo, hi = (Fraction(interval[0]), Fraction(interval[1]))
        if len(f) == 2:
            r = Fraction(-f[0], f[1])
            if not lo <= r <= hi:
                raise ValueError("interval does not contain the rational root")
            lo = hi = r
            self._seq = None
            self._w = Fraction(1, 2 * (r.denominator + 1))
        else:
            self._seq = sturm_sequence(f)
            if not _checked:
                if sign_at(f, lo) == 0 or sign_at(f, hi) == 0:
                    raise ValueError("interval endpoint is a root")
                if count_roots(self._seq, lo, hi) != 1:
                    raise ValueError("interval does not isolate exactly one root")
            self._w = None
        self._lo, self._hi = lo, hi

    @classmethod
    def rational(cls, r) -> "AlgebraicNumber":
        r = Fraction(r)
        return cls(UniPoly.from_ints([-r.numerator, r.denominator]), (r, r), _checked=True)

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    def is_rational(self) -> bool:
        return self._seq is None

    def as_fraction(self) -> Fraction:
        if self._seq is not None:
            raise ValueError("irrational algebraic number")
        return self._lo

    @property
    def interval(self):
        if self._seq is None:
            return self._lo - self._w, self._lo + self._w
        return self._lo, self._hi

    def sturm_count(self) -> int:
        if self._seq is None:
            return 1
        return count_roots(self._seq, self._lo, self._hi)

    def enclosure(self):
        """Closed interval [lo, hi] known to contain the root."""
        return self._lo, self._hi

    def refined(self, times: int = 1) -> "AlgebraicNumber":
        if self._seq is None:
            out = AlgebraicNumber.__new__(AlgebraicNumber)
            out.min_poly, out._seq, out._lo, out._hi = self.min_poly, None, self._lo, self._hi
            out._w = self._w / 2 ** times
            return out
        lo, hi = self._lo, self._hi
        f = self.min_poly.num
        for _ in range(times):
            mid = (lo + hi) / 2
            if count_roots(self._seq, lo, mid):
                hi = mid
            else:
                lo = mid
            if sign_at(f, hi) == 0 or sign_at(f, lo) == 0:
                raise AssertionError("irreducible polynomial with rational root")
        out = AlgebraicNumber.__new__(AlgebraicNumber)
        out.min_poly, out._seq, out._lo, out._hi, out._w = self.min_poly, self._seq, lo, hi, None
        return out

    def refined_to(self, width: Fraction) -> "AlgebraicNumber":
        r = self
        while r._seq is not None and r._hi - r._lo > width:
            r = r.refined(4)
        return r

    def approx(self, digits: int = 30) -> Fraction:
        r = self.refined_to(Fraction(1, 10 ** (digits + 2)))
        return (r._lo + r._hi) / 2

    def to_decimal(self, digits: int = 30) -> str:
        return decimal_string(self.approx(digits), digits)

    def __float__(self):
        return float(self.approx(20))

    def sign(self) -> int:
        r = self
        while True:
            if r._lo > 0:
                return 1
            if r._hi < 0:
                return -1
            if r._lo == r._hi == 0:
                return 0
            r = r.refined(4)

    def __eq__(self, other):
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        if self.min_poly != other.min_poly:
            return False
        lo = max(self._lo, other._lo)
        hi = min(self._hi, other._hi)
        if lo > hi:
            return False
        if self._seq is None:
            return True
        if lo == hi:
            return False
        return count_roots(self._seq, lo, hi) == 1

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self):
        lo, hi = self.interval
        return f"AlgebraicNumber({self.min_poly.to_str('x')!r}, [{lo}, {hi}] ~ {self.to_decimal(12)})"


def decimal_string(x: Fraction, digits: int) -> str:
    """Fixed-point rendering of a rational with round-half-even."""
    scaled = round(x * 10 ** digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10 ** digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"
