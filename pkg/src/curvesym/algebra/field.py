"""Arithmetic in Q[x]/(f): residue rings and real number fields Q(xi)."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DenominatorVanishes
from .roots import AlgebraicNumber, decimal_string
from .unipoly import RatFunc, UniPoly, poly_xgcd

_ZERO = Fraction(0)


def _trim(rep):
    rep = list(rep)
    while rep and not rep[-1]:
        rep.pop()
    return tuple(rep)


class QuotientRing:
    """Q[x]/(modulus) with precomputed reductions of x^n .. x^(2n-2)."""

    __slots__ = ("modulus", "n", "_table")

    def __init__(self, modulus: UniPoly):
        if modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        self.modulus = modulus.monic()
        n = self.n = modulus.degree
        low = [-c for c in self.modulus.coeffs[:n]]  # x^n = sum low_i x^i
        table = []
        cur = low
        for _ in range(max(n - 1, 0)):
            table.append(tuple(cur))
            top = cur[-1]
            cur = [_ZERO] + cur[:-1]
            if top:
                cur = [c + top * l for c, l in zip(cur, low)]
        self._table = tuple(table)

    def reduce(self, coeffs) -> tuple:
        c = [Fraction(x) for x in coeffs]
        n = self.n
        if len(c) <= n:
            return _trim(c)
        if len(c) > 2 * n - 1:
            return _trim((UniPoly(c) % self.modulus).coeffs)
        low = c[:n]
        for k in range(n, len(c)):
            v = c[k]
            if v:
                for i, t in enumerate(self._table[k - n]):
                    if t:
                        low[i] += v * t
        return _trim(low)

    def mul(self, a, b) -> tuple:
        if not a or not b:
            return ()
        if self.n == 1:
            return _trim((a[0] * b[0],))
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self.reduce(out)

    def inverse(self, a) -> tuple:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.n == 1 or len(a) == 1:
            if len(a) == 1:
                return (1 / a[0],)
        g, s, _ = poly_xgcd(UniPoly(a), self.modulus)
        if g.degree != 0:
            raise ZeroDivisionError("element is a zero divisor")
        return self.reduce(s.coeffs)

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    # element constructors
    def elem(self, x) -> "Residue":
        return Residue(self, _rep_of(self, x))

    def from_ratfunc(self, r: RatFunc) -> "Residue":
        num = self.reduce(r.num.coeffs)
        den = self.reduce(r.den.coeffs)
        return Residue(self, self.mul(num, self.inverse(den)))


def _rep_of(ring, x):
    if isinstance(x, Residue):
        return x.rep
    if isinstance(x, (int, Fraction)):
        return _trim((Fraction(x),))
    if isinstance(x, UniPoly):
        return ring.reduce(x.coeffs)
    if isinstance(x, RatFunc):
        return ring.mul(ring.reduce(x.num.coeffs), ring.inverse(ring.reduce(x.den.coeffs)))
    raise TypeError(f"cannot coerce {type(x).__name__} into a residue ring")


class Residue:
    """Element of Q[x]/(f), f not necessarily irreducible."""

    __slots__ = ("ring", "rep")

    def __init__(self, ring: QuotientRing, rep=()):
        self.ring = ring
        self.rep = rep

    def _new(self, rep):
        return type(self)._make(self, rep)

    @classmethod
    def _make(cls, proto, rep):
        obj = cls.__new__(cls)
        obj.ring = proto.ring
        obj.rep = rep
        return obj

    def _other(self, other):
        if isinstance(other, Residue):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("elements of different rings")
            return other.rep
        if isinstance(other, (int, Fraction)):
            return _trim((Fraction(other),))
        return None

    def __add__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        a = self.rep
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return self._new(_trim(out))

    __radd__ = __add__

    def __neg__(self):
        return self._new(tuple(-c for c in self.rep))

    def __sub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        n = max(len(self.rep), len(b))
        out = list(self.rep) + [_ZERO] * (n - len(self.rep))
        for i, c in enumerate(b):
            out[i] -= c
        return self._new(_trim(out))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self._new(())
            return self._new(tuple(c * other for c in self.rep))
        b = self._other(other)
        if b is None:
            return NotImplemented
        return self._new(self.ring.mul(self.rep, b))

    __rmul__ = __mul__

    def inverse(self):
        return self._new(self.ring.inverse(self.rep))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        b = self._other(other)
        if b is None:
            return NotImplemented
        return self * self._new(self.ring.inverse(b))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self._new((Fraction(1),))
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def is_zero(self) -> bool:
        return not self.rep

    def __bool__(self):
        return bool(self.rep)

    def is_rational(self) -> bool:
        return len(self.rep) <= 1

    def as_fraction(self) -> Fraction:
        if len(self.rep) > 1:
            raise ValueError("not a rational element")
        return self.rep[0] if self.rep else _ZERO

    def to_unipoly(self) -> UniPoly:
        return UniPoly(self.rep)

    def __eq__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return self.rep == b

    def __hash__(self):
        if len(self.rep) <= 1:
            return hash(self.rep[0] if self.rep else 0)
        return hash(self.rep)

    def to_str(self, var: str = "xi") -> str:
        return UniPoly(self.rep).to_str(var)

    def __repr__(self):
        return f"{type(self).__name__}({self.to_str()!r})"


class NumberField:
    """Q(xi) for a real algebraic number xi; immutable and shareable."""

    __slots__ = ("xi", "ring")

    def __init__(self, xi: AlgebraicNumber):
        self.xi = xi
        self.ring = QuotientRing(xi.min_poly)

    @property
    def degree(self) -> int:
        return self.ring.n

    def elem(self, x) -> "FieldElem":
        try:
            return FieldElem(self, _rep_of(self.ring, x))
        except ZeroDivisionError as exc:
            raise DenominatorVanishes(str(exc)) from None

    def gen(self) -> "FieldElem":
        return self.elem(UniPoly([0, 1]))

    @property
    def one(self) -> "FieldElem":
        return self.elem(1)

    @property
    def zero(self) -> "FieldElem":
        return self.elem(0)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.xi == other.xi

    def __hash__(self):
        return hash(self.xi)

    def __repr__(self):
        return f"NumberField({self.xi!r})"


class FieldElem(Residue):
    """Element of a real number field Q(xi); equality is equality of reps."""

    __slots__ = ("field",)

    def __init__(self, field: NumberField, rep=()):
        super().__init__(field.ring, rep)
        self.field = field

    @classmethod
    def _make(cls, proto, rep):
        obj = cls.__new__(cls)
        obj.ring = proto.ring
        obj.rep = rep
        obj.field = proto.field
        return obj

    @property
    def base(self) -> AlgebraicNumber:
        return self.field.xi

    def inverse(self):
        try:
            return super().inverse()
        except ZeroDivisionError as exc:
            raise DenominatorVanishes(str(exc)) from None

    def enclosure(self, xi: AlgebraicNumber | None = None):
        """Rational interval containing the value, by interval Horner."""
        xi = xi or self.field.xi
        lo, hi = xi.enclosure()
        vlo = vhi = _ZERO
        for c in reversed(self.rep):
            cands = (vlo * lo, vlo * hi, vhi * lo, vhi * hi)
            vlo, vhi = min(cands) + c, max(cands) + c
        return vlo, vhi

    def sign(self) -> int:
        if not self.rep:
            return 0
        xi = self.field.xi
        while True:
            lo, hi = self.enclosure(xi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            xi = xi.refined(4)

    def approx(self, digits: int = 30) -> Fraction:
        if len(self.rep) <= 1:
            return self.as_fraction()
        width = Fraction(1, 10 ** (digits + 2))
        xi = self.field.xi
        while True:
            lo, hi = self.enclosure(xi)
            if hi - lo <= width:
                return (lo + hi) / 2
            xi = xi.refined(8)

    def to_decimal(self, digits: int = 30) -> str:
        return decimal_string(self.approx(digits), digits)

    def __float__(self):
        return float(self.approx(20))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    __hash__ = Residue.__hash__


def field_eval(r, x) -> FieldElem:
    """Value of a rational function of xi at an algebraic number, in Q(xi).

    Raises DenominatorVanishes when the denominator has a zero at x.
    """
    field = x if isinstance(x, NumberField) else NumberField(x)
    if not isinstance(r, RatFunc):
        r = RatFunc(r)
    den = field.ring.reduce(r.den.coeffs)
    if not den:
        raise DenominatorVanishes("denominator vanishes at the algebraic number")
    return field.elem(r)


def poly_mul_field(A, B, one):
    """Product of polynomials in t with coefficients in a common Q[x]/(f).

    Splits each factor into rational polynomials per power of x so that the
    bulk of the work is integer polynomial multiplication.
    """
    if not A or not B:
        return []
    ring = one.ring

    def split(P):
        width = max(len(x.rep) for x in P)
        return [UniPoly([x.rep[j] if j < len(x.rep) else 0 for x in P]) for j in range(width)]

    ca, cb = split(A), split(B)
    acc: dict[int, UniPoly] = {}
    for j, pa in enumerate(ca):
        if pa.is_zero():
            continue
        for k, pb in enumerate(cb):
            if pb.is_zero():
                continue
            acc[j + k] = acc.get(j + k, UniPoly()) + pa * pb
    n = ring.n
    low = [acc.get(i, UniPoly()) for i in range(n)]
    for e, poly in acc.items():
        if e >= n:
            for i, tcoef in enumerate(ring._table[e - n]):
                if tcoef:
                    low[i] = low[i] + poly * tcoef
    length = max((len(p) for p in low), default=0)
    out = [one._new(_trim(tuple(p[i] for p in low))) for i in range(length)]
    while out and not out[-1].rep:
        out.pop()
    return out
