"""Univariate polynomials and rational functions over Q."""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as igcd

from . import intpoly as ip


def _lcm(a: int, b: int) -> int:
    return a // igcd(a, b) * b


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as a rational coefficient")


class UniPoly:
    """Polynomial with rational coefficients, stored as ``num / den``.

    ``num`` is an integer coefficient list (lowest degree first) and ``den`` a
    positive integer coprime to the content of ``num``.  Instances are
    immutable and hashable.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, coeffs=()):
        fr = [_as_fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        num = ip.strip([c.numerator * (den // c.denominator) for c in fr])
        self._set(num, den)

    def _set(self, num, den):
        if not num:
            self._num, self._den = (), 1
            return
        g = igcd(ip.content(num), den)
        if g != 1:
            num = [c // g for c in num]
            den //= g
        self._num = tuple(num)
        self._den = den

    @classmethod
    def from_ints(cls, num, den: int = 1) -> "UniPoly":
        obj = cls.__new__(cls)
        if den < 0:
            num, den = [-c for c in num], -den
        obj._set(ip.strip(list(num)), den)
        return obj

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls.from_ints([0, 1])

    # -- accessors -------------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def num(self) -> tuple:
        return self._num

    @property
    def den(self) -> int:
        return self._den

    @property
    def degree(self) -> int:
        return len(self._num) - 1

    def __len__(self):
        return len(self._num)

    def __getitem__(self, i) -> Fraction:
        if 0 <= i < len(self._num):
            return Fraction(self._num[i], self._den)
        return Fraction(0)

    def lc(self) -> Fraction:
        if not self._num:
            return Fraction(0)
        return Fraction(self._num[-1], self._den)

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return len(self._num) <= 1

    def __bool__(self):
        return bool(self._num)

    def int_primitive(self) -> list:
        """Integer primitive part with positive leading coefficient."""
        return ip.primitive(list(self._num))

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = _lcm(self._den, other._den)
        a = ip.scale(list(self._num), d // self._den)
        b = ip.scale(list(other._num), d // other._den)
        return UniPoly.from_ints(ip.add(a, b), d)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly.from_ints([-c for c in self._num], self._den)

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
            return UniPoly.from_ints(
                [c * other.numerator for c in self._num], self._den * other.denominator)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return UniPoly.from_ints(ip.mul(list(self._num), list(other._num)), self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        return UniPoly.from_ints(ip.power(list(self._num), e), self._den ** e)

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(r) - 1 < db:
            return UniPoly(), self
        inv = 1 / b[-1]
        q = [Fraction(0)] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if c:
                c *= inv
                q[k] = c
                for j in range(db):
                    if b[j]:
                        r[k + j] -= c * b[j]
        return UniPoly(q), UniPoly(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "UniPoly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return other.is_zero() or ip.divexact(
            ip.primitive(list(other._num)), self.int_primitive()) is not None

    # -- calculus and evaluation -------------------------------------------
    def derivative(self) -> "UniPoly":
        return UniPoly.from_ints(ip.deriv(list(self._num)), self._den)

    def __call__(self, x):
        acc = 0
        for c in reversed(self._num):
            acc = acc * x + c
        if isinstance(acc, int):
            return Fraction(acc, self._den)
        return acc * Fraction(1, self._den)

    def eval_ring(self, x, one=None):
        """Horner evaluation at an element of any commutative ring."""
        acc = 0 if one is None else one * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shift(self, alpha) -> "UniPoly":
        """p(x + alpha)."""
        alpha = Fraction(alpha)
        if alpha.denominator == 1:
            return UniPoly.from_ints(ip.taylor_shift(list(self._num), alpha.numerator), self._den)
        return self.compose(UniPoly([alpha, 1]))

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return UniPoly.from_ints(list(self._num), self._num[-1])

    def homogenize(self, num, den, n: int):
        """sum_k p_k num^k den^(n-k) for ring-valued polynomials num, den in t."""
        from .ringpoly import homogeneous_compose
        return homogeneous_compose(self.coeffs, num, den, n)

    # -- comparison / display ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        return hash((self._num, self._den))

    def to_str(self, var: str = "x") -> str:
        if not self._num:
            return "0"
        parts = []
        for k in range(len(self._num) - 1, -1, -1):
            c = Fraction(self._num[k], self._den)
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"UniPoly({self.to_str()!r})"

    @classmethod
    def parse(cls, text: str, var: str = "x") -> "UniPoly":
        """Parse strings such as ``"12*x^4 - 97*x^2 + 8"``."""
        src = text.replace(" ", "").replace("**", "^")
        if not src:
            raise ValueError("empty polynomial string")
        terms = re.findall(r"[+-]?[^+-]+", src)
        if "".join(terms) != src:
            raise ValueError(f"cannot parse polynomial {text!r}")
        coeffs: dict[int, Fraction] = {}
        pat = re.compile(rf"^([+-]?)(?:(\d+(?:/\d+)?)\*?)?(?:({re.escape(var)})(?:\^(\d+))?)?$")
        for term in terms:
            m = pat.match(term)
            if not m or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse term {term!r} in {text!r}")
            c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(1) == "-":
                c = -c
            k = 0 if m.group(3) is None else int(m.group(4) or 1)
            coeffs[k] = coeffs.get(k, Fraction(0)) + c
        n = max(coeffs) + 1
        return cls([coeffs.get(k, 0) for k in range(n)])


# ---------------------------------------------------------------------------

def poly_gcd_uni(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic greatest common divisor."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials")
    g = ip.gcd(list(p.num), list(q.num))
    return UniPoly.from_ints(g, g[-1])


def poly_xgcd(p: UniPoly, q: UniPoly):
    """Extended Euclid over Q: (g, s, t) with s*p + t*q = g monic."""
    r0, r1 = p, q
    s0, s1 = UniPoly([1]), UniPoly()
    t0, t1 = UniPoly(), UniPoly([1])
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    lc = r0.lc()
    return r0 / lc, s0 / lc, t0 / lc


class RatFunc:
    """Reduced quotient of two UniPolys; the denominator is monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduced: bool = False):
        if not isinstance(num, UniPoly):
            num = UniPoly([num]) if isinstance(num, (int, Fraction)) else UniPoly(num)
        if den is None:
            den = UniPoly([1])
        elif not isinstance(den, UniPoly):
            den = UniPoly([den]) if isinstance(den, (int, Fraction)) else UniPoly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator polynomial")
        if num.is_zero():
            num, den = UniPoly(), UniPoly([1])
        elif not reduced and not den.is_constant():
            g = ip.gcd(list(num.num), list(den.num))
            if len(g) > 1:
                gp = UniPoly.from_ints(g)
                num = num.exact_div(gp) if len(g) > 8 else num // gp
                den = den // gp
        lc = den.lc()
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num = num
        self.den = den

    @classmethod
    def from_int_polys(cls, num, den, *, reduced: bool = False) -> "RatFunc":
        return cls(UniPoly.from_ints(num), UniPoly.from_ints(den), reduced=reduced)

    def __setattr__(self, name, value):
        if hasattr(self, "den"):
            raise AttributeError("RatFunc is immutable")
        object.__setattr__(self, name, value)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, UniPoly)):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return RatFunc(self.den ** (-e), self.num ** (-e))
        return RatFunc(self.num ** e, self.den ** e, reduced=True)

    def derivative(self) -> "RatFunc":
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(),
                       self.den * self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_defined_at(self, x) -> bool:
        return self.den(x) != 0

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"rational function undefined at {x}")
        return self.num(x) / d

    def compose(self, other: "RatFunc") -> "RatFunc":
        """self(other(t)) by homogenization."""
        n = max(self.num.degree, self.den.degree, 0)
        p, q = other.num, other.den

        def hom(poly):
            acc = UniPoly()
            qpow = [UniPoly([1])]
            for _ in range(n):
                qpow.append(qpow[-1] * q)
            ppow = UniPoly([1])
            for k, c in enumerate(poly.coeffs):
                if c:
                    acc = acc + ppow * qpow[n - k] * c
                ppow = ppow * p
            return acc
        return RatFunc(hom(self.num), hom(self.den))

    def shift(self, alpha) -> "RatFunc":
        return RatFunc(self.num.shift(alpha), self.den.shift(alpha), reduced=True)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def to_str(self, var: str = "t") -> str:
        if self.den == UniPoly([1]):
            return self.num.to_str(var)
        return f"({self.num.to_str(var)})/({self.den.to_str(var)})"

    def __repr__(self):
        return f"RatFunc({self.to_str()!r})"
