"""Rational space curves: data model, differential invariants, generators."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .algebra import intpoly as ip
from .algebra.unipoly import RatFunc, UniPoly
from .errors import CurveParseError, DegenerateCurveError

T = UniPoly([0, 1])
ONE = UniPoly([1])


def _rf(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc(x)


@dataclass(frozen=True)
class ParamCurve3:
    """x(t) = (x(t), y(t), z(t)) with reduced rational-function components.

    Input contract: the parametrization is proper.  This is not checked; a
    non-proper input may report extra symmetries.
    """

    x: RatFunc
    y: RatFunc
    z: RatFunc

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, _rf(getattr(self, name)))

    @property
    def components(self):
        return (self.x, self.y, self.z)

    @property
    def degree(self) -> int:
        return max(max(f.num.degree, f.den.degree) for f in self.components)

    @property
    def bitsize(self) -> int:
        h = 0
        for f in self.components:
            for p in (f.num, f.den):
                prim = p.int_primitive()
                if prim:
                    h = max(h, ip.height(prim).bit_length())
        return h

    def common_form(self):
        """(X, w): integer-coefficient UniPolys with x_i = X_i / w."""
        w = ONE
        for f in self.components:
            g = _gcd(w, f.den)
            w = w * f.den.exact_div(g)
        w = UniPoly.from_ints(w.int_primitive())
        X = tuple((f.num * w.exact_div(f.den)) for f in self.components)
        return X, w

    def __call__(self, t):
        return tuple(f(t) for f in self.components)

    def is_defined_at(self, t) -> bool:
        return all(f.den(t) != 0 for f in self.components)

    def __str__(self):
        return "(" + ", ".join(f.to_str("t") for f in self.components) + ")"


def _gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    g = ip.gcd(list(a.num), list(b.num))
    return UniPoly.from_ints(g)


# -- differential quantities ------------------------------------------------

def derivatives(c: ParamCurve3, order: int):
    """Exact derivatives x', ..., x^(order), each a triple of RatFunc."""
    if order not in (1, 2, 3):
        raise ValueError("order must be 1, 2 or 3")
    out = []
    cur = c.components
    for _ in range(order):
        cur = tuple(f.derivative() for f in cur)
        out.append(cur)
    return out


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


@dataclass(frozen=True)
class CurveInvariants:
    """kappa2 = A/B, tau = C/D (None for a line), speed2 = |x'|^2."""

    kappa2: RatFunc
    tau: RatFunc | None
    speed2: RatFunc


def invariants(c: ParamCurve3) -> CurveInvariants:
    # with x = X/w and Y = w X' - w' X:  x' = Y/w^2, x' x x'' = (Y x Y')/w^4
    X, w = c.common_form()
    dw = w.derivative()
    Y = tuple(w * Xi.derivative() - dw * Xi for Xi in X)
    if all(y.is_zero() for y in Y):
        raise DegenerateCurveError("Constant", "constant or ill-posed parametrization")
    dY = tuple(y.derivative() for y in Y)
    ddY = tuple(y.derivative() for y in dY)
    YY = _dot(Y, Y)
    w2 = w * w
    speed2 = RatFunc(YY, w2 * w2)
    N = _cross(Y, dY)
    NN = _dot(N, N)
    kappa2 = RatFunc(w2 * w2 * NN, YY * YY * YY)
    if NN.is_zero():
        return CurveInvariants(kappa2, None, speed2)
    det = _dot(N, ddY)
    tau = RatFunc(w2 * det, NN)
    return CurveInvariants(kappa2, tau, speed2)


@dataclass(frozen=True)
class DegeneracyReport:
    kind: str  # NonDegenerate | Line | Circle | Planar

    @property
    def degenerate(self) -> bool:
        return self.kind != "NonDegenerate"

    @property
    def reason(self) -> str:
        return {
            "NonDegenerate": "curve is non-degenerate",
            "Line": "curvature vanishes identically: the curve is a straight line",
            "Circle": "torsion vanishes and curvature is constant: the curve is a circle",
            "Planar": ("torsion vanishes identically: the curve is planar; "
                       "plane-curve symmetry methods apply"),
        }[self.kind]


def degeneracy(inv: CurveInvariants) -> DegeneracyReport:
    if inv.kappa2.is_zero() or inv.tau is None:
        return DegeneracyReport("Line")
    if inv.tau.is_zero():
        if inv.kappa2.num.degree == 0 and inv.kappa2.den.degree == 0:
            return DegeneracyReport("Circle")
        return DegeneracyReport("Planar")
    return DegeneracyReport("NonDegenerate")


# -- reparametrization and motions ------------------------------------------

def shift_parameter(c: ParamCurve3, alpha) -> ParamCurve3:
    """x(t + alpha)."""
    alpha = Fraction(alpha)
    if not alpha:
        return c
    return ParamCurve3(*(f.shift(alpha) for f in c.components))


def compose_mobius(c: ParamCurve3, a, b, cc, d) -> ParamCurve3:
    """x((a t + b)/(cc t + d)) for rational coefficients."""
    a, b, cc, d = (Fraction(v) for v in (a, b, cc, d))
    if a * d - b * cc == 0:
        raise ValueError("degenerate Moebius transformation")
    phi = RatFunc(UniPoly([b, a]), UniPoly([d, cc]))
    return ParamCurve3(*(f.compose(phi) for f in c.components))


def apply_isometry(c: ParamCurve3, Q, b) -> ParamCurve3:
    """Q x(t) + b for a rational 3x3 matrix Q and vector b."""
    comps = c.components
    out = []
    for i in range(3):
        acc = RatFunc(Fraction(b[i]))
        for j in range(3):
            if Q[i][j]:
                acc = acc + comps[j] * Fraction(Q[i][j])
        out.append(acc)
    return ParamCurve3(*out)


def rational_rotation(q) -> tuple:
    """Orthogonal matrix with det +1 from a nonzero rational quaternion (w, x, y, z)."""
    w, x, y, z = (Fraction(v) for v in q)
    n = w * w + x * x + y * y + z * z
    if not n:
        raise ValueError("zero quaternion")
    return (
        ((w * w + x * x - y * y - z * z) / n, 2 * (x * y - w * z) / n, 2 * (x * z + w * y) / n),
        (2 * (x * y + w * z) / n, (w * w - x * x + y * y - z * z) / n, 2 * (y * z - w * x) / n),
        (2 * (x * z - w * y) / n, 2 * (y * z + w * x) / n, (w * w - x * x - y * y + z * z) / n),
    )


# -- corpus --------------------------------------------------------------

def twisted_cubic() -> ParamCurve3:
    return ParamCurve3(RatFunc(T), RatFunc(T * T), RatFunc(T * T * T))


def crunode() -> ParamCurve3:
    den = UniPoly([1, 0, 0, 0, 1])
    return ParamCurve3(RatFunc(T, den), RatFunc(T * T, den), RatFunc(T * T * T, den))


def daisy(j: int) -> ParamCurve3:
    """Daisy of degree 4j + 4 built from the rational circle u, v."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    U = UniPoly([1, 0, -1])
    V = UniPoly([0, 2])
    W = UniPoly([1, 0, 1])
    S = UniPoly()
    for i in range(j + 1):
        S = S + U ** (2 * j - 2 * i) * V ** (2 * i) * ((-1) ** i * comb(2 * j, 2 * i))
    den = W ** (2 * j + 1)
    k = 4 * j + 4
    tk = UniPoly([0] * k + [1])
    return ParamCurve3(RatFunc(U * S, den), RatFunc(V * S, den), RatFunc(1 - tk, 1 + tk))


def _bounded(rng: random.Random, bits: int, nonzero: bool = False) -> int:
    # |c| <= 2^(bits-1), i.e. ceil(log2 |c|) <= bits - 1
    hi = 1 << max(bits - 1, 0)
    while True:
        v = rng.randint(-hi, hi)
        if v or not nonzero:
            return v


def random_central_curve(m: int, tau_bits: int, seed) -> ParamCurve3:
    """Antisymmetric numerators over palindromic denominators: x(1/t) = -x(t)."""
    if m < 2 or m % 2:
        raise ValueError("m must be an even integer >= 2")
    rng = random.Random(seed)
    while True:
        comps = []
        for _ in range(3):
            num = [0] * (m + 1)
            den = [0] * (m + 1)
            for k in range(m // 2):
                c = _bounded(rng, tau_bits, nonzero=(k == 0))
                num[k], num[m - k] = c, -c
            for k in range(m // 2 + 1):
                d = _bounded(rng, tau_bits, nonzero=(k == 0))
                den[k] = den[m - k] = d
            comps.append(RatFunc(UniPoly(num), UniPoly(den)))
        c = ParamCurve3(*comps)
        if c.degree == m and not degeneracy(invariants(c)).degenerate:
            return c


def random_curve(m: int, tau_bits: int, seed) -> ParamCurve3:
    """Dense random rational curve of degree m with bounded coefficients."""
    rng = random.Random(seed)
    while True:
        comps = []
        for _ in range(3):
            num = [_bounded(rng, tau_bits) for _ in range(m + 1)]
            den = [_bounded(rng, tau_bits) for _ in range(m)] + [_bounded(rng, tau_bits, True)]
            comps.append(RatFunc(UniPoly(num), UniPoly(den)))
        c = ParamCurve3(*comps)
        if c.degree == m and not degeneracy(invariants(c)).degenerate:
            return c


BUILTINS = ("twisted_cubic", "crunode", "daisy:<j>", "random_central:<m>", "random:<m>")


def builtin_curve(name: str, seed=None) -> ParamCurve3:
    if name == "twisted_cubic":
        return twisted_cubic()
    if name == "crunode":
        return crunode()
    head, _, arg = name.partition(":")
    try:
        if head == "daisy":
            return daisy(int(arg))
        if head == "random_central":
            return random_central_curve(int(arg or 4), 8, 0 if seed is None else seed)
        if head == "random":
            return random_curve(int(arg or 4), 8, 0 if seed is None else seed)
    except ValueError as exc:
        raise ValueError(f"bad builtin curve {name!r}: {exc}") from None
    raise ValueError(f"unknown builtin curve {name!r}; choose from {', '.join(BUILTINS)}")


# -- JSON ----------------------------------------------------------------

def curve_to_json(c: ParamCurve3) -> dict:
    """Integer-string coefficient lists, lowest degree first."""
    out = {}
    for name, f in zip("xyz", c.components):
        scale = f.num.den * f.den.den // gcd(f.num.den, f.den.den)
        out[name] = {"num": [str(int(v * scale)) for v in f.num.coeffs],
                     "den": [str(int(v * scale)) for v in f.den.coeffs]}
    return out


def _parse_int(v, where):
    if isinstance(v, bool):
        raise CurveParseError(f"{where}: expected an integer coefficient, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        raise CurveParseError(f"{where}: floating point not accepted; use exact rationals")
    if isinstance(v, str):
        s = v.strip()
        try:
            return int(s)
        except ValueError:
            pass
        if any(ch in s for ch in ".eE") and _looks_float(s):
            raise CurveParseError(f"{where}: floating point not accepted; use exact rationals")
        raise CurveParseError(f"{where}: coefficient {v!r} is not an integer string")
    raise CurveParseError(f"{where}: expected an integer coefficient, got {type(v).__name__}")


def _looks_float(s):
    try:
        float(s)
    except ValueError:
        return False
    return True


def curve_from_json(data) -> ParamCurve3:
    if not isinstance(data, dict):
        raise CurveParseError("top level: expected an object with keys x, y, z")
    comps = []
    for name in "xyz":
        if name not in data:
            raise CurveParseError(f"top level: missing component {name!r}")
        comp = data[name]
        if not isinstance(comp, dict) or "num" not in comp or "den" not in comp:
            raise CurveParseError(f"{name}: expected an object with 'num' and 'den' lists")
        polys = []
        for part in ("num", "den"):
            lst = comp[part]
            if not isinstance(lst, list):
                raise CurveParseError(f"{name}.{part}: expected a list of coefficients")
            polys.append(UniPoly([_parse_int(v, f"{name}.{part}[{i}]") for i, v in enumerate(lst)]))
        if polys[1].is_zero():
            raise CurveParseError(f"{name}.den: zero denominator polynomial")
        comps.append(RatFunc(polys[0], polys[1]))
    return ParamCurve3(*comps)


def curve_from_json_text(text: str) -> ParamCurve3:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CurveParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return curve_from_json(data)
