"""Detection of the Moebius transformations behind a curve's symmetries.

Pipeline per determinant sign: matching polynomials K, T and their gcd G, a
probe line t = t0 through the zero set of G, implicit derivatives of s(t)
along G = 0, candidate transformations for d = 1 and d = 0 parametrized by a
root xi of G(t0, .), and finally the equal-speed filter.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import intpoly as ip
from .algebra import ringpoly as rp
from .algebra.bipoly import BiPoly, poly_gcd_bi
from .algebra.factor import factor_rationals
from .algebra.field import FieldElem, NumberField, QuotientRing, field_eval
from .algebra.roots import AlgebraicNumber, isolate_real_roots
from .algebra.unipoly import RatFunc, UniPoly, poly_gcd_uni
from .curve import CurveInvariants, ParamCurve3, degeneracy, invariants
from .errors import DegenerateCurveError, DenominatorVanishes

log = logging.getLogger(__name__)

XI = UniPoly([0, 1])


@dataclass(frozen=True)
class SymmetryEquations:
    K: BiPoly
    Tplus: BiPoly
    Tminus: BiPoly
    Gplus: BiPoly
    Gminus: BiPoly

    def G(self, sign: int) -> BiPoly:
        return self.Gplus if sign > 0 else self.Gminus

    def T(self, sign: int) -> BiPoly:
        return self.Tplus if sign > 0 else self.Tminus


@dataclass(frozen=True)
class ProbeLine:
    t0: int
    g: UniPoly
    attempts: int


@dataclass(frozen=True)
class MobiusCandidate:
    """phi(t) = (a t + b)/(c t + d) over Q(xi)."""

    a: FieldElem
    b: FieldElem
    c: FieldElem
    d: FieldElem
    xi: AlgebraicNumber
    branch: str  # "d1" or "d0"
    detSign: int

    @property
    def field(self) -> NumberField:
        return self.a.field

    @property
    def delta(self) -> FieldElem:
        return self.a * self.d - self.b * self.c

    def coeffs(self):
        return self.a, self.b, self.c, self.d

    def is_rational(self) -> bool:
        return all(v.is_rational() for v in self.coeffs())

    def rational_coeffs(self):
        return tuple(v.as_fraction() for v in self.coeffs())

    def mobius_like(self) -> "BiPoly | None":
        """(c t + d) s - (a t + b) when the coefficients are rational."""
        if not self.is_rational():
            return None
        a, b, c, d = self.rational_coeffs()
        return BiPoly({(1, 1): c, (0, 1): d, (1, 0): -a, (0, 0): -b})

    def to_str(self, var: str = "t") -> str:
        """phi(t) as text; irrational coefficients are polynomials in xi."""
        num = _linear_str(self.a, self.b, var)
        den = _linear_str(self.c, self.d, var)
        if den == "1":
            return num
        wrap = (lambda x: x) if _is_atom(num) else (lambda x: f"({x})")
        return f"{wrap(num)}/{den if _is_atom(den) else f'({den})'}"

    def __str__(self):
        return self.to_str()


def _coef_str(k) -> str:
    if k.is_rational():
        return str(k.as_fraction())
    return f"({k.to_str('xi')})"


def _linear_str(p, q, var: str) -> str:
    parts = []
    if not p.is_zero():
        if p == 1:
            parts.append(var)
        elif p == -1:
            parts.append(f"-{var}")
        else:
            parts.append(f"{_coef_str(p)}*{var}")
    if not q.is_zero():
        parts.append(_coef_str(q))
    return " + ".join(parts).replace("+ -", "- ") or "0"


def _is_atom(text: str) -> bool:
    return " " not in text and "/" not in text


@dataclass(frozen=True)
class SpeedWitness:
    W: tuple  # coefficients w_0..w_n as FieldElem
    R_filtered: UniPoly
    degree_bound: int


@dataclass
class SymmResult:
    sign: int
    G: BiPoly
    probe: ProbeLine | None
    R: dict  # branch -> R_d
    candidates: list  # all well-defined candidates (before speed filter)
    accepted: list
    rejected_by_speed: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.accepted)


# ---------------------------------------------------------------------------

def _int_pair(f: RatFunc):
    return f.num.int_primitive(), f.den.int_primitive()


def _antisym(P, Q, sign: int) -> BiPoly:
    """P(t) Q(s) - sign * P(s) Q(t) for integer coefficient lists."""
    rows = []
    for i in range(max(len(P), len(Q))):
        pi = P[i] if i < len(P) else 0
        qi = Q[i] if i < len(Q) else 0
        rows.append(ip.sub(ip.scale(list(Q), pi), ip.scale(list(P), sign * qi)))
    return BiPoly.from_rows(rows)


def build_equations(inv: CurveInvariants) -> SymmetryEquations:
    rep = degeneracy(inv)
    if rep.degenerate:
        raise DegenerateCurveError(rep.kind, rep.reason)
    A, B = _int_pair(inv.kappa2)
    C, D = _int_pair(inv.tau)
    K = _antisym(A, B, 1)
    Tp = _antisym(C, D, 1)
    Tm = _antisym(C, D, -1)
    return SymmetryEquations(K, Tp, Tm, poly_gcd_bi(K, Tp), poly_gcd_bi(K, Tm))


def working_polynomial(G: BiPoly) -> BiPoly:
    """Drop pure-t factors and repeated factors of G; Moebius-like factors survive."""
    cols = BiPoly.from_rows([[c] for c in G.content_s()]) if G.content_s() != [1] else None
    H = G.divexact(cols) if cols is not None and cols.deg_t > 0 else G
    if H.deg_s >= 1:
        Hs = H.diff_s()
        R = poly_gcd_bi(H, Hs)
        if R.deg_s > 0 or R.deg_t > 0:
            H = H.divexact(R)
    return H.normalized()


def _probe_order():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def choose_probe(G: BiPoly, t0: int | None = None) -> ProbeLine:
    """First t0 in 0, 1, -1, 2, ... where G(t0, .) keeps its degree and is squarefree."""
    mt, ms = G.bidegree
    if ms < 1:
        raise ValueError("G has no positive s-degree")
    Gs = G.diff_s()

    def ok(t):
        g = G.eval_t(t)
        if g.degree != ms:
            return None
        if poly_gcd_uni(g, Gs.eval_t(t)).degree != 0:
            return None
        return g

    if t0 is not None:
        g = ok(t0)
        if g is None:
            raise ValueError(f"t0 = {t0} is not an admissible probe line")
        return ProbeLine(t0, g, 1)
    bound = (2 * ms - 1) * mt + 1
    for attempts, t in enumerate(_probe_order(), start=1):
        g = ok(t)
        if g is not None:
            return ProbeLine(t, g, attempts)
        if attempts > bound + 1:
            raise AssertionError("probe line search exceeded its bound")


def implicit_derivs(G: BiPoly, p: ProbeLine):
    """s' and s'' along G(t, s(t)) = 0 at t = t0 as rational functions of xi."""
    t0 = p.t0
    Gt, Gs = G.diff_t(), G.diff_s()
    gt = RatFunc(Gt.eval_t(t0))
    gs = RatFunc(Gs.eval_t(t0))
    gtt = RatFunc(Gt.diff_t().eval_t(t0))
    gts = RatFunc(Gt.diff_s().eval_t(t0))
    gss = RatFunc(Gs.diff_s().eval_t(t0))
    s1 = -gt / gs
    s2 = -(gtt + gts * s1 * 2 + gss * s1 * s1) / gs
    return s1, s2


def mobius_d1(p: ProbeLine, s1: RatFunc, s2: RatFunc):
    """(a, b, c) as rational functions of xi for phi = (a t + b)/(c t + 1)."""
    t0 = p.t0
    xi = RatFunc(XI)
    den = s1 * 2 + s2 * t0
    if den.is_zero():
        return None
    c = -s2 / den
    a = s1 + c * (xi + s1 * t0)
    b = -a * t0 + xi + c * t0 * xi
    return a, b, c


def mobius_d0(p: ProbeLine, s1: RatFunc):
    """(a, b) as rational functions of xi for phi = (a t + b)/t."""
    t0 = p.t0
    xi = RatFunc(XI)
    a = xi + s1 * t0
    b = -a * t0 + xi * t0
    return a, b


def resultant_mobius(G: BiPoly, a, b, c, d, one=Fraction(1)):
    """sum_k G_k(t) (a t + b)^k (c t + d)^(m0 - k), coefficients in the ring of one."""
    m0 = G.deg_s
    cols = {}
    for (i, k), v in G.coeffs.items():
        cols.setdefault(k, {})[i] = v
    num = [b, a]
    den = [d, c]
    num_pows = [[one]]
    den_pows = [[one]]
    for _ in range(m0):
        num_pows.append(rp.rmul(num_pows[-1], num))
        den_pows.append(rp.rmul(den_pows[-1], den))
    acc = []
    for k, col in cols.items():
        gk = [one * col.get(i, 0) for i in range(max(col) + 1)]
        term = rp.rmul(gk, rp.rmul(num_pows[k], den_pows[m0 - k]))
        acc = rp.radd(acc, term)
    return acc


def _ratfunc_dens(*fs):
    out = UniPoly([1])
    for f in fs:
        out = out * f.den
    return out


def reduced_modulus(g: UniPoly, *fs: RatFunc) -> UniPoly:
    """g with every root at which one of the rational functions has a pole removed."""
    dens = _ratfunc_dens(*fs)
    h = poly_gcd_uni(g, dens)
    return g.exact_div(h) if h.degree > 0 else g


def resultant_gcd(G: BiPoly, g: UniPoly, coeffs, route: str = "residue") -> UniPoly:
    """gcd of g with the xi-coefficients of the Moebius resultant.

    ``coeffs`` = (a, b, c, d) as RatFunc in xi.  The residue route works in
    Q[xi]/(g') with g' the part of g where all coefficients are defined; the
    ratfunc route keeps rational functions and takes numerators.
    """
    if route == "ratfunc":
        one = RatFunc(1)
        res = resultant_mobius(G, *coeffs, one=one)
        acc = g
        for r in res:
            acc = poly_gcd_uni(acc, r.num)
            if acc.degree == 0:
                break
        return acc.monic()
    gg = reduced_modulus(g, *coeffs)
    if gg.degree < 1:
        return UniPoly([1])
    ring = QuotientRing(gg)
    a, b, c, d = (ring.from_ratfunc(v) for v in coeffs)
    res = resultant_mobius(G, a, b, c, d, one=ring.elem(1))
    acc = gg
    for r in res:
        acc = poly_gcd_uni(acc, r.to_unipoly())
        if acc.degree == 0:
            break
    return acc.monic()


def _candidates(G, p, coeffs_rf, branch, sign, route):
    R = resultant_gcd(G, p.g, coeffs_rf, route)
    out = []
    if R.degree < 1:
        return R, out
    for xi in isolate_real_roots(R):
        K = NumberField(xi)
        try:
            a, b, c, d = (field_eval(v, K) for v in coeffs_rf)
        except DenominatorVanishes:
            continue
        cand = MobiusCandidate(a, b, c, d, xi, branch, sign)
        if cand.delta.is_zero():
            continue
        out.append(cand)
    return R, out


def candidates_d1(G: BiPoly, p: ProbeLine, derivs, sign: int = 1, route: str = "residue"):
    abc = mobius_d1(p, *derivs)
    if abc is None:
        return UniPoly([1]), []
    a, b, c = abc
    return _candidates(G, p, (a, b, c, RatFunc(1)), "d1", sign, route)


def candidates_d0(G: BiPoly, p: ProbeLine, derivs, sign: int = 1, route: str = "residue"):
    a, b = mobius_d0(p, derivs[0])
    return _candidates(G, p, (a, b, RatFunc(1), RatFunc(0)), "d0", sign, route)


# -- equal-speed condition ------------------------------------------------------

def _field_poly(p: UniPoly, one):
    return [one * c for c in p.coeffs]


def speed_witness(c: ParamCurve3, cand: MobiusCandidate, speed2: RatFunc | None = None):
    """W(t) = P Q^h (ct+d)^e - Q P^h Delta^2 (or with the power on the other side)."""
    if speed2 is None:
        speed2 = invariants(c).speed2
    P, Q = speed2.num, speed2.den
    one = cand.field.one
    a, b, cc, d = cand.coeffs()
    delta = cand.delta
    Ph = rp.mobius_homogenize(P.coeffs, a, b, cc, d, P.degree, one)
    Qh = rp.mobius_homogenize(Q.coeffs, a, b, cc, d, Q.degree, one)
    e = P.degree + 4 - Q.degree
    lin = [d, cc]
    left = Qh
    right = rp.rscale(Ph, delta * delta)
    for _ in range(abs(e)):
        if e > 0:
            left = rp.rmul(left, lin)
        else:
            right = rp.rmul(right, lin)
    W = rp.rsub(_mul_rational(P, left, one), _mul_rational(Q, right, one))
    bound = 24 * c.degree - 4
    assert len(W) - 1 <= bound, "speed polynomial exceeds its degree bound"
    return W, bound


def _mul_rational(p: UniPoly, f, one):
    """Rational polynomial times a polynomial with number-field coefficients."""
    if not f:
        return []
    n = max(len(x.rep) for x in f) if f else 0
    out = []
    comps = []
    for j in range(n):
        comps.append(UniPoly([x.rep[j] if j < len(x.rep) else 0 for x in f]) * p)
    length = max((len(cp) for cp in comps), default=0)
    for i in range(length):
        out.append(one._new(_trim_rep([cp[i] for cp in comps])))
    return rp.rstrip(out)


def _trim_rep(rep):
    rep = list(rep)
    while rep and not rep[-1]:
        rep.pop()
    return tuple(rep)


def speed_filter(c: ParamCurve3, cand: MobiusCandidate, speed2: RatFunc | None = None):
    """(accepted, SpeedWitness)."""
    W, bound = speed_witness(c, cand, speed2)
    mp = cand.xi.min_poly
    accepted = not W
    R = mp.monic() if accepted else UniPoly([1])
    return accepted, SpeedWitness(tuple(W), R, bound)


# -- orchestration ------------------------------------------------------------

def _sort_key(cand: MobiusCandidate):
    return (0 if cand.branch == "d1" else 1, cand.xi.interval[0])


def symm(c: ParamCurve3, sign: int, *, t0: int | None = None, inv: CurveInvariants | None = None,
         eqs: SymmetryEquations | None = None, route: str = "residue",
         parallel: bool = False) -> SymmResult:
    """Moebius transformations of the symmetries with det Q = sign."""
    timings = {}
    t_start = time.perf_counter()
    if inv is None:
        inv = invariants(c)
    rep = degeneracy(inv)
    if rep.degenerate:
        raise DegenerateCurveError(rep.kind, rep.reason)
    if eqs is None:
        eqs = build_equations(inv)
    timings["equations"] = time.perf_counter() - t_start
    G = working_polynomial(eqs.G(sign))
    t1 = time.perf_counter()
    if G.deg_s < 1:
        return SymmResult(sign, G, None, {}, [], [], timings=timings)
    probe = choose_probe(G, t0)
    derivs = implicit_derivs(G, probe)
    jobs = [("d1", candidates_d1), ("d0", candidates_d0)]
    if parallel:
        with ThreadPoolExecutor(max_workers=2) as ex:
            futs = [ex.submit(fn, G, probe, derivs, sign, route) for _, fn in jobs]
            results = [f.result() for f in futs]
    else:
        results = [fn(G, probe, derivs, sign, route) for _, fn in jobs]
    R = {name: res[0] for (name, _), res in zip(jobs, results)}
    cands = [cd for res in results for cd in res[1]]
    timings["candidates"] = time.perf_counter() - t1
    t2 = time.perf_counter()
    accepted, rejected = [], []
    verdict = {}
    for cand in cands:
        key = (cand.branch, cand.xi.min_poly)
        if key not in verdict:
            verdict[key] = speed_filter(c, cand, inv.speed2)[0]
        if verdict[key]:
            accepted.append(cand)
        else:
            rejected.append(cand)
            log.info("candidate %s passed the curvature/torsion test but failed the speed "
                     "condition", cand)
    accepted.sort(key=_sort_key)
    timings["speed"] = time.perf_counter() - t2
    return SymmResult(sign, G, probe, R, cands, accepted, rejected, timings)
