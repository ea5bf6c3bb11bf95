"""Isometries behind detected Moebius transformations.

For a transformation phi of the curve's parameter, the isometry
f(x) = Q x + b with Q x(t) + b = x(phi(t)) is fixed by its action on the
Frenet-like frame x'(0), x''(0), x'(0) x x''(0); every result is checked
exactly before it is returned.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
import time
from dataclasses import dataclass, field

from .algebra import ringpoly as rp
from .algebra.field import FieldElem, NumberField, poly_mul_field
from .algebra.unipoly import RatFunc, UniPoly
from .curve import ParamCurve3, derivatives, shift_parameter
from .detect import MobiusCandidate, _mul_rational, symm
from .errors import DenominatorVanishes, InconsistentSymmetry

# -- small exact linear algebra ------------------------------------------------


def _matmul(A, B):
    return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(1, 3)), A[i][0] * B[0][j])
                       for j in range(3)) for i in range(3))


def _matvec(A, v):
    return tuple(A[i][0] * v[0] + A[i][1] * v[1] + A[i][2] * v[2] for i in range(3))


def _transpose(A):
    return tuple(tuple(A[j][i] for j in range(3)) for i in range(3))


def _det(A):
    return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
            - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
            + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))


def _inverse3(A):
    d = _det(A)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    cof = [[(A[(j + 1) % 3][(i + 1) % 3] * A[(j + 2) % 3][(i + 2) % 3]
             - A[(j + 1) % 3][(i + 2) % 3] * A[(j + 2) % 3][(i + 1) % 3]) for j in range(3)]
           for i in range(3)]
    return tuple(tuple(cof[i][j] / d for j in range(3)) for i in range(3))


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _columns(*cols):
    return tuple(tuple(c[i] for c in cols) for i in range(3))


# -- records ---------------------------------------------------------------


@dataclass(frozen=True)
class Isometry:
    Q: tuple  # 3x3 FieldElem, row-major
    b: tuple
    detSign: int

    def apply(self, p):
        return tuple(v + self.b[i] for i, v in enumerate(_matvec(self.Q, p)))

    def trace(self):
        return self.Q[0][0] + self.Q[1][1] + self.Q[2][2]


@dataclass(frozen=True)
class FrameMatrices:
    B: tuple
    C: tuple


@dataclass(frozen=True)
class FixedSet:
    """kind: Point | Line | Plane | AllSpace | Empty."""

    kind: str
    point: tuple | None = None
    direction: tuple | None = None
    normal: tuple | None = None
    offset: object = None

    @property
    def dimension(self) -> int:
        return {"Empty": -1, "Point": 0, "Line": 1, "Plane": 2, "AllSpace": 3}[self.kind]


@dataclass(frozen=True)
class SymmetryRecord:
    isometry: Isometry
    mobius: MobiusCandidate
    kind: str
    fixed_set: FixedSet
    cos_angle: FieldElem | None = None
    frame: FrameMatrices | None = None
    alpha: int = 0


# -- frame ---------------------------------------------------------------------


def _alpha_order():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


@dataclass(frozen=True)
class Frame:
    curve: ParamCurve3  # shifted curve x(t + alpha)
    alpha: int
    x0: tuple
    d1: tuple
    d2: tuple
    B: tuple
    B_inv: tuple
    derivs: tuple  # (x', x'') of the shifted curve as RatFunc triples


def _frame_at(c: ParamCurve3, alpha: int):
    for f in c.components:
        if f.den(alpha) == 0:
            return None
    sc = shift_parameter(c, alpha)
    sd1, sd2 = derivatives(sc, 2)
    x0 = tuple(f(0) for f in sc.components)
    v1 = tuple(f(0) for f in sd1)
    v2 = tuple(f(0) for f in sd2)
    w = cross(v1, v2)
    if not any(w):
        return None
    B = _columns(v1, v2, w)
    return Frame(sc, alpha, x0, v1, v2, B, _inverse3(B), (sd1, sd2))


def frames(c: ParamCurve3):
    """Admissible frames in the order alpha = 0, 1, -1, 2, ..."""
    # poles and zeros of x' x x'' rule out finitely many shifts
    limit = 16 * c.degree + 16
    for n, alpha in enumerate(_alpha_order()):
        if n > limit:
            return
        fr = _frame_at(c, alpha)
        if fr is not None:
            yield fr


def prepare_frame(c: ParamCurve3):
    """(shifted curve, alpha, B) for the first admissible alpha."""
    fr = next(frames(c))
    return fr.curve, fr.alpha, fr.B


# -- reconstruction ---------------------------------------------------------


def _eval_rf(f: RatFunc, x: FieldElem) -> FieldElem:
    den = f.den.eval_ring(x, x.field.one)
    if den.is_zero():
        raise DenominatorVanishes("curve not defined at the evaluation point")
    return f.num.eval_ring(x, x.field.one) * den.inverse()


def _eval_vec(fs, x):
    return tuple(_eval_rf(f, x) for f in fs)


def transport(cand: MobiusCandidate, alpha: int):
    """phi(t + alpha) - alpha normalized to d = 1 or (c, d) = (1, 0)."""
    a, b, c, d = cand.coeffs()
    if alpha:
        a, b, c, d = (a - c * alpha, a * alpha + b - c * (alpha * alpha) - d * alpha,
                      c, c * alpha + d)
    if not d.is_zero():
        inv = d.inverse()
        return "d1", a * inv, b * inv, c * inv, d * inv
    inv = c.inverse()
    return "d0", a * inv, b * inv, c * inv, d


def reconstruct_d1(frame: Frame, a, b, c, sign: int):
    """Q, b, C for phi = (a t + b)/(c t + 1) on a prepared frame."""
    one = a.field.one
    delta = a - b * c
    sc = frame.curve
    xb = _eval_vec(sc.components, b)
    x1b = _eval_vec(frame.derivs[0], b)
    x2b = _eval_vec(frame.derivs[1], b)
    col1 = tuple(v * delta for v in x1b)
    col2 = tuple(v2 * (delta * delta) - v1 * (c * delta * 2) for v1, v2 in zip(x1b, x2b))
    col3 = tuple(v * (delta * delta * delta * sign) for v in cross(x1b, x2b))
    C = _columns(col1, col2, col3)
    Q = _matmul(C, tuple(tuple(one * v for v in row) for row in frame.B_inv))
    bvec = tuple(xb[i] - q for i, q in enumerate(_matvec(Q, tuple(one * v for v in frame.x0))))
    return Q, bvec, C


def _tilde_component(f: RatFunc):
    """x(1/t) as a rational function."""
    n = max(f.num.degree, f.den.degree)
    num = UniPoly(list(reversed(list(f.num.coeffs) + [0] * (n - f.num.degree))))
    den = UniPoly(list(reversed(list(f.den.coeffs) + [0] * (n - f.den.degree))))
    return RatFunc(num, den)


def reconstruct_d0(frame: Frame, a, b, sign: int):
    """Q, b, C for phi = (a t + b)/t via x~(t) = x(1/t).

    x(phi(t)) = x~(psi(t)) with psi(t) = t/(a t + b), so psi(0) = 0,
    psi'(0) = 1/b and psi''(0) = -2a/b^2.
    """
    one = a.field.one
    sc = frame.curve
    xt = tuple(_tilde_component(f) for f in sc.components)
    if any(f.den(0) == 0 for f in xt):
        raise DenominatorVanishes("x(1/t) not defined at 0")
    d1 = tuple(f.derivative() for f in xt)
    d2 = tuple(f.derivative() for f in d1)
    x0 = tuple(one * f(0) for f in xt)
    v1 = tuple(one * f(0) for f in d1)
    v2 = tuple(one * f(0) for f in d2)
    ia = b.inverse()
    col1 = tuple(v * ia for v in v1)
    col2 = tuple((w - v * (a * 2)) * (ia * ia) for v, w in zip(v1, v2))
    col3 = tuple(v * (ia * ia * ia * sign) for v in cross(v1, v2))
    C = _columns(col1, col2, col3)
    Q = _matmul(C, tuple(tuple(one * v for v in row) for row in frame.B_inv))
    bvec = tuple(x0[i] - q for i, q in enumerate(_matvec(Q, tuple(one * v for v in frame.x0))))
    return Q, bvec, C


def verify(c: ParamCurve3, cand: MobiusCandidate, Q, bvec, sign: int) -> None:
    """Raise InconsistentSymmetry unless Q is orthogonal with det = sign and Q x + b = x o phi."""
    one = cand.field.one
    I3 = tuple(tuple(one * int(i == j) for j in range(3)) for i in range(3))
    if _matmul(_transpose(Q), Q) != I3:
        raise InconsistentSymmetry("Q is not orthogonal")
    if _det(Q) != one * sign:
        raise InconsistentSymmetry("det Q does not match the requested sign")
    X, w = c.common_form()
    a, b, cc, d = cand.coeffs()
    n = max(max(x.degree for x in X), w.degree)
    wh = rp.mobius_homogenize(w.coeffs, a, b, cc, d, n, one)
    wf = [one * v for v in w.coeffs]
    for i in range(3):
        lhs = [one * 0]
        for j in range(3):
            if not Q[i][j].is_zero():
                lhs = rp.radd(lhs, rp.rscale([one * v for v in X[j].coeffs], Q[i][j]))
        lhs = rp.radd(lhs, rp.rscale(wf, bvec[i]))
        left = poly_mul_field(lhs, wh, one)
        xh = rp.mobius_homogenize(X[i].coeffs, a, b, cc, d, n, one)
        right = _mul_rational(w, xh, one)
        if rp.rsub(left, right):
            raise InconsistentSymmetry("Q x(t) + b differs from x(phi(t))")


def reconstruct(c: ParamCurve3, cand: MobiusCandidate, frame_list=None):
    """Isometry for a candidate; walks the admissible frames until one is regular."""
    frame_list = frame_list if frame_list is not None else frames(c)
    last_error = None
    for fr in frame_list:
        branch, a, b, cc, d = transport(cand, fr.alpha)
        try:
            if branch == "d1":
                Q, bvec, C = reconstruct_d1(fr, a, b, cc, cand.detSign)
            else:
                Q, bvec, C = reconstruct_d0(fr, a, b, cand.detSign)
        except DenominatorVanishes as exc:
            last_error = exc
            continue
        verify(c, cand, Q, bvec, cand.detSign)
        iso = Isometry(Q, bvec, cand.detSign)
        return iso, FrameMatrices(fr.B, C), fr.alpha
    raise InconsistentSymmetry(f"no admissible frame for candidate ({last_error})")


# -- fixed points and classification ----------------------------------------


def _normalize_last(v):
    for x in reversed(v):
        if not x.is_zero():
            inv = x.inverse()
            return tuple(y * inv for y in v)
    return v


def fixed_points(iso: Isometry) -> FixedSet:
    """Affine solution set of (Q - I) p = -b by exact elimination."""
    Q, b = iso.Q, iso.b
    one = Q[0][0].field.one
    M = [[Q[i][j] - (one if i == j else 0) for j in range(3)] + [-b[i]] for i in range(3)]
    pivots = []
    row = 0
    for col in range(3):
        piv = next((r for r in range(row, 3) if not M[r][col].is_zero()), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = M[row][col].inverse()
        M[row] = [x * inv for x in M[row]]
        for r in range(3):
            if r != row and not M[r][col].is_zero():
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[row])]
        pivots.append(col)
        row += 1
    for r in range(row, 3):
        if not M[r][3].is_zero():
            return FixedSet("Empty")
    free = [c for c in range(3) if c not in pivots]
    point = [one * 0] * 3
    for r, col in enumerate(pivots):
        point[col] = M[r][3]
    point = tuple(point)
    if not free:
        return FixedSet("Point", point=point)
    if len(free) == 3:
        return FixedSet("AllSpace")
    kernel = []
    for fc in free:
        v = [one * 0] * 3
        v[fc] = one
        for r, col in enumerate(pivots):
            v[col] = -M[r][fc]
        kernel.append(tuple(v))
    if len(free) == 1:
        return FixedSet("Line", point=point, direction=_normalize_last(kernel[0]))
    # plane: one independent equation n . p = offset from the single pivot row
    r = 0
    normal = tuple(M[r][j] for j in range(3))
    offset = M[r][3]
    for x in reversed(normal):
        if not x.is_zero():
            inv = x.inverse()
            normal = tuple(y * inv for y in normal)
            offset = offset * inv
            break
    return FixedSet("Plane", point=point, normal=normal, offset=offset)


def classify(iso: Isometry, fixed_set: FixedSet):
    """(kind, cos of rotation angle or None)."""
    Q, b = iso.Q, iso.b
    one = Q[0][0].field.one
    tr = iso.trace()
    if iso.detSign > 0:
        if all(Q[i][j] == (1 if i == j else 0) for i in range(3) for j in range(3)) \
                and all(v.is_zero() for v in b):
            return "Identity", one
        if tr == -1:
            return "HalfTurn", one * -1
        return "Rotation", (tr - 1) / 2
    if all(Q[i][j] == (-1 if i == j else 0) for i in range(3) for j in range(3)):
        return "CentralInversion", None
    if tr == 1 or fixed_set.kind == "Plane":
        return "MirrorPlane", None
    return "RotatoryReflection", None


def build_record(c: ParamCurve3, cand: MobiusCandidate, frame_list=None) -> SymmetryRecord:
    iso, fm, alpha = reconstruct(c, cand, frame_list)
    fs = fixed_points(iso)
    kind, cos = classify(iso, fs)
    return SymmetryRecord(iso, cand, kind, fs, cos, fm, alpha)


# -- orchestration ------------------------------------------------------------


@dataclass
class SymmetryReport:
    curve: ParamCurve3
    results: dict  # sign -> SymmResult
    records: dict  # sign -> list[SymmetryRecord]
    timings: dict = field(default_factory=dict)

    def count(self, sign: int) -> int:
        return len(self.records[sign])


def find_symmetries(c: ParamCurve3, signs=(1, -1), *, parallel: bool = False,
                    t0: int | None = None) -> SymmetryReport:
    from .curve import invariants
    from .detect import build_equations
    timings = {}
    start = time.perf_counter()
    inv = invariants(c)
    timings["invariants"] = time.perf_counter() - start
    start = time.perf_counter()
    eqs = build_equations(inv)
    timings["equations"] = time.perf_counter() - start

    def run(sign):
        return symm(c, sign, inv=inv, eqs=eqs, t0=t0)

    if parallel and len(signs) > 1:
        with ThreadPoolExecutor(max_workers=len(signs)) as ex:
            results = dict(zip(signs, ex.map(run, signs)))
    else:
        results = {s: run(s) for s in signs}
    start = time.perf_counter()
    frame_list = list(_first_frames(c))
    records = {}
    for s, res in results.items():
        records[s] = [build_record(c, cand, frame_list) for cand in res.accepted]
    timings["reconstruct"] = time.perf_counter() - start
    return SymmetryReport(c, results, records, timings)


def _first_frames(c, k: int = 6):
    for n, fr in enumerate(frames(c)):
        yield fr
        if n + 1 >= k:
            return


__all__ = [
    "Isometry", "FrameMatrices", "FixedSet", "SymmetryRecord", "SymmetryReport",
    "prepare_frame", "reconstruct_d1", "reconstruct_d0", "reconstruct", "verify",
    "fixed_points", "classify", "build_record", "find_symmetries", "transport",
]
