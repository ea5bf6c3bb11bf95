import dataclasses
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from curvesym.algebra.unipoly import RatFunc, UniPoly
from curvesym.curve import (
    ParamCurve3,
    apply_isometry,
    compose_mobius,
    crunode,
    daisy,
    random_central_curve,
    rational_rotation,
    twisted_cubic,
)
from curvesym.errors import InconsistentSymmetry
from curvesym.isometry import (
    Isometry,
    classify,
    cross,
    find_symmetries,
    fixed_points,
    prepare_frame,
    reconstruct,
    transport,
)
from curvesym.detect import symm



@pytest.fixture(autouse=True)
def precision():
    with mpmath.workdps(64):
        yield


def ints(M):
    return [[v for v in row] for row in M]


def by_phi(records):
    return {str(r.mobius): r for r in records}


@pytest.fixture(scope="module")
def crunode_report():
    return find_symmetries(crunode())


@pytest.fixture(scope="module")
def daisy_report():
    return find_symmetries(daisy(1))


# -- frames -------------------------------------------------------------------------


def test_crunode_frame():
    _, alpha, B = prepare_frame(crunode())
    assert alpha == 0 and ints(B) == [[1, 0, 0], [0, 2, 0], [0, 0, 2]]


def test_daisy_frame():
    _, alpha, B = prepare_frame(daisy(1))
    assert alpha == 0 and ints(B) == [[0, -20, 0], [2, 0, 0], [0, 0, 40]]


def test_pole_at_origin_forces_shift():
    one_over_t = RatFunc(UniPoly([1]), UniPoly([0, 1]))
    c = ParamCurve3(one_over_t, RatFunc(UniPoly([0, 0, 1])), RatFunc(UniPoly([0, 0, 0, 1])))
    shifted, alpha, B = prepare_frame(c)
    assert alpha == 1
    assert shifted.x == RatFunc(UniPoly([1]), UniPoly([1, 1]))


def test_flat_point_at_origin_forces_shift():
    # x' x x'' vanishes at t = 0 for (t, t^3, t^4)
    c = ParamCurve3(*(RatFunc(UniPoly([0] * k + [1])) for k in (1, 3, 4)))
    assert prepare_frame(c)[1] == 1


def test_transport_keeps_the_map():
    cand = symm(crunode(), -1).accepted[0]
    a, b, c, d = cand.rational_coeffs()
    for alpha in (1, -2, 3):
        _, A, Bc, Cc, D = transport(cand, alpha)
        for t in (Fraction(1, 3), Fraction(5, 2)):
            lhs = (A * t + Bc) / (Cc * t + D)
            x = t + alpha
            assert lhs == (a * x + b) / (c * x + d) - alpha


# -- reconstruction examples ----------------------------------------------------------


def test_crunode_half_turn(crunode_report):
    rec = by_phi(crunode_report.records[1])["-t"]
    assert ints(rec.isometry.Q) == [[-1, 0, 0], [0, 1, 0], [0, 0, -1]]
    assert list(rec.isometry.b) == [0, 0, 0]
    assert rec.kind == "HalfTurn"
    assert rec.fixed_set.kind == "Line" and list(rec.fixed_set.direction) == [0, 1, 0]


def test_crunode_identity(crunode_report):
    rec = by_phi(crunode_report.records[1])["t"]
    assert ints(rec.isometry.Q) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert rec.kind == "Identity" and rec.fixed_set.kind == "AllSpace"


def test_crunode_mirrors(crunode_report):
    recs = by_phi(crunode_report.records[-1])
    q3, q4 = recs["1/t"], recs["-1/t"]
    assert ints(q3.isometry.Q) == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    assert ints(q4.isometry.Q) == [[0, 0, -1], [0, 1, 0], [-1, 0, 0]]
    # z - x = 0 and z + x = 0
    assert list(q3.fixed_set.normal) == [-1, 0, 1] and q3.fixed_set.offset == 0
    assert list(q4.fixed_set.normal) == [1, 0, 1] and q4.fixed_set.offset == 0
    assert q3.kind == q4.kind == "MirrorPlane"


def test_daisy_inversion_frame_and_matrix(daisy_report):
    rec = by_phi(daisy_report.records[1])["1/t"]
    assert ints(rec.frame.C) == [[0, 20, 0], [2, 0, 0], [0, 0, -40]]
    assert ints(rec.isometry.Q) == [[-1, 0, 0], [0, 1, 0], [0, 0, -1]]
    assert list(rec.isometry.b) == [0, 0, 0] and rec.kind == "HalfTurn"


def test_daisy_opposite_symmetries(daisy_report):
    recs = by_phi(daisy_report.records[-1])
    mirror, centre = recs["-t"], recs["-1/t"]
    assert mirror.kind == "MirrorPlane" and list(mirror.fixed_set.normal) == [0, 1, 0]
    assert mirror.fixed_set.offset == 0
    assert centre.kind == "CentralInversion"
    assert centre.fixed_set.kind == "Point" and list(centre.fixed_set.point) == [0, 0, 0]


def test_forced_opposite_sign_fails_verification():
    cand = next(c for c in symm(crunode(), 1).accepted if str(c) == "-t")
    with pytest.raises(InconsistentSymmetry, match="differs from"):
        reconstruct(crunode(), dataclasses.replace(cand, detSign=-1))


def test_shifted_frame_reconstruction_agrees():
    c = crunode()
    one_over = next(c2 for c2 in symm(c, -1).accepted if str(c2) == "1/t")
    from curvesym.isometry import frames
    later = [fr for fr in frames(c) if fr.alpha != 0][:2]
    iso, _, alpha = reconstruct(c, one_over, later)
    assert alpha != 0
    assert ints(iso.Q) == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]


def test_moved_curve_recovers_conjugated_symmetries():
    Q = rational_rotation((1, 2, 0, 1))
    b = (Fraction(1), Fraction(-2), Fraction(1, 2))
    moved = apply_isometry(daisy(1), Q, b)
    rep = find_symmetries(moved)
    centre = next(r for r in rep.records[-1] if r.kind == "CentralInversion")
    assert list(centre.fixed_set.point) == list(b)


# -- fixed points and classification ------------------------------------------------


CORPUS = {
    "crunode": crunode,
    "daisy1": lambda: daisy(1),
    "central6": lambda: random_central_curve(6, 8, 11),
    "moved": lambda: compose_mobius(apply_isometry(crunode(), rational_rotation((1, 1, 1, 0)),
                                                   (1, 0, -1)), 1, 2, 1, 3),
}


@pytest.fixture(scope="module", params=sorted(CORPUS))
def report(request):
    return find_symmetries(CORPUS[request.param]())


def all_records(rep):
    return rep.records[1] + rep.records[-1]


def test_records_are_orthogonal_with_matching_sign(report):
    # independent numeric check at 64 digits
    for rec in all_records(report):
        Q = mpmath.matrix([[mpmath.mpf(v.to_decimal(70)) for v in row] for row in rec.isometry.Q])
        assert mpmath.norm(Q.T * Q - mpmath.eye(3)) < mpmath.mpf(10) ** -60
        assert abs(mpmath.det(Q) - rec.isometry.detSign) < mpmath.mpf(10) ** -60


def test_fixed_points_solve_the_system(report):
    for rec in all_records(report):
        fs = rec.fixed_set
        if fs.point is None:
            continue
        assert all(v.is_zero() for v in (p - q for p, q in zip(rec.isometry.apply(fs.point), fs.point)))
        if fs.direction is not None:
            moved = [sum((rec.isometry.Q[i][j] * fs.direction[j] for j in range(3)), 0 * fs.direction[0])
                     for i in range(3)]
            assert moved == list(fs.direction)


def test_kinds_are_consistent_with_fixed_sets(report):
    dims = {"Identity": 3, "HalfTurn": 1, "Rotation": 1, "MirrorPlane": 2,
            "CentralInversion": 0, "RotatoryReflection": 0}
    for rec in all_records(report):
        assert rec.fixed_set.dimension == dims[rec.kind]
        assert (rec.isometry.detSign > 0) == (rec.kind in ("Identity", "HalfTurn", "Rotation"))


def test_identity_present_and_group_closed(report):
    recs = all_records(report)
    assert any(r.kind == "Identity" for r in recs)

    def numeric(rec):
        Q = mpmath.matrix([[mpmath.mpf(v.to_decimal(70)) for v in row] for row in rec.isometry.Q])
        b = mpmath.matrix([mpmath.mpf(v.to_decimal(70)) for v in rec.isometry.b])
        return Q, b

    table = [numeric(r) for r in recs]
    tol = mpmath.mpf(10) ** -50

    def find(Q, b):
        hits = [i for i, (Q2, b2) in enumerate(table) if mpmath.norm(Q - Q2) < tol and mpmath.norm(b - b2) < tol]
        assert len(hits) == 1
        return hits[0]

    for i, (Q1, b1) in enumerate(table):
        find(Q1.T, -(Q1.T * b1))
        for j, (Q2, b2) in enumerate(table):
            k = find(Q1 * Q2, Q1 * b2 + b1)
            trio = (recs[i], recs[j], recs[k])
            if all(r.isometry.Q[0][0].is_rational() for r in trio):
                assert exact_compose(recs[i], recs[j]) == exact_pair(recs[k])


def exact_pair(rec):
    Q = sympy.Matrix([[v.as_fraction() for v in row] for row in rec.isometry.Q])
    b = sympy.Matrix([v.as_fraction() for v in rec.isometry.b])
    return Q, b


def exact_compose(r1, r2):
    (Q1, b1), (Q2, b2) = exact_pair(r1), exact_pair(r2)
    return Q1 * Q2, Q1 * b2 + b1


def test_classify_rotation_reports_cosine():
    from curvesym.algebra.field import NumberField
    from curvesym.algebra.roots import AlgebraicNumber
    K = NumberField(AlgebraicNumber.rational(0))
    e = lambda v: K.elem(Fraction(v))
    # quarter turn about z
    Q = ((e(0), e(-1), e(0)), (e(1), e(0), e(0)), (e(0), e(0), e(1)))
    iso = Isometry(Q, (e(0), e(0), e(0)), 1)
    fs = fixed_points(iso)
    assert fs.kind == "Line" and list(fs.direction) == [0, 0, 1]
    kind, cos = classify(iso, fs)
    assert kind == "Rotation" and cos == 0
    # the same rotation composed with z -> -z
    R = ((e(0), e(-1), e(0)), (e(1), e(0), e(0)), (e(0), e(0), e(-1)))
    iso2 = Isometry(R, (e(0), e(0), e(0)), -1)
    assert classify(iso2, fixed_points(iso2))[0] == "RotatoryReflection"


def test_translation_has_empty_fixed_set():
    from curvesym.algebra.field import NumberField
    from curvesym.algebra.roots import AlgebraicNumber
    K = NumberField(AlgebraicNumber.rational(0))
    one, zero = K.one, K.one * 0
    I3 = tuple(tuple(one if i == j else zero for j in range(3)) for i in range(3))
    assert fixed_points(Isometry(I3, (one, zero, zero), 1)).kind == "Empty"


# -- cross-product identity ------------------------------------------------------------


fr = st.fractions(-5, 5, max_denominator=4)
vec = st.tuples(fr, fr, fr)


@settings(max_examples=50, deadline=None)
@given(st.tuples(vec, vec, vec), vec, vec)
def test_cross_product_transforms_by_cofactor(rows, a, b):
    M = sympy.Matrix(rows)
    if M.det() == 0:
        return
    Ma, Mb = M * sympy.Matrix(a), M * sympy.Matrix(b)
    lhs = sympy.Matrix(cross(tuple(Ma), tuple(Mb)))
    rhs = M.det() * M.inv().T * sympy.Matrix(cross(a, b))
    assert lhs == rhs


def test_twisted_cubic_has_no_opposite_symmetries():
    rep = find_symmetries(twisted_cubic())
    assert rep.count(-1) == 0
    assert sorted(r.kind for r in rep.records[1]) == ["HalfTurn", "Identity"]
