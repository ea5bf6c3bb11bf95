import logging
from fractions import Fraction

import mpmath
import pytest
import sympy

from conftest import S, T, same_up_to_constant, to_sympy_bi, to_sympy_rf
from curvesym.algebra.bipoly import BiPoly
from curvesym.algebra.field import NumberField
from curvesym.algebra.roots import AlgebraicNumber
from curvesym.algebra.unipoly import RatFunc, UniPoly
from curvesym.curve import crunode, daisy, invariants, random_central_curve, random_curve, twisted_cubic
from curvesym import detect
from curvesym.detect import (
    MobiusCandidate,
    build_equations,
    candidates_d0,
    candidates_d1,
    choose_probe,
    implicit_derivs,
    resultant_mobius,
    speed_filter,
    speed_witness,
    symm,
    working_polynomial,
)
from curvesym.errors import DegenerateCurveError
from curvesym.isometry import find_symmetries

EXAMPLE_G = "3*s^4*t^4 - 6*s^4*t^3 + 3*s^4*t^2 - 6*s^2*t^4 - s^2*t^2 + 2*s^2*t - s^2 + 2*t^2"


def X(text):
    return UniPoly.parse(text, "xi")


def rational_candidate(a, b, c, d, sign=1):
    K = NumberField(AlgebraicNumber.rational(0))
    branch = "d0" if d == 0 else "d1"
    return MobiusCandidate(*(K.elem(Fraction(v)) for v in (a, b, c, d)), K.xi, branch, sign)


def candidate_strings(res):
    return sorted(str(c) for c in res.accepted)


# -- equations ----------------------------------------------------------------


@pytest.mark.parametrize("seed", range(3))
def test_matching_polynomials_symmetry(seed):
    eqs = build_equations(invariants(random_curve(3, 4, seed)))
    assert eqs.K.swap() == -eqs.K
    assert eqs.Tplus.swap() == -eqs.Tplus
    assert eqs.Tminus.swap() == eqs.Tminus
    assert eqs.Gplus.divides(eqs.K) and eqs.Gplus.divides(eqs.Tplus)
    assert eqs.Gminus.divides(eqs.K) and eqs.Gminus.divides(eqs.Tminus)
    assert BiPoly.parse("s - t").divides(eqs.Gplus)


def test_daisy_one_equations():
    eqs = build_equations(invariants(daisy(1)))
    assert same_up_to_constant(eqs.Gplus, BiPoly.parse("t*s^2 - s - t^2*s + t"))
    assert same_up_to_constant(eqs.Gminus, BiPoly.parse("t*s^2 + s + t^2*s + t"))


def test_degenerate_curve_is_refused():
    from curvesym.curve import ParamCurve3
    planar = ParamCurve3(RatFunc(UniPoly([0, 1])), RatFunc(UniPoly([0, 0, 1])), RatFunc(0))
    with pytest.raises(DegenerateCurveError) as info:
        symm(planar, 1)
    assert info.value.kind == "Planar"


# -- probe line and implicit derivatives ------------------------------------


def test_example_probe_at_two():
    p = choose_probe(BiPoly.parse(EXAMPLE_G), 2)
    assert p.g.int_primitive() == [8, 0, -97, 0, 12]


def test_example_default_probe_skips_degree_drop():
    G = BiPoly.parse(EXAMPLE_G)
    assert G.eval_t(0).degree < 4 and G.eval_t(1).degree < 4
    p = choose_probe(G)
    assert p.t0 == -1 and p.attempts == 3


def test_probe_of_diagonal():
    p = choose_probe(BiPoly.parse("s - t"))
    assert p.t0 == 0 and p.g == X("xi")


def test_probe_rejects_double_root():
    p = choose_probe(BiPoly.parse("t^2 - s^2"))
    assert p.t0 == 1 and p.g.int_primitive() in ([1, 0, -1], [-1, 0, 1])


def test_inadmissible_forced_probe():
    with pytest.raises(ValueError):
        choose_probe(BiPoly.parse("t^2 - s^2"), 0)


def test_example_implicit_derivatives():
    G = BiPoly.parse(EXAMPLE_G)
    s1, s2 = implicit_derivs(G, choose_probe(G, 2))
    assert s1 == RatFunc(-X("18*xi^4 - 97*xi^2 + 4"), X("24*xi^3 - 97*xi"))
    den = X("xi^3") * X("24*xi^2 - 97") ** 3
    assert s2 == RatFunc(X("16416*xi^10 - 206316*xi^8 + 879669*xi^6 - 1387682*xi^4 + 55302*xi^2 + 1552"), den)


def test_diagonal_implicit_derivatives():
    G = BiPoly.parse("s - t")
    assert implicit_derivs(G, choose_probe(G)) == (RatFunc(1), RatFunc(0))


def test_example_mobius_parametrizations():
    G = BiPoly.parse(EXAMPLE_G)
    p = choose_probe(G, 2)
    s1, s2 = implicit_derivs(G, p)
    a, b, c = detect.mobius_d1(p, s1, s2)
    D1 = X("504*xi^8 - 5511*xi^6 + 20905*xi^4 - 36290*xi^2 - 1552")
    assert c == RatFunc(-X("16416*xi^10 - 206316*xi^8 + 879669*xi^6 - 1387682*xi^4 + 55302*xi^2 + 1552"),
                        2 * X("6048*xi^10 - 66636*xi^8 + 256371*xi^6 - 456385*xi^4 + 17666*xi^2 + 1552"))
    assert a == RatFunc(-X("72*xi^9 + 2019*xi^7 - 21192*xi^5 + 40138*xi^3 - 4656*xi"), 2 * D1)
    assert b == RatFunc(-X("9504*xi^11 - 163836*xi^9 + 879621*xi^7 - 1434145*xi^5 + 133646*xi^3 - 4656*xi"),
                        D1 * X("12*xi^2 - 1"))
    a0, b0 = detect.mobius_d0(p, s1)
    assert a0 == RatFunc(-X("xi^2 - 8") * X("12*xi^2 - 1"), X("24*xi^3 - 97*xi"))
    assert b0 == RatFunc(4 * X("18*xi^4 - 97*xi^2 + 4"), X("24*xi^3 - 97*xi"))


# -- candidates -----------------------------------------------------------------


def example_candidates(route):
    G = BiPoly.parse(EXAMPLE_G)
    p = choose_probe(G, 2)
    d = implicit_derivs(G, p)
    return G, candidates_d1(G, p, d, 1, route), candidates_d0(G, p, d, 1, route)


@pytest.mark.parametrize("route", ["residue", "ratfunc"])
def test_example_resultant_gcds(route):
    _, (R1, c1), (R0, c0) = example_candidates(route)
    assert R1.int_primitive() == [-8, 0, 1]
    assert R0.int_primitive() == [-1, 0, 12]
    assert len(c1) == 2 and len(c0) == 2


def test_example_routes_agree():
    _, (R1a, c1a), (R0a, c0a) = example_candidates("residue")
    _, (R1b, c1b), (R0b, c0b) = example_candidates("ratfunc")
    assert (R1a, R0a) == (R1b, R0b)
    assert [str(c) for c in c1a + c0a] == [str(c) for c in c1b + c0b]


def test_example_factors_divide_exactly():
    G, (_, c1), (_, c0) = example_candidates("residue")
    for cand in c1 + c0:
        one = cand.field.one
        assert resultant_mobius(G, *cand.coeffs(), one=one) == []
    # conjugate pairs multiply to rational factors of G
    r2 = sympy.sqrt(2)
    F1 = -S * T + r2 * T + S
    F2 = -S * T - r2 * T + S
    F3 = S * T - sympy.sqrt(3) / 3
    F4 = S * T + sympy.sqrt(3) / 3
    g = to_sympy_bi(G)
    for pair in ((F1, F2), (F3, F4)):
        prod = sympy.expand(pair[0] * pair[1])
        _, r = sympy.div(g, prod, T, S)
        assert r == 0
        assert BiPoly.parse(str(prod).replace("**", "^")).divides(G)


def test_example_candidate_coefficients():
    _, (_, c1), (_, c0) = example_candidates("residue")
    for cand in c1:
        a, b, c, d = cand.coeffs()
        assert a * a == 2 and b == 0 and c == -1 and d == 1
    for cand in c0:
        a, b, c, d = cand.coeffs()
        assert a == 0 and b * b == Fraction(1, 3) and c == 1 and d == 0
    assert {c.a.sign() for c in c1} == {-1, 1} and {c.b.sign() for c in c0} == {-1, 1}


def test_no_mobius_factor_gives_empty_candidates():
    G = BiPoly.parse("s^2 - t^3 - 1")
    p = choose_probe(G)
    d = implicit_derivs(G, p)
    R1, c1 = candidates_d1(G, p, d)
    assert R1.degree == 0 and c1 == []


def test_diagonal_has_no_d0_factor():
    G = BiPoly.parse("s - t")
    p = choose_probe(G)
    d = implicit_derivs(G, p)
    _, c0 = candidates_d0(G, p, d)
    assert c0 == []


def test_crunode_candidates():
    assert candidate_strings(symm(crunode(), 1)) == ["-t", "t"]
    assert candidate_strings(symm(crunode(), -1)) == ["-1/t", "1/t"]


def test_daisy_one_candidates():
    assert candidate_strings(symm(daisy(1), 1)) == ["1/t", "t"]
    assert candidate_strings(symm(daisy(1), -1)) == ["-1/t", "-t"]


def test_parallel_branches_match_sequential():
    a = symm(daisy(1), -1, parallel=True)
    b = symm(daisy(1), -1)
    assert candidate_strings(a) == candidate_strings(b)


# -- speed condition ------------------------------------------------------------


def test_speed_accepts_half_turn_of_crunode():
    assert speed_filter(crunode(), rational_candidate(-1, 0, 0, 1))[0]


def test_speed_accepts_identity_with_zero_witness():
    ok, wit = speed_filter(twisted_cubic(), rational_candidate(1, 0, 0, 1))
    assert ok and wit.W == ()


def test_speed_accepts_daisy_reflection():
    assert speed_filter(daisy(1), rational_candidate(0, -1, 1, 0, -1))[0]


def test_speed_rejects_scaling_and_respects_degree_bound():
    c = crunode()
    W, bound = speed_witness(c, rational_candidate(2, 0, 0, 1))
    assert W and len(W) - 1 <= bound == 24 * c.degree - 4
    assert not speed_filter(c, rational_candidate(2, 0, 0, 1))[0]


def test_speed_only_rejection_is_logged(monkeypatch, caplog):
    monkeypatch.setattr(detect, "speed_filter", lambda c, cand, sp=None: (cand.a == 1, None))
    with caplog.at_level(logging.INFO, logger="curvesym.detect"):
        res = symm(crunode(), 1)
    assert candidate_strings(res) == ["t"]
    assert [str(c) for c in res.rejected_by_speed] == ["-t"]
    assert any("speed condition" in r.getMessage() for r in caplog.records)


# -- properties of accepted candidates --------------------------------------------


CORPUS = [crunode(), daisy(1), daisy(2), random_central_curve(4, 8, 3)]


@pytest.mark.parametrize("curve", CORPUS, ids=["crunode", "daisy1", "daisy2", "central4"])
def test_accepted_candidates_preserve_invariants(curve):
    inv = invariants(curve)
    eqs = build_equations(inv)
    for sign in (1, -1):
        for cand in symm(curve, sign, inv=inv, eqs=eqs).accepted:
            assert cand.is_rational()
            a, b, c, d = cand.rational_coeffs()
            phi = RatFunc(UniPoly([b, a]), UniPoly([d, c]))
            assert inv.kappa2.compose(phi) == inv.kappa2
            assert inv.tau.compose(phi) == inv.tau * sign
            assert cand.mobius_like().divides(eqs.G(sign))


@pytest.mark.parametrize("curve", CORPUS, ids=["crunode", "daisy1", "daisy2", "central4"])
def test_accepted_mobius_maps_form_a_group(curve):
    maps = []
    for sign in (1, -1):
        for cand in symm(curve, sign).accepted:
            a, b, c, d = cand.rational_coeffs()
            maps.append(sympy.Matrix([[a, b], [c, d]]))

    def key(m):
        ref = next(v for v in list(m) if v != 0)
        return tuple(v / ref for v in m)

    keys = {key(m) for m in maps}
    assert key(sympy.eye(2)) in keys
    for m1 in maps:
        assert key(m1.inv()) in keys
        for m2 in maps:
            assert key(m1 * m2) in keys


def test_working_polynomial_drops_pure_t_and_repeated_factors():
    G = BiPoly.parse("s - t") * BiPoly.parse("s - t") * BiPoly.parse("t^2 + 1")
    assert working_polynomial(G) == BiPoly.parse("t - s").normalized()


# -- independent numeric oracle on the twisted cubic ------------------------------


def twisted_cubic_oracle():
    """Counts per sign: solve for affine phi symbolically, fit (Q, b) numerically."""
    a, b = sympy.symbols("a b")
    inv = invariants(twisted_cubic())
    k2, tau = to_sympy_rf(inv.kappa2), to_sympy_rf(inv.tau)
    phi = a * T + b
    counts = {1: 0, -1: 0}
    samples = [mpmath.mpf(k) / 20 for k in range(-100, 100)]

    def x(t):
        return mpmath.matrix([t, t**2, t**3])

    for sign in (1, -1):
        num = sympy.numer(sympy.together(k2.subs(T, phi) - k2))
        num2 = sympy.numer(sympy.together(tau.subs(T, phi) - sign * tau))
        eqs = sympy.Poly(num, T).coeffs() + sympy.Poly(num2, T).coeffs()
        for sol in sympy.solve(eqs, [a, b], dict=True):
            av, bv = sol.get(a, a), sol.get(b, b)
            if av.free_symbols or bv.free_symbols or not (av.is_real and bv.is_real) or av == 0:
                continue
            av, bv = mpmath.mpf(sympy.N(av, 80)), mpmath.mpf(sympy.N(bv, 80))
            pts = [mpmath.mpf(v) for v in (-1, 0, 1, 2)]
            M = mpmath.matrix([[*x(t), 1] for t in pts])
            rhs = [x(av * t + bv) for t in pts]
            rows = [mpmath.lu_solve(M, mpmath.matrix([r[i] for r in rhs])) for i in range(3)]
            Q = mpmath.matrix([[rows[i][j] for j in range(3)] for i in range(3)])
            bvec = mpmath.matrix([rows[i][3] for i in range(3)])
            if mpmath.norm(Q.T * Q - mpmath.eye(3)) > mpmath.mpf(10) ** -40:
                continue
            if mpmath.nint(mpmath.det(Q)) != sign:
                continue
            if all(mpmath.norm(Q * x(t) + bvec - x(av * t + bv)) < mpmath.mpf(10) ** -40
                   for t in samples):
                counts[sign] += 1
    return counts


def test_twisted_cubic_counts_match_numeric_oracle():
    with mpmath.workdps(70):
        oracle = twisted_cubic_oracle()
    rep = find_symmetries(twisted_cubic())
    assert {s: rep.count(s) for s in (1, -1)} == oracle == {1: 2, -1: 0}
