from fractions import Fraction

import pytest
import sympy

from curvesym.algebra.bipoly import BiPoly
from curvesym.algebra.unipoly import RatFunc, UniPoly

T, S, XI = sympy.symbols("t s xi")

ACCEPTANCE_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")
    config.addinivalue_line("markers", "slow: long-running test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        ACCEPTANCE_RESULTS[number] = (title, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, verdict = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"{verdict} criterion {number}: {title}")


# -- sympy bridges used as an independent oracle ----------------------------


def to_sympy_uni(p: UniPoly, var=T):
    return sum((sympy.Rational(c.numerator, c.denominator) * var**i
                for i, c in enumerate(p.coeffs)), sympy.Integer(0))


def to_sympy_rf(f: RatFunc, var=T):
    return to_sympy_uni(f.num, var) / to_sympy_uni(f.den, var)


def to_sympy_bi(p: BiPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * T**i * S**k
                for (i, k), c in p.coeffs.items()), sympy.Integer(0))


def from_sympy_uni(expr, var=T) -> UniPoly:
    coeffs = sympy.Poly(sympy.expand(expr), var).all_coeffs()[::-1]
    return UniPoly([_frac(c) for c in coeffs])


def from_sympy_bi(expr) -> BiPoly:
    poly = sympy.Poly(sympy.expand(expr), T, S)
    return BiPoly({m: _frac(c) for m, c in poly.terms()})


def _frac(c):
    r = sympy.Rational(c)
    return Fraction(int(r.p), int(r.q))


def same_up_to_constant(a: BiPoly, b: BiPoly) -> bool:
    return a.normalized() == b.normalized()
