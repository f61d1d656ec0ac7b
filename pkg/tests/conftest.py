"""Shared oracles and hypothesis strategies.

sympy serves as an independent reference implementation for polynomial
and power-series arithmetic; it is used only by the tests.
"""

import sympy
from gmpy2 import mpq
from hypothesis import HealthCheck, settings, strategies as st

from fglkit.rings import GeneratorTable, Polynomial, QQ
from fglkit.series import TruncSeries

settings.register_profile("fglkit", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("fglkit")

X = sympy.Symbol("X")


def to_sympy(p: Polynomial):
    syms = {n: sympy.Symbol(n) for n in p.table.names}
    total = sympy.Integer(0)
    for exps, c in p.monomials():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for name, e in zip(p.table.names, exps):
            term *= syms[name] ** e
        total += term
    return sympy.expand(total)


def from_sympy(expr, table: GeneratorTable) -> Polynomial:
    expr = sympy.expand(expr)
    if expr == 0:
        return Polynomial(table)
    gens = [sympy.Symbol(n) for n in table.names]
    if not gens:
        r = sympy.Rational(expr)
        return Polynomial.constant(table, mpq(int(r.p), int(r.q)))
    poly = sympy.Poly(expr, *gens)
    terms = []
    for exps, c in poly.terms():
        r = sympy.Rational(c)
        terms.append((mpq(int(r.p), int(r.q)), {n: e for n, e in zip(table.names, exps) if e}))
    return Polynomial.from_terms(table, terms)


def series_to_sympy(f: TruncSeries):
    return sum((to_sympy(c) * X ** k for k, c in enumerate(f.coeffs)), sympy.Integer(0))


def sympy_series(expr, N: int, table: GeneratorTable = QQ) -> TruncSeries:
    """Taylor coefficients of ``expr`` in X below X^N."""
    s = sympy.series(expr, X, 0, N).removeO()
    s = sympy.expand(s)
    return TruncSeries(table, [from_sympy(s.coeff(X, k), table) for k in range(N)])


def sympy_trunc(expr, N: int, table: GeneratorTable = QQ) -> TruncSeries:
    """Coefficients of a polynomial expression in X, cut below X^N."""
    expr = sympy.expand(expr)
    return TruncSeries(table, [from_sympy(expr.coeff(X, k), table) for k in range(N)])


small_int = st.integers(min_value=-5, max_value=5)
rationals = st.builds(lambda a, b: mpq(a, b), st.integers(-6, 6), st.integers(1, 4))


def coeff_lists(n: int):
    return st.lists(rationals, min_size=n, max_size=n)


def strict_series(N: int):
    return coeff_lists(N - 2).map(lambda cs: TruncSeries(QQ, [0, 1] + cs))


def unit_series(N: int):
    return coeff_lists(N - 1).map(lambda cs: TruncSeries(QQ, [1] + cs))


M3 = GeneratorTable([("m1", 1), ("m2", 2), ("m3", 3)])


@st.composite
def polys(draw, table: GeneratorTable = M3, max_terms: int = 4, max_exp: int = 2):
    n = draw(st.integers(0, max_terms))
    terms = []
    for _ in range(n):
        c = draw(rationals)
        mono = {name: draw(st.integers(0, max_exp)) for name in table.names}
        terms.append((c, mono))
    return Polynomial.from_terms(table, terms)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
