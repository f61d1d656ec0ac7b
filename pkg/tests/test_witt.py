import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from conftest import X, coeff_lists, from_sympy, sympy_series
from fglkit import witt as W
from fglkit.fgl import additive, multiplicative, universal
from fglkit.idempotents import epsilon2
from fglkit.rings import GeneratorTable, QQ
from fglkit.series import TruncSeries

u_sym = sympy.Symbol("u")
U_TABLE = GeneratorTable([("u", 1)])
u = U_TABLE.gen("u")
L = 7


def seqs(n=L, role=W.SERIES1):
    return coeff_lists(n - 1).map(lambda cs: W.WittSeq([1] + cs, role))


def to_sym(c):
    return sum((sympy.Rational(str(e)) * X ** k for k, e in enumerate(c.entries)), sympy.Integer(0))


def cut(expr, n):
    expr = sympy.expand(expr)
    return sum((expr.coeff(X, k) * X ** k for k in range(n)), sympy.Integer(0))


def sym_revert(f, n):
    """Compositional inverse of a polynomial X + ..., by fixed-point iteration."""
    cs = [sympy.expand(f).coeff(X, k) for k in range(n)]
    g = X
    for _ in range(n):
        comp = sympy.Integer(0)
        for c in reversed(cs):          # Horner, truncating as we go
            comp = cut(comp * g + c, n)
        g = cut(g - (comp - X), n)
    return g


def sym_diamond(c, d):
    """rev(rev c * rev d) with every step done in sympy."""
    n = len(c)
    rc = sym_revert(X * to_sym(c), n + 1) / X
    rd = sym_revert(X * to_sym(d), n + 1) / X
    prod = cut(sympy.expand(rc * rd), n)
    out = sym_revert(X * prod, n + 1)
    return [sympy.expand(out).coeff(X, k + 1) for k in range(n)]


def test_star_examples():
    c = W.WittSeq([1, 1, 0])
    assert W.star(c, c).entries == [1, 2, 1]
    inv = W.star_inv(W.WittSeq([1, 1, 0, 0, 0]))
    assert inv.entries == [1, -1, 1, -1, 1]
    with pytest.raises(ValueError):
        W.WittSeq([2, 1])
    with pytest.raises(ValueError):
        W.star(c, W.WittSeq([1, 1]))
    with pytest.raises(ValueError):
        W.star(c, c.with_role(W.LEADING))


@given(seqs(), seqs(), seqs())
def test_star_group_axioms(a, b, c):
    unit = W.WittSeq.unit(L)
    assert W.star(W.star(a, b), c) == W.star(a, W.star(b, c))
    assert W.star(a, b) == W.star(b, a)
    assert W.star(a, unit) == a
    assert W.star(a, W.star_inv(a)) == unit


@given(seqs(), seqs())
def test_star_matches_sympy(a, b):
    ref = cut(to_sym(a) * to_sym(b), L)
    assert [sympy.Rational(str(e)) for e in W.star(a, b).entries] == [ref.coeff(X, k) for k in range(L)]


@given(seqs())
def test_half_and_tau(c):
    h = W.half(c)
    assert W.star(h, h) == c
    assert W.tau(W.tau(c)) == c


def test_split_example():
    b = W.WittSeq([1, 1, 0, 0, 0, 0])
    plus, minus = W.split(b)
    assert plus.series() == sympy_series(sympy.sqrt(1 - X ** 2), 6)
    assert plus.entries[:5] == [1, 0, mpq(-1, 2), 0, mpq(-1, 8)]
    assert minus.series() == sympy_series(sympy.sqrt((1 + X) / (1 - X)), 6)
    assert minus.entries[:4] == [1, 1, mpq(1, 2), mpq(1, 2)]
    assert W.star(plus, minus) == b


@given(seqs(), seqs())
def test_split_properties(c, d):
    unit = W.WittSeq.unit(L)
    cp, cm = W.split(c)
    dp, dm = W.split(d)
    assert all(not cp[k] for k in range(1, L, 2))
    assert W.tau(cp) == cp
    assert W.star(cm, W.tau(cm)) == unit
    assert W.star(cp, cm) == c
    sp, sm = W.split(W.star(c, d))
    assert sp == W.star(cp, dp) and sm == W.star(cm, dm)
    assert W.split(cp) == (cp, unit) and W.split(cm) == (unit, cm)


def test_tau_fixed_iff_minus_trivial():
    even = W.WittSeq([1, 0, 3, 0, -2, 0])
    assert W.tau(even) == even and W.split(even)[1].is_unit()
    odd = W.WittSeq([1, 1, 0, 0, 0, 0])
    assert W.tau(odd) != odd and not W.split(odd)[1].is_unit()


def test_revert_examples():
    c = W.WittSeq([1, 1, 0, 0], W.LEADING)
    r = W.revert_seq(c)
    assert r.entries == [1, -1, 2, -5] and r.role == W.SERIES1
    assert W.revert_seq(r) == c


@settings(max_examples=20)
@given(seqs(6, W.LEADING), seqs(6, W.LEADING))
def test_diamond_matches_sympy(c, d):
    got = W.diamond(c, d)
    assert got.role == W.LEADING
    assert [sympy.Rational(str(e)) for e in got.entries] == sym_diamond(c, d)


@given(seqs(role=W.LEADING), seqs(role=W.LEADING), seqs(role=W.LEADING))
def test_diamond_group_axioms(a, b, c):
    unit = W.WittSeq.unit(L, W.LEADING)
    assert W.diamond(W.diamond(a, b), c) == W.diamond(a, W.diamond(b, c))
    assert W.diamond(a, b) == W.diamond(b, a)
    assert W.diamond(a, unit) == a
    assert W.diamond(a, W.diamond_inv(a)) == unit


def test_twist_examples():
    M = multiplicative(6)
    cf = W.f_twist(M, W.WittSeq([1, 1, 0, 0, 0], W.LEADING))
    assert cf.entries[:3] == [1, 1, -u]
    A = additive(7)
    c = W.WittSeq([1, 2, -1, 0, 3, 1], W.LEADING)
    assert W.f_twist(A, c).entries == c.entries
    with pytest.raises(ValueError):
        W.f_twist(M, W.WittSeq.unit(6, W.LEADING))
    with pytest.raises(ValueError):
        W.f_twist(M, W.WittSeq.unit(4))


def sym_twist(entries):
    """c^F for F = X + Y + uXY: peel sum^F c^F_n X^(n+1) degree by degree."""
    n = len(entries)
    target = sum(sympy.sympify(e) * X ** (k + 1) for k, e in enumerate(entries))
    out, acc = [], sympy.Integer(0)
    for k in range(n):
        cf = sympy.expand(target - acc).coeff(X, k + 1)
        out.append(cf)
        t = cf * X ** (k + 1)
        acc = cut(acc + t + u_sym * acc * t, n + 1)
    return out


def test_twist_matches_sympy():
    M = multiplicative(7)
    c = W.WittSeq([1, 2, mpq(-1, 3), 0, 5, 1], W.LEADING)
    got = W.f_twist(M, c).entries
    ref = sym_twist([sympy.Rational(str(e)) for e in c.entries])
    assert got == [from_sympy(r, U_TABLE) for r in ref]


@settings(max_examples=10)
@given(seqs(5, W.LEADING), seqs(5, W.LEADING))
def test_twist_homomorphism_against_sympy(c, d):
    M = multiplicative(6)
    lhs = W.f_twist(M, W.diamond(c, d))
    assert lhs == W.diamond_F(W.f_twist(M, c), W.f_twist(M, d))
    ref = sym_twist(sym_diamond(c, d))
    assert lhs.entries == [from_sympy(r, U_TABLE) for r in ref]


@settings(max_examples=15)
@given(seqs(role=W.LEADING), seqs(role=W.LEADING), seqs(role=W.LEADING))
def test_diamond_F_group_axioms(a, b, c):
    M = multiplicative(L + 1)
    a, b, c = (W.f_twist(M, x) for x in (a, b, c))
    unit = W.unit_F(M, L)
    assert W.diamond_F(W.diamond_F(a, b), c) == W.diamond_F(a, W.diamond_F(b, c))
    assert W.diamond_F(a, b) == W.diamond_F(b, a)
    assert W.diamond_F(a, unit) == a
    assert W.diamond_F(a, W.diamond_F_inv(a)) == unit
    assert W.untwist(a).entries == W.untwist(W.f_twist(M, W.untwist(a))).entries


def test_diamond_F_additive_is_diamond():
    A = additive(L + 1)
    c = W.WittSeq([1, 1, 2, 0, -1, 0, 3], W.LEADING)
    d = W.WittSeq([1, 0, -1, 4, 0, 1, 0], W.LEADING)
    assert W.diamond_F(W.f_twist(A, c), W.f_twist(A, d)).entries == W.diamond(c, d).entries


def test_diamond_F_rejects_mismatch():
    M, U = multiplicative(6), universal(6)
    c = W.WittSeq.unit(5, W.LEADING)
    with pytest.raises(ValueError):
        W.diamond_F(W.f_twist(M, c), W.f_twist(U, W.WittSeq.unit(5, W.LEADING, U.table)))
    with pytest.raises(ValueError):
        W.diamond_F(W.f_twist(M, c), W.f_twist(M, W.WittSeq.unit(4, W.LEADING)))


@settings(max_examples=10)
@given(seqs(role=W.LEADING), seqs(role=W.LEADING))
def test_split_F_over_odd_law(a, b):
    O = epsilon2(multiplicative(L + 1), verify=False).law
    unit = W.unit_F(O, L)
    a, b = W.f_twist(O, a), W.f_twist(O, b)
    ap, am = W.split_F(a)
    bp, bm = W.split_F(b)
    assert W.diamond_F(ap, am) == a
    pp, mm = W.diamond_F(ap, bp), W.diamond_F(am, bm)
    assert W.split_F(pp) == (pp, unit)
    assert W.split_F(mm) == (unit, mm)


def test_split_F_additive_is_transported_split():
    A = additive(L + 1)
    c = W.WittSeq([1, 1, 2, 0, -1, 0, 3], W.LEADING)
    plus, minus = W.split(W.revert_seq(c))
    ap, am = W.split_F(W.f_twist(A, c))
    assert ap.entries == W.revert_seq(plus).entries
    assert am.entries == W.revert_seq(minus).entries


def test_split_F_requires_odd_law():
    M = multiplicative(6)
    with pytest.raises(ValueError):
        W.split_F(W.unit_F(M, 5))


def test_json_roundtrip():
    c = W.WittSeq([1, mpq(1, 2), -3], W.LEADING)
    assert W.WittSeq.from_json(QQ, c.to_json()) == c
