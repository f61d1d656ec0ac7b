"""Named property suites over seeded random inputs.

Each suite returns a :class:`Report` whose check names identify the identity
being tested.  Randomness comes from ``random.Random`` seeded with the suite
name and the configured seed, so a suite gives the same report whether it is
run alone or as part of ``all``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from gmpy2 import mpq

from . import fgl, idempotents, involutions, witt
from .report import Report
from .rings import GeneratorTable, Polynomial, QQ, is_dyadic, linear_part, universal_table
from .series import LaurentSeries, TruncSeries, lagrange_coeffs, laurent_power, laurent_residue

MAX_PRECISION = 64

SUITES = ("series-calculus", "fgl-axioms", "idempotents", "witt-groups", "involutions")


@dataclass(frozen=True)
class Config:
    precision: int = 10
    seed: int = 0
    trials: int = 20

    def __post_init__(self):
        if not 2 <= self.precision <= MAX_PRECISION:
            raise ValueError(f"precision must lie in [2, {MAX_PRECISION}]")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not -2 ** 63 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")


class Sampler:
    """Small random rationals, series and sequences."""

    def __init__(self, seed, label: str = ""):
        self.rng = random.Random(f"{seed}:{label}")

    def rational(self, bound: int = 3, integer: bool = False) -> mpq:
        n = self.rng.randint(-bound, bound)
        if integer or self.rng.random() < 0.7:
            return mpq(n)
        return mpq(n, self.rng.randint(1, bound))

    def coeffs(self, n: int, integer: bool = False) -> list:
        return [self.rational(integer=integer) for _ in range(n)]

    def strict(self, N: int, integer: bool = False) -> TruncSeries:
        """``X + ...``"""
        return TruncSeries(QQ, [0, 1] + self.coeffs(N - 2, integer))

    def odd_strict(self, N: int) -> TruncSeries:
        c = [0, 1] + [self.rational() if k % 2 else 0 for k in range(2, N)]
        return TruncSeries(QQ, c)

    def even_u(self, N: int, integer: bool = False) -> TruncSeries:
        return TruncSeries(QQ, [self.rational(integer=integer) if k % 2 == 0 and k else 0
                                for k in range(N)])

    def unit_series(self, N: int) -> TruncSeries:
        return TruncSeries(QQ, [1] + self.coeffs(N - 1))

    def laurent(self, N: int, depth: int = 4) -> LaurentSeries:
        n0 = -self.rng.randint(1, depth)
        return LaurentSeries(QQ, n0, self.coeffs(N - n0))

    def seq(self, N: int, role: str = witt.SERIES1) -> witt.WittSeq:
        return witt.WittSeq([1] + self.coeffs(N - 1), role)

    def involution(self, N: int, integer: bool = False) -> involutions.InvolutiveSeries:
        return involutions.invol_from_series(self.strict(N, integer))


def _all(results) -> tuple[bool, str]:
    results = list(results)
    good = sum(1 for r in results if r)
    return good == len(results), f"{good}/{len(results)}"


def _dyadic(polys) -> bool:
    return all(is_dyadic(p) for p in polys)


# series calculus

def suite_series(cfg: Config) -> Report:
    rep = Report("series-calculus")
    s = Sampler(cfg.seed, rep.suite)
    N = max(cfg.precision, 4)
    a, b, c = [], [], []
    for _ in range(cfg.trials):
        f = s.laurent(N)
        h = s.strict(N)
        dh = LaurentSeries.from_trunc(h.derivative())
        a.append(laurent_residue(f) == laurent_residue(f.compose(h) * dh))
        b.append(laurent_residue(f.derivative()) == 0)
        g = s.laurent(N)
        lhs = laurent_residue(f * g.derivative())
        rhs = -laurent_residue(g * f.derivative())
        c.append(lhs == rhs)
    for name, res in (("residue-change-of-variable", a), ("residue-exactness", b),
                      ("residue-integration-by-parts", c)):
        rep.add(name, *_all(res))

    assoc, inv, agree = [], [], []
    for _ in range(cfg.trials):
        f, g, h = s.strict(N), s.strict(N), s.strict(N)
        assoc.append(f.compose(g.compose(h)) == f.compose(g).compose(h))
        r = f.revert()
        X = TruncSeries.X(N)
        inv.append(f.compose(r) == X and r.compose(f) == X)
        agree.append(r == f.revert(method="iterate"))
    rep.add("compose-associative", *_all(assoc))
    rep.add("revert-two-sided-inverse", *_all(inv))
    rep.add("revert-lagrange-matches-iteration", *_all(agree))

    sq, mult = [], []
    for _ in range(cfg.trials):
        f, g = s.unit_series(N), s.unit_series(N)
        r = f.sqrt()
        sq.append(r * r == f)
        mult.append((f * g).sqrt() == r * g.sqrt())
    rep.add("sqrt-squares", *_all(sq))
    rep.add("sqrt-multiplicative", *_all(mult))

    recon = []
    for _ in range(cfg.trials):
        f = s.laurent(N, depth=2)
        h = s.strict(N)
        # c_n needs f h' h^(-n-1) known past Z^-1
        lo, hi = f.n0, f.N - 1 + f.n0
        cs = lagrange_coeffs(f, h, lo, hi)
        total = None
        for n, cn in zip(range(lo, hi), cs):
            term = laurent_power(h, n) * cn
            total = term if total is None else total + term
        # terms with n >= hi are dropped, so only Z^lo..Z^(hi-1) are determined
        recon.append(all(total.coeff(n) == f.coeff(n) for n in range(lo, hi)))
    rep.add("lagrange-reconstruction", *_all(recon))
    return rep


# formal group laws

def _standard_laws(cfg: Config, s: Sampler):
    N = cfg.precision
    return [
        ("additive", fgl.additive(N)),
        ("multiplicative", fgl.multiplicative(N)),
        ("universal", fgl.universal(N)),
        ("random-log", fgl.FormalGroupLaw.from_log(s.strict(N))),
    ]


def c_linear_checks(U: fgl.FormalGroupLaw) -> dict[int, bool]:
    """``linear_part(c_(2^t-1) - 2 e_(2^t-1)) = 0`` for each ``t`` the truncation allows."""
    S, P = fgl.sp_series(U)
    cs = fgl.c_coefficients(S, P)
    out = {}
    t = 1
    while 2 ** t + 1 <= U.N:
        k = 2 ** t - 1
        r = (k + 1) // 2
        if r <= len(cs):
            out[t] = linear_part(cs[r - 1] - U.exp.coeffs[k + 1] * 2).is_zero()
        t += 1
    return out


def suite_fgl(cfg: Config) -> Report:
    rep = Report("fgl-axioms")
    s = Sampler(cfg.seed, rep.suite)
    for name, F in _standard_laws(cfg, s):
        for check, ok in fgl.check_axioms(F).items():
            rep.add(f"{name}:{check}", ok)
        S, P = fgl.sp_series(F)
        rep.add(f"{name}:alpha-invariance",
                S.compose(F.minus) == S and P.compose(F.minus) == P)
        tri = fgl.c_coefficients(S, P)
        res = fgl.c_coefficients_residue(S, P, F.exp)
        rep.add(f"{name}:c-coefficients-routes-agree", tri == res)
        recon = TruncSeries.zero(F.N, F.table)
        for r, c in enumerate(tri, start=1):
            recon = recon + (P ** r) * c
        rep.add(f"{name}:c-expansion-reconstructs", recon == S)

    U = fgl.universal(cfg.precision)
    for t, ok in c_linear_checks(U).items():
        rep.add(f"c-linear-part-t{t}", ok)
    S, P = fgl.sp_series(U)
    rep.add("c-coefficients-dyadic", _dyadic(fgl.c_coefficients(S, P)))

    M = fgl.multiplicative(cfg.precision)
    trips = []
    for _ in range(cfg.trials):
        c = [1] + s.coeffs(cfg.precision - 2)
        trips.append(fgl.f_collapse(M, fgl.f_expand(M, c)) == [Polynomial.constant(M.table, x) for x in c])
    rep.add("f-expand-collapse-roundtrip", *_all(trips))
    return rep


# idempotents

def kozma_eps2_checks(max_weight: int = 12, primes=(2, 3, 5)) -> dict[tuple[int, int], bool]:
    """``eps2(T_(l,k))`` is 0 when ``l k`` is even and ``T_(l,k)`` when odd."""
    table = universal_table(max_weight)
    hom = idempotents.epsilon2_hom(table)
    out = {}
    for p in primes:
        for el in idempotents.kozma_table(p, max_weight // p, table):
            image = hom(el.value)
            want = el.value if (p * el.k) % 2 else Polynomial(table)
            out[(p, el.k)] = image == want
    return out


def eps2_image_checks(n: int) -> bool:
    """Generator images ``m_k -> 0`` (k odd), ``m_k -> m_k`` (k even), read
    off the odd part of the universal logarithm."""
    U = fgl.universal(n + 2)
    law = idempotents.epsilon2(U, verify=False).law
    table = U.table
    for k in range(1, n + 1):
        want = table.gen(f"m{k}") if k % 2 == 0 else Polynomial(table)
        if law.log.coeffs[k + 1] != want:
            return False
    hom = idempotents.epsilon2(U, verify=False).hom
    return hom is not None and all(hom(table.gen(f"m{k}")) == law.log.coeffs[k + 1]
                                   for k in range(1, n + 1))


def suite_idempotents(cfg: Config) -> Report:
    rep = Report("idempotents")
    s = Sampler(cfg.seed, rep.suite)
    for name, F in _standard_laws(cfg, s):
        try:
            G = idempotents.epsilon2(F, verify=True).law
            rep.add(f"{name}:eps2-phi-route-agrees", True)
        except ArithmeticError as exc:
            rep.add(f"{name}:eps2-phi-route-agrees", False, str(exc))
            G = idempotents.epsilon2(F, verify=False).law
        rep.add(f"{name}:eps2-log-odd", G.log.is_odd())
        rep.add(f"{name}:eps2-odd", fgl.is_odd(G))
        rep.add(f"{name}:eps2-idempotent", idempotents.epsilon2(G, verify=False).law == G)
        rep.add(f"{name}:e2-fixes-odd", idempotents.e2(G).law == G)
        rep.add(f"{name}:theta-trivial-on-odd", idempotents.theta_series(G) == G.X())
        B = idempotents.e2(F).law
        rep.add(f"{name}:e2-odd", fgl.is_odd(B))
        rep.add(f"{name}:e2-idempotent", idempotents.e2(B).law == B)
        rep.add(f"{name}:eps2-fixes-e2-image", idempotents.epsilon2(B, verify=False).law == B)
    U = fgl.universal(cfg.precision)
    rep.add("theta-dyadic", _dyadic(idempotents.theta_series(U).coeffs))
    rep.add("eps2-generator-images", eps2_image_checks(cfg.precision - 2))

    for p in (2, 3):
        k = (cfg.precision - 1) // p
        if k >= 1:
            rep.add(f"kozma-closure-l{p}", idempotents.kozma_closure(p, k))
    kz = kozma_eps2_checks(max(cfg.precision, 4))
    rep.add("kozma-eps2-values", *_all(kz.values()))

    rep.extend(idempotents.verify_idempotent_relations(fgl.multiplicative(cfg.precision), weight=min(6, cfg.precision)))
    return rep


# Witt groups

def _group_checks(rep: Report, prefix: str, op, inv, unit, sample, trials: int):
    assoc, comm, ident, inverse = [], [], [], []
    for _ in range(trials):
        a, b, c = sample(), sample(), sample()
        assoc.append(op(op(a, b), c) == op(a, op(b, c)))
        comm.append(op(a, b) == op(b, a))
        ident.append(op(a, unit) == a)
        inverse.append(op(a, inv(a)) == unit)
    rep.add(f"{prefix}-associative", *_all(assoc))
    rep.add(f"{prefix}-commutative", *_all(comm))
    rep.add(f"{prefix}-unit", *_all(ident))
    rep.add(f"{prefix}-inverse", *_all(inverse))


def suite_witt(cfg: Config) -> Report:
    rep = Report("witt-groups")
    s = Sampler(cfg.seed, rep.suite)
    N = cfg.precision
    trials = cfg.trials
    W = witt

    _group_checks(rep, "star", W.star, W.star_inv, W.WittSeq.unit(N),
                  lambda: s.seq(N), trials)
    _group_checks(rep, "diamond", W.diamond, W.diamond_inv, W.WittSeq.unit(N, W.LEADING),
                  lambda: s.seq(N, W.LEADING), trials)
    M = fgl.multiplicative(N + 1)
    _group_checks(rep, "diamond-F", W.diamond_F, W.diamond_F_inv, W.unit_F(M, N),
                  lambda: W.f_twist(M, s.seq(N, W.LEADING)), trials)

    prod, tau_fixed, plus_odd, recomb, idem, halves, rev2 = [], [], [], [], [], [], []
    for _ in range(trials):
        c, d = s.seq(N), s.seq(N)
        cp, cm = W.split(c)
        dp, dm = W.split(d)
        sp, sm = W.split(W.star(c, d))
        prod.append(sp == W.star(cp, dp) and sm == W.star(cm, dm))
        sym = W.star(c, W.tau(c))      # tau-fixed by construction
        tau_fixed.append(W.split(sym)[1].is_unit() and (W.tau(c) == c) == cm.is_unit())
        plus_odd.append(all(not cp[k] for k in range(1, N, 2)) and W.tau(cp) == cp)
        recomb.append(W.star(cp, cm) == c)
        idem.append(W.split(cp) == (cp, W.WittSeq.unit(N)) and W.split(cm) == (W.WittSeq.unit(N), cm))
        h = W.half(c)
        halves.append(W.star(h, h) == c)
        l = s.seq(N, W.LEADING)
        rev2.append(W.revert_seq(W.revert_seq(l)) == l)
    rep.add("witt-product-decomposition", *_all(prod))
    rep.add("witt-tau-fixed-iff-minus-trivial", *_all(tau_fixed))
    rep.add("split-plus-odd-entries-vanish", *_all(plus_odd))
    rep.add("split-recombines", *_all(recomb))
    rep.add("split-idempotent", *_all(idem))
    rep.add("halving", *_all(halves))
    rep.add("revert-twice-identity", *_all(rev2))

    hom, trip = [], []
    for _ in range(trials):
        c, d = s.seq(N, W.LEADING), s.seq(N, W.LEADING)
        hom.append(W.f_twist(M, W.diamond(c, d)) == W.diamond_F(W.f_twist(M, c), W.f_twist(M, d)))
        trip.append(W.untwist(W.f_twist(M, c)) == c)
    rep.add("witt-twist-homomorphism", *_all(hom))
    rep.add("witt-twist-roundtrip", *_all(trip))

    O = idempotents.epsilon2(fgl.multiplicative(N + 1), verify=False).law
    back, closed = [], []
    unit = W.unit_F(O, N)
    for _ in range(trials):
        a = W.f_twist(O, s.seq(N, W.LEADING))
        b = W.f_twist(O, s.seq(N, W.LEADING))
        ap, am = W.split_F(a)
        bp, bm = W.split_F(b)
        back.append(W.diamond_F(ap, am) == a)
        pp, mm = W.diamond_F(ap, bp), W.diamond_F(am, bm)
        closed.append(W.split_F(pp) == (pp, unit) and W.split_F(mm) == (unit, mm))
    rep.add("witt-split-F-recombines", *_all(back))
    rep.add("witt-split-F-components-closed", *_all(closed))
    return rep


# involutions

def w2_symbolic() -> tuple[bool, bool]:
    """Over the additive law with ``u = u2 T^2 + u4 T^4``: ``w_2 = -2 u_2``, and
    ``u_from_invol`` recovers the symbolic ``u``."""
    table = GeneratorTable([("u2", 2), ("u4", 4)])
    N = 6
    A = fgl.additive(N, table)
    u = TruncSeries(table, [0, 0, table.gen("u2"), 0, table.gen("u4"), 0])
    e = involutions.invol_from_u(A, u, verify=True)
    w = involutions.w_series(A, e.e)
    return w[2] == table.gen("u2") * -2, involutions.u_from_invol(A, e) == u


def suite_involutions(cfg: Config) -> Report:
    rep = Report("involutions")
    s = Sampler(cfg.seed, rep.suite)
    N = cfg.precision
    trials = cfg.trials
    I = involutions
    X = TruncSeries.X(N)

    A = fgl.additive(N)
    O = idempotents.epsilon2(fgl.multiplicative(N), verify=False).law
    every = []
    for name, F in (("additive", A), ("eps2-multiplicative", O)):
        a, b = [], []
        for _ in range(trials):
            u = s.even_u(N)
            e = I.invol_from_u(F, u)
            a.append(I.u_from_invol(F, e) == u)
            e2 = s.involution(N)
            b.append(I.invol_from_u(F, I.u_from_invol(F, e2)) == e2)
        rep.add(f"invol-roundtrip:{name}:u-e-u", *_all(a))
        rep.add(f"invol-roundtrip:{name}:e-u-e", *_all(b))
        every += a + b
    rep.add("invol-roundtrip", *_all(every))
    rep.add("invol-conjugate-route",
            *_all(I.invol_from_u(O, s.even_u(N), verify=True) is not None for _ in range(3)))
    w2, symbolic = w2_symbolic()
    rep.add("invol-w2-equals-minus-2u2", w2)
    rep.add("invol-symbolic-inverse", symbolic)

    surj, hensel, resid, dyadic = [], [], [], []
    for _ in range(trials):
        e = s.involution(N, integer=True)
        g = X + I.u_from_invol(A, e)
        surj.append(I.invol_from_series(g) == e)
        try:
            cs = I.c_from_invol(e, verify=True)
            resid.append(True)
        except ArithmeticError:
            cs = I.c_from_invol(e)
            resid.append(False)
        hensel.append(I.invol_from_c(cs, N) == e)
        dyadic.append(_dyadic(I.u_from_invol(A, e).coeffs) and _dyadic(cs))
    rep.add("invol-surjectivity", *_all(surj))
    rep.add("hensel-expansion-roundtrip", *_all(hensel))
    rep.add("c-from-invol-residue-route", *_all(resid))
    rep.add("u-and-c-dyadic", *_all(dyadic))

    rig = []
    for _ in range(trials):
        r = s.strict(N)
        rig.append(I.force_strict_involution(r) == X and I.strict_rigidity_check(r))
    rig.append(I.strict_rigidity_check(X))
    rep.add("strict-involution-rigidity", *_all(rig))

    fwd, back = [], []
    for _ in range(trials):
        g = s.strict(N)
        for f in (s.strict(N), s.odd_strict(N).compose(g)):
            ef, eg = I.invol_from_series(f).e, I.invol_from_series(g).e
            commute = ef.compose(eg) == eg.compose(ef)
            equal = ef == eg
            coset = I.same_coset(f, g)
            (fwd if coset else back).append(commute == equal == coset)
    rep.add("coset-same-coset-direction", *_all(fwd))
    rep.add("coset-distinct-coset-direction", *_all(back))

    fixed, twice, moved = [], [], []
    for _ in range(trials):
        e, c = s.involution(N), s.involution(N)
        fixed.append(I.coset_conjugation(e, e) == e)
        once = I.coset_conjugation(e, c)
        twice.append(I.coset_conjugation(e, once) == c and I.is_involution(once.e))
        moved.append(c == e or once != c)
    rep.add("coset-conjugation-fixed-point", *_all(fixed))
    rep.add("coset-conjugation-involutive", *_all(twice))
    rep.add("coset-conjugation-unique-fixed-point", *_all(moved))
    return rep


RUNNERS = {
    "series-calculus": suite_series,
    "fgl-axioms": suite_fgl,
    "idempotents": suite_idempotents,
    "witt-groups": suite_witt,
    "involutions": suite_involutions,
}


def run_suite(name: str, cfg: Config) -> Report:
    if name == "all":
        rep = Report("all")
        start = time.perf_counter()
        for suite in SUITES:
            sub = run_suite(suite, cfg)
            for c in sub.checks:
                rep.add(f"{suite}/{c['name']}", c["pass"], c["detail"])
        rep.seconds = time.perf_counter() - start
        return rep
    if name not in RUNNERS:
        raise KeyError(name)
    start = time.perf_counter()
    try:
        rep = RUNNERS[name](cfg)
    except Exception as exc:       # a crash counts as a failed verification
        rep = Report(name)
        rep.add("suite-completed", False, f"{type(exc).__name__}: {exc}")
    rep.seconds = time.perf_counter() - start
    return rep
