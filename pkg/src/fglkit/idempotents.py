"""Idempotents producing odd formal group laws.

``epsilon2`` keeps the odd part of the logarithm; ``e2`` conjugates by the
square-root series ``theta(X) = X sqrt(-[-1](X)/X)``.  Both act on the
universal ring ``Q[m_1, m_2, ...]`` through their effect on the universal
logarithm, which gives the ring homomorphisms compared in
:func:`verify_idempotent_relations`.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .fgl import FormalGroupLaw, conjugate, formal_sum, is_odd, n_series, universal
from .report import Report
from .rings import GeneratorTable, Polynomial, RingHom, universal_table
from .series import TruncSeries

__all__ = [
    "Epsilon2Result",
    "E2Result",
    "KozmaElement",
    "epsilon2",
    "phi_series",
    "e2",
    "theta_series",
    "epsilon2_hom",
    "e2_hom",
    "kozma_T",
    "kozma_table",
    "kozma_closure",
    "verify_idempotent_relations",
    "Report",
]


@dataclass
class Epsilon2Result:
    law: FormalGroupLaw
    phi: TruncSeries
    hom: RingHom | None = None


@dataclass
class E2Result:
    theta: TruncSeries
    law: FormalGroupLaw


@dataclass
class KozmaElement:
    prime: int
    k: int
    value: Polynomial


def _universal_log_gens(F: FormalGroupLaw):
    """When ``F`` is the universal law (log coefficient of X^(n+1) is the
    generator m_n), return its generator table, else None."""
    t = F.table
    gens = t.gens()
    coeffs = F.log.coeffs[2:]
    if len(t) and len(coeffs) >= len(t) and all(
            coeffs[i] == gens[i] for i in range(len(t))):
        return t
    return None


def phi_series(F: FormalGroupLaw) -> TruncSeries:
    """``[1/2]_F(F(X, [-1]_F(-X)))``."""
    X = F.X()
    return n_series(F, mpq(1, 2)).compose(F(X, F.minus.compose(-X)))


def epsilon2(F: FormalGroupLaw, verify: bool = True) -> Epsilon2Result:
    """The odd law whose logarithm is ``(log(X) - log(-X)) / 2``.

    With ``verify`` the law is rebuilt independently by conjugating ``F``
    with ``phi`` and the two constructions are compared.
    """
    odd_log = F.log.odd_part()
    law = FormalGroupLaw.from_log(odd_log)
    phi = phi_series(F)
    if verify:
        if not phi.is_strictly_invertible():
            raise ArithmeticError("phi is not a strict isomorphism")
        if conjugate(F, phi) != law:
            raise ArithmeticError("odd-logarithm and phi-conjugation routes disagree")
    hom = None
    table = _universal_log_gens(F)
    if table is not None:
        hom = epsilon2_hom(table)
    return Epsilon2Result(law=law, phi=phi, hom=hom)


def epsilon2_hom(table: GeneratorTable) -> RingHom:
    """``m_n -> 0`` for odd ``n``, ``m_n -> m_n`` for even ``n``."""
    images = {}
    for name, w in zip(table.names, table.weights):
        images[name] = table.gen(name) if w % 2 == 0 else Polynomial(table)
    return RingHom(table, images, table)


def theta_series(F: FormalGroupLaw) -> TruncSeries:
    """``X * sqrt(-[-1]_F(X) / X)``."""
    ratio = (-F.minus).shift_down(1)
    return ratio.sqrt().shift_up(1).truncate(F.N)


def e2(F: FormalGroupLaw) -> E2Result:
    """The odd law that is the target of the strict isomorphism
    ``theta: F -> e2(F)``, i.e. ``e2(F) = F^(theta^-1)``."""
    theta = theta_series(F)
    if theta == F.X():
        return E2Result(theta=theta, law=F)
    return E2Result(theta=theta, law=conjugate(F, theta.revert()))


def e2_hom(n: int) -> RingHom:
    """Effect of ``e2`` on the generators ``m_1..m_n`` of the universal ring."""
    U = universal(n + 2, generators=n)
    law = e2(U).law
    table = U.table
    images = {table.names[k - 1]: law.log.coeffs[k + 1] for k in range(1, n + 1)}
    return RingHom(table, images, table)


def kozma_T(prime: int, k: int, table: GeneratorTable | None = None,
            _cache: dict | None = None) -> KozmaElement:
    """``T_(l,k) = l m_(kl-1) - sum_(1<s|k) m_(s-1) T_(l,k/s)^s`` with ``m_0 = 1``."""
    if prime < 2 or any(prime % d == 0 for d in range(2, int(prime ** 0.5) + 1)):
        raise ValueError(f"{prime} is not prime")
    if k < 1:
        raise ValueError("k must be positive")
    need = k * prime - 1
    if table is None:
        table = universal_table(need)
    if need > len(table):
        raise ValueError(f"T_({prime},{k}) needs generators up to m{need}")
    cache = {} if _cache is None else _cache

    def m(i: int) -> Polynomial:
        return Polynomial.constant(table, 1) if i == 0 else table.gen(f"m{i}")

    def T(kk: int) -> Polynomial:
        if kk not in cache:
            val = m(kk * prime - 1) * prime
            for s in range(2, kk + 1):
                if kk % s == 0:
                    val = val - m(s - 1) * T(kk // s) ** s
            cache[kk] = val
        return cache[kk]

    return KozmaElement(prime=prime, k=k, value=T(k))


def kozma_table(prime: int, max_k: int, table: GeneratorTable | None = None) -> list[KozmaElement]:
    table = table or universal_table(prime * max_k - 1)
    cache: dict = {}
    return [kozma_T(prime, k, table, cache) for k in range(1, max_k + 1)]


def kozma_closure(prime: int, max_k: int) -> bool:
    """``sum^F_k T_(l,k) X^(kl)`` over the universal law has logarithm
    ``l * sum_k m_(kl-1) X^(kl)``."""
    N = prime * max_k + 1
    U = universal(N)
    table = U.table
    elems = kozma_table(prime, max_k, table)
    terms = [TruncSeries.monomial(el.value, el.k * prime, N, table) for el in elems]
    total = formal_sum(U, terms)
    expected = [0] * N
    for k in range(1, max_k + 1):
        expected[k * prime] = table.gen(f"m{k * prime - 1}") * prime
    return U.log.compose(total) == TruncSeries(table, expected)


# relations between the two idempotents

def _is_e2_morphism_odd(F1: FormalGroupLaw, phi: TruncSeries) -> tuple[bool, bool]:
    """For a strict isomorphism ``phi: F1 -> F2`` with ``F2 = F1^(phi^-1)``,
    return (``e2(phi)`` odd, ``e2(phi)`` is a morphism ``e2 F1 -> e2 F2``)."""
    F2 = conjugate(F1, phi.revert())
    t1, t2 = theta_series(F1), theta_series(F2)
    e2phi = t2.compose(phi.compose(t1.revert()))
    G1, G2 = e2(F1).law, e2(F2).law
    morphism = conjugate(G2, e2phi) == G1
    return e2phi.is_odd(), morphism


def verify_idempotent_relations(F: FormalGroupLaw, weight: int = 6,
                                phi: TruncSeries | None = None) -> Report:
    """Oddness of e2, e2 on isomorphisms, the ring-level composites of the
    two idempotents and their mutual inverse property on images."""
    rep = Report("idempotents")
    E = e2(F)
    rep.add("idem-e2-odd", is_odd(E.law))
    if phi is None:
        coeffs = [0, 1] + [(-1) ** k * (k + 1) for k in range(F.N - 2)]
        phi = TruncSeries(F.table, coeffs)
    odd, morphism = _is_e2_morphism_odd(F, phi)
    rep.add("idem-e2-of-isomorphism-odd", odd)
    rep.add("idem-e2-of-isomorphism-is-morphism", morphism)
    rep.add("fixed-objects-e2-fixes-eps2", e2(epsilon2(F, verify=False).law).law == epsilon2(F, verify=False).law)
    rep.add("fixed-objects-eps2-fixes-e2", epsilon2(E.law, verify=False).law == E.law)

    eps = epsilon2_hom(universal_table(weight))
    bu = e2_hom(weight)
    # ring-level composites: f.compose(g) applies g first
    orders = {
        "e2-after-eps2": bu.compose(eps),
        "eps2-after-e2": eps.compose(bu),
    }
    for ident, target in (("e2*eps2=e2", bu), ("eps2*e2=eps2", eps)):
        holds = [name for name, h in orders.items() if h == target]
        rep.add(f"idem-composite {ident}", bool(holds),
                "holds for: " + (", ".join(holds) if holds else "neither order"))
    table = eps.source
    inv1 = all(bu(eps(bu(g))) == bu(g) for g in table.gens())
    inv2 = all(eps(bu(eps(g))) == eps(g) for g in table.gens())
    rep.add("idem-eps2-then-e2-identity-on-im-e2", inv1)
    rep.add("idem-e2-then-eps2-identity-on-im-eps2", inv2)
    return rep
