"""Formal involutions and the coset space of strictly invertible series.

An involutive series is ``e(T) = -T + ...`` with ``e(e(T)) = T``.  Every
strictly invertible ``g`` gives one, ``e_g = g^(-1)(-g(T))``, and ``e_g``
depends only on the left coset of ``g`` modulo odd series.  Over an odd
formal group law ``F`` the involutions are also parametrized by even
series ``u`` through ``phi_u(T) = F(T, u(T))``.

The ``c`` coefficients here follow the convention
``T + e(T) = sum_i c_(2i-1) (T e(T))^i``.  Relative to
:func:`fglkit.fgl.c_coefficients`, which expands in ``P = -T e(T)``,
``c_(2i-1)`` carries an extra sign ``(-1)^i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .fgl import (FormalGroupLaw, additive, c_coefficients, c_coefficients_residue,
                  conjugate, hensel_solve, is_odd)
from .rings import GeneratorTable, Polynomial, QQ
from .series import TruncSeries, _as_poly

__all__ = [
    "InvolutiveSeries",
    "CosetRep",
    "invol_from_series",
    "invol_from_u",
    "w_series",
    "u_from_invol",
    "c_from_invol",
    "invol_from_c",
    "is_involution",
    "force_strict_involution",
    "strict_rigidity_check",
    "same_coset",
    "coset_conjugation",
]


def is_involution(e: TruncSeries) -> bool:
    """``e(e(T)) = T`` to truncation (``e`` must have zero constant term)."""
    if e.coeffs[0]:
        return False
    return e.compose(e) == TruncSeries.X(e.N, e.table)


class InvolutiveSeries:
    """An involution ``e(T) = -T + e_1 T^2 + ...``."""

    __slots__ = ("e",)

    def __init__(self, e: TruncSeries, check: bool = True):
        if check:
            if e.coeffs[0] or e.coeffs[1] != -1:
                raise ValueError("an involutive series must be -T mod (T^2)")
            if not is_involution(e):
                raise ValueError("series is not an involution: e(e(T)) != T")
        self.e = e

    @property
    def N(self) -> int:
        return self.e.N

    @property
    def table(self) -> GeneratorTable:
        return self.e.table

    def __call__(self, g: TruncSeries) -> TruncSeries:
        return self.e.compose(g)

    def __eq__(self, other):
        if isinstance(other, InvolutiveSeries):
            return self.e == other.e
        if isinstance(other, TruncSeries):
            return self.e == other
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"InvolutiveSeries({self.e})"

    def is_minus_identity(self) -> bool:
        return self.e == -TruncSeries.X(self.N, self.table)

    def to_json(self):
        data = self.e.to_json()
        return {"kind": "involution", **data}

    @classmethod
    def from_json(cls, table: GeneratorTable, data) -> "InvolutiveSeries":
        if data.get("kind") != "involution":
            raise ValueError("not an involution record")
        return cls(TruncSeries.from_json(table, data))


def invol_from_series(g: TruncSeries) -> InvolutiveSeries:
    """``e_g(T) = g^(-1)(-g(T))``."""
    if not g.is_strictly_invertible():
        raise ValueError("g must be strictly invertible")
    return InvolutiveSeries(g.revert().compose(-g), check=False)


@dataclass
class CosetRep:
    """A strictly invertible ``g`` standing for ``g G_odd``."""

    g: TruncSeries
    canonical: InvolutiveSeries = field(init=False)

    def __post_init__(self):
        self.canonical = invol_from_series(self.g)

    def __eq__(self, other):
        if not isinstance(other, CosetRep):
            return NotImplemented
        return self.canonical == other.canonical


# the u <-> involution bijection over an odd law

def _require_odd(F: FormalGroupLaw):
    if not is_odd(F):
        raise ValueError("the formal group law must be odd")


def _phi_u(F: FormalGroupLaw, u: TruncSeries) -> TruncSeries:
    N = min(F.N, u.N)
    return F(F.X().truncate(N), u.truncate(N))


def invol_from_u(F: FormalGroupLaw, u: TruncSeries, verify: bool = False) -> InvolutiveSeries:
    """``[-1]`` of the law ``F_u`` for which ``phi_u = T +_F u(T)`` is a
    strict isomorphism ``F_u -> F``.

    Since ``F`` is odd this is ``phi_u^(-1)(-phi_u(T))``.  With ``verify``
    the law ``F_u`` is also built and its ``[-1]``-series compared.
    """
    _require_odd(F)
    if not u.is_even() or u.coeffs[0]:
        raise ValueError("u must be an even series with zero constant term")
    phi = _phi_u(F, u)
    e = invol_from_series(phi)
    if verify and conjugate(F, phi).minus != e.e:
        raise ArithmeticError("[-1] of the conjugated law disagrees with phi^-1(-phi)")
    return e


def w_series(F: FormalGroupLaw, e: TruncSeries) -> TruncSeries:
    """The ``w`` with ``e(T) = (-T) +_F w(T)``, i.e. ``w = F(e(T), T)`` for odd ``F``."""
    N = min(F.N, e.N)
    return F(e.truncate(N), F.X().truncate(N))


def u_from_invol(F: FormalGroupLaw, e: InvolutiveSeries | TruncSeries) -> TruncSeries:
    """Inverse of :func:`invol_from_u`.

    Works up the even degrees: ``u_2k = -(w_2k - P_2k)/2`` where ``P_2k`` is
    ``w_2k`` recomputed with ``u_2k`` (and everything above it) set to zero.
    """
    _require_odd(F)
    e = e.e if isinstance(e, InvolutiveSeries) else e
    if not is_involution(e):
        raise ValueError("series is not an involution")
    N = min(F.N, e.N)
    table = e.table if len(e.table) else F.table
    w = w_series(F, e)
    u = [Polynomial(table)] * N
    for k in range(2, N, 2):
        M = k + 1
        trial = invol_from_u(F, TruncSeries(table, u[:M]))
        P = w_series(F, trial.e)[k]
        u[k] = (w[k] - P) * mpq(-1, 2)
    result = TruncSeries(table, u)
    if invol_from_u(F, result).e != e.truncate(N):
        raise ValueError("involution is not reached by any even u")
    return result


# c coefficients

def c_from_invol(e: InvolutiveSeries | TruncSeries, rmax: int | None = None,
                 verify: bool = False) -> list[Polynomial]:
    """``c_1, c_3, ...`` with ``T + e(T) = sum_i c_(2i-1) (T e(T))^i``.

    With ``verify`` the coefficients are recomputed by the residue formula
    for the law over which ``e`` is ``[-1]``: ``g = phi_u`` over the
    additive law, logarithm ``g``.
    """
    e = e.e if isinstance(e, InvolutiveSeries) else e
    T = TruncSeries.X(e.N, e.table)
    S, P = T + e, -(T * e)
    raw = c_coefficients(S, P, rmax)
    out = [-c if i % 2 == 0 else c for i, c in enumerate(raw)]   # i = r - 1
    if verify:
        A = additive(e.N, e.table)
        g = T + u_from_invol(A, e)
        check = c_coefficients_residue(S, P, g.revert(), len(raw))
        if check != raw:
            raise ArithmeticError("triangular and residue routes disagree")
    return out


def invol_from_c(c, precision: int, table: GeneratorTable | None = None) -> InvolutiveSeries:
    """Solve ``H(E) = sum_i c_(2i-1) (T E)^i - T - E = 0`` by Hensel lifting from ``E = -T``."""
    if table is None:
        table = next((x.table for x in c if isinstance(x, Polynomial) and len(x.table)), QQ)
    c = [_as_poly(table, x) for x in c]
    N = precision
    T = TruncSeries.X(N, table)
    coeffs = [-T, TruncSeries.one(N, table) * -1]
    Ti = TruncSeries.one(N, table)
    for i, ci in enumerate(c, start=1):
        Ti = Ti * T
        if i >= len(coeffs):
            coeffs.append(TruncSeries.zero(N, table))
        coeffs[i] = coeffs[i] + Ti * ci
    # dH/dE = -1 mod (T), so the lift always exists
    E = hensel_solve(coeffs, -T)
    return InvolutiveSeries(E)


# rigidity

def force_strict_involution(e: TruncSeries) -> TruncSeries:
    """Starting from a strictly invertible ``e``, overwrite ``e_1, e_2, ...``
    in turn so that ``e(e(T)) = T`` holds one more degree at each step.

    The coefficient of ``T^(n+1)`` in ``e(e(T))`` is ``2 e_n + E_n`` with
    ``E_n`` depending on ``e_1..e_(n-1)`` only, so each step is forced.
    """
    if not e.is_strictly_invertible():
        raise ValueError("e must be strictly invertible")
    coeffs = list(e.coeffs)
    for n in range(1, e.N - 1):
        cur = TruncSeries(e.table, coeffs)
        defect = cur.compose(cur)[n + 1]
        coeffs[n + 1] = coeffs[n + 1] - defect * mpq(1, 2)
    return TruncSeries(e.table, coeffs)


def strict_rigidity_check(e: TruncSeries) -> bool:
    """For ``e = T + ...``: true when ``e`` is not an involution or is ``T``,
    and the forced solution from ``e`` is ``T``."""
    if not e.is_strictly_invertible():
        raise ValueError("rigidity applies to series T + ... only")
    X = TruncSeries.X(e.N, e.table)
    ok = (not is_involution(e)) or e == X
    return ok and force_strict_involution(e) == X


# cosets

def same_coset(f: TruncSeries, g: TruncSeries) -> bool:
    """``f G_odd = g G_odd``, decided by oddness of ``f o g^(-1)``."""
    for s in (f, g):
        if not s.is_strictly_invertible():
            raise ValueError("series must be strictly invertible")
    return f.compose(g.revert()).is_odd()


def coset_conjugation(e: InvolutiveSeries, c: InvolutiveSeries) -> InvolutiveSeries:
    """``c -> e^(-1) o c o e``; note ``e^(-1) = e``."""
    return InvolutiveSeries(e.e.compose(c.e.compose(e.e)), check=False)
