"""Witt-vector-like groups of sequences.

A :class:`WittSeq` is a finite sequence ``c_0 = 1, c_1, ..., c_(N-1)`` in one
of two roles:

* ``"series1"``: the series ``b(T) = sum c_n T^n``; the group law is the
  Cauchy product ``*``.
* ``"leading"``: the series ``c(X) X = sum c_n X^(n+1)``; the group law is
  ``c <> d = rev(rev(c) * rev(d))``.

Reversion swaps the two roles.  ``W^F`` sequences (:class:`WittSeqF`) are
the coefficients of a ``leading`` series re-expanded as a formal sum for a
formal group law ``F``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fgl import FormalGroupLaw, f_collapse, f_expand, is_odd
from .rings import GeneratorTable, Polynomial, QQ
from .series import TruncSeries, _as_poly

SERIES1 = "series1"
LEADING = "leading"


class WittSeq:
    __slots__ = ("table", "entries", "role")

    def __init__(self, entries, role: str = SERIES1, table: GeneratorTable | None = None):
        if role not in (SERIES1, LEADING):
            raise ValueError(f"unknown sequence role {role!r}")
        if table is None:
            table = next((e.table for e in entries if isinstance(e, Polynomial) and len(e.table)), QQ)
        entries = [_as_poly(table, e) for e in entries]
        if not entries or entries[0] != 1:
            raise ValueError("sequences must start with c_0 = 1")
        self.table = table
        self.entries = entries
        self.role = role

    @classmethod
    def unit(cls, N: int, role: str = SERIES1, table: GeneratorTable = QQ) -> "WittSeq":
        return cls([1] + [0] * (N - 1), role, table)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, n):
        return self.entries[n]

    def __eq__(self, other):
        if not isinstance(other, WittSeq):
            return NotImplemented
        return self.role == other.role and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        body = ", ".join(str(e) for e in self.entries)
        return f"WittSeq[{self.role}]({body})"

    def series(self) -> TruncSeries:
        """``b(T)`` for ``series1``; ``c(X) X`` for ``leading``."""
        if self.role == SERIES1:
            return TruncSeries(self.table, self.entries)
        return TruncSeries(self.table, self.entries).shift_up(1)

    @classmethod
    def from_series(cls, f: TruncSeries, role: str = SERIES1) -> "WittSeq":
        if role == SERIES1:
            return cls(f.coeffs, role, f.table)
        return cls(f.shift_down(1).coeffs, role, f.table)

    def is_unit(self) -> bool:
        return all(not e for e in self.entries[1:])

    def with_role(self, role: str) -> "WittSeq":
        return WittSeq(self.entries, role, self.table)

    def to_json(self):
        return {"role": self.role, "entries": [e.to_json() for e in self.entries]}

    @classmethod
    def from_json(cls, table: GeneratorTable, data) -> "WittSeq":
        return cls([Polynomial.from_json(table, e) for e in data["entries"]], data["role"], table)


def _require(c: WittSeq, role: str, op: str):
    if c.role != role:
        raise ValueError(f"{op} expects a {role!r} sequence, got {c.role!r}")


def _same_length(c: WittSeq, d: WittSeq):
    if len(c) != len(d):
        raise ValueError(f"length mismatch: {len(c)} vs {len(d)}")


def star(c: WittSeq, d: WittSeq) -> WittSeq:
    """Cauchy product ``(c*d)_n = sum_k c_k d_(n-k)``."""
    _require(c, SERIES1, "star")
    _require(d, SERIES1, "star")
    _same_length(c, d)
    return WittSeq.from_series(c.series() * d.series())


def star_inv(c: WittSeq) -> WittSeq:
    """The antipode: ``b(T)^(-1)``."""
    _require(c, SERIES1, "star_inv")
    return WittSeq.from_series(c.series().inverse())


def half(c: WittSeq) -> WittSeq:
    """``b(T)^(1/2)``; ``star(half(c), half(c)) = c``."""
    _require(c, SERIES1, "half")
    return WittSeq.from_series(c.series().sqrt())


def tau(c: WittSeq) -> WittSeq:
    """``b(T) -> b(-T)``."""
    _require(c, SERIES1, "tau")
    return WittSeq.from_series(c.series().negate_arg())


def split(c: WittSeq) -> tuple[WittSeq, WittSeq]:
    """``b+ = (b(T) b(-T))^(1/2)`` and ``b- = (b(T) / b(-T))^(1/2)``."""
    _require(c, SERIES1, "split")
    b = c.series()
    bm = b.negate_arg()
    plus = (b * bm).sqrt()
    minus = (b * bm.inverse()).sqrt()
    return WittSeq.from_series(plus), WittSeq.from_series(minus)


def revert_seq(c: WittSeq) -> WittSeq:
    """Reversion ``c~_n = [c(T)^(-n-1)]_(T^n) / (n+1)``; swaps the roles."""
    f = TruncSeries(c.table, c.entries).shift_up(1)
    r = f.revert(method="lagrange")
    return WittSeq.from_series(r, LEADING).with_role(LEADING if c.role == SERIES1 else SERIES1)


def diamond(c: WittSeq, d: WittSeq) -> WittSeq:
    """``c <> d = rev(rev(c) * rev(d))`` on ``leading`` sequences."""
    _require(c, LEADING, "diamond")
    _require(d, LEADING, "diamond")
    _same_length(c, d)
    return revert_seq(star(revert_seq(c), revert_seq(d)))


def diamond_inv(c: WittSeq) -> WittSeq:
    _require(c, LEADING, "diamond_inv")
    return revert_seq(star_inv(revert_seq(c)))


@dataclass
class WittSeqF:
    """Coefficients ``c^F`` of ``sum^F c^F_n X^(n+1)``."""

    entries: list
    law: FormalGroupLaw

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, WittSeqF):
            return NotImplemented
        return self.law is other.law and self.entries == other.entries

    def __repr__(self):
        return "WittSeqF(" + ", ".join(str(e) for e in self.entries) + ")"

    def is_unit(self) -> bool:
        return all(not e for e in self.entries[1:])


def _fit_length(F: FormalGroupLaw, n: int):
    if n + 1 > F.N:
        raise ValueError(f"sequence of length {n} needs a law known to truncation {n + 1}")


def f_twist(F: FormalGroupLaw, c: WittSeq) -> WittSeqF:
    """``W~ -> W^F``."""
    _require(c, LEADING, "f_twist")
    _fit_length(F, len(c))
    return WittSeqF(f_expand(F, c.entries), F)


def untwist(cf: WittSeqF) -> WittSeq:
    """``W^F -> W~``."""
    return WittSeq(f_collapse(cf.law, cf.entries), LEADING)


def diamond_F(cf: WittSeqF, df: WittSeqF) -> WittSeqF:
    """The group law of ``W^F``, carried over from ``<>``."""
    if cf.law is not df.law and cf.law != df.law:
        raise ValueError("sequences are twisted by different formal group laws")
    if len(cf) != len(df):
        raise ValueError("length mismatch")
    return f_twist(cf.law, diamond(untwist(cf), untwist(df)))


def diamond_F_inv(cf: WittSeqF) -> WittSeqF:
    return f_twist(cf.law, diamond_inv(untwist(cf)))


def unit_F(F: FormalGroupLaw, N: int) -> WittSeqF:
    return f_twist(F, WittSeq.unit(N, LEADING, F.table))


def split_F(cf: WittSeqF) -> tuple[WittSeqF, WittSeqF]:
    """``W^F = W^(F+) x W^(F-)`` via ``W^F ~ W~ ~ W``; needs ``F`` odd."""
    F = cf.law
    if not is_odd(F):
        raise ValueError("split_F needs an odd formal group law")
    b = revert_seq(untwist(cf))
    plus, minus = split(b)
    return f_twist(F, revert_seq(plus)), f_twist(F, revert_seq(minus))
