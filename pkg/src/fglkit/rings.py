"""Exact rationals and sparse weighted polynomial rings over Q.

Polynomials store monomials as packed integers: the exponent of generator
``i`` occupies bits ``[16*i, 16*i + 16)`` so that multiplying monomials is a
single integer addition.  Coefficients are ``gmpy2.mpq``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from gmpy2 import mpq, mpz

__all__ = [
    "GeneratorTable",
    "Polynomial",
    "RingHom",
    "QQ",
    "rational",
    "format_rational",
    "parse_rational",
    "universal_table",
    "linear_part",
    "apply_hom",
]

_SHIFT = 16
_MASK = (1 << _SHIFT) - 1
MAX_EXPONENT = _MASK


def rational(x) -> mpq:
    """Coerce ``x`` (int, Fraction, mpq or "p/q" string) to an exact rational."""
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return mpq(x)


def format_rational(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(s: str) -> mpq:
    m = _RATIONAL_RE.match(s)
    if not m:
        raise ValueError(f"not a rational: {s!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator: {s!r}")
    return mpq(int(m.group(1)), den)


class GeneratorTable:
    """Ordered polynomial generators, each carrying a positive weight."""

    __slots__ = ("names", "weights", "_index")

    def __init__(self, gens: Iterable = ()):
        names, weights = [], []
        for g in gens:
            if isinstance(g, str):
                name, weight = g, 1
            elif isinstance(g, Mapping):
                name, weight = g["name"], g["weight"]
            else:
                name, weight = g
            names.append(str(name))
            weights.append(int(weight))
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        if any(w < 1 for w in weights):
            raise ValueError("generator weights must be >= 1")
        self.names = tuple(names)
        self.weights = tuple(weights)
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GeneratorTable):
            return NotImplemented
        return self.names == other.names and self.weights == other.weights

    def __hash__(self):
        return hash((self.names, self.weights))

    def __repr__(self):
        inner = ", ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))
        return f"GeneratorTable({inner})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def gen(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        if not 0 <= i < len(self.names):
            raise IndexError(i)
        return Polynomial(self, {1 << (_SHIFT * i): mpq(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(len(self))]

    def const(self, c) -> "Polynomial":
        return Polynomial.constant(self, c)

    def zero(self) -> "Polynomial":
        return Polynomial(self)

    def one(self) -> "Polynomial":
        return Polynomial.constant(self, 1)

    def extend(self, gens: Iterable) -> "GeneratorTable":
        """A new table with extra generators appended (existing packing is kept)."""
        return GeneratorTable(list(zip(self.names, self.weights)) + list(
            GeneratorTable(gens).to_list_pairs()))

    def to_list_pairs(self):
        return list(zip(self.names, self.weights))

    def to_json(self):
        return [{"name": n, "weight": w} for n, w in zip(self.names, self.weights)]

    @classmethod
    def from_json(cls, data):
        return cls(data)


QQ = GeneratorTable()


def universal_table(n: int, prefix: str = "m") -> GeneratorTable:
    """Generators m1..mn with weight(m_k) = k."""
    return GeneratorTable((f"{prefix}{k}", k) for k in range(1, n + 1))


def _unpack(key: int, n: int) -> tuple[int, ...]:
    return tuple((key >> (_SHIFT * i)) & _MASK for i in range(n))


def _pack(exps: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MAX_EXPONENT:
            raise OverflowError(f"exponent {e} out of range")
        key |= e << (_SHIFT * i)
    return key


def _mul_into(acc: dict, a: dict, b: dict) -> None:
    get = acc.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            acc[k] = get(k, 0) + ca * cb


def _clean(acc: dict) -> dict:
    return {k: v for k, v in acc.items() if v}


class Polynomial:
    """Sparse polynomial over Q in the generators of a :class:`GeneratorTable`.

    Values are immutable; the arithmetic operators return new objects.
    Plain ints, Fractions and mpq are accepted wherever a polynomial is.
    """

    __slots__ = ("table", "terms")

    def __init__(self, table: GeneratorTable, terms: dict | None = None):
        self.table = table
        self.terms = terms if terms is not None else {}

    # construction

    @classmethod
    def constant(cls, table: GeneratorTable, c) -> "Polynomial":
        c = rational(c)
        return cls(table, {0: c} if c else {})

    @classmethod
    def from_terms(cls, table: GeneratorTable, items) -> "Polynomial":
        """Build from ``[(coeff, {name: exponent}), ...]``."""
        acc: dict = {}
        for coeff, mono in items:
            exps = [0] * len(table)
            for name, e in mono.items():
                exps[table.index(name)] += int(e)
            k = _pack(exps)
            acc[k] = acc.get(k, 0) + rational(coeff)
        return cls(table, _clean(acc))

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.table is not self.table and other.table != self.table:
                if not other.terms or (len(other.terms) == 1 and 0 in other.terms):
                    return Polynomial(self.table, dict(other.terms))
                if not self.terms or (len(self.terms) == 1 and 0 in self.terms):
                    return other
                raise ValueError(
                    f"mismatched generator tables: {self.table!r} vs {other.table!r}")
            return other
        return Polynomial.constant(self.table, other)

    def _result_table(self, other: "Polynomial") -> GeneratorTable:
        if other.table is self.table or not self.is_constant():
            return self.table
        return other.table

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        get = acc.get
        for k, v in other.terms.items():
            acc[k] = get(k, 0) + v
        return Polynomial(self._result_table(other), _clean(acc))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.table, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = rational(other)
            if not c:
                return Polynomial(self.table)
            return Polynomial(self.table, {k: v * c for k, v in self.terms.items()})
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return Polynomial(self.table)
        table = self._result_table(other)
        if len(other.terms) == 1 and 0 in other.terms:
            c = other.terms[0]
            return Polynomial(table, {k: v * c for k, v in self.terms.items()})
        if len(self.terms) == 1 and 0 in self.terms:
            c = self.terms[0]
            return Polynomial(table, {k: v * c for k, v in other.terms.items()})
        acc: dict = {}
        _mul_into(acc, self.terms, other.terms)
        return Polynomial(table, _clean(acc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = rational(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = Polynomial.constant(self.table, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # comparison

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        try:
            c = rational(other)
        except (TypeError, ValueError):
            return NotImplemented
        if not c:
            return not self.terms
        return self.terms == {0: c}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_term(self) -> mpq:
        return self.terms.get(0, mpq(0))

    def monomials(self):
        """Yield ``(exponent_tuple, coeff)`` in canonical (ascending lex) order."""
        n = len(self.table)
        items = [(_unpack(k, n), v) for k, v in self.terms.items()]
        items.sort(key=lambda t: t[0])
        return items

    def weights(self) -> set[int]:
        w = self.table.weights
        return {sum(e * wi for e, wi in zip(exps, w)) for exps, _ in self.monomials()}

    def is_homogeneous(self, weight: int | None = None) -> bool:
        ws = self.weights()
        if not ws:
            return True
        if len(ws) != 1:
            return False
        return weight is None or ws == {weight}

    def denominators(self) -> set[int]:
        return {int(v.denominator) for v in self.terms.values()}

    def variables(self) -> set[str]:
        used = 0
        for k in self.terms:
            used |= k
        n = len(self.table)
        return {self.table.names[i] for i, e in enumerate(_unpack(used, n)) if e}

    def coefficient(self, mono: Mapping[str, int]) -> mpq:
        exps = [0] * len(self.table)
        for name, e in mono.items():
            exps[self.table.index(name)] = e
        return self.terms.get(_pack(exps), mpq(0))

    def coefficient_of_gen(self, name: str) -> "Polynomial":
        """Split off the part linear in ``name``: returns ``p1`` with
        ``self = p0 + name*p1 + (terms with name^2 or higher)``."""
        i = self.table.index(name)
        shift = _SHIFT * i
        step = 1 << shift
        out = {}
        for k, v in self.terms.items():
            if (k >> shift) & _MASK == 1:
                out[k - step] = v
        return Polynomial(self.table, out)

    def without_gen(self, name: str) -> "Polynomial":
        i = self.table.index(name)
        shift = _SHIFT * i
        return Polynomial(self.table, {k: v for k, v in self.terms.items()
                                       if not (k >> shift) & _MASK})

    # rendering / serialisation

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        names = self.table.names
        for exps, c in self.monomials():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exps) if e)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            parts.append((neg, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def to_json(self):
        names = self.table.names
        return [[format_rational(c), {names[i]: e for i, e in enumerate(exps) if e}]
                for exps, c in self.monomials()]

    @classmethod
    def from_json(cls, table: GeneratorTable, data) -> "Polynomial":
        return cls.from_terms(table, [(c, m) for c, m in data])


def linear_part(p: Polynomial) -> Polynomial:
    """Reduce modulo decomposables: keep the constant and the terms that are a
    single generator to the first power."""
    keep = {}
    for k, v in p.terms.items():
        if k == 0 or (k & (k - 1) == 0 and (k.bit_length() - 1) % _SHIFT == 0):
            keep[k] = v
    return Polynomial(p.table, keep)


class RingHom:
    """A ring homomorphism given by images of generators; constants are fixed."""

    def __init__(self, source: GeneratorTable, images: Mapping[str, Polynomial],
                 target: GeneratorTable | None = None, check_weights: bool = True):
        self.source = source
        missing = [n for n in source.names if n not in images]
        if missing:
            raise ValueError(f"no image given for generators {missing}")
        imgs = {}
        for name in source.names:
            img = images[name]
            if not isinstance(img, Polynomial):
                img = Polynomial.constant(target or source, img)
            imgs[name] = img
        if target is None:
            target = next(iter(imgs.values())).table if imgs else source
        self.target = target
        self.images = imgs
        if check_weights:
            for name, w in zip(source.names, source.weights):
                img = imgs[name]
                if img and not img.is_homogeneous(w):
                    raise ValueError(f"image of {name} is not homogeneous of weight {w}: {img}")

    @classmethod
    def identity(cls, table: GeneratorTable) -> "RingHom":
        return cls(table, {n: table.gen(n) for n in table.names})

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_hom(self, p)

    def compose(self, inner: "RingHom") -> "RingHom":
        """``self ∘ inner``: apply ``inner`` first, then ``self``."""
        return RingHom(inner.source, {n: self(img) for n, img in inner.images.items()},
                       self.target, check_weights=False)

    def __eq__(self, other):
        if not isinstance(other, RingHom):
            return NotImplemented
        return self.source == other.source and all(
            self.images[n] == other.images[n] for n in self.source.names)

    def __repr__(self):
        inner = ", ".join(f"{n}->{self.images[n]}" for n in self.source.names)
        return f"RingHom({inner})"

    def to_json(self):
        return {n: self.images[n].to_json() for n in self.source.names}


def apply_hom(h: RingHom, p: Polynomial) -> Polynomial:
    """Substitute the generator images of ``h`` into ``p`` and expand."""
    if p.table != h.source:
        extra = p.variables() - set(h.source.names)
        if extra:
            raise ValueError(f"generators {sorted(extra)} are outside the homomorphism's domain")
    n = len(p.table)
    names = p.table.names
    target = h.target
    # cache powers of images per generator
    powers: dict[tuple[int, int], Polynomial] = {}

    def img_pow(i: int, e: int) -> Polynomial:
        key = (i, e)
        if key not in powers:
            powers[key] = h.images[names[i]] if e == 1 else img_pow(i, e - 1) * h.images[names[i]]
        return powers[key]

    acc: dict = {}
    for k, c in p.terms.items():
        term = {0: c}
        for i, e in enumerate(_unpack(k, n)):
            if e:
                t = img_pow(i, e).terms
                if not t:
                    term = {}
                    break
                nxt: dict = {}
                _mul_into(nxt, term, t)
                term = nxt
        for kk, v in term.items():
            acc[kk] = acc.get(kk, 0) + v
    return Polynomial(target, _clean(acc))


def is_dyadic(q) -> bool:
    """True when the reduced denominator of ``q`` is a power of two.

    For a polynomial every coefficient must qualify.
    """
    if isinstance(q, Polynomial):
        return all(is_dyadic(c) for c in q.terms.values())
    d = mpz(mpq(q).denominator)
    return d & (d - 1) == 0
