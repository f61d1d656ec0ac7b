"""Truncated power series, finite-tailed Laurent series and bivariate series.

All series carry an explicit truncation order ``N``: a :class:`TruncSeries`
of order ``N`` is known modulo ``X^N``.  Binary operations return the smaller
of the two truncations.  Multiplication is schoolbook convolution,
``O(N^2)`` coefficient products.
"""

from __future__ import annotations

from gmpy2 import mpq

from .rings import GeneratorTable, Polynomial, QQ, _clean, _mul_into, rational, format_rational

__all__ = [
    "TruncSeries",
    "LaurentSeries",
    "BiSeries",
    "bi_substitute",
    "lagrange_coeffs",
    "laurent_residue",
]


def _as_poly(table: GeneratorTable, c) -> Polynomial:
    if isinstance(c, Polynomial):
        if c.table is table or c.table == table:
            return c
        if c.is_constant():
            return Polynomial(table, dict(c.terms))
        if not len(table):
            return c
        raise ValueError(f"mismatched generator tables: {table!r} vs {c.table!r}")
    return Polynomial.constant(table, c)


def _common_table(a: GeneratorTable, b: GeneratorTable) -> GeneratorTable:
    if a is b or a == b:
        return a
    if not len(a):
        return b
    if not len(b):
        return a
    raise ValueError(f"mismatched generator tables: {a!r} vs {b!r}")


def _convolve(a: list, b: list, n: int) -> list:
    """Dense convolution of coefficient lists (Polynomials), first ``n`` terms."""
    ta = [(i, p.terms) for i, p in enumerate(a[:n]) if p.terms]
    tb = [p.terms for p in b[:n]]
    lb = len(tb)
    out = []
    for k in range(n):
        acc: dict = {}
        for i, da in ta:
            if i > k:
                break
            j = k - i
            if j < lb:
                db = tb[j]
                if db:
                    _mul_into(acc, da, db)
        out.append(_clean(acc))
    return out


class TruncSeries:
    """Univariate power series ``sum c_k X^k`` known modulo ``X^N``."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table: GeneratorTable, coeffs):
        coeffs = [_as_poly(table, c) for c in coeffs]
        if not coeffs:
            raise ValueError("a truncated series needs truncation order N >= 1")
        self.table = table
        self.coeffs = coeffs

    @classmethod
    def _raw(cls, table, term_dicts) -> "TruncSeries":
        s = object.__new__(cls)
        s.table = table
        s.coeffs = [Polynomial(table, t) for t in term_dicts]
        return s

    # constructors

    @classmethod
    def zero(cls, N: int, table: GeneratorTable = QQ) -> "TruncSeries":
        return cls(table, [0] * N)

    @classmethod
    def one(cls, N: int, table: GeneratorTable = QQ) -> "TruncSeries":
        return cls.monomial(1, 0, N, table)

    @classmethod
    def X(cls, N: int, table: GeneratorTable = QQ) -> "TruncSeries":
        return cls.monomial(1, 1, N, table)

    @classmethod
    def monomial(cls, c, k: int, N: int, table: GeneratorTable = QQ) -> "TruncSeries":
        coeffs = [0] * N
        if k < N:
            coeffs[k] = c
        return cls(table, coeffs)

    # basic access

    @property
    def N(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Polynomial:
        if k < 0:
            return Polynomial(self.table)
        if k >= len(self.coeffs):
            raise IndexError(f"coefficient X^{k} is beyond the truncation X^{self.N}")
        return self.coeffs[k]

    def truncate(self, N: int) -> "TruncSeries":
        if N > self.N:
            raise ValueError("cannot raise the truncation order of a series")
        return TruncSeries(self.table, self.coeffs[:N])

    def valuation(self) -> int:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return self.N

    def map_coeffs(self, fn) -> "TruncSeries":
        out = [fn(c) for c in self.coeffs]
        table = next((c.table for c in out if isinstance(c, Polynomial) and c), self.table)
        return TruncSeries(table, out)

    # arithmetic

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries(self.table, [other] + [0] * (self.N - 1))

    def __add__(self, other):
        other = self._coerce(other)
        table = _common_table(self.table, other.table)
        n = min(self.N, other.N)
        return TruncSeries(table, [self.coeffs[k] + other.coeffs[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.table, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries(self.table, [c * other for c in self.coeffs])
        table = _common_table(self.table, other.table)
        n = min(self.N, other.N)
        return TruncSeries._raw(table, _convolve(self.coeffs, other.coeffs, n))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.inverse()
        return self * (1 / rational(other))

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("use power() for non-integer exponents")
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncSeries.one(self.N, self.table)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            n = min(self.N, other.N)
            return all(self.coeffs[k] == other.coeffs[k] for k in range(n))
        if isinstance(other, (int, mpq, Polynomial)):
            return self == self._coerce(other)
        return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    # structural operations

    def shift_up(self, k: int) -> "TruncSeries":
        """Multiply by ``X^k``; truncation grows by ``k``."""
        return TruncSeries(self.table, [0] * k + self.coeffs)

    def shift_down(self, k: int) -> "TruncSeries":
        """Divide by ``X^k`` (the first ``k`` coefficients must vanish)."""
        if any(self.coeffs[:k]):
            raise ValueError(f"series is not divisible by X^{k}")
        if k >= self.N:
            raise ValueError("nothing left after dividing by X^k")
        return TruncSeries(self.table, self.coeffs[k:])

    def negate_arg(self) -> "TruncSeries":
        """``f(-X)``."""
        return TruncSeries(self.table, [c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def odd_part(self) -> "TruncSeries":
        return TruncSeries(self.table, [c if k % 2 else 0 for k, c in enumerate(self.coeffs)])

    def even_part(self) -> "TruncSeries":
        return TruncSeries(self.table, [0 if k % 2 else c for k, c in enumerate(self.coeffs)])

    def is_odd(self) -> bool:
        return all(not c for c in self.coeffs[0::2])

    def is_even(self) -> bool:
        return all(not c for c in self.coeffs[1::2])

    def derivative(self) -> "TruncSeries":
        if self.N == 1:
            return TruncSeries(self.table, [0])
        return TruncSeries(self.table, [c * k for k, c in enumerate(self.coeffs) if k])

    def is_strictly_invertible(self) -> bool:
        return self.N >= 2 and not self.coeffs[0] and self.coeffs[1] == 1

    def _require_strict(self, what: str):
        if self.N < 2 or self.coeffs[0]:
            raise ValueError(f"{what}: series must have zero constant term")
        if self.coeffs[1] != 1:
            raise ValueError(f"{what}: linear coefficient must be exactly 1, got {self.coeffs[1]}")

    # composition and inverses

    def compose(self, g: "TruncSeries") -> "TruncSeries":
        """``self(g(X))``; ``g`` must have zero constant term."""
        if not isinstance(g, TruncSeries):
            raise TypeError("compose expects a TruncSeries")
        if g.coeffs[0]:
            raise ValueError("cannot compose with a series that has a nonzero constant term")
        n = min(self.N, g.N)
        table = _common_table(self.table, g.table)
        g = TruncSeries(table, g.coeffs[:n])
        result = TruncSeries(table, [self.coeffs[n - 1]] + [0] * (n - 1))
        for k in range(n - 2, -1, -1):
            result = result * g
            result.coeffs[0] = result.coeffs[0] + self.coeffs[k]
        return result

    __call__ = compose

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; the constant term must be a nonzero rational."""
        c0 = self.coeffs[0]
        if not c0 or not c0.is_constant():
            raise ZeroDivisionError("constant term is not a unit")
        inv0 = 1 / c0.constant_term()
        a = [c.terms for c in self.coeffs]
        out = [{0: inv0}]
        for n in range(1, self.N):
            acc: dict = {}
            for k in range(1, n + 1):
                if a[k] and out[n - k]:
                    _mul_into(acc, a[k], out[n - k])
            out.append({m: -v * inv0 for m, v in acc.items() if v})
        return TruncSeries._raw(self.table, out)

    def revert(self, method: str = "lagrange") -> "TruncSeries":
        """Compositional inverse of a strictly invertible series.

        ``method="lagrange"`` uses ``r_n = [c(T)^(-n-1)]_{T^n} / (n+1)`` where
        ``self = X c(X)``; ``method="iterate"`` fixes one coefficient per round
        from the defect of ``self(g) - X``.
        """
        self._require_strict("revert")
        if method == "lagrange":
            return _revert_lagrange(self)
        if method == "iterate":
            return _revert_iterate(self)
        raise ValueError(f"unknown reversion method {method!r}")

    def power(self, alpha) -> "TruncSeries":
        """``self**alpha`` for rational ``alpha`` by the binomial series; the
        constant term must be 1."""
        alpha = rational(alpha)
        if self.coeffs[0] != 1:
            raise ValueError("binomial expansion needs constant term 1")
        if alpha.denominator == 1 and alpha >= 0:
            return self ** int(alpha)
        h = self - 1
        result = TruncSeries.one(self.N, self.table)
        term = TruncSeries.one(self.N, self.table)
        binom = mpq(1)
        for k in range(1, self.N):
            binom = binom * (alpha - k + 1) / k
            term = term * h
            if term.is_zero():
                break
            result = result + term * binom
        return result

    def sqrt(self) -> "TruncSeries":
        """The unique square root that is ``1 mod X``."""
        if self.coeffs[0] != 1:
            raise ValueError("square root needs constant term 1")
        return self.power(mpq(1, 2))

    # rendering / serialisation

    def __repr__(self):
        return f"TruncSeries({self})"

    def __str__(self):
        return render_series(self.coeffs, "X", self.N)

    def to_json(self):
        return {"truncation": self.N, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, table: GeneratorTable, data) -> "TruncSeries":
        n = int(data["truncation"])
        coeffs = [Polynomial.from_json(table, c) for c in data["coeffs"]]
        if len(coeffs) != n:
            raise ValueError(f"expected {n} coefficients, got {len(coeffs)}")
        return cls(table, coeffs)


def render_series(coeffs, var: str, N: int, start: int = 0) -> str:
    parts = []
    for k, c in enumerate(coeffs, start):
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        s = str(c)
        if c.is_constant():
            q = c.constant_term()
            neg = q < 0
            a = format_rational(-q if neg else q)
            body = a if not mono else (mono if a == "1" else f"{a}*{mono}")
        elif len(c.terms) == 1:
            neg = s.startswith("-")
            body = s[1:] if neg else s
            body = f"{body}*{mono}" if mono else body
        else:
            neg = False
            body = f"({s})*{mono}" if mono else f"({s})"
        parts.append((neg, body))
    if not parts:
        out = "0"
    else:
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
    return f"{out} + O({var}^{N})"


def _revert_lagrange(f: TruncSeries) -> TruncSeries:
    N = f.N
    c = f.shift_down(1)            # c(X) = f(X)/X, constant term 1, known mod X^(N-1)
    ci = c.inverse()
    p = ci
    out = [0, 1]
    for n in range(1, N - 1):
        p = p * ci                 # c^(-n-1)
        out.append(p.coeffs[n] * mpq(1, n + 1))
    return TruncSeries(f.table, out[:N])


def _revert_iterate(f: TruncSeries) -> TruncSeries:
    N = f.N
    g = TruncSeries.X(N, f.table)
    for n in range(2, N):
        defect = f.compose(g).coeffs[n]
        if defect:
            coeffs = list(g.coeffs)
            coeffs[n] = coeffs[n] - defect
            g = TruncSeries(f.table, coeffs)
    return g


class LaurentSeries:
    """Finite-tailed Laurent series ``sum_{n0 <= n < N} a_n Z^n`` known mod ``Z^N``."""

    __slots__ = ("table", "n0", "coeffs")

    def __init__(self, table: GeneratorTable, n0: int, coeffs):
        coeffs = [_as_poly(table, c) for c in coeffs]
        if not coeffs:
            raise ValueError("Laurent series needs N > n0")
        self.table = table
        self.n0 = n0
        self.coeffs = coeffs

    @property
    def N(self) -> int:
        return self.n0 + len(self.coeffs)

    @classmethod
    def from_trunc(cls, f: TruncSeries, shift: int = 0) -> "LaurentSeries":
        """``Z^shift * f(Z)``."""
        return cls(f.table, shift, f.coeffs)

    @classmethod
    def monomial(cls, c, k: int, N: int, table: GeneratorTable = QQ) -> "LaurentSeries":
        if N <= k:
            raise ValueError("truncation must exceed the exponent")
        return cls(table, k, [c] + [0] * (N - k - 1))

    def coeff(self, n: int) -> Polynomial:
        if n >= self.N:
            raise IndexError(f"coefficient Z^{n} is beyond the truncation Z^{self.N}")
        if n < self.n0:
            return Polynomial(self.table)
        return self.coeffs[n - self.n0]

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries(self.table, 0, [other] + [0] * max(self.N - 1, 0))
        table = _common_table(self.table, other.table)
        n0 = min(self.n0, other.n0)
        N = min(self.N, other.N)
        if N <= n0:
            raise ValueError("sum has no known coefficients")
        return LaurentSeries(table, n0, [self.coeff(n) + other.coeff(n) for n in range(n0, N)])

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.table, self.n0, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            other = LaurentSeries.from_trunc(other)
        if not isinstance(other, LaurentSeries):
            return LaurentSeries(self.table, self.n0, [c * other for c in self.coeffs])
        table = _common_table(self.table, other.table)
        n0 = self.n0 + other.n0
        N = min(self.N + other.n0, other.N + self.n0)
        if N <= n0:
            raise ValueError("product has no known coefficients")
        prod = _convolve(self.coeffs, other.coeffs, N - n0)
        return LaurentSeries(table, n0, [Polynomial(table, t) for t in prod])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        lo = min(self.n0, other.n0)
        hi = min(self.N, other.N)
        return all(self.coeff(n) == other.coeff(n) for n in range(lo, hi))

    __hash__ = None

    def derivative(self) -> "LaurentSeries":
        return LaurentSeries(self.table, self.n0 - 1,
                             [c * n for n, c in enumerate(self.coeffs, self.n0)])

    def residue(self) -> Polynomial:
        return laurent_residue(self)

    def compose(self, h: TruncSeries) -> "LaurentSeries":
        """``f(h(Z))`` for ``h = Z mod Z^2``; negative powers use
        ``h^(-k) = Z^(-k) (h/Z)^(-k)``."""
        _require_normalized(h)
        table = _common_table(self.table, h.table)
        u = h.shift_down(1)              # h/Z, known mod Z^(Nh-1)
        N = min(self.N, self.n0 + u.N)
        if N <= self.n0:
            raise ValueError("normalised series is too short for this composition")
        width = N - self.n0
        u = u.truncate(min(u.N, width))
        acc = [{} for _ in range(width)]
        ui = u.inverse()
        pos = TruncSeries.one(u.N, table)
        neg = TruncSeries.one(u.N, table)
        powers = {0: pos}
        for n in range(1, max(self.N, 1)):
            pos = pos * u
            powers[n] = pos
        for n in range(-1, self.n0 - 1, -1):
            neg = neg * ui
            powers[n] = neg
        for n in range(self.n0, N):
            a = self.coeff(n)
            if not a:
                continue
            p = powers[n]
            # a * Z^n * u^n contributes to exponents n + j
            for j, c in enumerate(p.coeffs):
                idx = n + j - self.n0
                if idx >= width:
                    break
                if c:
                    _mul_into(acc[idx], a.terms, c.terms)
        return LaurentSeries(table, self.n0, [Polynomial(table, _clean(t)) for t in acc])

    def __repr__(self):
        return f"LaurentSeries({self})"

    def __str__(self):
        return render_series(self.coeffs, "Z", self.N, start=self.n0)


def _require_normalized(h: TruncSeries):
    if h.N < 2 or h.coeffs[0] or h.coeffs[1] != 1:
        raise ValueError("series must satisfy h(Z) = Z mod (Z^2)")


def laurent_residue(f: LaurentSeries) -> Polynomial:
    """Coefficient of ``Z^-1``."""
    if f.N <= -1:
        raise ValueError("truncation window excludes the exponent -1")
    return f.coeff(-1)


def laurent_power(h: TruncSeries, k: int) -> LaurentSeries:
    """``h(Z)^k`` for normalised ``h`` and any integer ``k``."""
    _require_normalized(h)
    u = h.shift_down(1)
    p = u ** k if k >= 0 else u.inverse() ** (-k)
    return LaurentSeries(h.table, k, p.coeffs)


def lagrange_coeffs(f: LaurentSeries, h: TruncSeries, lo: int, hi: int) -> list[Polynomial]:
    """Coefficients ``c_n`` (``lo <= n < hi``) of ``f = sum c_n h^n``, from
    ``c_n = res f h' / h^(n+1)``."""
    _require_normalized(h)
    dh = LaurentSeries.from_trunc(h.derivative())
    out = []
    for n in range(lo, hi):
        out.append(laurent_residue(f * dh * laurent_power(h, -(n + 1))))
    return out


class BiSeries:
    """Bivariate series ``sum a_ij X^i Y^j`` known modulo total degree ``N``."""

    __slots__ = ("table", "N", "coeffs")

    def __init__(self, table: GeneratorTable, N: int, coeffs: dict | None = None):
        if N < 1:
            raise ValueError("bivariate truncation must be >= 1")
        self.table = table
        self.N = N
        out = {}
        for (i, j), c in (coeffs or {}).items():
            if i + j < N:
                p = _as_poly(table, c)
                if p:
                    out[(i, j)] = p
        self.coeffs = out

    @classmethod
    def _raw(cls, table, N, term_dicts: dict) -> "BiSeries":
        s = object.__new__(cls)
        s.table = table
        s.N = N
        s.coeffs = {k: Polynomial(table, t) for k, t in term_dicts.items() if t}
        return s

    @classmethod
    def X(cls, N: int, table: GeneratorTable = QQ) -> "BiSeries":
        return cls(table, N, {(1, 0): 1})

    @classmethod
    def Y(cls, N: int, table: GeneratorTable = QQ) -> "BiSeries":
        return cls(table, N, {(0, 1): 1})

    @classmethod
    def from_x(cls, f: TruncSeries, N: int | None = None) -> "BiSeries":
        """``f(X)`` as a bivariate series."""
        N = f.N if N is None else min(N, f.N)
        return cls(f.table, N, {(i, 0): c for i, c in enumerate(f.coeffs[:N])})

    @classmethod
    def from_y(cls, f: TruncSeries, N: int | None = None) -> "BiSeries":
        N = f.N if N is None else min(N, f.N)
        return cls(f.table, N, {(0, j): c for j, c in enumerate(f.coeffs[:N])})

    @classmethod
    def outer(cls, f: TruncSeries, g: TruncSeries, N: int) -> "BiSeries":
        """``f(X) g(Y)``."""
        table = _common_table(f.table, g.table)
        acc = {}
        for i, a in enumerate(f.coeffs[:N]):
            if not a:
                continue
            for j, b in enumerate(g.coeffs[:N - i]):
                if b:
                    acc[(i, j)] = a * b
        return cls(table, N, acc)

    def coeff(self, i: int, j: int) -> Polynomial:
        if i + j >= self.N:
            raise IndexError(f"X^{i}Y^{j} is beyond the total-degree truncation {self.N}")
        return self.coeffs.get((i, j), Polynomial(self.table))

    def truncate(self, N: int) -> "BiSeries":
        if N > self.N:
            raise ValueError("cannot raise truncation")
        return BiSeries(self.table, N, self.coeffs)

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            other = BiSeries(self.table, self.N, {(0, 0): other})
        table = _common_table(self.table, other.table)
        N = min(self.N, other.N)
        acc = dict(self.coeffs)
        for k, v in other.coeffs.items():
            acc[k] = acc[k] + v if k in acc else v
        return BiSeries(table, N, acc)

    __radd__ = __add__

    def __neg__(self):
        return BiSeries(self.table, self.N, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            return BiSeries(self.table, self.N, {k: v * other for k, v in self.coeffs.items()})
        table = _common_table(self.table, other.table)
        N = min(self.N, other.N)
        acc: dict = {}
        b_items = [(i, j, v.terms) for (i, j), v in other.coeffs.items()]
        for (i1, j1), a in self.coeffs.items():
            d1 = i1 + j1
            ta = a.terms
            for i2, j2, tb in b_items:
                if d1 + i2 + j2 < N:
                    key = (i1 + i2, j1 + j2)
                    slot = acc.get(key)
                    if slot is None:
                        slot = acc[key] = {}
                    _mul_into(slot, ta, tb)
        return BiSeries._raw(table, N, {k: _clean(v) for k, v in acc.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = BiSeries(self.table, self.N, {(0, 0): 1})
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        N = min(self.N, other.N)
        keys = {k for k in self.coeffs if sum(k) < N} | {k for k in other.coeffs if sum(k) < N}
        z = Polynomial(self.table)
        return all(self.coeffs.get(k, z) == other.coeffs.get(k, z) for k in keys)

    __hash__ = None

    def swap(self) -> "BiSeries":
        """``F(Y, X)``."""
        return BiSeries(self.table, self.N, {(j, i): v for (i, j), v in self.coeffs.items()})

    def homogeneous_part(self, d: int) -> dict:
        return {k: v for k, v in self.coeffs.items() if sum(k) == d}

    def is_zero(self) -> bool:
        return not self.coeffs

    def substitute(self, f: TruncSeries, g: TruncSeries) -> TruncSeries:
        return bi_substitute(self, f, g)

    def compose_outer(self, g: TruncSeries) -> "BiSeries":
        """``g(F(X, Y))`` for ``F`` with zero constant term."""
        if (0, 0) in self.coeffs:
            raise ValueError("inner bivariate series must have zero constant term")
        N = min(self.N, g.N)
        F = self.truncate(N)
        result = BiSeries(self.table, N, {(0, 0): g.coeffs[N - 1]})
        for k in range(N - 2, -1, -1):
            result = result * F + g.coeffs[k]
        return result

    def __repr__(self):
        items = sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), -kv[0][0]))
        body = " + ".join(f"({v})*X^{i}*Y^{j}" for (i, j), v in items) or "0"
        return f"BiSeries({body} + O(deg {self.N}))"

    def to_json(self):
        items = sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), -kv[0][0]))
        return {"truncation": self.N,
                "coeffs": [[i, j, v.to_json()] for (i, j), v in items]}


def bi_substitute(F: BiSeries, f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """``F(f(X), g(X))`` for ``f``, ``g`` with zero constant term."""
    if f.coeffs[0] or g.coeffs[0]:
        raise ValueError("substituted series must have zero constant terms")
    table = _common_table(_common_table(F.table, f.table), g.table)
    N = min(F.N, f.N, g.N)
    f = TruncSeries(table, f.coeffs[:N])
    g = TruncSeries(table, g.coeffs[:N])
    one = TruncSeries.one(N, table)
    gpow = [one]
    for _ in range(1, N):
        gpow.append(gpow[-1] * g)
    rows: dict[int, list] = {}
    for (i, j), a in F.coeffs.items():
        if i + j < N:
            rows.setdefault(i, []).append((j, a))
    result = [{} for _ in range(N)]
    fpow = one
    for i in range(N):
        if i:
            fpow = fpow * f
        if i not in rows:
            continue
        inner = [{} for _ in range(N)]
        for j, a in rows[i]:
            for k, c in enumerate(gpow[j].coeffs):
                if c:
                    _mul_into(inner[k], a.terms, c.terms)
        inner_s = TruncSeries._raw(table, [_clean(t) for t in inner])
        prod = fpow * inner_s if i else inner_s
        for k, c in enumerate(prod.coeffs):
            if c:
                slot = result[k]
                for m, v in c.terms.items():
                    slot[m] = slot.get(m, 0) + v
    return TruncSeries._raw(table, [_clean(t) for t in result])
