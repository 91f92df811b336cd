"""Exact truncated Laurent series in one and two variables.

Every coefficient is an exact rational (Python int or Fraction); nothing in
this module touches floating point.  A series knows its truncation order:
coefficients at exponents above ``trunc`` are *unknown*, never silently zero,
and every operation propagates the honest truncation of its result.

Two nome conventions coexist in the catalog built on top of this module:
``FULL`` means the variable stands for e^(2*pi*i*tau), ``HALF`` for
e^(pi*i*tau).  They are plain data tags here, but mixing them in arithmetic
is a hard error; conversion goes through ``scale_var``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd, isqrt

__all__ = [
    "FULL",
    "HALF",
    "NomeMismatch",
    "QSeries",
    "BiSeries",
    "ExponentTable",
    "exp_series",
    "log_series",
    "product_from_exponents",
    "exponents_from_series",
    "divisors",
    "moebius",
    "sigma",
    "gcd",
    "gbinom",
]

FULL = "full"
HALF = "half"


class NomeMismatch(ValueError):
    """Raised when series with different nome conventions are combined."""


def _num(x):
    """Normalize an exact number: Fractions with denominator 1 become ints."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


def _frac24(x) -> Fraction:
    f = Fraction(x)
    if 24 % f.denominator:
        raise ValueError(f"prefactor exponent {f} has denominator not dividing 24")
    return f


def _fmt_rat(x) -> str:
    x = _num(x)
    return str(x) if isinstance(x, int) else f"{x.numerator}/{x.denominator}"


def _parse_rat(s: str):
    if "/" in s:
        n, d = s.split("/", 1)
        return _num(Fraction(int(n), int(d)))
    return int(s)


class QSeries:
    """Truncated Laurent series  q^prefactor * sum coeffs[e] * q^e.

    ``coeffs`` maps integer exponents (negative allowed) to exact rationals;
    ``trunc`` is the largest exponent whose coefficient is known; ``prefactor``
    is a symbolic fractional power with denominator dividing 24, carried
    outside the integer exponent grid.  Instances are immutable by convention:
    no method mutates self, and callers must not mutate ``coeffs``.
    """

    __slots__ = ("var", "nome", "prefactor", "coeffs", "trunc")

    def __init__(self, coeffs, trunc, *, var="q", nome=FULL, prefactor=0):
        if nome not in (FULL, HALF):
            raise ValueError(f"unknown nome convention {nome!r}")
        self.var = var
        self.nome = nome
        self.prefactor = _frac24(prefactor)
        self.trunc = int(trunc)
        clean = {}
        for e, c in coeffs.items():
            e = int(e)
            if e > self.trunc:
                raise ValueError(f"stored exponent {e} above trunc {self.trunc}")
            c = _num(c)
            if c:
                clean[e] = c
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, trunc, **kw):
        return cls({}, trunc, **kw)

    @classmethod
    def const(cls, c, trunc, **kw):
        return cls({0: c}, trunc, **kw)

    @classmethod
    def one(cls, trunc, **kw):
        return cls({0: 1}, trunc, **kw)

    @classmethod
    def monomial(cls, c, e, trunc, **kw):
        return cls({e: c}, trunc, **kw)

    # -- inspection --------------------------------------------------------

    def coeff(self, e: int):
        """Coefficient at integer exponent e; raises if e is beyond trunc."""
        if e > self.trunc:
            raise ValueError(f"coefficient at {e} unknown (trunc {self.trunc})")
        return self.coeffs.get(e, 0)

    __getitem__ = coeff

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self):
        """Lowest exponent with nonzero coefficient, or None for the zero series."""
        return min(self.coeffs) if self.coeffs else None

    def support(self):
        return sorted(self.coeffs)

    def __repr__(self):
        return (f"QSeries({self.var}, {self.nome}, prefactor={self.prefactor}, "
                f"{len(self.coeffs)} terms, trunc={self.trunc})")

    # -- structural helpers ------------------------------------------------

    def _like(self, coeffs, trunc, prefactor=None):
        return QSeries(coeffs, trunc, var=self.var, nome=self.nome,
                       prefactor=self.prefactor if prefactor is None else prefactor)

    def _check_compat(self, other: "QSeries"):
        if self.nome != other.nome:
            raise NomeMismatch(f"cannot combine {self.nome}-nome with {other.nome}-nome series")
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    def truncate(self, order: int) -> "QSeries":
        if order >= self.trunc:
            return self
        return self._like({e: c for e, c in self.coeffs.items() if e <= order}, order)

    def shift(self, n: int) -> "QSeries":
        """Multiply by the integer power q^n."""
        return self._like({e + n: c for e, c in self.coeffs.items()}, self.trunc + n)

    def canonical(self) -> "QSeries":
        """Fold the integer part of the prefactor into the exponent grid."""
        s = self.prefactor.numerator // self.prefactor.denominator
        if s == 0:
            return self
        return QSeries({e + s: c for e, c in self.coeffs.items()}, self.trunc + s,
                       var=self.var, nome=self.nome, prefactor=self.prefactor - s)

    # -- ring operations ---------------------------------------------------

    def __neg__(self):
        return self._like({e: -c for e, c in self.coeffs.items()}, self.trunc)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.const(other, self.trunc, var=self.var, nome=self.nome,
                                  prefactor=self.prefactor)
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check_compat(other)
        if self.prefactor != other.prefactor:
            raise ValueError(f"prefactor mismatch on add: {self.prefactor} vs {other.prefactor}")
        trunc = min(self.trunc, other.trunc)
        out = {e: c for e, c in self.coeffs.items() if e <= trunc}
        for e, c in other.coeffs.items():
            if e <= trunc:
                out[e] = out.get(e, 0) + c
        return self._like(out, trunc)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self._like({}, self.trunc)
            return self._like({e: c * other for e, c in self.coeffs.items()}, self.trunc)
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check_compat(other)
        va = self.valuation()
        vb = other.valuation()
        if va is None or vb is None:
            return self._like({}, min(self.trunc, other.trunc),
                              prefactor=self.prefactor + other.prefactor)
        # Unknown tails poison the product past these bounds.
        trunc = min(self.trunc + vb, other.trunc + va)
        out = {}
        small, large = self.coeffs, other.coeffs
        if len(small) > len(large):
            small, large = large, small
        for ea, ca in small.items():
            for eb, cb in large.items():
                e = ea + eb
                if e <= trunc:
                    out[e] = out.get(e, 0) + ca * cb
        return self._like(out, trunc, prefactor=self.prefactor + other.prefactor)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        result = QSeries.one(self.trunc, var=self.var, nome=self.nome)
        base = self
        first = True
        while k:
            if k & 1:
                result = base if first else result * base
                first = False
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self) -> "QSeries":
        """Multiplicative inverse; the lowest monomial moves to a negative power."""
        v = self.valuation()
        if v is None:
            raise ValueError("cannot invert the zero series")
        lead = self.coeffs[v]
        n_max = self.trunc - v  # unit part known to this order
        u = {e - v: c for e, c in self.coeffs.items()}
        r = {0: _num(Fraction(1) / lead)}
        for n in range(1, n_max + 1):
            acc = 0
            for e, c in u.items():
                if 0 < e <= n:
                    rk = r.get(n - e)
                    if rk:
                        acc += c * rk
            if acc:
                r[n] = _num(Fraction(-acc) / lead)
        return self._like({e - v: c for e, c in r.items()}, n_max - v,
                          prefactor=-self.prefactor)

    def scale_var(self, k: int, nome: str | None = None) -> "QSeries":
        """Substitute q -> q^k (i.e. tau -> k*tau on the same nome grid).

        Passing nome retags the result; the one legitimate conversion is a
        full-nome series rewritten on the half-nome grid with k = 2.
        """
        if k < 1:
            raise ValueError("scale factor must be a positive integer")
        if nome is not None and nome != self.nome:
            if not (self.nome == FULL and nome == HALF and k == 2):
                raise NomeMismatch("only full->half conversion (k=2) may retag the nome")
        # exponents between k*trunc and k*(trunc+1)-1 are known zeros
        return QSeries({e * k: c for e, c in self.coeffs.items()},
                       k * (self.trunc + 1) - 1, var=self.var,
                       nome=self.nome if nome is None else nome,
                       prefactor=self.prefactor * k)

    # -- comparison --------------------------------------------------------

    def agrees_with(self, other: "QSeries", order: int | None = None) -> bool:
        return self.first_mismatch(other, order) is None

    def first_mismatch(self, other: "QSeries", order: int | None = None):
        """First (exponent, lhs, rhs) disagreement in ascending exponent order.

        Comparison happens on canonical form (integer prefactor part folded
        in) up to the shared truncation, or None when the sides agree.
        """
        self._check_compat(other)
        a, b = self.canonical(), other.canonical()
        if a.prefactor != b.prefactor:
            raise ValueError(f"prefactor mismatch in comparison: {a.prefactor} vs {b.prefactor}")
        hi = min(a.trunc, b.trunc)
        if order is not None:
            hi = min(hi, order)
        for e in sorted(set(a.coeffs) | set(b.coeffs)):
            if e > hi:
                break
            ca, cb = a.coeffs.get(e, 0), b.coeffs.get(e, 0)
            if ca != cb:
                return (e, ca, cb)
        return None

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.agrees_with(other)

    __hash__ = None

    # -- serialization and display ------------------------------------------

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "nome": self.nome,
            "prefactor": _fmt_rat(self.prefactor),
            "trunc": self.trunc,
            "coeffs": {str(e): _fmt_rat(c) for e, c in sorted(self.coeffs.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        return cls({int(e): _parse_rat(c) for e, c in data["coeffs"].items()},
                   int(data["trunc"]), var=data.get("var", "q"),
                   nome=data.get("nome", FULL),
                   prefactor=_parse_rat(data.get("prefactor", "0")))

    def pretty(self) -> str:
        """Paper-style one-line display: ascending exponents, explicit signs."""
        var = self.var
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            neg = c < 0
            mag = -c if neg else c
            if e == 0:
                body = _fmt_rat(mag) if isinstance(mag, int) else f"({_fmt_rat(mag)})"
            else:
                power = var if e == 1 else f"{var}^{e}"
                if mag == 1:
                    body = power
                elif isinstance(mag, int):
                    body = f"{mag}{power}"
                else:
                    body = f"({_fmt_rat(mag)}){power}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        parts.append(f"+ O({var}^{self.trunc + 1})" if parts else f"0 + O({var}^{self.trunc + 1})")
        body = " ".join(parts)
        if self.prefactor:
            return f"{var}^({_fmt_rat(self.prefactor)}) * ({body})"
        return body


# -- exponential and logarithm ---------------------------------------------


def exp_series(a: QSeries) -> QSeries:
    """Formal exponential; requires zero constant term, zero prefactor."""
    if a.prefactor:
        raise ValueError("exp_series requires zero prefactor")
    v = a.valuation()
    if v is not None and v < 1:
        raise ValueError("exp_series requires valuation >= 1 (no constant term)")
    n = a.trunc
    result = QSeries.one(n, var=a.var, nome=a.nome)
    term = QSeries.one(n, var=a.var, nome=a.nome)
    k = 1
    while True:
        term = (term * a).truncate(n)
        if term.is_zero():
            break
        term = term * Fraction(1, k)
        result = result + term
        k += 1
    return result


def log_series(a: QSeries) -> QSeries:
    """Formal logarithm; requires constant term 1, zero prefactor."""
    if a.prefactor:
        raise ValueError("log_series requires zero prefactor")
    if a.coeffs.get(0) != 1 or (a.valuation() is not None and a.valuation() < 0):
        raise ValueError("log_series requires constant term 1")
    n = a.trunc
    x = a - 1
    result = QSeries.zero(n, var=a.var, nome=a.nome)
    term = QSeries.one(n, var=a.var, nome=a.nome)
    k = 1
    while True:
        term = (term * x).truncate(n)
        if term.is_zero():
            break
        result = result + term * Fraction((-1) ** (k + 1), k)
        k += 1
    return result


# -- product <-> exponent conversion ----------------------------------------


class ExponentTable:
    """Data of an infinite product q^(-h) * prod_{n>0} (1 - q^n)^{e_n}."""

    __slots__ = ("h", "exps", "order")

    def __init__(self, h, exps, order):
        self.h = _num(Fraction(h))
        self.order = int(order)
        self.exps = {}
        for n, e in exps.items():
            n = int(n)
            if not 1 <= n <= self.order:
                raise ValueError(f"exponent index {n} outside 1..{self.order}")
            e = _num(e)
            if e:
                self.exps[n] = e

    def __getitem__(self, n: int):
        if not 1 <= n <= self.order:
            raise ValueError(f"exponent e_{n} unknown (order {self.order})")
        return self.exps.get(n, 0)

    def __eq__(self, other):
        if not isinstance(other, ExponentTable):
            return NotImplemented
        order = min(self.order, other.order)
        return self.h == other.h and all(self[n] == other[n] for n in range(1, order + 1))

    __hash__ = None

    def __repr__(self):
        return f"ExponentTable(h={self.h}, order={self.order})"

    def scaled(self, a: int) -> "ExponentTable":
        return ExponentTable(a * Fraction(self.h), {n: a * Fraction(e) for n, e in self.exps.items()},
                             self.order)

    def __add__(self, other: "ExponentTable") -> "ExponentTable":
        order = min(self.order, other.order)
        return ExponentTable(Fraction(self.h) + Fraction(other.h),
                             {n: Fraction(self[n]) + Fraction(other[n]) for n in range(1, order + 1)},
                             order)

    def to_json(self) -> dict:
        return {"h": _fmt_rat(self.h), "order": self.order,
                "exponents": {str(n): _fmt_rat(e) for n, e in sorted(self.exps.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "ExponentTable":
        return cls(_parse_rat(data["h"]),
                   {int(n): _parse_rat(e) for n, e in data["exponents"].items()},
                   int(data["order"]))


def gbinom(e, k: int):
    """Generalized binomial coefficient C(e, k) for integer or rational e."""
    if k < 0:
        raise ValueError("lower index must be nonnegative")
    if isinstance(e, int):
        if e >= 0:
            return comb(e, k)
        # C(e, k) = (-1)^k C(k - e - 1, k), exact for negative integer e
        return (-1) ** k * comb(k - e - 1, k)
    num = Fraction(1)
    for i in range(k):
        num *= Fraction(e) - i
    for i in range(1, k + 1):
        num /= i
    return _num(num)


def product_from_exponents(t: ExponentTable, *, var="q", nome=FULL) -> QSeries:
    """Expand q^(-h) * prod_{n <= order} (1 - q^n)^{e_n} exactly.

    The fractional part of -h becomes the prefactor; missing factors beyond
    the table's order are 1 + O(q^{order+1}), so the expansion is exact to
    the shifted truncation.
    """
    order = t.order
    minus_h = -Fraction(t.h)
    shift = minus_h.numerator // minus_h.denominator
    prefactor = minus_h - shift
    acc = {0: 1}
    for n in range(1, order + 1):
        e = t.exps.get(n, 0)
        if not e:
            continue
        factor = {}
        for k in range(order // n + 1):
            c = gbinom(e, k)
            if c:
                factor[n * k] = c if k % 2 == 0 else -c
        out = {}
        for ea, ca in acc.items():
            for eb, cb in factor.items():
                s = ea + eb
                if s <= order:
                    out[s] = out.get(s, 0) + ca * cb
        acc = {e2: c2 for e2, c2 in out.items() if c2}
    return QSeries({e + shift: c for e, c in acc.items()}, order + shift,
                   var=var, nome=nome, prefactor=prefactor)


def exponents_from_series(a: QSeries, order: int) -> ExponentTable:
    """Recover the exponent table of a = q^(-h) * prod (1-q^n)^{e_n}.

    Uses m * [q^m](-log u) = sum_{d|m} d*e_d and Moebius inversion, where u
    is the unit part of a; requires u to start with constant term 1.
    """
    v = a.valuation()
    if v is None:
        raise ValueError("zero series has no product expansion")
    if a.coeffs[v] != 1:
        raise ValueError("unit part's constant term must be 1")
    if a.trunc - v < order:
        raise ValueError(f"series known to order {a.trunc - v} after normalization, need {order}")
    u = QSeries({e - v: c for e, c in a.coeffs.items() if e - v <= order}, order,
                var=a.var, nome=a.nome)
    minus_log = -log_series(u)
    g = {m: m * Fraction(minus_log.coeffs.get(m, 0)) for m in range(1, order + 1)}
    exps = {}
    for d in range(1, order + 1):
        acc = Fraction(0)
        for m in divisors(d):
            mu = moebius(d // m)
            if mu:
                acc += mu * g[m]
        e = acc / d
        if e:
            exps[d] = _num(e)
    h = -(v + a.prefactor)
    return ExponentTable(h, exps, order)


# -- elementary arithmetic functions ----------------------------------------


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError("divisors defined for n >= 1")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius defined for n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if n > 1:
        result = -result
    return result


def sigma(k: int, n: int) -> int:
    if n < 1:
        raise ValueError("sigma defined for n >= 1")
    return sum(d ** k for d in divisors(n))


# -- two-variable series -----------------------------------------------------


def _win_meet(w1, w2):
    if w1 is None:
        return w2
    if w2 is None:
        return w1
    return (max(w1[0], w2[0]), min(w1[1], w2[1]))


class BiSeries:
    """Series in a capped primary variable and an exact Laurent secondary one.

    ``cap`` bounds knowledge of the first variable's exponent, exactly like
    QSeries.trunc.  The second variable is tracked exactly; an optional
    ``window`` (lo, hi) filters stored second-variable exponents, which is
    sound only when the caller's factors cannot re-enter the window (all of
    this module's users arrange that).
    """

    __slots__ = ("vars", "coeffs", "cap", "window")

    def __init__(self, coeffs, cap, *, vars=("q", "z"), window=None):
        self.vars = (str(vars[0]), str(vars[1]))
        self.cap = int(cap)
        self.window = None if window is None else (int(window[0]), int(window[1]))
        clean = {}
        for (ex, ey), c in coeffs.items():
            ex, ey = int(ex), int(ey)
            if ex > self.cap:
                raise ValueError(f"stored exponent {ex} above cap {self.cap}")
            if self.window and not self.window[0] <= ey <= self.window[1]:
                continue
            c = _num(c)
            if c:
                clean[(ex, ey)] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, cap, **kw):
        return cls({}, cap, **kw)

    @classmethod
    def one(cls, cap, **kw):
        return cls({(0, 0): 1}, cap, **kw)

    def coeff(self, ex: int, ey: int):
        if ex > self.cap:
            raise ValueError(f"coefficient at {self.vars[0]}^{ex} unknown (cap {self.cap})")
        return self.coeffs.get((ex, ey), 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _xval(self) -> int:
        return min((ex for ex, _ in self.coeffs), default=0)

    def __repr__(self):
        return f"BiSeries({self.vars}, {len(self.coeffs)} terms, cap={self.cap})"

    def _check_compat(self, other: "BiSeries"):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __neg__(self):
        return BiSeries({k: -c for k, c in self.coeffs.items()}, self.cap,
                        vars=self.vars, window=self.window)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiSeries({(0, 0): other}, self.cap, vars=self.vars)
        if not isinstance(other, BiSeries):
            return NotImplemented
        self._check_compat(other)
        cap = min(self.cap, other.cap)
        window = _win_meet(self.window, other.window)
        out = {k: c for k, c in self.coeffs.items() if k[0] <= cap}
        for k, c in other.coeffs.items():
            if k[0] <= cap:
                out[k] = out.get(k, 0) + c
        return BiSeries(out, cap, vars=self.vars, window=window)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiSeries({k: c * other for k, c in self.coeffs.items()}, self.cap,
                            vars=self.vars, window=self.window)
        if not isinstance(other, BiSeries):
            return NotImplemented
        self._check_compat(other)
        if not self.coeffs or not other.coeffs:
            return BiSeries.zero(min(self.cap, other.cap), vars=self.vars,
                                 window=_win_meet(self.window, other.window))
        cap = min(self.cap + other._xval(), other.cap + self._xval())
        window = _win_meet(self.window, other.window)
        out = {}
        small, large = self.coeffs, other.coeffs
        if len(small) > len(large):
            small, large = large, small
        for (ax, ay), ca in small.items():
            for (bx, by), cb in large.items():
                ex = ax + bx
                if ex > cap:
                    continue
                ey = ay + by
                if window and not window[0] <= ey <= window[1]:
                    continue
                key = (ex, ey)
                out[key] = out.get(key, 0) + ca * cb
        return BiSeries(out, cap, vars=self.vars, window=window)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = BiSeries.one(self.cap, vars=self.vars, window=self.window)
        for _ in range(k):
            result = result * self
        return result

    def shift_x(self, n: int) -> "BiSeries":
        return BiSeries({(ex + n, ey): c for (ex, ey), c in self.coeffs.items()},
                        self.cap + n, vars=self.vars, window=self.window)

    def restrict(self, cap=None, window=None) -> "BiSeries":
        new_cap = self.cap if cap is None else min(self.cap, cap)
        new_win = _win_meet(self.window, window)
        return BiSeries({k: c for k, c in self.coeffs.items() if k[0] <= new_cap},
                        new_cap, vars=self.vars, window=new_win)

    def subs_y(self, value) -> dict:
        """Evaluate the second variable at an exact rational; returns {x_exp: coeff}."""
        out = {}
        for (ex, ey), c in self.coeffs.items():
            if ey >= 0:
                w = c * value ** ey
            else:
                w = c * Fraction(1, 1) / Fraction(value) ** (-ey)
            out[ex] = _num(Fraction(out.get(ex, 0)) + w)
        return {e: c for e, c in out.items() if c}

    @staticmethod
    def pow_with_big_exponent(a: int, b: int, e, cap: int, *, sign: int = -1,
                              vars=("q", "z"), window=None) -> "BiSeries":
        """Binomial expansion of (1 + sign * x^a y^b)^e within cap/window.

        Built for factors like (1 - p^m q^n)^c(mn) whose integer exponents run
        to dozens of digits: binomial coefficients stay exact big integers and
        only monomials inside the caps are kept.  Negative e expands
        geometrically; a factor constant in x (a == 0) then needs a finite
        window on the second variable to terminate.
        """
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if a < 0:
            raise ValueError("primary-variable exponent must be nonnegative")
        bounds = []
        if a > 0:
            bounds.append(max(cap, 0) // a)
        if isinstance(e, int) and e >= 0:
            bounds.append(e)
        if a == 0:
            if b != 0 and window is not None:
                lo, hi = window
                bounds.append(max(hi // b if b > 0 else lo // b, 0))
            if not bounds:
                raise ValueError("factor constant in the capped variable needs "
                                 "a nonnegative integer exponent or a finite window")
        out = {}
        for k in range(min(bounds) + 1):
            c = gbinom(e, k)
            if not c:
                continue
            if sign == -1 and k % 2:
                c = -c
            key = (a * k, b * k)
            if key[0] <= cap and (window is None or window[0] <= key[1] <= window[1]):
                out[key] = out.get(key, 0) + c
        return BiSeries(out, cap, vars=vars, window=window)

    def first_mismatch(self, other: "BiSeries", cap=None, window=None):
        """First disagreeing monomial in graded-lex order, or None.

        Keys sort by (x+y, x, y); comparison runs within the shared cap and
        the meet of the stored windows (optionally narrowed further).
        """
        self._check_compat(other)
        hi = min(self.cap, other.cap)
        if cap is not None:
            hi = min(hi, cap)
        win = _win_meet(_win_meet(self.window, other.window), window)
        keys = set(self.coeffs) | set(other.coeffs)
        for key in sorted(keys, key=lambda k: (k[0] + k[1], k[0], k[1])):
            ex, ey = key
            if ex > hi:
                continue
            if win and not win[0] <= ey <= win[1]:
                continue
            ca, cb = self.coeffs.get(key, 0), other.coeffs.get(key, 0)
            if ca != cb:
                return (key, ca, cb)
        return None

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.first_mismatch(other) is None

    __hash__ = None

    def to_json(self) -> dict:
        data = {
            "vars": list(self.vars),
            "cap": self.cap,
            "coeffs": {f"{ex},{ey}": _fmt_rat(c)
                       for (ex, ey), c in sorted(self.coeffs.items())},
        }
        if self.window is not None:
            data["window"] = list(self.window)
        return data

    @classmethod
    def from_json(cls, data: dict) -> "BiSeries":
        coeffs = {}
        for key, c in data["coeffs"].items():
            ex, ey = key.split(",")
            coeffs[(int(ex), int(ey))] = _parse_rat(c)
        return cls(coeffs, int(data["cap"]), vars=tuple(data.get("vars", ("q", "z"))),
                   window=tuple(data["window"]) if data.get("window") else None)
