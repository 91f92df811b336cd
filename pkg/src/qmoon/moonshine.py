"""The two-variable monster identities at g = 1, plus the Moebius multiplicity sum.

Both checks compare expansions of j*(p) - j*(q): the denominator form writes
it as p^-1 prod (1 - p^m q^n)^{c(mn)}, the replication form as
p^-1 exp(-sum c(mn) p^{mi} q^{ni} / i).  Coefficients c(n) are those of
j - 744.  Everything is coefficient-exact inside rectangular caps.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import forms
from .identities import VerifyReport
from .series import BiSeries, divisors, moebius

_VARS = ("p", "q")


class MoonshineCoeffs:
    """c(n) of j - 744 = sum_{n >= -1} c(n) q^n, shape-checked on construction."""

    __slots__ = ("c", "max_n")

    def __init__(self, c, max_n):
        self.max_n = int(max_n)
        self.c = {int(n): v for n, v in c.items() if v}
        if self.c.get(-1) != 1 or 0 in self.c:
            raise ValueError("moonshine coefficients start q^-1 + 0 + 196884q + ...")
        for n, v in self.c.items():
            if not -1 <= n <= self.max_n:
                raise ValueError(f"coefficient index {n} outside -1..{self.max_n}")
            if n >= 1 and v <= 0:
                raise ValueError(f"c({n}) = {v} must be positive")

    def __getitem__(self, n: int):
        if not -1 <= n <= self.max_n:
            raise ValueError(f"c({n}) unknown (computed to {self.max_n})")
        return self.c.get(n, 0)

    def __repr__(self):
        return f"MoonshineCoeffs(max_n={self.max_n})"


@lru_cache(maxsize=None)
def moonshine_c(max_n: int) -> MoonshineCoeffs:
    """Coefficients of j - 744 through q^max_n."""
    return MoonshineCoeffs(forms.jstar(max_n).coeffs, max_n)


# -- the two identity sides ----------------------------------------------------
#
# Inside any partial product or exp term every monomial p^a q^b satisfies
# b >= -a (the only negative q-powers enter through n = -1 factors, which
# raise a at least as fast).  With a p-budget of cap_m + 1 before the p^-1
# shift, a monomial dropped for b > cap_n + cap_m + 1 would need to shed
# more than cap_m + 1 from b to re-enter the compared window, which the
# budget forbids; so the rectangular truncation is exact.

def _grid(cap_m, cap_n):
    big_m = cap_m + 1
    hi = cap_n + big_m
    return big_m, hi, (-big_m, hi)


def _sum_side(cap_m, cap_n) -> BiSeries:
    """j*(p) - j*(q) on the compared rectangle."""
    c = moonshine_c(max(cap_m, cap_n))
    coeffs = {}
    for m in range(-1, cap_m + 1):
        if c[m]:
            coeffs[(m, 0)] = c[m]
    for n in range(-1, cap_n + 1):
        if c[n]:
            coeffs[(0, n)] = coeffs.get((0, n), 0) - c[n]
    return BiSeries(coeffs, cap_m, vars=_VARS, window=(-1, cap_n))


def denominator_product(cap_m: int, cap_n: int) -> BiSeries:
    """p^-1 prod_{m>0, n>=-1} (1 - p^m q^n)^{c(mn)} within the closed caps."""
    big_m, hi, window = _grid(cap_m, cap_n)
    c = moonshine_c(big_m * hi)
    prod = BiSeries.one(big_m, vars=_VARS, window=window)
    for m in range(1, big_m + 1):
        for n in range(-1, hi + 1):
            e = c[m * n] if -1 <= m * n <= c.max_n else 0
            if e:
                prod = prod * BiSeries.pow_with_big_exponent(
                    m, n, e, big_m, sign=-1, vars=_VARS, window=window)
    return prod.shift_x(-1)


def replication_exponent(cap_m: int, cap_n: int) -> BiSeries:
    """-sum_{i>0} sum_{m>0, n>=-1} c(mn) p^{mi} q^{ni} / i, the exp argument."""
    big_m, hi, window = _grid(cap_m, cap_n)
    c = moonshine_c(big_m * hi)
    coeffs = {}
    for i in range(1, big_m + 1):
        for m in range(1, big_m // i + 1):
            for n in range(-1, hi // i + 1):
                v = c[m * n] if -1 <= m * n <= c.max_n else 0
                if v:
                    key = (m * i, n * i)
                    coeffs[key] = coeffs.get(key, 0) - Fraction(v, i)
    return BiSeries(coeffs, big_m, vars=_VARS, window=window)


def bi_exp(t: BiSeries) -> BiSeries:
    """exp of a bivariate series whose every term has positive first-variable power."""
    if any(ex < 1 for (ex, _) in t.coeffs):
        raise ValueError("bivariate exp needs a positive power of the first variable")
    acc = BiSeries.one(t.cap, vars=t.vars, window=t.window)
    term = acc
    for k in range(1, t.cap + 2):
        term = term * t * Fraction(1, k)
        if term.is_zero():
            break
        acc = acc + term
    return acc


def replication_product(cap_m: int, cap_n: int) -> BiSeries:
    """p^-1 exp(-sum c(mn) p^{mi} q^{ni} / i) within the closed caps."""
    return bi_exp(replication_exponent(cap_m, cap_n)).shift_x(-1)


def denominator_check(cap_m: int, cap_n: int) -> VerifyReport:
    """Product form vs j*(p) - j*(q), exact on p-degree <= cap_m, q-window [-1, cap_n]."""
    if cap_m < 1 or cap_n < 1:
        raise ValueError("caps must be >= 1")
    lhs = denominator_product(cap_m, cap_n)
    mismatch = lhs.first_mismatch(_sum_side(cap_m, cap_n), cap=cap_m, window=(-1, cap_n))
    return VerifyReport("monster_denominator", (cap_m, cap_n), mismatch is None, mismatch)


def replication_check(cap: int) -> VerifyReport:
    """Exponential form vs j*(p) - j*(q) on the square caps (cap, cap)."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    lhs = replication_product(cap, cap)
    mismatch = lhs.first_mismatch(_sum_side(cap, cap), cap=cap, window=(-1, cap))
    return VerifyReport("monster_replication", (cap, cap), mismatch is None, mismatch)


# -- Moebius multiplicities ------------------------------------------------------

class CharTable:
    """Traces tr(g^d | V_k) for an element of order N; the d = N column is c(k)."""

    __slots__ = ("order", "traces")

    def __init__(self, order: int, traces: dict):
        if order < 1:
            raise ValueError("order must be >= 1")
        self.order = order
        self.traces = {(int(d), int(k)): v for (d, k), v in traces.items()}
        identity = [k for (d, k) in self.traces if d == order]
        if identity:
            c = moonshine_c(max(max(identity), 1))
            for k in identity:
                if self.traces[(order, k)] != c[k]:
                    raise ValueError(f"tr(g^{order}|V_{k}) = {self.traces[(order, k)]}"
                                     f" must equal c({k}) = {c[k]}")

    @classmethod
    def trivial(cls, max_n: int) -> "CharTable":
        """The g = 1 table: every trace is a dimension c(k)."""
        c = moonshine_c(max_n)
        return cls(1, {(1, k): c[k] for k in range(-1, max_n + 1)})

    def trace(self, d: int, k: int):
        if (d, k) not in self.traces:
            raise ValueError(f"table has no entry for tr(g^{d}|V_{k})")
        return self.traces[(d, k)]


def mult_g(m: int, n: int, table: CharTable):
    """Root multiplicity sum_{ds | (m, n, N)} mu(s)/(ds) * tr(g^d | V_{mn})."""
    if m < 1:
        raise ValueError("m must be positive")
    g = gcd(m, n, table.order)
    k = m * n
    total = Fraction(0)
    for t in divisors(g):
        for d in divisors(t):
            mu = moebius(t // d)
            if mu:
                total += Fraction(mu, t) * table.trace(d, k)
    if total.denominator != 1:
        raise ArithmeticError(f"mult({m},{n}) = {total} is not an integer; "
                              "inconsistent character table")
    return int(total)
