"""Hurwitz class numbers and the infinite-product lift of plus-space forms.

A form f = sum c(n) q^n with integer coefficients supported on exponents
n = 0, 1 (mod 4) lifts to q^(-h) * prod_{n>0} (1 - q^n)^{c(n^2)}, where h
is the constant term of f against the class-number series sum H(k) q^k.
The worked catalog (12*theta, f_4, f_6, f_j and their sums) lands on
Delta, E_4, E_6, j and the remaining product-representable Eisenstein
series.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from . import forms
from .series import ExponentTable, FULL, QSeries, _num, product_from_exponents

CATALOG_NAMES = ("f_delta", "f_4", "f_6", "f_8", "f_10", "f_14", "f_j")


@lru_cache(maxsize=None)
def hurwitz(n: int):
    """Hurwitz class number H(n), by brute-force enumeration of reduced forms.

    Weighted count of reduced positive-definite ax^2 + bxy + cy^2 with
    b^2 - 4ac = -n; the orbits of k(x^2 + y^2) and k(x^2 + xy + y^2) count
    1/2 and 1/3.  H(0) = -1/12, and H(n) = 0 unless -n is a discriminant.
    """
    if n < 0:
        raise ValueError("H(n) is indexed by n >= 0")
    if n == 0:
        return Fraction(-1, 12)
    if n % 4 in (1, 2):
        return 0
    total = Fraction(0)
    a = 1
    while 3 * a * a <= n:
        for b in range(-a, a + 1):
            if b < 0 and -b == a:
                continue  # (a, -a, c) ~ (a, a, c)
            if (b * b + n) % (4 * a):
                continue
            c = (b * b + n) // (4 * a)
            if c < a or (b < 0 and a == c):
                continue  # reduced: |b| <= a <= c, with b >= 0 on the boundary
            if b == 0 and a == c:
                total += Fraction(1, 2)
            elif a == b == c:
                total += Fraction(1, 3)
            else:
                total += 1
        a += 1
    return _num(total)


class HurwitzTable:
    """H(0), ..., H(max_n), computed once and checked against the known shape."""

    __slots__ = ("max_n", "values")

    def __init__(self, max_n: int):
        if max_n < 0:
            raise ValueError("max_n must be nonnegative")
        self.max_n = int(max_n)
        self.values = {n: hurwitz(n) for n in range(self.max_n + 1)}
        for n, h in self.values.items():
            if n == 0:
                ok = h == Fraction(-1, 12)
            elif n % 4 in (1, 2):
                ok = h == 0
            else:
                ok = h >= 0 and 6 % Fraction(h).denominator == 0
            if not ok:
                raise ArithmeticError(f"H({n}) = {h} breaks the class-number constraints")

    def __getitem__(self, n: int):
        if not 0 <= n <= self.max_n:
            raise ValueError(f"H({n}) outside the computed range 0..{self.max_n}")
        return self.values[n]

    def __repr__(self):
        return f"HurwitzTable(max_n={self.max_n})"


class PlusForm:
    """Lift input: a full-nome series, integer coefficients, support 0, 1 mod 4."""

    __slots__ = ("series",)

    weight = Fraction(1, 2)  # informational; every lift input sits in this weight

    def __init__(self, series: QSeries):
        if series.nome != FULL:
            raise ValueError("plus-space forms live in the full nome")
        if series.prefactor:
            raise ValueError("plus-space forms have integral exponents")
        bad = [(e, c) for e, c in sorted(series.coeffs.items())
               if e % 4 in (2, 3) or not isinstance(c, int)]
        if bad:
            raise ValueError("not in the plus space; offending (exponent, coefficient): "
                             + ", ".join(f"({e}, {c})" for e, c in bad))
        self.series = series

    def coeff(self, n: int):
        return self.series.coeff(n)

    def __repr__(self):
        return f"PlusForm({self.series!r})"


def plus_space_check(f: QSeries) -> PlusForm:
    """Validate integrality and the 0, 1 mod 4 support condition."""
    return PlusForm(f)


# -- the worked catalog ------------------------------------------------------

_PAD = 8  # formula pieces have poles at q^-4 and eat four orders per multiply

# The f_6 display carries the constant 876, but the expansion printed next to
# it starts q^-4 + 6 + 504q, which forces 852 (and only 852 makes the lift
# land on E_6); see printed_coefficient_report("f_6").
_F6_CONSTANT = 852

PRINTED_F4 = {-3: 1, 0: 4, 1: -240, 4: 26760, 5: -85995, 8: 1707264, 9: -4096240}
PRINTED_F6 = {-4: 1, 0: 6, 1: 504, 4: 143388, 5: 565760, 8: 184373000, 9: 51180024}
_PRINTED = {"f_4": PRINTED_F4, "f_6": PRINTED_F6}


@lru_cache(maxsize=None)
def _pieces(cap: int):
    """Shared catalog ingredients at internal truncation cap.

    theta; Q = F * theta * (theta^4 - 2F)(theta^4 - 16F); G, the weight -6
    unit E_6(4t)/Delta(4t) with a pole at q^-4; and j(4t).
    """
    theta = forms.theta_full(cap)
    F = forms.F_oddsigma(cap)
    t4 = theta ** 4
    Q = F * theta * (t4 - 2 * F) * (t4 - 16 * F)
    m = cap // 4 + 4
    d4_inv = forms.delta(m).scale_var(4).invert()
    G = (forms.eisenstein(6, m).scale_var(4) * d4_inv).truncate(cap)
    j4 = forms.j_invariant(m).scale_var(4).truncate(cap)
    return theta, Q, G, j4


@lru_cache(maxsize=None)
def _raw_catalog(name: str, order: int) -> QSeries:
    if name == "f_delta":
        return 12 * forms.theta_full(order)
    cap = order + _PAD
    theta, Q, G, j4 = _pieces(cap)
    if name == "f_j":
        return (3 * (Q * G) + 168 * theta).truncate(order)
    if name == "f_6":
        return ((j4 - _F6_CONSTANT) * theta - 2 * (Q * G)).truncate(order)
    if name == "f_4":
        return (_raw_catalog("f_j", order) + 12 * theta.truncate(order)) * Fraction(1, 3)
    if name == "f_8":
        return _raw_catalog("f_4", order) * 2
    if name == "f_10":
        return _raw_catalog("f_4", order) + _raw_catalog("f_6", order)
    if name == "f_14":
        return _raw_catalog("f_4", order) * 2 + _raw_catalog("f_6", order)
    raise ValueError(f"unknown catalog form {name!r}; have {', '.join(CATALOG_NAMES)}")


def catalog(name: str, order: int) -> PlusForm:
    """One of the worked lift inputs, expanded through q^order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return plus_space_check(_raw_catalog(name, int(order)))


# -- the lift ----------------------------------------------------------------

class LiftResult(NamedTuple):
    h: object
    result: QSeries
    table: ExponentTable


def lift(f: PlusForm, order: int) -> LiftResult:
    """q^(-h) * prod_{n<=order} (1 - q^n)^{c(n^2)} for a plus-space form f.

    h = sum_{k>0} c(-k) H(k) + c(0) * (-1/12); reading c(n^2) up to
    n = order requires f to be known to order squared.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    s = f.series
    if s.trunc < order * order:
        raise ValueError(f"lift to order {order} reads c(n^2) up to n = {order}; "
                         f"the form is only known to q^{s.trunc}")
    h = Fraction(s.coeffs.get(0, 0), -12)
    for e, c in s.coeffs.items():
        if e < 0:
            h += c * Fraction(hurwitz(-e))
    table = ExponentTable(h, {n: s.coeff(n * n) for n in range(1, order + 1)}, order)
    result = product_from_exponents(table, var=s.var, nome=s.nome)
    return LiftResult(table.h, result, table)


def zero_multiplicity(f: PlusForm, D: int) -> int:
    """Vanishing order of the lift at a quadratic irrational of discriminant D < 0.

    sum_{d>0} c(D d^2); only the finite principal part of f contributes.
    """
    if D >= 0:
        raise ValueError("D must be a negative discriminant")
    s = f.series
    v = s.valuation()
    total = 0
    if v is not None and v < 0:
        d = 1
        while D * d * d >= v:
            total += s.coeffs.get(D * d * d, 0)
            d += 1
    return total


# -- discrepancy reports -----------------------------------------------------

def printed_coefficient_report(name: str) -> list:
    """Formula output vs the published low-order coefficients.

    Returns (exponent, computed, published, agree) rows.  The published
    f_6 numbers are soft goldens: the formula is authoritative, and any
    disagreement shows up here rather than as a construction error.
    """
    if name not in _PRINTED:
        raise ValueError(f"no published expansion recorded for {name!r}")
    printed = _PRINTED[name]
    f = catalog(name, max(printed) + 1)
    return [(n, f.coeff(n), c, f.coeff(n) == c) for n, c in sorted(printed.items())]


def _fj_variant(weight: int, order: int) -> QSeries:
    cap = order + _PAD
    theta, Q, G, j4 = _pieces(cap)
    if weight != 6:
        m = cap // 4 + 4
        d4_inv = forms.delta(m).scale_var(4).invert()
        G = (forms.eisenstein(weight, m).scale_var(4) * d4_inv).truncate(cap)
    return (3 * (Q * G) + 168 * theta).truncate(order)


def fj_efactor_report(order: int = 8) -> dict:
    """Which Eisenstein numerator in the f_j formula actually lifts to j.

    The prose around the formula names weight 4 while the display reads
    E_6(4t)/Delta(4t); the lift target j decides.  The E_6 variant runs
    first, E_4 only if it fails, and the outcome is recorded rather than
    silently resolved.
    """
    target = forms.j_invariant(order)
    report = {"formula_reads": "E6", "prose_reads": "E4", "used": None}
    for weight in (6, 4):
        series = _fj_variant(weight, order * order)
        try:
            lifted = lift(plus_space_check(series), order).result
            ok = lifted.agrees_with(target, order)
        except ValueError as err:
            ok = False
            report[f"E{weight}_error"] = str(err)
        report[f"E{weight}_lifts_to_j"] = ok
        if ok:
            report["used"] = f"E{weight}"
            break
    if report.get("E6_lifts_to_j"):
        report["resolution"] = "the displayed E6 numerator lifts to j; prose weight 4 is a slip"
    elif report.get("E4_lifts_to_j"):
        report["resolution"] = "the prose E4 numerator lifts to j; the display is a slip"
    else:
        report["resolution"] = "neither Eisenstein numerator lifts to j"
    return report
