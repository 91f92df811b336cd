"""Catalog of classical q-expansions, each built from first principles.

Everything here returns an exact QSeries at the requested truncation order.
Eisenstein series come from the Bernoulli recurrence, eta products from their
defining infinite products, thetas as explicit lacunary sums.  The Leech
theta function is assembled two independent ways and cross-checked on every
call.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .series import (
    FULL,
    HALF,
    ExponentTable,
    QSeries,
    gbinom,
    product_from_exponents,
)

__all__ = [
    "EtaShape",
    "bernoulli",
    "eisenstein",
    "delta",
    "eta",
    "eta_quotient",
    "j_invariant",
    "jstar",
    "theta_nullwerte",
    "theta_full",
    "leech_theta",
    "partition_series",
    "colored_partition_series",
    "xi_series",
    "F_oddsigma",
    "p_g_series",
    "j_g_series",
    "named_form",
]


class EtaShape:
    """Product shape a_1^{b_1} a_2^{b_2} ... standing for prod eta(q^{a_i})^{b_i}."""

    __slots__ = ("factors",)

    def __init__(self, factors):
        seen = {}
        for a, b in factors:
            a, b = int(a), int(b)
            if a < 1:
                raise ValueError(f"eta scale must be positive, got {a}")
            if a in seen:
                raise ValueError(f"duplicate eta scale {a}")
            seen[a] = b
        self.factors = tuple(sorted((a, b) for a, b in seen.items() if b))

    @classmethod
    def parse(cls, text: str) -> "EtaShape":
        """Parse shapes like '1^8 2^8' or '1^-24' (space- or dot-separated)."""
        factors = []
        for chunk in text.replace(".", " ").split():
            if "^" in chunk:
                a, b = chunk.split("^", 1)
            else:
                a, b = chunk, "1"
            factors.append((int(a), int(b)))
        return cls(factors)

    def prefactor_exponent(self) -> Fraction:
        return Fraction(sum(a * b for a, b in self.factors), 24)

    def __repr__(self):
        return "EtaShape(%s)" % " ".join(f"{a}^{b}" for a, b in self.factors)

    def __eq__(self, other):
        return isinstance(other, EtaShape) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)


def bernoulli(k: int) -> Fraction:
    """k-th Bernoulli number from the x/(e^x - 1) recurrence."""
    if k < 0:
        raise ValueError("Bernoulli numbers indexed by nonnegative integers")
    return _bernoulli_upto(k)[k]


@lru_cache(maxsize=None)
def _bernoulli_upto(k: int):
    b = [Fraction(1)]
    for m in range(1, k + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += gbinom(m + 1, j) * b[j]
        b.append(-acc / (m + 1))
    return tuple(b)


def _sigma_table(ell: int, order: int) -> list:
    """[sigma_ell(1), ..., sigma_ell(order)] by a divisor sieve, index n-1."""
    table = [0] * (order + 1)
    for d in range(1, order + 1):
        step = d ** ell
        for m in range(d, order + 1, d):
            table[m] += step
    return table[1:]


@lru_cache(maxsize=None)
def eisenstein(weight: int, order: int) -> QSeries:
    """Normalized Eisenstein series E_w = 1 - (2w/B_w) sum sigma_{w-1}(n) q^n."""
    if weight < 4 or weight % 2:
        raise ValueError(f"weight must be even and >= 4, got {weight}")
    factor = Fraction(-2 * weight) / bernoulli(weight)
    sig = _sigma_table(weight - 1, order)
    coeffs = {0: 1}
    for n in range(1, order + 1):
        coeffs[n] = factor * sig[n - 1]
    return QSeries(coeffs, order)


@lru_cache(maxsize=None)
def delta(order: int) -> QSeries:
    """Discriminant form q * prod (1-q^n)^24; coefficients are Ramanujan tau."""
    return product_from_exponents(
        ExponentTable(-1, {n: 24 for n in range(1, order + 1)}, order)).truncate(order)


@lru_cache(maxsize=None)
def eta(order: int) -> QSeries:
    """Dedekind eta: prefactor q^(1/24) times prod (1-q^n)."""
    return product_from_exponents(
        ExponentTable(Fraction(-1, 24), {n: 1 for n in range(1, order + 1)}, order)
    ).truncate(order)


def eta_quotient(shape: EtaShape, order: int) -> QSeries:
    """prod_i eta(q^{a_i})^{b_i} with prefactor (sum a_i b_i)/24."""
    exps = {}
    for n in range(1, order + 1):
        e = sum(b for a, b in shape.factors if n % a == 0)
        if e:
            exps[n] = e
    unit = product_from_exponents(ExponentTable(0, exps, order))
    return QSeries(unit.coeffs, order, prefactor=shape.prefactor_exponent())


@lru_cache(maxsize=None)
def j_invariant(order: int) -> QSeries:
    """Modular invariant j = E_4^3 / delta, leading power -1."""
    n = order + 2
    e4 = eisenstein(4, n)
    return ((e4 * e4 * e4) * delta(n).invert()).truncate(order)


def jstar(order: int) -> QSeries:
    """j with its constant term 744 removed."""
    return j_invariant(order) - 744


@lru_cache(maxsize=None)
def theta_nullwerte(which: int, order: int) -> QSeries:
    """Theta constants on the half nome (variable stands for e^{i*pi*tau}).

    theta2 carries prefactor 1/4 and integer exponents n^2+n; theta3 and
    theta4 are supported on squares, theta4 with alternating signs.
    """
    if which == 2:
        coeffs = {}
        n = 0
        while n * n + n <= order:
            coeffs[n * n + n] = 2
            n += 1
        return QSeries(coeffs, order, nome=HALF, prefactor=Fraction(1, 4))
    if which in (3, 4):
        coeffs = {0: 1}
        n = 1
        while n * n <= order:
            coeffs[n * n] = 2 if which == 3 else 2 * (-1) ** n
            n += 1
        return QSeries(coeffs, order, nome=HALF)
    raise ValueError(f"theta constant index must be 2, 3, or 4, got {which}")


@lru_cache(maxsize=None)
def theta_full(order: int) -> QSeries:
    """theta(tau) = sum q^{n^2} on the full nome."""
    coeffs = {0: 1}
    n = 1
    while n * n <= order:
        coeffs[n * n] = 2
        n += 1
    return QSeries(coeffs, order)


@lru_cache(maxsize=None)
def leech_theta(order: int) -> QSeries:
    """Theta series of the Leech lattice, half nome, exponent = vector norm.

    Built two independent ways: from theta constants as
    (theta2^24 + theta3^24 + theta4^24)/2 - (69/16)(theta2 theta3 theta4)^8,
    and from the coefficient formula N_m = (65520/691)(sigma_11(m/2) - tau(m/2)).
    Any disagreement means a kernel bug, so it is checked on every call.
    """
    t2 = theta_nullwerte(2, order)
    t3 = theta_nullwerte(3, order)
    t4 = theta_nullwerte(4, order)
    from_thetas = ((t2 ** 24).canonical() + t3 ** 24 + t4 ** 24) * Fraction(1, 2) \
        - Fraction(69, 16) * ((t2 * t3 * t4) ** 8).canonical()
    half = order // 2
    d = delta(half)
    sig = _sigma_table(11, half) if half else []
    coeffs = {0: 1}
    for m in range(1, half + 1):
        n_m = Fraction(65520, 691) * (sig[m - 1] - d.coeff(m))
        if n_m:
            coeffs[2 * m] = n_m
    from_counts = QSeries(coeffs, order, nome=HALF)
    if not from_thetas.agrees_with(from_counts):
        mismatch = from_thetas.first_mismatch(from_counts)
        raise ArithmeticError(
            f"Leech theta constructions disagree at exponent {mismatch[0]}: "
            f"{mismatch[1]} vs {mismatch[2]}")
    return from_counts.truncate(min(order, from_thetas.trunc))


def partition_series(order: int) -> QSeries:
    """Generating series of the partition function, 1/prod(1-q^n)."""
    return colored_partition_series(1, order)


@lru_cache(maxsize=None)
def colored_partition_series(k: int, order: int) -> QSeries:
    """Partitions with parts in k colors: 1/prod(1-q^n)^k."""
    if k < 1:
        raise ValueError("number of colors must be >= 1")
    return product_from_exponents(
        ExponentTable(0, {n: -k for n in range(1, order + 1)}, order)).truncate(order)


@lru_cache(maxsize=None)
def xi_series(order: int) -> QSeries:
    """phi(q)^-8 (1 - phi(q^2)/phi(q^4)) with phi(q) = prod(1-q^n)."""
    phi = product_from_exponents(
        ExponentTable(0, {n: 1 for n in range(1, order + 1)}, order))
    phi2 = phi.scale_var(2).truncate(order)
    phi4 = phi.scale_var(4).truncate(order)
    inv8 = colored_partition_series(8, order)
    return (inv8 * (1 - phi2 * phi4.invert())).truncate(order)


@lru_cache(maxsize=None)
def F_oddsigma(order: int) -> QSeries:
    """F = sum over odd n of sigma_1(n) q^n."""
    sig = _sigma_table(1, order)
    return QSeries({n: sig[n - 1] for n in range(1, order + 1, 2)}, order)


def p_g_series(shape: EtaShape, order: int) -> QSeries:
    """Reciprocal of the eta product for the shape, unit power-series part.

    The fractional prefactor is dropped: this is the q-integral part whose
    coefficients generalize the 24-colored partition count.
    """
    exps = {}
    for n in range(1, order + 1):
        e = sum(b for a, b in shape.factors if n % a == 0)
        if e:
            exps[n] = -e
    return product_from_exponents(ExponentTable(0, exps, order)).truncate(order)


def j_g_series(shape: EtaShape, order: int) -> QSeries:
    """p_g with its constant term removed, the Thompson-series normalization."""
    p = p_g_series(shape, order)
    return p - p.coeff(0)


def named_form(label: str, order: int) -> QSeries:
    """Resolve a catalog label like 'E6', 'delta', 'theta2', 'p24' to a series."""
    name = label.strip()
    low = name.lower()
    if low.startswith("e") and low[1:].isdigit():
        return eisenstein(int(low[1:]), order)
    if low in ("delta", "tau"):
        return delta(order)
    if low == "eta":
        return eta(order)
    if low == "j":
        return j_invariant(order)
    if low in ("jstar", "j*"):
        return jstar(order)
    if low in ("theta", "theta_full"):
        return theta_full(order)
    if low in ("theta2", "theta3", "theta4"):
        return theta_nullwerte(int(low[-1]), order)
    if low in ("leech", "leech_theta"):
        return leech_theta(order)
    if low in ("f", "f_oddsigma"):
        return F_oddsigma(order)
    if low in ("partition", "p"):
        return partition_series(order)
    if low.startswith("p") and low[1:].isdigit():
        return colored_partition_series(int(low[1:]), order)
    if low == "xi":
        return xi_series(order)
    raise ValueError(f"unknown form label {label!r}")
