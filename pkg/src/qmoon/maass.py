"""Index-raising operators on Jacobi coefficient tables and the Maass relation.

Coefficients live in sparse integer tables rather than analytic forms: a
table knows every value whose discriminant 4nm - r^2 lies within its bound
(absent means zero there) and refuses to answer beyond it.  V_m raises the
index of a weight-k, index-1 table, assembly stacks the layers m = 1..max_m
into a Siegel table, and the relation check replays the defining divisor
sum against layer 1 on any table handed to it.  The m = 0 Fourier-Jacobi
layer depends only on tau and carries an Eisenstein normalization outside
this model, so assembly starts at m = 1.
"""

from __future__ import annotations

from math import gcd

from .identities import VerifyReport


def _check_weight(k):
    if not isinstance(k, int) or k <= 0 or k % 2:
        raise ValueError(f"weight must be an even positive integer, got {k}")
    return k


class JacobiCoeffTable:
    """Sparse c(n, r) for a weight-k index-m form, known within disc_bound."""

    __slots__ = ("k", "m", "coeffs", "disc_bound")

    def __init__(self, k: int, m: int, coeffs, disc_bound=None):
        self.k = _check_weight(k)
        if not isinstance(m, int) or m < 1:
            raise ValueError(f"index must be a positive integer, got {m}")
        self.m = m
        self.coeffs = {}
        worst = 0
        for (n, r), c in coeffs.items():
            n, r, c = int(n), int(r), int(c)
            if n < 0:
                raise ValueError(f"n must be >= 0, got ({n}, {r})")
            disc = 4 * n * m - r * r
            if disc < 0:
                if c:
                    raise ValueError(
                        f"c({n},{r}) nonzero outside the support r^2 <= 4nm")
                continue
            if c:
                self.coeffs[(n, r)] = c
                worst = max(worst, disc)
        self.disc_bound = worst if disc_bound is None else int(disc_bound)
        if self.disc_bound < worst:
            raise ValueError(f"disc_bound {disc_bound} below stored support {worst}")

    def coeff(self, n: int, r: int) -> int:
        disc = 4 * n * self.m - r * r
        if disc < 0:
            return 0
        if disc > self.disc_bound:
            raise ValueError(
                f"c({n},{r}) has discriminant {disc} beyond known bound {self.disc_bound}")
        return self.coeffs.get((n, r), 0)

    def to_json(self) -> dict:
        return {"k": self.k, "m": self.m, "disc_bound": self.disc_bound,
                "coeffs": {f"{n},{r}": c for (n, r), c in sorted(self.coeffs.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "JacobiCoeffTable":
        coeffs = {}
        for key, c in data["coeffs"].items():
            n, r = (int(x) for x in key.split(","))
            coeffs[(n, r)] = c
        return cls(data["k"], data["m"], coeffs, data.get("disc_bound"))

    def __eq__(self, other):
        if not isinstance(other, JacobiCoeffTable):
            return NotImplemented
        return (self.k, self.m, self.coeffs) == (other.k, other.m, other.coeffs)

    __hash__ = None

    def __repr__(self):
        return (f"JacobiCoeffTable(k={self.k}, m={self.m}, "
                f"support={len(self.coeffs)}, disc_bound={self.disc_bound})")


class SiegelCoeffTable:
    """Sparse a(n, r, m) indexing the half-integral matrix [[n, r/2], [r/2, m]]."""

    __slots__ = ("k", "coeffs", "disc_bound")

    def __init__(self, k: int, coeffs, disc_bound=None):
        self.k = _check_weight(k)
        self.coeffs = {}
        worst = 0
        for (n, r, m), a in coeffs.items():
            n, r, m, a = int(n), int(r), int(m), int(a)
            if n < 0 or m < 1:
                raise ValueError(f"need n >= 0 and m >= 1, got ({n}, {r}, {m})")
            disc = 4 * n * m - r * r
            if disc < 0:
                if a:
                    raise ValueError(
                        f"a({n},{r},{m}) nonzero outside the support r^2 <= 4nm")
                continue
            if a:
                self.coeffs[(n, r, m)] = a
                worst = max(worst, disc)
        self.disc_bound = worst if disc_bound is None else int(disc_bound)
        if self.disc_bound < worst:
            raise ValueError(f"disc_bound {disc_bound} below stored support {worst}")

    def coeff(self, n: int, r: int, m: int) -> int:
        disc = 4 * n * m - r * r
        if disc < 0:
            return 0
        if disc > self.disc_bound:
            raise ValueError(
                f"a({n},{r},{m}) has discriminant {disc} beyond known bound "
                f"{self.disc_bound}")
        return self.coeffs.get((n, r, m), 0)

    def to_json(self) -> dict:
        return {"k": self.k, "disc_bound": self.disc_bound,
                "coeffs": {f"{n},{r},{m}": a
                           for (n, r, m), a in sorted(self.coeffs.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "SiegelCoeffTable":
        coeffs = {}
        for key, a in data["coeffs"].items():
            n, r, m = (int(x) for x in key.split(","))
            coeffs[(n, r, m)] = a
        return cls(data["k"], coeffs, data.get("disc_bound"))

    def __repr__(self):
        return (f"SiegelCoeffTable(k={self.k}, support={len(self.coeffs)}, "
                f"disc_bound={self.disc_bound})")


def v_operator(t: JacobiCoeffTable, m: int) -> JacobiCoeffTable:
    """(V_m t)(n, r) = sum_{d | gcd(n, |r|, m)} d^(k-1) c(mn/d^2, r/d).

    The source must have index 1.  The layer keeps the source's disc bound:
    a target beyond it would reference unknown coefficients, so it is left
    out and the returned table refuses to answer there.
    """
    if t.m != 1:
        raise ValueError(f"V_m acts on index-1 tables, got index {t.m}")
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    if m == 1:
        return JacobiCoeffTable(t.k, 1, t.coeffs, t.disc_bound)
    out = {}
    for d in range(1, m + 1):
        if m % d:
            continue
        dk = d ** (t.k - 1)
        for (ns, rs), c in t.coeffs.items():
            # target (n, r) feeding from this source via divisor d
            if (d * d * ns) % m:
                continue
            n, r = d * d * ns // m, d * rs
            if n % d:
                continue
            if 4 * n * m - r * r > t.disc_bound:
                continue
            out[(n, r)] = out.get((n, r), 0) + dk * c
    return JacobiCoeffTable(t.k, m, out, t.disc_bound)


def assemble_maass(t: JacobiCoeffTable, max_m: int) -> SiegelCoeffTable:
    """Stack a(n, r, m) = (V_m t)(n, r) for m = 1..max_m into one table."""
    if not isinstance(max_m, int) or max_m < 1:
        raise ValueError(f"max_m must be a positive integer, got {max_m}")
    coeffs = {}
    for m in range(1, max_m + 1):
        for (n, r), a in v_operator(t, m).coeffs.items():
            coeffs[(n, r, m)] = a
    return SiegelCoeffTable(t.k, coeffs, t.disc_bound)


def maass_relation_check(s: SiegelCoeffTable) -> VerifyReport:
    """a(n,r,m) = sum_{d | gcd(n,|r|,m)} d^(k-1) a(mn/d^2, r/d, 1), everywhere.

    Checked over the support plus every index the layer-1 entries could
    feed, so an entry wrongly cancelled to zero is still caught.  All
    referenced layer-1 positions sit within the bound automatically (their
    discriminant only shrinks), hence count as zero when absent.
    """
    layers = sorted({m for (_, _, m) in s.coeffs if m > 1})
    ones = [(n, r) for (n, r, m) in s.coeffs if m == 1]
    candidates = set(s.coeffs)
    for m in layers:
        for d in range(1, m + 1):
            if m % d:
                continue
            for ns, rs in ones:
                if (d * d * ns) % m:
                    continue
                n, r = d * d * ns // m, d * rs
                if n % d or 4 * n * m - r * r > s.disc_bound:
                    continue
                candidates.add((n, r, m))
    mismatch = None
    for n, r, m in sorted(candidates):
        expect = 0
        for d in range(1, m + 1):
            if gcd(n, abs(r), m) % d:
                continue
            expect += d ** (s.k - 1) * s.coeff(m * n // (d * d), r // d, 1)
        got = s.coeffs.get((n, r, m), 0)
        if got != expect:
            mismatch = ((n, r, m), got, expect)
            break
    return VerifyReport("maass_relation", s.disc_bound, mismatch is None, mismatch)
