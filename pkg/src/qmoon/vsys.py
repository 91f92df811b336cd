"""Vector systems on a positive-definite lattice and their Jacobi-type products.

A vector system is a finite symmetric multiplicity function c on lattice
vectors whose second moment is isotropic; it carries Weyl data (rho, d,
weight k = c(0)/2, index m) and the product

    psi(tau, z) = q^(d/24) zeta^(-rho) prod_{(v,n)>0} (1 - q^n zeta^v),

expanded here with zeta-exponents stored on the doubled grid so the
half-integral rho stays exact.  The two elliptic shift laws are checked by
formal substitution, coefficient for coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .identities import VerifyReport

SAMPLE_NAMES = ("pair", "trivial", "orthogonal")


def _det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(len(m)))


class VectorSystem:
    """Lattice dimension, gram matrix, and the multiplicity function c."""

    __slots__ = ("dim", "gram", "mult")

    def __init__(self, dim: int, gram, mult):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        self.dim = int(dim)
        self.gram = tuple(tuple(int(x) for x in row) for row in gram)
        if len(self.gram) != self.dim or any(len(r) != self.dim for r in self.gram):
            raise ValueError("gram matrix must be dim x dim")
        if any(self.gram[i][j] != self.gram[j][i] for i in range(self.dim)
               for j in range(self.dim)):
            raise ValueError("gram matrix must be symmetric")
        rows = [list(r) for r in self.gram]
        if any(_det([row[:k + 1] for row in rows[:k + 1]]) <= 0 for k in range(self.dim)):
            raise ValueError("gram matrix must be positive definite")
        self.mult = {}
        for v, c in mult.items():
            v = tuple(int(x) for x in v)
            if len(v) != self.dim:
                raise ValueError(f"vector {v} has wrong dimension")
            if int(c) < 0:
                raise ValueError(f"multiplicity c({v}) = {c} must be nonnegative")
            if c:
                self.mult[v] = int(c)

    def pair(self, a, b):
        """(a, b) under the gram matrix; exact on rational input."""
        total = 0
        for i, ai in enumerate(a):
            if ai:
                total += ai * sum(self.gram[i][j] * b[j] for j in range(self.dim))
        return total

    def to_json(self) -> dict:
        return {"dim": self.dim, "gram": [list(r) for r in self.gram],
                "mult": {",".join(map(str, v)): c for v, c in sorted(self.mult.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "VectorSystem":
        mult = {tuple(int(x) for x in key.split(",")): c
                for key, c in data["mult"].items()}
        return cls(int(data["dim"]), data["gram"], mult)

    def __repr__(self):
        return f"VectorSystem(dim={self.dim}, support={len(self.mult)})"


def sample_system(name: str) -> VectorSystem:
    """The shipped examples: a 1-dim pair, the norm-zero system, an orthogonal sum."""
    if name == "pair":
        return VectorSystem(1, ((2,),), {(1,): 1, (-1,): 1})
    if name == "trivial":
        return VectorSystem(1, ((2,),), {(0,): 2})
    if name == "orthogonal":
        return VectorSystem(2, ((2, 0), (0, 2)),
                            {(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1})
    raise ValueError(f"unknown sample {name!r}; have {', '.join(SAMPLE_NAMES)}")


def validate(V: VectorSystem) -> dict:
    """Diagnostics for the three defining properties; never raises.

    Finiteness holds by construction; symmetry and the isotropy of the
    second moment (sum c(v) (Sv)(Sv)^T must be a rational multiple of S)
    are checked, returning the scalar or the failing direction.
    """
    failures = []
    for v in sorted(V.mult):
        if V.mult[v] != V.mult.get(tuple(-x for x in v), 0):
            failures.append({"property": "symmetry", "vector": list(v)})
            break
    s = V.dim
    moment = [[0] * s for _ in range(s)]
    for v, c in V.mult.items():
        sv = [sum(V.gram[i][j] * v[j] for j in range(s)) for i in range(s)]
        for i in range(s):
            for j in range(s):
                moment[i][j] += c * sv[i] * sv[j]
    scalar = Fraction(moment[0][0], V.gram[0][0])
    for i in range(s):
        for j in range(s):
            if moment[i][j] != scalar * V.gram[i][j]:
                failures.append({"property": "sphere", "direction": [i, j]})
                scalar = None
                break
        if scalar is None:
            break
    return {"valid": not failures, "scalar": scalar, "failures": failures}


class WeylData:
    """Chamber vector, Weyl vector rho, count d, weight k, and index m."""

    __slots__ = ("chamber", "rho", "d", "k", "m")

    def __init__(self, chamber, rho, d, k, m):
        self.chamber = chamber
        self.rho = rho
        self.d = d
        self.k = k
        self.m = m

    def __repr__(self):
        return f"WeylData(rho={self.rho}, d={self.d}, k={self.k}, m={self.m})"


def weyl_data(V: VectorSystem, lam) -> WeylData:
    """rho = (1/2) sum_{v>0} v, d = sum c(v), k = c(0)/2, m = (2s)^-1 sum c(v)(v,v).

    lam fixes the chamber; it must pair nonzero with every nonzero support
    vector.  The index must come out a nonnegative integer.
    """
    lam = tuple(Fraction(x) for x in lam)
    if len(lam) != V.dim:
        raise ValueError("chamber vector has wrong dimension")
    zero = (0,) * V.dim
    rho = [Fraction(0)] * V.dim
    norm_sum = 0
    for v, c in V.mult.items():
        norm_sum += c * V.pair(v, v)
        if v == zero:
            continue
        p = V.pair(v, lam)
        if p == 0:
            raise ValueError(f"chamber vector is orthogonal to support vector {v}")
        if p > 0:
            for i in range(V.dim):
                rho[i] += Fraction(c * v[i], 2)
    m = Fraction(norm_sum, 2 * V.dim)
    if m.denominator != 1:
        raise ArithmeticError(f"index {m} is not an integer; not a vector system")
    d = sum(V.mult.values())
    return WeylData(lam, tuple(rho), d, Fraction(V.mult.get(zero, 0), 2), int(m))


class PsiSeries:
    """q^qpre * sum c(n, r) q^n zeta^(r/2), with r an integer tuple (doubled grid)."""

    __slots__ = ("s", "qpre", "coeffs", "trunc")

    def __init__(self, s, qpre, coeffs, trunc):
        self.s = int(s)
        self.qpre = Fraction(qpre)
        self.trunc = int(trunc)
        self.coeffs = {}
        for (n, r), c in coeffs.items():
            if n > self.trunc:
                raise ValueError(f"stored q-exponent {n} above trunc {self.trunc}")
            if c:
                self.coeffs[(int(n), tuple(int(x) for x in r))] = c

    def coeff(self, n: int, r):
        if n > self.trunc:
            raise ValueError(f"coefficient at q^{n} unknown (trunc {self.trunc})")
        return self.coeffs.get((n, tuple(r)), 0)

    def columns(self) -> dict:
        """{r: {n: c}} regrouped by zeta-exponent."""
        out = {}
        for (n, r), c in self.coeffs.items():
            out.setdefault(r, {})[n] = c
        return out

    def __eq__(self, other):
        if not isinstance(other, PsiSeries):
            return NotImplemented
        if self.s != other.s or self.qpre != other.qpre:
            return False
        hi = min(self.trunc, other.trunc)
        mine = {k: c for k, c in self.coeffs.items() if k[0] <= hi}
        theirs = {k: c for k, c in other.coeffs.items() if k[0] <= hi}
        return mine == theirs

    __hash__ = None

    def __repr__(self):
        return f"PsiSeries(s={self.s}, qpre={self.qpre}, trunc={self.trunc})"

    def to_json(self) -> dict:
        terms = [{"q": n, "zeta2": list(r), "c": c}
                 for (n, r), c in sorted(self.coeffs.items())]
        return {"dim": self.s, "qpre": str(self.qpre), "trunc": self.trunc,
                "terms": terms}


def psi(V: VectorSystem, lam, order: int) -> PsiSeries:
    """The product over positive affine vectors: n > 0 all of V, n = 0 only v > 0."""
    if order < 0:
        raise ValueError("order must be >= 0")
    wd = weyl_data(V, lam)
    zero = (0,) * V.dim
    acc = {(0, tuple(-int(2 * x) for x in wd.rho)): 1}
    support = sorted(V.mult.items())
    for v, c in support:
        if v != zero and V.pair(v, wd.chamber) > 0:
            acc = _mul_factor(acc, 0, v, c, order)
    for n in range(1, order + 1):
        for v, c in support:
            acc = _mul_factor(acc, n, v, c, order)
    return PsiSeries(V.dim, Fraction(wd.d, 24), acc, order)


def _mul_factor(acc, n, v, mult, order):
    # one factor (1 - q^n zeta^v)^mult, binomially expanded on the doubled grid
    terms = []
    for k in range(mult + 1):
        if n * k > order:
            break
        terms.append((n * k, tuple(2 * k * x for x in v), (-1) ** k * comb(mult, k)))
    out = {}
    for (qn, r), c in acc.items():
        for dq, dr, fc in terms:
            q2 = qn + dq
            if q2 > order:
                continue
            key = (q2, tuple(a + b for a, b in zip(r, dr)))
            val = out.get(key, 0) + c * fc
            if val:
                out[key] = val
            elif key in out:
                del out[key]
    return out


def _integral_pair(V, a, b, what):
    p = V.pair(a, b)
    if Fraction(p).denominator != 1:
        raise ValueError(f"{what} pairs non-integrally: ({a}, {b}) = {p}")
    return int(p)


def elliptic_transform_check(V: VectorSystem, lam, shift, order: int,
                             kind: str = "mu") -> VerifyReport:
    """Formal substitution check of one elliptic shift law of psi.

    kind "mu":  psi(tau, z + mu)      = (-1)^(2(rho,mu)) psi(tau, z)
    kind "tau": psi(tau, z + L*tau)   = (-1)^(2(rho,L)) q^(-m(L,L)/2) zeta^(-mL) psi

    The shift must pair integrally with every support vector.  For the tau
    law both sides pick up column-dependent fractional q-exponents, so each
    zeta-column is compared within its own known range.
    """
    if kind not in ("mu", "tau"):
        raise ValueError("kind must be 'mu' or 'tau'")
    shift = tuple(Fraction(x) for x in shift)
    for v in V.mult:
        _integral_pair(V, shift, v, "shift vector")
    p = psi(V, lam, order)
    wd = weyl_data(V, lam)
    two_rho = tuple(int(2 * x) for x in wd.rho)
    sign = -1 if _integral_pair(V, shift, two_rho, "shift vector") % 2 else 1

    if kind == "mu":
        lhs = {}
        for (n, r), c in p.coeffs.items():
            flip = _integral_pair(V, shift, r, "shift vector")  # 2(mu, r/2)
            lhs[(n, r)] = -c if flip % 2 else c
        rhs = {k: sign * c for k, c in p.coeffs.items()}
        mismatch = None
        for key in sorted(set(lhs) | set(rhs)):
            if lhs.get(key, 0) != rhs.get(key, 0):
                mismatch = (key, lhs.get(key, 0), rhs.get(key, 0))
                break
        return VerifyReport("elliptic_mu_shift", order, mismatch is None, mismatch)

    m_ll = wd.m * V.pair(shift, shift)  # rhs q-exponent drops by m(L,L)/2
    key_shift = tuple(2 * wd.m * x for x in shift)
    if any(Fraction(x).denominator != 1 for x in key_shift):
        raise ValueError(f"zeta^(-m*shift) leaves the doubled grid: {key_shift}")
    key_shift = tuple(int(x) for x in key_shift)
    lhs_cols, lhs_known = {}, {}
    for (n, r), c in p.coeffs.items():
        delta = Fraction(V.pair(shift, r), 2)  # (L, r/2)
        lhs_cols.setdefault(r, {})[n + delta] = c
        lhs_known[r] = order + delta
    rhs_cols = {}
    rhs_known = order - Fraction(m_ll, 2)
    for (n, r), c in p.coeffs.items():
        col = tuple(a - b for a, b in zip(r, key_shift))
        rhs_cols.setdefault(col, {})[n - Fraction(m_ll, 2)] = sign * c
    mismatch = None
    for r in sorted(set(lhs_cols) | set(rhs_cols)):
        left = lhs_cols.get(r, {})
        right = rhs_cols.get(r, {})
        known = min(lhs_known.get(r, order + Fraction(V.pair(shift, r), 2)), rhs_known)
        for e in sorted(set(left) | set(right)):
            if e <= known and left.get(e, 0) != right.get(e, 0):
                mismatch = ((e, r), left.get(e, 0), right.get(e, 0))
                break
        if mismatch:
            break
    return VerifyReport("elliptic_tau_shift", order, mismatch is None, mismatch)
