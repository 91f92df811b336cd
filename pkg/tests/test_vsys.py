from fractions import Fraction

import pytest

from qmoon.vsys import (
    PsiSeries,
    VectorSystem,
    elliptic_transform_check,
    psi,
    sample_system,
    validate,
    weyl_data,
)


def euler_factors(order, power=1):
    # independent expansion of prod_{n<=order} (1 - q^n)^power, plain dict arithmetic
    acc = {0: 1}
    for n in range(1, order + 1):
        for _ in range(power):
            new = dict(acc)
            for e, c in acc.items():
                if e + n <= order:
                    new[e + n] = new.get(e + n, 0) - c
            acc = {e: c for e, c in new.items() if c}
    return acc


def test_validate_pair_system():
    diag = validate(sample_system("pair"))
    assert diag["valid"]
    assert diag["scalar"] == 4
    assert diag["failures"] == []


def test_validate_orthogonal_sum():
    diag = validate(sample_system("orthogonal"))
    assert diag["valid"] and diag["scalar"] == 4


def test_validate_norm_zero_system():
    diag = validate(sample_system("trivial"))
    assert diag["valid"] and diag["scalar"] == 0


def test_validate_rank_one_support_fails_sphere():
    V = VectorSystem(2, ((2, 0), (0, 2)), {(1, 0): 1, (-1, 0): 1})
    diag = validate(V)
    assert not diag["valid"]
    assert diag["scalar"] is None
    assert {"property": "sphere", "direction": [1, 1]} in diag["failures"]


def test_validate_asymmetric_multiplicity():
    V = VectorSystem(1, ((2,),), {(1,): 2, (-1,): 1})
    diag = validate(V)
    assert not diag["valid"]
    assert {"property": "symmetry", "vector": [-1]} in diag["failures"]


def test_constructor_rejects_bad_input():
    with pytest.raises(ValueError, match="symmetric"):
        VectorSystem(2, ((2, 1), (0, 2)), {})
    with pytest.raises(ValueError, match="positive definite"):
        VectorSystem(2, ((1, 2), (2, 1)), {})
    with pytest.raises(ValueError, match="dimension"):
        VectorSystem(2, ((2, 0), (0, 2)), {(1,): 1})
    with pytest.raises(ValueError, match="nonnegative"):
        VectorSystem(1, ((2,),), {(1,): -1})
    with pytest.raises(ValueError, match="unknown sample"):
        sample_system("octonionic")


def test_json_round_trip():
    for name in ("pair", "orthogonal", "trivial"):
        V = sample_system(name)
        data = V.to_json()
        W = VectorSystem.from_json(data)
        assert W.dim == V.dim and W.gram == V.gram and W.mult == V.mult
    data = sample_system("orthogonal").to_json()
    assert "1,0" in data["mult"] and "-1,0" in data["mult"]


def test_weyl_data_pair_system():
    wd = weyl_data(sample_system("pair"), (1,))
    assert wd.rho == (Fraction(1, 2),)
    assert wd.d == 2
    assert wd.k == 0
    assert wd.m == 2


def test_weyl_data_norm_zero_system():
    wd = weyl_data(sample_system("trivial"), (1,))
    assert wd.rho == (Fraction(0),)
    assert (wd.d, wd.k, wd.m) == (2, 1, 0)


def test_weyl_data_chamber_boundary():
    with pytest.raises(ValueError, match="orthogonal to support vector"):
        weyl_data(sample_system("orthogonal"), (0, 1))
    with pytest.raises(ValueError, match="wrong dimension"):
        weyl_data(sample_system("pair"), (1, 0))


def test_weyl_data_non_integer_index():
    V = VectorSystem(2, ((1, 0), (0, 3)), {(1, 0): 1, (-1, 0): 1})
    with pytest.raises(ArithmeticError, match="not an integer"):
        weyl_data(V, (1, 1))


def test_psi_pair_low_terms():
    p = psi(sample_system("pair"), (1,), 2)
    assert p.qpre == Fraction(1, 12)
    assert p.coeffs == {
        (0, (-1,)): 1, (0, (1,)): -1,
        (1, (-3,)): -1, (1, (-1,)): 1, (1, (1,)): -1, (1, (3,)): 1,
        (2, (-3,)): -1, (2, (-1,)): 2, (2, (1,)): -2, (2, (3,)): 1,
    }


def test_psi_norm_zero_is_eta_power_shape():
    p = psi(sample_system("trivial"), (1,), 12)
    assert p.qpre == Fraction(1, 12)
    expect = euler_factors(12, power=2)
    assert {n: c for (n, r), c in p.coeffs.items() if r == (0,)} == expect
    assert all(r == (0,) for (n, r) in p.coeffs)


def test_psi_empty_system_is_one():
    p = psi(VectorSystem(1, ((2,),), {}), (1,), 5)
    assert p.qpre == 0
    assert p.coeffs == {(0, (0,)): 1}


def test_psi_triple_product_pattern():
    # psi * prod(1-q^n) must collapse to sum_{j in Z} (-1)^(j+1) q^(j(j+1)/2) zeta^(j+1/2)
    order = 10
    p = psi(sample_system("pair"), (1,), order)
    euler = euler_factors(order)
    lhs = {}
    for (n, r), c in p.coeffs.items():
        for e, ec in euler.items():
            if n + e <= order:
                key = (n + e, r)
                lhs[key] = lhs.get(key, 0) + c * ec
    lhs = {k: c for k, c in lhs.items() if c}
    rhs = {}
    for j in range(-6, 7):
        q = j * (j + 1) // 2
        if q <= order:
            rhs[(q, (2 * j + 1,))] = (-1) ** (j + 1)
    assert lhs == rhs


def test_psi_chamber_independence():
    V = sample_system("pair")
    assert psi(V, (1,), 8) == psi(V, (5,), 8)
    W = sample_system("orthogonal")
    assert psi(W, (1, 2), 6) == psi(W, (3, 1), 6)


def test_psi_chamber_flip_sign():
    # flipping the chamber rescales by (-1)^(number of positive vectors)
    V = sample_system("pair")  # one positive vector: sign flips
    p, m = psi(V, (1,), 6), psi(V, (-1,), 6)
    assert m.coeffs == {k: -c for k, c in p.coeffs.items()}
    W = sample_system("orthogonal")  # two positive vectors: series agree
    assert psi(W, (1, 2), 6) == psi(W, (-1, -2), 6)


def test_weyl_vectors_differ_by_lattice():
    for name in ("pair", "orthogonal"):
        V = sample_system(name)
        lam = (1,) * V.dim
        plus = weyl_data(V, lam).rho
        minus = weyl_data(V, tuple(-x for x in lam)).rho
        assert all((a - b).denominator == 1 for a, b in zip(plus, minus))


def test_psi_series_guards():
    p = psi(sample_system("pair"), (1,), 4)
    assert p.coeff(2, (-1,)) == 2
    assert p.coeff(3, (99,)) == 0
    with pytest.raises(ValueError, match="unknown"):
        p.coeff(5, (1,))
    with pytest.raises(ValueError, match="above trunc"):
        PsiSeries(1, 0, {(3, (0,)): 1}, 2)
    cols = p.columns()
    assert cols[(-1,)][0] == 1 and cols[(-1,)][2] == 2


def test_psi_json_shape():
    data = psi(sample_system("pair"), (1,), 1).to_json()
    assert data["qpre"] == "1/12" and data["dim"] == 1 and data["trunc"] == 1
    assert {"q": 0, "zeta2": [-1], "c": 1} in data["terms"]


@pytest.mark.parametrize("kind", ["mu", "tau"])
@pytest.mark.parametrize("shift", [1, -1])
def test_pair_system_shift_laws(kind, shift):
    report = elliptic_transform_check(sample_system("pair"), (1,), (shift,), 12, kind=kind)
    assert report.passed and report.first_mismatch is None
    assert report.name == f"elliptic_{kind}_shift"
    assert report.order == 12


@pytest.mark.parametrize("kind", ["mu", "tau"])
def test_pair_system_dual_half_shift(kind):
    # gram (2) has dual lattice (1/2)Z; the laws hold for genuine dual vectors
    report = elliptic_transform_check(
        sample_system("pair"), (1,), (Fraction(1, 2),), 12, kind=kind)
    assert report.passed


@pytest.mark.parametrize("shift", [(1, 0), (0, 1), (1, -1),
                                   (Fraction(1, 2), Fraction(1, 2))])
@pytest.mark.parametrize("kind", ["mu", "tau"])
def test_orthogonal_sum_shift_laws(shift, kind):
    report = elliptic_transform_check(sample_system("orthogonal"), (1, 2), shift, 8, kind=kind)
    assert report.passed


def test_shift_outside_dual_lattice_rejected():
    with pytest.raises(ValueError, match="non-integrally"):
        elliptic_transform_check(sample_system("pair"), (1,), (Fraction(1, 4),), 6)
    with pytest.raises(ValueError, match="kind"):
        elliptic_transform_check(sample_system("pair"), (1,), (1,), 6, kind="weyl")


def test_shift_law_catches_wrong_sign():
    # breaking the product by hand must surface as a first mismatch, not a pass
    V = sample_system("pair")
    p = psi(V, (1,), 6)
    bad = dict(p.coeffs)
    bad[(1, (1,))] = bad[(1, (1,))] + 1
    q = PsiSeries(1, p.qpre, bad, 6)
    assert q != p
