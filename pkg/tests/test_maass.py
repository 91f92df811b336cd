import random

import pytest

from qmoon.maass import (
    JacobiCoeffTable,
    SiegelCoeffTable,
    assemble_maass,
    maass_relation_check,
    v_operator,
)


def random_table(rng, k=None):
    k = k or rng.choice([4, 6, 10])
    coeffs = {}
    for _ in range(rng.randrange(1, 12)):
        n = rng.randrange(0, 7)
        rmax = int((4 * n) ** 0.5)
        r = rng.randrange(-rmax, rmax + 1) if rmax else 0
        coeffs[(n, r)] = rng.randrange(-9, 10)
    return JacobiCoeffTable(k, 1, coeffs)


SAMPLE = JacobiCoeffTable(
    10, 1, {(0, 0): 2, (1, 1): 3, (1, 2): 11, (2, 1): 5, (4, 2): 7, (1, 0): -4})


def test_v1_is_identity():
    assert v_operator(SAMPLE, 1) == SAMPLE
    rng = random.Random(3)
    for _ in range(5):
        t = random_table(rng)
        assert v_operator(t, 1) == t


def test_v2_single_divisor_entry():
    assert v_operator(SAMPLE, 2).coeff(1, 1) == SAMPLE.coeff(2, 1) == 5


def test_v2_two_divisor_entry():
    # gcd(2,2,2) = 2: c(4,2) + 2^9 c(1,1) = 7 + 512*3
    assert v_operator(SAMPLE, 2).coeff(2, 2) == 1543


def test_vm_at_origin_sums_divisor_powers():
    # gcd(0,0,m) = m, so every divisor contributes: (1 + 2^3 + 4^3) c(0,0)
    t = JacobiCoeffTable(4, 1, {(0, 0): 2})
    assert v_operator(t, 4).coeff(0, 0) == 73 * 2


def test_vm_requires_index_one():
    t = JacobiCoeffTable(4, 2, {(1, 1): 1})
    with pytest.raises(ValueError, match="index-1"):
        v_operator(t, 2)
    with pytest.raises(ValueError, match="positive"):
        v_operator(SAMPLE, 0)


def test_prime_m_entrywise_consequence():
    t = JacobiCoeffTable(
        6, 1, {(0, 0): 1, (1, 1): 2, (1, -2): 3, (2, 2): -1, (3, 3): 4, (9, 3): 5})
    for p in (2, 3, 5):
        layer = v_operator(t, p)
        for (n, r), val in layer.coeffs.items():
            want = t.coeff(p * n, r)
            if n % p == 0 and r % p == 0:
                want += p ** (t.k - 1) * t.coeff(n // p, r // p)
            assert val == want


def test_v_operator_linearity():
    ta = JacobiCoeffTable(6, 1, {(1, 1): 2, (2, 0): 3}, 16)
    tb = JacobiCoeffTable(6, 1, {(1, 1): -1, (3, 2): 4}, 16)
    comb = {key: 5 * ta.coeffs.get(key, 0) - 2 * tb.coeffs.get(key, 0)
            for key in set(ta.coeffs) | set(tb.coeffs)}
    tc = JacobiCoeffTable(6, 1, comb, 16)
    for m in (2, 3, 4, 6):
        la, lb, lc = v_operator(ta, m), v_operator(tb, m), v_operator(tc, m)
        keys = set(la.coeffs) | set(lb.coeffs) | set(lc.coeffs)
        for key in keys:
            assert lc.coeffs.get(key, 0) == (
                5 * la.coeffs.get(key, 0) - 2 * lb.coeffs.get(key, 0))


def test_assembly_layer_one_copies_table():
    s = assemble_maass(SAMPLE, 3)
    assert {(n, r): a for (n, r, m), a in s.coeffs.items() if m == 1} == SAMPLE.coeffs


def test_assembly_of_zero_table_is_zero():
    s = assemble_maass(JacobiCoeffTable(4, 1, {}), 5)
    assert s.coeffs == {}


def test_assembled_table_satisfies_relation():
    report = maass_relation_check(assemble_maass(SAMPLE, 4))
    assert report.passed and report.first_mismatch is None
    assert report.name == "maass_relation"
    assert report.order == SAMPLE.disc_bound


def test_relation_on_random_tables():
    rng = random.Random(11)
    for _ in range(100):
        t = random_table(rng)
        s = assemble_maass(t, rng.randrange(1, 6))
        assert maass_relation_check(s).passed


def test_perturbed_entry_fails_at_its_index():
    s = assemble_maass(SAMPLE, 4)
    bad = dict(s.coeffs)
    bad[(1, 1, 2)] = bad.get((1, 1, 2), 0) + 1
    report = maass_relation_check(SiegelCoeffTable(s.k, bad, s.disc_bound))
    assert not report.passed
    key, got, want = report.first_mismatch
    assert key == (1, 1, 2) and got == want + 1


def test_entry_cancelled_to_zero_is_still_caught():
    s = assemble_maass(SAMPLE, 4)
    key = sorted(k for k in s.coeffs if k[2] == 2)[0]
    bad = dict(s.coeffs)
    bad[key] = 0
    report = maass_relation_check(SiegelCoeffTable(s.k, bad, s.disc_bound))
    assert not report.passed
    assert report.first_mismatch[0] == key
    assert report.first_mismatch[1] == 0


def test_layers_inherit_discriminant_dependence():
    # source depends only on 4n - r^2 over a region closed under all the
    # references a window of targets (n <= 6, m <= 4) can make
    f = {d: (d * d + 3) % 17 - 8 for d in range(0, 97)}
    coeffs = {}
    for n in range(0, 25):
        r = 0
        while r * r <= 4 * n:
            for rr in (r, -r):
                coeffs[(n, rr)] = f[4 * n - rr * rr]
            r += 1
    s = assemble_maass(JacobiCoeffTable(4, 1, coeffs, 96), 4)
    groups = {}
    for (n, r, m), a in s.coeffs.items():
        if n <= 6:
            groups.setdefault((m, 4 * n * m - r * r, r % (2 * m)), set()).add(a)
    assert len(groups) > 100
    assert all(len(values) == 1 for values in groups.values())


def test_table_validation():
    with pytest.raises(ValueError, match="even positive"):
        JacobiCoeffTable(5, 1, {})
    with pytest.raises(ValueError, match="positive integer"):
        JacobiCoeffTable(4, 0, {})
    with pytest.raises(ValueError, match="outside the support"):
        JacobiCoeffTable(4, 1, {(0, 1): 3})
    with pytest.raises(ValueError, match=">= 0"):
        JacobiCoeffTable(4, 1, {(-1, 0): 3})
    with pytest.raises(ValueError, match="below stored support"):
        JacobiCoeffTable(4, 1, {(2, 0): 3}, 7)
    with pytest.raises(ValueError, match="m >= 1"):
        SiegelCoeffTable(4, {(1, 0, 0): 1})
    # zero entries outside the cusp support are tolerated and dropped
    t = JacobiCoeffTable(4, 1, {(0, 5): 0, (1, 1): 2})
    assert t.coeffs == {(1, 1): 2}


def test_coeff_outside_bound_raises():
    assert SAMPLE.coeff(3, 4) == 0  # below-diagonal support is zero by fiat
    with pytest.raises(ValueError, match="beyond known bound"):
        SAMPLE.coeff(100, 0)
    layer = v_operator(SAMPLE, 2)
    assert layer.disc_bound == SAMPLE.disc_bound
    with pytest.raises(ValueError, match="beyond known bound"):
        layer.coeff(50, 1)


def test_json_round_trips():
    t = JacobiCoeffTable.from_json(SAMPLE.to_json())
    assert t == SAMPLE and t.disc_bound == SAMPLE.disc_bound
    s = assemble_maass(SAMPLE, 3)
    s2 = SiegelCoeffTable.from_json(s.to_json())
    assert s2.coeffs == s.coeffs and s2.k == s.k and s2.disc_bound == s.disc_bound
    assert "1,1" in SAMPLE.to_json()["coeffs"]
    assert all("," in key for key in s.to_json()["coeffs"])
