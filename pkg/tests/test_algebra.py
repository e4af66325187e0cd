import numpy as np
import pytest

from orderthh.algebra import (
    SplitBasis,
    StructureAlgebra,
    build_integral,
    build_modp,
    split_scalars,
)
from orderthh.local import make_tower

FIXES = {
    "A": (3, 1, [-3, 1], 2),
    "B": (3, 1, [-3, 0, 1], 2),
    "C": (2, 1, [-2, 1], 2),
    "D": (2, 1, [-2, 0, 1], 3),
}


@pytest.fixture(scope="module")
def towers():
    return {k: make_tower(*v) for k, v in FIXES.items()}


def test_modp_dimensions(towers):
    assert build_modp(towers["A"]).dim == 4
    assert build_modp(towers["B"]).dim == 8
    assert build_modp(towers["D"]).dim == 18


def test_modp_center(towers):
    # center of A/(p) is S/(p): dimension d*r over F_p
    assert build_modp(towers["A"]).center_dimension() == 1
    assert build_modp(towers["B"]).center_dimension() == 2
    assert build_modp(towers["D"]).center_dimension() == 2


def test_integral_reduces_to_modp(towers):
    for t in towers.values():
        ai = build_integral(t)
        ap = build_modp(t)
        assert np.array_equal(ai.table % t.p, ap.table)


def test_integral_x_relations(towers):
    t = towers["A"]
    alg = build_integral(t)
    idx = {lab: i for i, lab in enumerate(alg.labels)}
    x = np.zeros(alg.dim, dtype=np.int64)
    x[idx[(0, 0, 1)]] = 1
    sq = alg.mul_vec(x, x)
    expect = np.zeros(alg.dim, dtype=np.int64)
    expect[idx[(0, 0, 0)]] = 3  # x^2 = pi = 3 when d = 1
    assert np.array_equal(sq, expect)

    t = towers["B"]
    alg = build_integral(t)
    idx = {lab: i for i, lab in enumerate(alg.labels)}
    x = np.zeros(alg.dim, dtype=np.int64)
    x[idx[(0, 0, 1)]] = 1
    sq = alg.mul_vec(x, x)
    expect = np.zeros(alg.dim, dtype=np.int64)
    expect[idx[(0, 1, 0)]] = 1  # x^2 = pi
    assert np.array_equal(sq, expect)
    pi = expect
    pisq = alg.mul_vec(pi, pi)
    expect2 = np.zeros(alg.dim, dtype=np.int64)
    expect2[idx[(0, 0, 0)]] = 3  # pi^2 = 3
    assert np.array_equal(pisq, expect2)


def test_json_roundtrip(towers):
    alg = build_modp(towers["B"])
    again = StructureAlgebra.from_json(alg.to_json())
    assert np.array_equal(alg.table, again.table)
    assert again.to_json() == alg.to_json()


def test_split_basis_rule_matches_stated_form_d1():
    b = SplitBasis(n=2, d=1)
    # with d = 1 the x-overflow hits pi^1 = 0, reproducing the bare rule
    assert b.product((0, 0, 1), (1, 0, 0)) == (0, 0, 1)
    assert b.product((0, 0, 1), (0, 0, 0)) is None
    assert b.product((0, 0, 1), (1, 0, 1)) is None  # x^2 = pi = 0


def test_split_basis_rule_with_carry():
    b = SplitBasis(n=2, d=2)
    # x * x = pi survives when d > 1
    assert b.product((0, 0, 1), (1, 0, 1)) == (0, 1, 0)


def test_split_basis_weakly_monoidal(towers):
    for t in towers.values():
        b = SplitBasis(n=t.n, d=t.d)
        labels = set(b.labels())
        for a in labels:
            for c in labels:
                prod = b.product(a, c)
                assert prod is None or prod in labels


def test_split_scalars_phi_iso(towers):
    for name in ("A", "B", "C"):
        split_alg, basis, phi = split_scalars(towers[name])
        t = towers[name]
        assert split_alg.dim == t.n * t.r * t.n**2 * t.d


def test_split_scalars_idempotents(towers):
    t = towers["B"]
    split_alg, basis, _ = split_scalars(t)
    idx = {lab: i for i, lab in enumerate(split_alg.labels)}
    for i in range(t.n):
        for j in range(t.n):
            ei = np.zeros(split_alg.dim, dtype=np.int64)
            ei[idx[(0, i, 0, 0)]] = 1
            ej = np.zeros(split_alg.dim, dtype=np.int64)
            ej[idx[(0, j, 0, 0)]] = 1
            prod = split_alg.mul_vec(ei, ej)
            assert np.array_equal(prod, ei if i == j else np.zeros_like(ei))


def test_split_scalars_unit_is_sum_of_idempotents(towers):
    t = towers["C"]
    split_alg, _, phi = split_scalars(t)
    # phi(1 (x) 1) = (1, ..., 1) = the split unit
    modp = build_modp(t)
    src = np.zeros(t.n * modp.dim, dtype=np.int64)
    src[0] = 1  # c = 0 (t^0), a-index 0 = unit label (0,0,0)
    assert np.array_equal(phi @ src % t.p, split_alg.unit)


def test_split_scalars_d_fixture():
    t = make_tower(2, 1, [-2, 0, 1], 3)
    split_alg, _, _ = split_scalars(t)
    assert split_alg.dim == 54


def test_generator_exponent_variant():
    t = make_tower(2, 1, [-2, 0, 1], 3, generator_exponent=2)
    alg = build_modp(t)
    assert alg.dim == 18
    assert alg.center_dimension() == 2
