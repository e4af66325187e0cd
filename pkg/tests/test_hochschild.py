import numpy as np
import pytest

from orderthh.algebra import build_modp
from orderthh.ffield import fq_make
from orderthh.fpmod import rank_mod_p
from orderthh.hochschild import (
    Bimodule,
    OracleSizeError,
    hochschild_homology,
    plain_differential,
    plain_hh_dims,
    relative_chain_basis,
    relative_differential,
    relative_hh_dims,
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


def field_algebra(p, r):
    """F_{p^r} as an F_p structure algebra (commutative sanity case)."""
    from orderthh.algebra import StructureAlgebra

    fq = fq_make(p, r)
    dim = r
    table = np.zeros((dim, dim, dim), dtype=np.int64)
    basis = [fq.gen() ** i for i in range(r)]
    for i in range(r):
        for j in range(r):
            prod = basis[i] * basis[j]
            table[i, j] = prod.coeffs
    unit = np.zeros(dim, dtype=np.int64)
    unit[0] = 1
    return StructureAlgebra(
        ring="Fp", p=p, precision=1, dim=dim, labels=tuple((i,) for i in range(r)),
        table=table, unit=unit, meta={},
    )


def test_plain_dd_zero(towers):
    for t in towers.values():
        alg = build_modp(t)
        coeff = Bimodule.regular(alg)
        if alg.dim > 8:
            continue
        d1 = plain_differential(alg, coeff, 1, entry_cap=10_000_000)
        d2 = plain_differential(alg, coeff, 2, entry_cap=10_000_000)
        d3 = plain_differential(alg, coeff, 3, entry_cap=10_000_000)
        assert not np.any(d1 @ d2 % t.p)
        assert not np.any(d2 @ d3 % t.p)


def test_hh0_of_field_is_field():
    alg = field_algebra(3, 2)
    dims = plain_hh_dims(alg, [0, 1, 2])
    # commutative separable: HH_0 = the algebra, higher vanishes
    assert dims[0] == 2
    assert dims[1] == 0
    assert dims[2] == 0


def test_plain_hh_fix_a(towers):
    alg = build_modp(towers["A"])
    dims = plain_hh_dims(alg, [0, 1, 2, 3])
    assert dims[0] == 2
    assert dims[1] == 1
    assert dims[2] == 1
    assert dims[3] == 1


def test_entry_cap_guard(towers):
    alg = build_modp(towers["D"])
    with pytest.raises(OracleSizeError):
        plain_differential(alg, Bimodule.regular(alg), 5, entry_cap=10_000)


def test_relative_dd_zero(towers):
    for t in towers.values():
        b0 = relative_chain_basis(t, 0)
        b1 = relative_chain_basis(t, 1)
        b2 = relative_chain_basis(t, 2)
        b3 = relative_chain_basis(t, 3)
        d1 = relative_differential(t, 1, b1, b0)
        d2 = relative_differential(t, 2, b2, b1)
        d3 = relative_differential(t, 3, b3, b2)
        assert not np.any(d1 @ d2 % t.p)
        assert not np.any(d2 @ d3 % t.p)


def test_relative_matches_plain_small_degrees(towers):
    # the central cross-validation of the two oracle routes
    plans = {"A": [0, 1, 2, 3], "B": [0, 1, 2], "C": [0, 1, 2, 3], "D": [0, 1]}
    for name, degs in plans.items():
        t = towers[name]
        alg = build_modp(t)
        plain = plain_hh_dims(alg, degs, entry_cap=10_000_000)
        rel = relative_hh_dims(t, degs)
        assert plain == rel, f"fixture {name}: {plain} vs {rel}"


def test_relative_matches_plain_r2():
    # an r > 1 tower: F_S = F_9, checks the twist handling beyond prime fields
    t = make_tower(3, 2, [-3, 1], 2, K=4)
    alg = build_modp(t)
    degs = [0, 1, 2]
    assert plain_hh_dims(alg, degs, entry_cap=10_000_000) == relative_hh_dims(t, degs)


def test_relative_generator_exponent_invariance():
    t1 = make_tower(2, 1, [-2, 0, 1], 3)
    t2 = make_tower(2, 1, [-2, 0, 1], 3, generator_exponent=2)
    degs = [0, 1, 2, 3]
    assert relative_hh_dims(t1, degs) == relative_hh_dims(t2, degs)


def test_expected_dims_all_fixtures(towers):
    # frozen from the oracle; agree with dim_Fp(F_S^(n-1) + S/(p, P'(pi)))
    expected = {
        "A": {0: 2, 1: 1, 2: 1, 3: 1, 4: 1, 5: 1},
        "B": {0: 3, 1: 2, 2: 2, 3: 2, 4: 2, 5: 2},
        "C": {0: 2, 1: 1, 2: 1, 3: 1, 4: 1, 5: 1},
        "D": {0: 4, 1: 4, 2: 4, 3: 4},
    }
    for name, want in expected.items():
        t = towers[name]
        got = relative_hh_dims(t, sorted(want))
        assert got == want, f"fixture {name}: {got}"


def test_hochschild_homology_dispatch(towers):
    alg = build_modp(towers["D"])
    rel = hochschild_homology(alg, [0, 1], method="relative")
    auto = hochschild_homology(alg, [0, 1], method="auto")
    assert rel == auto


def test_hochschild_complex_object(towers):
    from orderthh.hochschild import hochschild_complex

    alg = build_modp(towers["A"])
    cx = hochschild_complex(alg, max_deg=3, entry_cap=10_000_000)
    assert cx.dims[:3] == [4, 16, 64]
    dims = cx.homology_dims([0, 1, 2, 3])
    assert dims == {0: 2, 1: 1, 2: 1, 3: 1}
    assert cx.homology(0).pi_lengths == (1, 1)


def test_bimodule_conjugation_invariance(towers):
    # homology dims are invariant under a bimodule change of basis
    import numpy as np
    from orderthh.fpmod import inv_mod_p

    t = towers["A"]
    alg = build_modp(t)
    reg = Bimodule.regular(alg)
    rng = np.random.default_rng(42)
    while True:
        P = rng.integers(0, t.p, size=(alg.dim, alg.dim))
        try:
            Pinv = inv_mod_p(P, t.p)
            break
        except ValueError:
            continue
    conj = Bimodule(
        dim=alg.dim,
        left=[Pinv @ m @ P % t.p for m in reg.left],
        right=[Pinv @ m @ P % t.p for m in reg.right],
    )
    degs = [0, 1, 2]
    assert plain_hh_dims(alg, degs, coeff=conj, entry_cap=10_000_000) == plain_hh_dims(
        alg, degs, entry_cap=10_000_000
    )
