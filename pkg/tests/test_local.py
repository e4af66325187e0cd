import pytest

from orderthh.ffield import frobenius
from orderthh.local import AT_CAP, NotEisensteinError, Tower, make_tower

# the four local fixtures used throughout
FIX_A = dict(p=3, r=1, P=[-3, 1], n=2)
FIX_B = dict(p=3, r=1, P=[-3, 0, 1], n=2)
FIX_C = dict(p=2, r=1, P=[-2, 1], n=2)
FIX_D = dict(p=2, r=1, P=[-2, 0, 1], n=3)


def build(fix, K=None):
    return make_tower(fix["p"], fix["r"], fix["P"], fix["n"], K=K)


@pytest.fixture(scope="module")
def towers():
    return {name: build(fix) for name, fix in
            [("A", FIX_A), ("B", FIX_B), ("C", FIX_C), ("D", FIX_D)]}


def test_make_tower_shapes(towers):
    assert towers["A"].d == 1 and towers["A"].n == 2
    assert towers["B"].d == 2
    assert towers["D"].d == 2 and towers["D"].n == 3


def test_eisenstein_rejected():
    with pytest.raises(NotEisensteinError):
        make_tower(3, 1, [-9, 1], 2, K=4)  # v_p(c0) = 2
    with pytest.raises(NotEisensteinError):
        make_tower(3, 1, [-3, 1, 1], 2, K=4)  # middle coeff a unit
    with pytest.raises(ValueError):
        make_tower(4, 1, [-4, 1], 2, K=4)  # p not prime


def test_sigma_is_ring_hom_and_has_order_n(towers):
    import random

    rng = random.Random(7)
    for t in towers.values():
        T = t.T
        elems = []
        for _ in range(6):
            coeffs = [
                t.W2.elem([rng.randrange(t.R.pk) for _ in range(t.r * t.n)])
                for _ in range(t.d)
            ]
            elems.append(T.elem(coeffs))
        for x in elems:
            y = x
            for _ in range(t.n):
                y = t.sigma(y)
            assert y == x
        for x in elems[:3]:
            for y in elems[:3]:
                assert t.sigma(T.mul(x, y)) == T.mul(t.sigma(x), t.sigma(y))
                assert t.sigma(T.add(x, y)) == T.add(t.sigma(x), t.sigma(y))


def test_sigma_fixes_pi_and_embedded_s(towers):
    for t in towers.values():
        assert t.sigma(t.T.pi()) == t.T.pi()
        assert t.sigma(t.T.one()) == t.T.one()
        # fixes all of embedded S (basis elements)
        for u in range(t.r):
            for j in range(t.d):
                s = t.S.smul(t.R.pow(t.R.gen(), u), t.S.pi_pow(j))
                emb = t.embed_s(s)
                assert t.sigma(emb) == emb


def test_sigma_reduces_to_frobenius_power(towers):
    for t in towers.values():
        w2 = t.W2
        for k in range(t.r * t.n):
            b = w2.pow(w2.gen(), k)
            lhs = w2.residue(t.sigma_witt(b))
            rhs = frobenius(w2.residue(b), t.r)
            assert lhs == rhs


def test_trace_values(towers):
    for t in towers.values():
        assert t.trace_T_S(t.T.one()) == t.T.from_int(t.n)
        x = t.T.from_witt(t.W2.gen())
        assert t.trace_T_S(t.sigma(x)) == t.trace_T_S(x)
        # trace lands in embedded S: fixed by sigma
        tr = t.trace_T_S(x)
        assert t.sigma(tr) == tr


def test_trace_image_mod_pi_is_full_residue_field(towers):
    for t in towers.values():
        big = t.W2.residue_field
        image = set()
        for a in big.elements():
            x = t.T.from_witt(t.W2.lift(a))
            image.add(t.T.residue(t.trace_T_S(x)).coeffs)
        small = {a.coeffs for a in big.elements() if frobenius(a, t.r) == a}
        # residues of the trace image, re-expressed in the big field
        assert image == small


def test_trace_compose_one_minus_sigma_vanishes(towers):
    for t in towers.values():
        for k in range(t.n):
            x = t.T.from_witt(t.W2.pow(t.W2.gen(), k))
            y = t.T.sub(x, t.sigma_inv(x))
            assert t.T.is_zero(t.trace_T_S(y))


def test_valuations(towers):
    for t in towers.values():
        S = t.S
        assert S.val(S.pi()) == 1
        assert S.val(S.from_int(t.p)) == t.d
        assert t.valuation_pi(S.zero(), ring=S) is AT_CAP
        assert S.val(S.one()) == 0


def test_valuation_additive(towers):
    import random

    rng = random.Random(3)
    for t in towers.values():
        S = t.S
        for _ in range(20):
            a = S.elem([t.R.elem([rng.randrange(t.R.pk) for _ in range(t.r)]) for _ in range(t.d)])
            b = S.elem([t.R.elem([rng.randrange(t.R.pk) for _ in range(t.r)]) for _ in range(t.d)])
            va, vb = S.val(a), S.val(b)
            if va + vb < S.cap:
                assert S.val(S.mul(a, b)) == va + vb


def test_divide_by_pi_exact(towers):
    import random

    rng = random.Random(11)
    for t in towers.values():
        S = t.S
        for _ in range(15):
            a = S.elem([t.R.elem([rng.randrange(t.R.pk) for _ in range(t.r)]) for _ in range(t.d)])
            x = S.mul(S.pi(), a)
            y = S.divide_by_pi(x)
            assert S.mul(S.pi(), y) == x


def test_different_valuation():
    assert build(FIX_A).different_valuation == 0  # P' = 1
    assert build(FIX_B).different_valuation == 1  # P' = 2 pi, 2 a unit
    assert build(FIX_C).different_valuation == 0
    assert build(FIX_D).different_valuation == 3  # P' = 2 pi, v(2) = 2


def test_s_coords_roundtrip(towers):
    import random

    rng = random.Random(5)
    for t in towers.values():
        T = t.T
        for _ in range(10):
            x = T.elem(
                [t.W2.elem([rng.randrange(t.R.pk) for _ in range(t.r * t.n)]) for _ in range(t.d)]
            )
            coords = t.t_to_s_coords(x)
            assert t.s_coords_to_t(coords) == x


def test_r2_tower_embedding_and_sigma():
    # unramified quadratic base: R = W(F_9), T degree 4 Witt
    t = make_tower(3, 2, [-3, 1], 2, K=4)
    assert t.r == 2 and t.n == 2
    # embedded R generator is fixed by sigma, not by global Frobenius
    g = t.embed_witt(t.R.gen())
    assert t.sigma_witt(g) == g
    assert t.W2.frob(g, 1) != g
    # sigma has order 2 on W'
    b = t.W2.gen()
    assert t.sigma_witt(t.sigma_witt(b)) == b
    # coordinates round-trip
    x = t.T.from_witt(t.W2.pow(t.W2.gen(), 3))
    assert t.s_coords_to_t(t.t_to_s_coords(x)) == x


def test_integral_x_squared_relation_fix_a(towers):
    # x^n = pi and pi = p when d = 1
    t = towers["A"]
    assert t.S.pi() == t.S.from_int(3)


def test_precision_choice_gives_dk_at_least_8(towers):
    for t in towers.values():
        assert t.d * t.K >= 8


def test_tower_toml_roundtrip(towers):
    from orderthh.local import tower_from_dict, tower_to_dict

    for t in towers.values():
        again = tower_from_dict(tower_to_dict(t))
        assert (again.p, again.r, again.d, again.n, again.K) == (
            t.p, t.r, t.d, t.n, t.K,
        )
        assert again.P_int == t.P_int
