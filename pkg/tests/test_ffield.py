import pytest
from hypothesis import given, settings, strategies as st

from orderthh.ffield import (
    FpPolyFactorization,
    NotPrimeError,
    factor_poly,
    fq_make,
    frobenius,
    is_irreducible,
    is_prime,
    pmul,
    pnorm,
    trace_rel,
)

SMALL_FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (3, 4), (2, 6)]
EXHAUSTIVE_FIELDS = [(p, r) for (p, r) in SMALL_FIELDS if p**r <= 81]


def test_fq_make_moduli():
    assert fq_make(3, 1).modulus == (0, 1)  # t
    assert fq_make(3, 2).modulus == (1, 0, 1)  # t^2 + 1
    assert fq_make(2, 2).modulus == (1, 1, 1)  # t^2 + t + 1


def test_fq_make_rejects_bad_input():
    with pytest.raises(NotPrimeError):
        fq_make(6, 1)
    with pytest.raises(ValueError):
        fq_make(3, 0)


def test_field_axioms_exhaustive_f9():
    F = fq_make(3, 2)
    elems = list(F.elements())
    assert len(elems) == 9
    for a in elems:
        for b in elems:
            assert (a + b) - b == a
            assert a * b == b * a
            if not b.is_zero():
                assert (a * b) * b.inverse() == a


@pytest.mark.parametrize("p,r", EXHAUSTIVE_FIELDS)
def test_frobenius_is_ring_hom_and_has_order_r(p, r):
    F = fq_make(p, r)
    elems = list(F.elements())
    for a in elems:
        assert frobenius(a, r) == a
        assert frobenius(a, 1) == a**p
    for a in elems[: min(len(elems), 12)]:
        for b in elems[: min(len(elems), 12)]:
            assert frobenius(a * b, 1) == frobenius(a, 1) * frobenius(b, 1)
            assert frobenius(a + b, 1) == frobenius(a, 1) + frobenius(b, 1)


def test_frobenius_of_generator_f9():
    F = fq_make(3, 2)
    t = F.gen()
    assert frobenius(t, 1) == -t  # t^3 = -t since t^2 = -1


def test_trace_examples_f9():
    F = fq_make(3, 2)
    assert trace_rel(F.one(), 1) == F.from_int(2)
    assert trace_rel(F.gen(), 1) == F.zero()


@pytest.mark.parametrize("p,r", EXHAUSTIVE_FIELDS)
def test_trace_linear_and_surjective(p, r):
    F = fq_make(p, r)
    for sub in range(1, r + 1):
        if r % sub:
            continue
        image = {trace_rel(a, sub).coeffs for a in F.elements()}
        # image is the full subfield: fixed points of frobenius(.,sub)
        subfield = {a.coeffs for a in F.elements() if frobenius(a, sub) == a}
        assert image == subfield
        assert len(subfield) == p**sub


def test_trace_fixed_by_subfield_frobenius():
    F = fq_make(2, 6)
    for a in list(F.elements())[:16]:
        tr = trace_rel(a, 2)
        assert frobenius(tr, 2) == tr


def test_trace_rel_bad_subdegree():
    F = fq_make(3, 2)
    with pytest.raises(ValueError):
        trace_rel(F.one(), 3)


def test_factor_poly_examples():
    # x^2 + 1 mod 5 = (x+2)(x+3)
    fk = factor_poly([1, 0, 1], 5)
    assert fk.factors == (((2, 1), 1), ((3, 1), 1))
    # x^2 + 1 mod 3 irreducible
    fk = factor_poly([1, 0, 1], 3)
    assert fk.factors == (((1, 0, 1), 1),)
    # x^2 mod 2 = x with multiplicity 2
    fk = factor_poly([0, 0, 1], 2)
    assert fk.factors == (((0, 1), 2),)


def test_factor_poly_zero_rejected():
    with pytest.raises(ValueError):
        factor_poly([0, 0], 7)


def test_factor_poly_deterministic():
    f = [3, 1, 4, 1, 5, 9, 2, 6, 1]
    assert factor_poly(f, 7) == factor_poly(f, 7)


@settings(max_examples=150, deadline=None)
@given(
    p=st.sampled_from([2, 3, 5, 7]),
    coeffs=st.lists(st.integers(min_value=0, max_value=10), min_size=1, max_size=9),
)
def test_factor_poly_roundtrip_and_irreducible_parts(p, coeffs):
    f = pnorm(coeffs, p)
    if not f:
        return
    fk = factor_poly(list(f), p)
    assert isinstance(fk, FpPolyFactorization)
    assert pnorm(fk.product(), p) == f
    for g, _ in fk.factors:
        assert is_irreducible(list(g), p)


def test_factorization_multiplicity_char_p_power():
    # (x+1)^4 mod 2 has zero derivative at intermediate stages
    f = pmul(pmul([1, 1], [1, 1], 2), pmul([1, 1], [1, 1], 2), 2)
    fk = factor_poly(f, 2)
    assert fk.factors == (((1, 1), 4),)


def test_is_prime():
    assert is_prime(2) and is_prime(3) and is_prime(2**31 - 1)
    assert not is_prime(1) and not is_prime(561) and not is_prime(2**32 + 1)
