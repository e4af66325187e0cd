import pytest

from orderthh.numring import (
    AbelianGroupFG,
    GlobalAlgebraSpec,
    NotPMaximalError,
    NumberRingSpec,
    RamifiedPrime,
    UncertifiedError,
    discriminant,
    factor_prime,
    hh_U,
    integer_snf,
    local_global_consistency,
    resultant,
    thh_U,
    thh_V,
)


def test_resultant_and_discriminant():
    # disc(x^2+1) = -4, disc(x^2-x-1) = 5
    assert discriminant([1, 0, 1]) == -4
    assert discriminant([-1, -1, 1]) == 5
    assert resultant([2, 1], [3, 1]) == 1  # res(x+2, x+3) = g(-2) = 1
    assert discriminant([0, 1]) == 1


def test_irreducibility_certificate():
    NumberRingSpec((0, 1))  # x
    NumberRingSpec((1, 0, 1))  # x^2+1
    with pytest.raises(UncertifiedError):
        NumberRingSpec((1, 2, 1))  # (x+1)^2 reducible
    with pytest.raises(ValueError):
        NumberRingSpec((1, 0, 2))  # not monic


def test_factor_prime_examples():
    spec = NumberRingSpec((1, 0, 1))  # x^2 + 1
    five = factor_prime(spec, 5)
    assert [(mult, deg) for _, mult, deg in five] == [(1, 1), (1, 1)]
    two = factor_prime(spec, 2)
    assert [(mult, deg) for _, mult, deg in two] == [(2, 1)]  # ramified, Z[i] maximal
    three = factor_prime(spec, 3)
    assert [(mult, deg) for _, mult, deg in three] == [(1, 2)]


def test_dedekind_rejects_non_maximal():
    # Z[sqrt(5)] via x^2 - 5 is not maximal at 2
    spec = NumberRingSpec((-5, 0, 1))
    with pytest.raises(NotPMaximalError):
        factor_prime(spec, 2)
    # but is maximal at 5
    assert factor_prime(spec, 5)


def test_integer_snf():
    assert integer_snf([[0, -2], [2, 0]]) == [2, 2]
    assert integer_snf([[2, 0], [0, 3]]) == [1, 6]
    assert integer_snf([[1, 0], [0, 0]]) == [1, 0]


def test_thh_V_of_Z():
    spec = NumberRingSpec((0, 1))
    assert thh_V(spec, 0) == AbelianGroupFG(1, ())
    for a in range(1, 7):
        got = thh_V(spec, 2 * a - 1)
        assert got.free_rank == 0 and got.order_torsion() == a
    assert thh_V(spec, 2).is_zero()
    assert thh_V(spec, -3).is_zero()


def test_thh_V_gaussian():
    spec = NumberRingSpec((1, 0, 1))
    got = thh_V(spec, 1)  # coker of 2 theta: (Z/2)^2
    assert got.prime_powers == ((2, 1), (2, 1))
    got3 = thh_V(spec, 3)  # V/(2 * 2 theta), order 16
    assert got3.order_torsion() == 16
    assert got3.prime_powers == ((2, 2), (2, 2))


def test_thh_V_order_identity():
    # |THH_{2a-1}(V)| = a^m |disc f| for monogenic maximal models
    for coeffs in [(0, 1), (1, 0, 1), (1, 1, 1)]:
        spec = NumberRingSpec(coeffs)
        m = spec.degree
        for a in (1, 2, 3, 4):
            got = thh_V(spec, 2 * a - 1)
            assert got.order_torsion() == a**m * abs(spec.disc)


def test_thh_U_hurwitz():
    gspec = GlobalAlgebraSpec(
        center=NumberRingSpec((0, 1)),
        ramification=(RamifiedPrime(p=2, factor_index=0, e=2),),
    )
    assert thh_U(gspec, 0) == AbelianGroupFG(1, ((2, 1),))
    assert thh_U(gspec, 4).torsion_strings() == ["2^1"]
    assert thh_U(gspec, 3).torsion_strings() == ["2^1"]  # THH_3(Z) = Z/2
    assert thh_U(gspec, 1).is_zero()
    assert thh_U(gspec, 7).torsion_strings() == ["2^2"]  # a = 4


def test_hh_U_even_degrees_match_thh():
    gspec = GlobalAlgebraSpec(
        center=NumberRingSpec((0, 1)),
        ramification=(RamifiedPrime(p=2, factor_index=0, e=2),),
    )
    for i in (0, 2, 4, 6):
        assert hh_U(gspec, i) == thh_U(gspec, i)
    # odd degrees: HH uses f' alone; for V = Z that is trivial
    assert hh_U(gspec, 5).is_zero()


def test_hh_U_gaussian_odd():
    gspec = GlobalAlgebraSpec(center=NumberRingSpec((1, 0, 1)), ramification=())
    got = hh_U(gspec, 3)
    assert got.prime_powers == ((2, 1), (2, 1))  # V/(2 theta) in every odd degree
    assert hh_U(gspec, 7) == got


def test_local_global_consistency_hurwitz():
    gspec = GlobalAlgebraSpec(
        center=NumberRingSpec((0, 1)),
        ramification=(RamifiedPrime(p=2, factor_index=0, e=2),),
    )
    for i in (1, 2, 3, 5, 6):
        report = local_global_consistency(gspec, i)
        assert all(status == "ok" for *_, status in report)


def test_local_global_consistency_unramified():
    gspec = GlobalAlgebraSpec(center=NumberRingSpec((1, 0, 1)), ramification=())
    for i in (2, 4):
        assert local_global_consistency(gspec, i) == []


def test_local_global_inert_prime_tower():
    # ramified division algebra over the inert prime 3 of Q(i): r = 2 tower
    gspec = GlobalAlgebraSpec(
        center=NumberRingSpec((1, 0, 1)),
        ramification=(RamifiedPrime(p=3, factor_index=0, e=2),),
    )
    assert thh_U(gspec, 2).torsion_strings() == ["3^1", "3^1"]  # F_9 once
    for i in (2, 3, 4):
        report = local_global_consistency(gspec, i)
        assert all(status == "ok" for *_, status in report)


def test_local_global_with_user_eisenstein():
    # center Z[sqrt(2)]: the prime above 2 ramifies over p, so the tower needs
    # the user-supplied Eisenstein polynomial z^2 - 2
    gspec = GlobalAlgebraSpec(
        center=NumberRingSpec((-2, 0, 1)),
        ramification=(
            RamifiedPrime(p=2, factor_index=0, e=2, local_eisenstein=(-2, 0, 1)),
        ),
    )
    # |THH_1(V)| = |V/(2 theta)| = 8; locally f_P (d v_2(1) + diff) = 1*(0+3)
    for i in (1, 2, 3, 4):
        report = local_global_consistency(gspec, i)
        assert all(status == "ok" for *_, status in report), (i, report)


def test_local_global_skips_without_eisenstein():
    gspec = GlobalAlgebraSpec(
        center=NumberRingSpec((-2, 0, 1)),
        ramification=(RamifiedPrime(p=2, factor_index=0, e=2),),
    )
    report = local_global_consistency(gspec, 1)
    assert any(status == "skipped" for *_, status in report)


def test_local_eisenstein_degree_validated():
    gspec = GlobalAlgebraSpec(
        center=NumberRingSpec((-2, 0, 1)),
        ramification=(
            RamifiedPrime(p=2, factor_index=0, e=2, local_eisenstein=(-2, 1)),
        ),
    )
    with pytest.raises(ValueError):
        local_global_consistency(gspec, 2)
