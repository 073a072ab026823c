import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaproca.algebra import (
    EUCLIDEAN, MINKOWSKI, AlgebraSignature, Multivector, SignatureMismatch, adjoint, blade_name,
    boost_rotor, cayley_table, duality_rotor, exact_trig, grade_of, parse_signature, pseudoscalar,
    pseudoscalar_commutation, relative_basis, reverse, spacetime_split,
)
from gaproca.oracle import kernel_mismatches, oracle_product

SIGNATURES = [AlgebraSignature(1, 3), AlgebraSignature(4, 0), AlgebraSignature(3, 1), AlgebraSignature(2, 2)]
G0, G1, G2, G3 = (MINKOWSKI.gen(k) for k in range(4))

fractions = st.fractions(min_value=-10, max_value=10, max_denominator=12)


def multivectors(alg):
    return st.lists(fractions, min_size=alg.dim, max_size=alg.dim).map(
        lambda cs: Multivector.from_dict(alg, dict(enumerate(cs))))


def vectors(alg):
    return st.lists(fractions, min_size=alg.n, max_size=alg.n).map(alg.vector)


# signatures and basis ------------------------------------------------------------
def test_signature_validation():
    with pytest.raises(ValueError):
        AlgebraSignature(3, 2)
    with pytest.raises(ValueError):
        AlgebraSignature(0, 0)
    with pytest.raises(ValueError):
        parse_signature("13")
    assert parse_signature("2,2") == AlgebraSignature(2, 2)


def test_generator_squares_follow_metric():
    assert G0 * G0 == 1
    for g in (G1, G2, G3):
        assert g * g == -1
    for k in range(4):
        assert EUCLIDEAN.gen(k) ** 2 == 1


def test_generator_index_out_of_range():
    with pytest.raises(IndexError):
        MINKOWSKI.gen(4)


def test_distinct_generators_anticommute():
    assert G0 * G1 + G1 * G0 == 0
    assert G2 * G3 == -(G3 * G2)


@pytest.mark.parametrize("alg,square", [(MINKOWSKI, -1), (EUCLIDEAN, 1), (AlgebraSignature(2, 2), 1),
                                        (AlgebraSignature(3, 1), -1)])
def test_pseudoscalar_square(alg, square):
    i = pseudoscalar(alg)
    assert i * i == square


def test_pseudoscalar_anticommutes_with_vectors_in_four_dimensions():
    i = pseudoscalar(MINKOWSKI)
    assert i * G1 == -(G1 * i)
    assert pseudoscalar_commutation(G1) == -1
    assert pseudoscalar_commutation(G1 * G2) == 1
    assert pseudoscalar_commutation(EUCLIDEAN.gen(2)) == -1
    with pytest.raises(ValueError):
        pseudoscalar_commutation(G0 + G1 * G2)


def test_blade_names_and_printing():
    assert blade_name(MINKOWSKI, 0b1001) == "g0^g3"
    assert blade_name(EUCLIDEAN, 0b0110) == "e1^e2"
    assert str(G0 * G1) == "g0^g1"
    assert str(G1 * G0) == "-g0^g1"
    assert str(MINKOWSKI.zero()) == "0"
    mv = MINKOWSKI.scalar(Fraction(1, 2)) + G2 * 3
    assert str(mv) == "1/2 + 3 g2"


def test_cross_signature_operations_raise():
    with pytest.raises(SignatureMismatch):
        G0 * EUCLIDEAN.gen(0)
    with pytest.raises(SignatureMismatch):
        G0 + EUCLIDEAN.gen(0)


def test_grade_projection_and_bookkeeping():
    assert grade_of(0b1011) == 3
    mv = 2 + G0 + G1 * G2 + pseudoscalar(MINKOWSKI)
    assert mv.grade(0) == 2
    assert mv.grade(1) == G0
    assert mv.grade(2) == G1 * G2
    assert mv.grade(4) == pseudoscalar(MINKOWSKI)
    assert mv.grade(3) == 0


def test_reverse_signs_by_grade():
    assert reverse(G1 * G2) == G2 * G1
    assert reverse(G0 * G1 * G2) == G2 * G1 * G0
    assert reverse(pseudoscalar(MINKOWSKI)) == pseudoscalar(MINKOWSKI)


def test_adjoint_gives_positive_energy_norm():
    # E = 2 s1, B = s2: E^2 + B^2 = 5 and E^2 - B^2 = 3
    s1, s2, _ = relative_basis(MINKOWSKI)
    i = pseudoscalar(MINKOWSKI)
    F = 2 * s1 + i * s2
    assert (F * adjoint(F)).grade(0) == 5
    assert (F * F).grade(0) == 3
    assert (F * reverse(F)).grade(0) == -3   # the plain reverse only negates a bivector


# product laws --------------------------------------------------------------------
@pytest.mark.parametrize("alg", SIGNATURES, ids=str)
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_associativity_exact(alg, data):
    a, b, c = (data.draw(multivectors(alg)) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("alg", SIGNATURES, ids=str)
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_distributivity_exact(alg, data):
    a, b, c = (data.draw(multivectors(alg)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (b + c) * a == b * a + c * a


@pytest.mark.parametrize("alg", SIGNATURES, ids=str)
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_vector_product_is_inner_plus_outer(alg, data):
    a, b = data.draw(vectors(alg)), data.draw(vectors(alg))
    assert a * b == (a | b) + (a ^ b)
    assert (a | b) == (a * b + b * a) * Fraction(1, 2)
    assert (a ^ b) == (a * b - b * a) * Fraction(1, 2)


@pytest.mark.parametrize("alg", SIGNATURES, ids=str)
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_reverse_is_anti_automorphism(alg, data):
    a, b = data.draw(multivectors(alg)), data.draw(multivectors(alg))
    assert reverse(a * b) == reverse(b) * reverse(a)
    assert reverse(reverse(a)) == a


@settings(max_examples=25, deadline=None)
@given(a=multivectors(MINKOWSKI), b=multivectors(MINKOWSKI))
def test_adjoint_is_anti_automorphism(a, b):
    assert adjoint(a * b) == adjoint(b) * adjoint(a)
    assert adjoint(adjoint(a)) == a


@settings(max_examples=25, deadline=None)
@given(a=vectors(MINKOWSKI))
def test_vector_square_is_scalar(a):
    sq = a * a
    assert sq == sq.grade(0)


# oracle --------------------------------------------------------------------------
@pytest.mark.parametrize("alg", SIGNATURES, ids=str)
def test_kernel_matches_sorting_oracle(alg):
    assert kernel_mismatches(alg) == []


def test_oracle_spot_values():
    assert oracle_product(MINKOWSKI, 0b0010, 0b0001) == (-1, 0b0011)
    assert oracle_product(MINKOWSKI, 0b0010, 0b0010) == (-1, 0)
    assert cayley_table(MINKOWSKI)[0b0011][0b0011] == (1, 0)   # (g0 g1)^2 = +1


# split, rotors -------------------------------------------------------------------
def test_spacetime_split_of_vector():
    a = MINKOWSKI.vector([Fraction(3), Fraction(1), Fraction(-2), Fraction(5)])
    split = spacetime_split(a)
    assert split.time_scalar == 3
    assert split.spatial == (1, -2, 5)
    s1, s2, s3 = relative_basis(MINKOWSKI)
    assert a * G0 == split.time_scalar + s1 - 2 * s2 + 5 * s3
    assert split.recombine() == a
    with pytest.raises(ValueError):
        spacetime_split(G0 * G1)


def test_relative_vectors_square_to_one_and_commute_with_i():
    i = pseudoscalar(MINKOWSKI)
    for s in relative_basis(MINKOWSKI):
        assert s * s == 1
        assert s * i == i * s
    s1, s2, s3 = relative_basis(MINKOWSKI)
    assert s1 * s2 * s3 == i


def test_exact_trig_at_quarter_turns():
    assert exact_trig(math.pi / 2) == (0, 1)
    assert exact_trig(math.pi) == (-1, 0)
    assert exact_trig(0.0) == (1, 0)
    c, s = exact_trig(0.3)
    assert c == pytest.approx(math.cos(0.3)) and s == pytest.approx(math.sin(0.3))


def test_duality_rotor_quarter_turn_swaps_fields():
    s1, s2, _ = relative_basis(MINKOWSKI)
    i = pseudoscalar(MINKOWSKI)
    F = s1 + i * s2                       # E = s1, B = s2
    assert F * duality_rotor(MINKOWSKI, math.pi / 2) == s2 - i * s1   # (E, B) -> (B, -E)


def test_boost_rotor_preserves_interval():
    R = boost_rotor(0.7, 1, MINKOWSKI)
    assert (R * reverse(R)).grade(0).scalar_part() == pytest.approx(1.0)
    a = MINKOWSKI.vector([2.0, 1.0, 0.5, -1.0])
    b = R * a * reverse(R)
    assert (b * b).scalar_part() == pytest.approx((a * a).scalar_part())
    assert b.grade(1) == b
