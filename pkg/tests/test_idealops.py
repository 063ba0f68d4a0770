import itertools
import random

import pytest
from hypothesis import given, settings

from pdq.certify import fixture_names, load_fixture
from pdq.groebner import Ideal
from pdq.idealops import (LinearMatrix, LinearPrime, LinkError, RegularSequenceError,
                          classify_2x3, component_length, determinant, dimension,
                          essential_variable_count, find_regular_sequence, height, ideal_intersection,
                          ideal_product, ideal_quotient, ideal_sum, is_primary_to, is_regular_sequence,
                          is_unmixed, link, minimal_generator_count, minors_ideal, multiplicity,
                          quotient_by_element, radical_membership, unmixed_part)
from pdq.polycore import PolynomialRing
from pdq.sampler import random_quadrics
from oracles import colon_in_degree, hilbert_function, leibniz_det, parse_terms
from strategies import homogeneous_ideals, quadric_ideals

R = PolynomialRing(["x", "y", "z"])
x, y, z = R.gens()


def I_(ring, *gens):
    return Ideal(ring, [ring.parse(g) if isinstance(g, str) else g for g in gens])


# sums, products, intersections, quotients

def test_sum_examples():
    assert ideal_sum(I_(R, "x"), I_(R, "y")) == I_(R, "x", "y")
    S = PolynomialRing(["u", "v", "w", "x", "y", "z"])
    assert ideal_sum(I_(S, "u", "v", "w"), I_(S, "x", "y", "z^2")) == I_(S, "u", "v", "w", "x", "y", "z^2")
    I = I_(R, "x^2", "y*z")
    assert ideal_sum(I, Ideal(R, [])) == I


def test_product():
    assert ideal_product(I_(R, "x"), I_(R, "y", "z")) == I_(R, "x*y", "x*z")


@pytest.mark.parametrize("method", ["syzygy", "elimination"])
def test_intersection_examples(method):
    assert ideal_intersection(I_(R, "x"), I_(R, "y"), method) == I_(R, "x*y")
    S = PolynomialRing(["x", "a", "b", "c", "d"])
    got = ideal_intersection(I_(S, "x", "a", "b"), I_(S, "x", "c", "d"), method)
    assert got == I_(S, "x", "a*c", "a*d", "b*c", "b*d")
    I = I_(R, "x^2", "x*y", "y*z")
    assert ideal_intersection(I, I, method) == I


@pytest.mark.parametrize("method", ["syzygy", "elimination"])
def test_quotient_examples(method):
    assert ideal_quotient(I_(R, "x^2"), x, method) == I_(R, "x")
    assert ideal_quotient(I_(R, "x", "y^2", "z"), I_(R, "x", "y", "z"), method) == I_(R, "x", "y", "z")
    I = I_(R, "x^2", "y*z")
    assert ideal_quotient(I, Ideal(R, [R.one()]), method) == I


def test_quotient_against_brute_force():
    I = I_(R, "x", "y^2", "z")
    J = I_(R, "x", "y", "z")
    Q = ideal_quotient(I, J)
    oracle = [colon_in_degree([parse_terms(g) for g in I.gens], [parse_terms(g) for g in J.gens], 3, d)
              for d in range(4)]
    # dim Q_d = dim S_d - HF(S/Q, d)
    mine = [len(list(itertools.combinations_with_replacement(range(3), d)))
            - hilbert_function([parse_terms(g) for g in Q.gens], 3, d) for d in range(4)]
    assert oracle == mine


def test_primary21_link_quotient():
    J, _ = load_fixture("A.2")
    ring = J.ring
    alpha = I_(ring, "x^2", "y^2", "z^2")
    L = ideal_quotient(alpha, J)
    expected = I_(ring, "x^2", "y^2", "z^2", "x*y*z", "(a*e-b*d)*x*y-(a*f-c*d)*x*z+(b*f-c*e)*y*z")
    assert L == expected
    assert ideal_quotient(alpha, J, "elimination") == expected


def test_stated_link_generator_sign_is_wrong():
    J, _ = load_fixture("A.2")
    ring = J.ring
    L = ideal_quotient(I_(ring, "x^2", "y^2", "z^2"), J)
    assert not L.contains(ring.parse("(a*e-b*d)*x*y+(a*f-c*d)*x*z+(b*f-c*e)*y*z"))


# heights and regular sequences

def test_height_examples():
    assert height(I_(R, "x", "y", "z")) == 3
    S = PolynomialRing([f"x{i}" for i in range(5)])
    qs = random_quadrics(S, 3, random.Random(2))
    assert height(Ideal(S, qs)) == 3
    J, _ = load_fixture("A.3")
    assert height(J) == 3 and J.ring.n == 6
    assert dimension(I_(R, "x*y")) == 2


def test_find_regular_sequence_examples():
    assert find_regular_sequence(I_(R, "x", "y", "z"), 3) == [x, y, z]
    S = PolynomialRing(["x", "y", "z", "w"])
    I = I_(S, "x^2", "x*y", "y^2", "z^2")
    seq = find_regular_sequence(I, 3)
    assert len(seq) == 3 and is_regular_sequence(S, seq) and all(I.contains(f) for f in seq)
    with pytest.raises(RegularSequenceError):
        find_regular_sequence(I_(R, "x*y", "x*z"), 2)


def test_link_examples():
    ci = I_(R, "x^2", "y^2", "z^2")
    assert link(ci, list(ci.gens)) == Ideal(R, [R.one()])
    assert link(I_(R, "x", "y^2", "z"), [x, y**2, z]) == Ideal(R, [R.one()])
    with pytest.raises(LinkError):
        link(I_(R, "x", "y"), [x**2])
    with pytest.raises(LinkError):
        link(I_(R, "x", "y"), [x, z])


def test_link_additivity_primary21():
    J, _ = load_fixture("A.2")
    ring = J.ring
    K = link(J, [ring.parse(s) for s in ("x^2", "y^2", "z^2")])
    assert multiplicity(J) + multiplicity(K) == 8


def test_unmixed_examples():
    assert unmixed_part(I_(R, "x^2", "x*y")) == I_(R, "x")
    J, _ = load_fixture("A.17")
    assert unmixed_part(J) == J
    ring = J.ring
    q = ring.parse("a*x+b*y+c*z")
    uv_xyz = [ring.parse(f"{s}*{t}") for s in "xyz" for t in "uv"]
    assert unmixed_part(Ideal(ring, uv_xyz + [q])) == J


@pytest.mark.parametrize("name", fixture_names())
def test_fixtures_are_unmixed(name):
    J, _ = load_fixture(name)
    assert is_unmixed(J)


# minors and the 2x3 classification

def test_minors_examples():
    S = PolynomialRing(["a", "b", "d", "e", "f"])
    M = LinearMatrix.parse(S, [["a", "0", "0"], ["d", "e", "f"]])
    assert minors_ideal(M, 2) == I_(S, "a*e", "a*f")
    M = LinearMatrix.parse(S, [["a", "b", "0"], ["d", "0", "b"]])
    assert minors_ideal(M, 2) == I_(S, "b*d", "a*b", "b^2")
    assert minors_ideal(M, 1) == I_(S, "a", "b", "d")
    with pytest.raises(ValueError):
        minors_ideal(M, 3)


def test_determinant_matches_leibniz():
    rng = random.Random(11)
    S = PolynomialRing(["a", "b", "c", "d"])
    for size in (2, 3, 4):
        mat = [[S.from_terms([(rng.randrange(S.p), [int(k == rng.randrange(4)) for k in range(4)])
                              for _ in range(2)]) for _ in range(size)] for _ in range(size)]
        got = parse_terms(determinant(mat)) if determinant(mat) else {}
        assert got == leibniz_det([[parse_terms(e) if e else {} for e in row] for row in mat], 4)


def test_classify_2x3():
    S = PolynomialRing(["a", "b", "c", "d", "e", "f"])
    assert classify_2x3(LinearMatrix.parse(S, [["a", "0", "0"], ["d", "e", "f"]])) == "case1"
    assert classify_2x3(LinearMatrix.parse(S, [["a", "b", "0"], ["d", "e", "0"]])) == "case2"
    assert classify_2x3(LinearMatrix.parse(S, [["a", "b", "0"], ["d", "0", "b"]])) == "case3"
    assert classify_2x3(LinearMatrix.parse(S, [["a", "b", "0"], ["0", "a", "b"]])) == "two-forms"
    assert classify_2x3(LinearMatrix.parse(S, [["a", "b", "c"], ["d", "e", "f"]])) == "generic"
    with pytest.raises(ValueError):
        LinearMatrix.parse(S, [["a^2", "b", "c"], ["d", "e", "f"]])


def test_minimal_generator_count():
    assert minimal_generator_count(I_(R, "x", "y", "x+y", "x*z")) == 2


# radicals, primariness, lengths

def test_radical_membership():
    assert radical_membership(I_(R, "x^2"), x)
    r = radical_membership(I_(R, "x^2", "x*y", "y^3"), y)
    assert r and r.power == 3
    L, _ = load_fixture("A.1")
    assert radical_membership(L, L.ring.parse("z"))
    miss = radical_membership(I_(R, "x^2"), y)
    assert not miss and miss.cap_limited


def test_primary_examples():
    P = LinearPrime.parse(R, ["x", "y", "z"])
    assert is_primary_to(I_(R, "x", "y", "z^2"), P)
    assert not is_primary_to(I_(R, "x*y"), I_(R, "x"))
    J, _ = load_fixture("A.16")
    ring = J.ring
    assert is_primary_to(J, I_(ring, "x", "y", "a*d-b*c"))


def test_component_length():
    P = LinearPrime.parse(R, ["x", "y", "z"])
    assert component_length(I_(R, "x", "y", "z^2"), P) == 2
    assert component_length(I_(R, "x", "y", "z"), P) == 1
    L, _ = load_fixture("A.1")
    assert component_length(L, LinearPrime.parse(L.ring, ["x", "y", "z"])) == 6
    with pytest.raises(ValueError):
        component_length(I_(R, "x*y", "z"), P)


def test_linear_prime_validation():
    with pytest.raises(ValueError):
        LinearPrime.parse(R, ["x", "y", "x+y"])


def test_essential_variables_of_the_seven_variable_example():
    S = PolynomialRing(["x", "y", "z", "a", "b", "c", "d"])
    gens = [S.parse(s) for s in ("a*x+y^2", "b*x+y*z", "c*x+z^2", "d*x")]
    assert essential_variable_count(gens) == 7
    for sub in itertools.combinations(gens, 3):
        if is_regular_sequence(S, list(sub)):
            assert essential_variable_count(list(sub)) <= 6


# properties

@settings(max_examples=40)
@given(quadric_ideals(n=5, count=4))
def test_unmixed_containment_chain(I):
    if I.is_unit():
        return
    U = unmixed_part(I)
    assert I.issubset(U)
    assert height(U) == height(I)
    assert multiplicity(U) == multiplicity(I)
    assert unmixed_part(U) == U


@settings(max_examples=40)
@given(homogeneous_ideals(nmax=4, gmax=3))
def test_quotient_by_element_two_ways(I):
    g = I.ring.gens()[0]
    assert quotient_by_element(I, g) == quotient_by_element(I, g, method="elimination")


@settings(max_examples=25)
@given(quadric_ideals(n=4, count=3))
def test_intersection_two_ways(I):
    ring = I.ring
    J = Ideal(ring, [ring.gens()[0], ring.gens()[1] ** 2])
    assert ideal_intersection(I, J) == ideal_intersection(I, J, "elimination")


@settings(max_examples=20)
@given(quadric_ideals(n=5, count=4))
def test_unmixed_equality(I):
    # J in U, same height and multiplicity, J unmixed => equal
    if I.is_unit():
        return
    U = unmixed_part(I)
    J = unmixed_part(U)
    if J.issubset(U) and height(J) == height(U) and multiplicity(J) == multiplicity(U):
        assert J == U
