from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import pytest

from conftest import w
from ptcalc.basis import enumerate_basis
from ptcalc.bounds import (
    BoundKind,
    BoundRecord,
    TcCertificate,
    cup_length_lower_bound,
    exhaustive_zero_divisor_search,
    lemma_95_expand,
    product_inequality_combine,
    theorem_factors,
    theorem_product,
    theorem_witness,
    upper_bound_dimension,
    verify_theorem,
)
from ptcalc.diagonal import diagonal_apply, kernel_generators
from ptcalc.errors import BudgetExceeded, KindMismatch, NotAZeroDivisor, ObstacleCountTooSmall
from ptcalc.oracle import naive_theorem_y, randomized_normalize
from ptcalc.ring import Element, Generator, Monomial, SpaceSpec, multiply


def brute_strict_bound(hdim, r):
    bound = Fraction(hdim + 1, r + 1)
    t = 0
    while t + 1 < bound:
        t += 1
    return t


@pytest.mark.parametrize("n,m,k", [(1, 2, 3), (1, 2, 5), (2, 3, 3), (3, 5, 7), (2, 2, 9)])
def test_upper_bound_dimension(n, m, k):
    rec = upper_bound_dimension(SpaceSpec(n, m, k))
    assert rec.kind is BoundKind.UPPER
    assert rec.value == 2 * n + m - 1
    assert rec.value == brute_strict_bound((k - 1) * (2 * n + m - 1), k - 2)


def test_upper_bound_k5_is_three():
    # (4*3 + 1) / 4 = 3.25, strictly below gives 3
    assert brute_strict_bound(12, 3) == 3
    assert upper_bound_dimension(SpaceSpec(1, 2, 5)).value == 3


def test_cup_length_worked_example(ebe12):
    s = ebe12
    z13, z23 = kernel_generators(s)
    rec = cup_length_lower_bound(s, [z13, z13, z23])
    assert rec.kind is BoundKind.LOWER and rec.value == 3
    assert rec.witness.grade == 3 and rec.witness_coefficient


def test_cup_length_empty_product(ebe12):
    rec = cup_length_lower_bound(ebe12, [])
    assert rec.value == 0 and rec.witness == Monomial()


def test_cup_length_cube_vanishes(ebe12):
    s = ebe12
    z13 = kernel_generators(s)[0]
    a, b = Generator(1, 3, False), Generator(1, 3, True)
    # oracle: binomial expansion of (a - b)^3, each word normalized independently
    cube = Element.zero(s)
    for word, coeff in [([a, a, a], 1), ([a, a, b], -3), ([a, b, b], 3), ([b, b, b], -1)]:
        cube = cube + coeff * randomized_normalize(s, word, 5)
    assert cube == 0
    assert cup_length_lower_bound(s, [z13, z13, z13]) is None


def test_cup_length_rejects_non_zero_divisor(ebe12):
    with pytest.raises(NotAZeroDivisor):
        cup_length_lower_bound(ebe12, [w(ebe12, 1, 3)])


def test_theorem_product_small(ebe12):
    s = ebe12
    x = theorem_product(s)
    assert x.to_expr() == "-2*w(1,2)*w(2,3)*w'(1,3) + 2*w(1,2)*w(1,3)*w'(2,3)"
    assert x == -2 * naive_theorem_y(s)


def test_theorem_product_n1_m3():
    s = SpaceSpec(1, 3)
    x = theorem_product(s)
    assert x and x.grades() == {4}
    assert x == -2 * naive_theorem_y(s, seed=11)


@pytest.mark.parametrize("n,m", [(1, 2), (2, 2), (2, 3), (3, 2), (1, 4)])
def test_theorem_product_grade(n, m):
    x = theorem_product(SpaceSpec(n, m))
    assert x.grades() == {2 * n + m - 1}
    assert len(theorem_factors(SpaceSpec(n, m))) == 2 * n + m - 1


def test_theorem_product_needs_two_obstacles():
    with pytest.raises(ObstacleCountTooSmall):
        theorem_product(SpaceSpec(1, 1))
    with pytest.raises(ObstacleCountTooSmall):
        verify_theorem(SpaceSpec(2, 1))


@pytest.mark.parametrize("n,m,k,tc", [(1, 2, 3, 3), (2, 3, 3, 6), (1, 2, 5, 3)])
def test_verify_theorem_examples(n, m, k, tc):
    cert = verify_theorem(SpaceSpec(n, m, k))
    assert cert.tc_exact == cert.lower_bound == cert.upper_bound == tc


def test_search_examples():
    assert exhaustive_zero_divisor_search(SpaceSpec(1, 2), 3).value == 3
    assert exhaustive_zero_divisor_search(SpaceSpec(1, 2), 4).value == 3
    assert exhaustive_zero_divisor_search(SpaceSpec(1, 3), 4).value == 4
    assert exhaustive_zero_divisor_search(SpaceSpec(1, 3), 5, threads=3).value == 4


def test_search_four_fold_products_all_vanish(ebe12):
    gens = kernel_generators(ebe12)
    multisets = list(combinations_with_replacement(range(len(gens)), 4))
    assert len(multisets) == 5
    for idx in multisets:
        prod = Element.one(ebe12)
        for t in idx:
            prod = multiply(prod, gens[t])
        assert prod == 0


def test_search_budget():
    with pytest.raises(BudgetExceeded) as info:
        exhaustive_zero_divisor_search(SpaceSpec(1, 2), 4, max_candidates=1)
    assert info.value.partial.partial
    with pytest.raises(BudgetExceeded) as info:
        exhaustive_zero_divisor_search(SpaceSpec(1, 2), 4, max_candidates=6)
    assert info.value.partial.value == 2


def test_product_inequality():
    up = lambda v: BoundRecord(v, BoundKind.UPPER, "test")
    assert product_inequality_combine(up(3), up(3)).value == 6
    assert product_inequality_combine(up(0), up(5)).value == 5
    rec = product_inequality_combine(up(3), up(4))
    assert rec.value == 7 and rec.provenance == "product-combinator"
    with pytest.raises(KindMismatch):
        product_inequality_combine(up(3), BoundRecord(3, BoundKind.LOWER, "test"))


def test_lemma_examples():
    s = SpaceSpec(1, 2)
    direct, closed = lemma_95_expand(s, [1], 3)
    assert direct == closed == w(s, 1, 3)
    direct, closed = lemma_95_expand(s, [1, 2], 3)
    assert direct == closed
    assert closed.to_expr() == "-w(1,2)*w(1,3) + w(1,2)*w(2,3)"
    s3 = SpaceSpec(1, 3)
    direct, closed = lemma_95_expand(s3, [1, 2, 3], 4)
    assert direct == closed and direct.grades() == {3}


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("primed", [False, True])
def test_lemma_all_subsets(m, primed):
    s = SpaceSpec(2, m)
    for size in range(1, m + 1):
        for T in combinations(range(1, m + 1), size):
            for p in (m + 1, m + 2):
                direct, closed = lemma_95_expand(s, T, p, primed)
                assert direct == closed


def test_bounds_consistent_and_factors_in_kernel():
    for n in (1, 2):
        for m in (2, 3, 4):
            s = SpaceSpec(n, m)
            factors = theorem_factors(s)
            assert all(diagonal_apply(f) == 0 for f in factors)
            assert cup_length_lower_bound(s, factors).value <= upper_bound_dimension(s).value


@pytest.mark.parametrize("n,m", [(1, 2), (2, 2), (1, 3), (2, 3)])
def test_witness_is_a_basis_monomial(n, m):
    s = SpaceSpec(n, m)
    cert = verify_theorem(s)
    assert cert.witness_monomial == theorem_witness(s)
    assert cert.witness_monomial in set(enumerate_basis(s, 2 * n + m - 1))
    assert abs(cert.witness_coefficient) == 2**n


def test_certificate_round_trip():
    cert = verify_theorem(SpaceSpec(2, 3))
    again = TcCertificate.from_dict(cert.to_dict())
    assert again == cert


def test_certificate_invariants(ebe12):
    with pytest.raises(ValueError):
        TcCertificate(1, 2, 3, 4, 3, None, [], Monomial(), 1)
