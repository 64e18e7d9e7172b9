import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from h4cert.errors import DomainError
from h4cert.rootsys import build_root_system, weyl_group_elements
from h4cert.symsq import (
    SymSquareElement,
    act,
    divisibility_index,
    killing_element,
    reduce_and_order,
    square,
    weyl_invariance_check,
)
from test_rootsys import SMALL_TYPES


def test_killing_a1_and_a2():
    assert killing_element(build_root_system("A", 1)) == SymSquareElement(1, {(0, 0): 8})
    q = killing_element(build_root_system("A", 2))
    assert q == SymSquareElement(2, {(0, 0): 12, (0, 1): -12, (1, 1): 12})
    assert divisibility_index(q) == 12


@pytest.mark.parametrize("t,r", SMALL_TYPES)
def test_killing_element_is_invariant(t, r):
    rs = build_root_system(t, r)
    assert weyl_invariance_check(killing_element(rs), weyl_group_elements(rs))


def test_non_invariant_element_detected():
    rs = build_root_system("A", 2)
    assert not weyl_invariance_check(square((1, 0)), weyl_group_elements(rs))


def test_square_gram_matrix_is_twice_outer_product():
    v = (2, -3, 5)
    g = square(v).gram_matrix()
    assert g == [[2 * a * b for b in v] for a in v]


def test_order_in_quotient():
    q = killing_element(build_root_system("A", 1))
    assert reduce_and_order(q, 96) == 12
    assert reduce_and_order(q, 7) == 7
    with pytest.raises(DomainError):
        reduce_and_order(q, 0)
    with pytest.raises(DomainError):
        divisibility_index(SymSquareElement(2, {}))


def _unimodular(rng, r):
    m = [[int(i == j) for j in range(r)] for i in range(r)]
    for _ in range(6):
        i, j = rng.sample(range(r), 2)
        c = rng.choice([-2, -1, 1, 2])
        for k in range(r):
            m[k][i] += c * m[k][j]
    return tuple(tuple(row) for row in m)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([("A", 2), ("B", 3), ("G", 2), ("C", 4)]))
def test_divisibility_index_is_unimodular_invariant(seed, tr):
    rs = build_root_system(*tr)
    q = killing_element(rs)
    w = _unimodular(random.Random(seed), rs.rank)
    assert divisibility_index(act(w, q)) == divisibility_index(q)
