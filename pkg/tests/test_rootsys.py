import pytest

from h4cert.errors import BudgetExceeded, DomainError
from h4cert.rootsys import (
    build_root_system,
    cartan_matrix,
    simple_root_coefficients,
    validate_type,
    weyl_group_elements,
)

SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4),
               ("C", 2), ("C", 3), ("C", 4), ("D", 3), ("D", 4), ("F", 4), ("G", 2)]  # fmt: skip


def test_cartan_matrices():
    assert cartan_matrix("A", 2) == ((2, -1), (-1, 2))
    assert cartan_matrix("G", 2) == ((2, -1), (-3, 2)) or cartan_matrix("G", 2) == ((2, -3), (-1, 2))
    b2, c2 = cartan_matrix("B", 2), cartan_matrix("C", 2)
    assert b2 == tuple(zip(*c2))


@pytest.mark.parametrize("t,r", SMALL_TYPES)
def test_degree_identities_against_enumeration(t, r):
    rs = build_root_system(t, r)
    W = weyl_group_elements(rs)
    assert len(W) == rs.degree_product
    assert sum(d - 1 for d in rs.degrees) == len(rs.positive_roots)
    assert len(rs.all_roots) == 2 * len(rs.positive_roots)


@pytest.mark.parametrize("t,r,n", [("E", 6, 36), ("E", 7, 63), ("E", 8, 120), ("D", 5, 20)])
def test_large_root_counts(t, r, n):
    rs = build_root_system(t, r)
    assert rs.num_positive_roots == n
    assert sum(d - 1 for d in rs.degrees) == n


def test_positive_roots_sorted_by_height():
    rs = build_root_system("B", 3)
    heights = [sum(simple_root_coefficients(rs, a)) for a in rs.positive_roots]
    assert heights == sorted(heights)
    assert heights[:3] == [1, 1, 1]


def test_roots_closed_under_reflections():
    rs = build_root_system("G", 2)
    roots = set(rs.all_roots)
    for w in weyl_group_elements(rs):
        for a in rs.all_roots:
            image = tuple(sum(w[i][j] * a[j] for j in range(2)) for i in range(2))
            assert image in roots


@pytest.mark.parametrize("t,r", [("A", 0), ("B", 1), ("D", 2), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("Z", 2)])
def test_invalid_types_refused(t, r):
    with pytest.raises(DomainError):
        validate_type(t, r)


def test_weyl_enumeration_guard():
    with pytest.raises(BudgetExceeded):
        weyl_group_elements(build_root_system("A", 5))
