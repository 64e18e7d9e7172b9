import pytest

from h4cert.cohomology import (
    Subgroup,
    bar_cohomology,
    coboundary,
    cochain_from_function,
    corestriction,
    cyclic_closed_form,
    is_invariant_class,
    kunneth_sym2_check,
    restriction,
    right_coset_section,
    sym2_factors,
    transfer_identity_check,
)
from h4cert.errors import BudgetExceeded, DomainError
from h4cert.groups import cyclic_group, named_group, named_subgroup_elements


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
@pytest.mark.parametrize("modulus", [0, 2, 3, 4])
def test_bar_matches_cyclic_closed_form(m, k, modulus):
    H = bar_cohomology(cyclic_group(m), modulus, k)
    C = cyclic_closed_form(m, k, modulus)
    assert (H.factors, H.free_rank) == (C.factors, C.free_rank)


@pytest.mark.parametrize(
    "name,k,modulus,factors",
    [("S3", 2, 0, (2,)), ("S3", 4, 0, (6,)), ("Q8", 2, 0, (2, 2)), ("Q8", 4, 0, (8,)),
     ("D4", 2, 0, (2, 2)), ("C2xC2", 2, 0, (2, 2)), ("C2xC2", 3, 0, (2,)), ("C2xC2", 1, 2, (2, 2))],
)  # fmt: skip
def test_known_cohomology(name, k, modulus, factors):
    assert bar_cohomology(named_group(name), modulus, k).factors == factors


def test_coboundaries_are_trivial():
    G = named_group("S3")
    H = bar_cohomology(G, 0, 2)
    f = cochain_from_function(G, 1, 0, lambda g: 0 if g == G.identity else g * g + 1)
    db = coboundary(f)
    assert db.is_cocycle and H.is_coboundary(db)
    for rep, d in zip(H.representatives, H.factors):
        assert H.class_order(rep) == d


def test_budget_refusal():
    with pytest.raises(BudgetExceeded):
        bar_cohomology(named_group("S4"), 0, 4, budget=10**4)
    with pytest.raises(DomainError):
        bar_cohomology(cyclic_group(3), -1, 2)


CORPUS = [("C4", "C2"), ("C6", "C3"), ("S3", "C3"), ("D4", "C4"), ("Q8", "C4")]


@pytest.mark.parametrize("gname,tname", CORPUS)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_transfer_identity_on_invariant_classes(gname, tname, k):
    G = named_group(gname)
    T = Subgroup(G, named_subgroup_elements(G, tname))
    for modulus in (0, len(T.elements)):
        HT = bar_cohomology(T.table, modulus, k)
        for sigma in HT.elements():
            if is_invariant_class(G, T, sigma):
                assert transfer_identity_check(G, T, sigma)
            else:
                with pytest.raises(DomainError):
                    transfer_identity_check(G, T, sigma)


def test_non_invariant_class_fails_identity():
    # on D4 > C4 the generator of H^2(C4, Z) = Z/4 is inverted by conjugation
    G = named_group("D4")
    T = Subgroup(G, named_subgroup_elements(G, "C4"))
    HT = bar_cohomology(T.table, 0, 2)
    sigma = HT.representatives[0]
    assert not is_invariant_class(G, T, sigma)
    lhs = restriction(G, T, corestriction(G, T, sigma))
    assert not HT.cohomologous(lhs, sigma.scale(2))


def test_corestriction_independent_of_section():
    G = named_group("S3")
    T = Subgroup(G, named_subgroup_elements(G, "C3"))
    HG = bar_cohomology(G, 0, 4)
    for sigma in bar_cohomology(T.table, 0, 4).elements():
        a = corestriction(G, T, sigma)
        b = corestriction(G, T, sigma, section=right_coset_section(G, T, rotation=1))
        assert HG.cohomologous(a, b)


def test_kunneth_sym2():
    assert sym2_factors([2, 4]) == [2, 2, 4]
    for ms in ([2], [3], [2, 2], [2, 3]):
        assert kunneth_sym2_check(ms)
