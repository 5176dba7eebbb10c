from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zonal.cosets import compositions, enumerate_double_cosets
from zonal.identities import (
    contingency_tables,
    krawtchouk,
    product_expand,
    rahman_identity_check,
    relabelled_tables,
    verify_product_formula,
    verify_product_grid,
)
from zonal.indices import CosetIndex, GroupParams


def terms_dict(terms):
    return {t.coset.counts: t.coefficient for t in terms}


def test_expand_examples():
    p = GroupParams(2, 1, 2)
    assert terms_dict(product_expand((1, 1), (1, 1), p)) == {(2, 0): Fraction(1, 2), (0, 2): Fraction(1, 2)}
    p3 = GroupParams(3, 1, 3)
    for lp in enumerate_double_cosets(p3):
        assert terms_dict(product_expand((3, 0, 0), lp, p3)) == {lp.counts: 1}


def test_product_formula_example():
    rep = verify_product_formula((1, 1), (1, 1), (1, 1), GroupParams(2, 1, 2))
    assert rep.passed and len(rep.checks) == 4


def test_exhaustive_3_1_2():
    rep = verify_product_grid(GroupParams(3, 1, 2))
    assert rep.passed
    assert sum(c.name.startswith("product[") for c in rep.checks) == 6**3


def test_contingency_count():
    # 2 x 2 tables with margins (2, 1) and (1, 2): first row (a, 2 - a), a <= 1
    assert sorted(contingency_tables((2, 1), (1, 2))) == [((0, 2), (1, 0)), ((1, 1), (0, 1))]
    assert list(contingency_tables((1,), (2,))) == []


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 4), st.integers(1, 4), st.data())
def test_relabelling_recovers_all_tables(r, n, data):
    all_l = list(compositions(n, r))
    l = data.draw(st.sampled_from(all_l))
    lp = data.draw(st.sampled_from(all_l))
    assert set(contingency_tables(l, lp)) == relabelled_tables(l, lp)


GRID = [(r, d, n) for r in range(2, 5) for d in range(1, r + 1) if r % d == 0 for n in range(1, 4) if r**n <= 4096]


@pytest.mark.parametrize("r,d,n", GRID)
def test_expansions_are_distributions(r, d, n):
    p = GroupParams(r, d, n)
    cols = enumerate_double_cosets(p)
    for l in cols:
        for lp in cols:
            terms = product_expand(l, lp, p)
            assert sum(t.coefficient for t in terms) == 1
            assert all(t.coefficient > 0 for t in terms)
            assert all(t.coset.is_valid(p) for t in terms)
            assert terms == product_expand(lp, l, p)


def test_rahman_examples():
    for N in range(1, 6):
        for y in range(N + 1):
            for n in range(N + 1):
                assert rahman_identity_check(0, y, n, N).passed
    assert krawtchouk(1, 1, 2) == 0
    assert rahman_identity_check(1, 1, 1, 2).passed


def test_product_formula_failure_is_reported():
    from zonal.identities import LinearizationTerm

    p = GroupParams(2, 1, 2)
    bogus = [LinearizationTerm(CosetIndex((2, 0)), Fraction(1))]
    rep = verify_product_formula((1, 1), (1, 1), (1, 1), p, terms=bogus)
    assert not rep.passed
    assert rep.first_failure().witness == "discrepancy -1"
