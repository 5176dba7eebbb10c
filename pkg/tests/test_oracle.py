import math

import pytest

from zonal.cyclotomic import CyclotomicNumber
from zonal.errors import BudgetExceeded
from zonal.indices import GroupParams
from zonal.oracle import (
    FULL_RUN_LIMIT,
    brute_force_double_cosets,
    certification_grid,
    certify_all,
    certify_spherical_table,
    convolution_check,
)
from zonal.spherical import spherical_table


def test_grid_shape():
    grid = certification_grid()
    assert (2, 1, 1) in grid and (8, 8, 1) in grid
    assert all(r**n * math.factorial(n) // d <= 10**4 for r, d, n in grid)
    assert all(r <= 8 for r, _, _ in grid)
    assert (2, 1, 5) in grid and (2, 1, 6) not in grid
    assert len(grid) == len(set(grid))


def test_sizes_examples():
    assert [(c.counts, s) for c, s in brute_force_double_cosets(GroupParams(2, 2, 3))] == [((3, 0), 6), ((1, 2), 18)]
    assert len(brute_force_double_cosets(GroupParams(3, 1, 2))) == 6


@pytest.mark.parametrize("r", range(2, 9))
def test_cyclic_groups(r):
    # n = 1: G(r,1,1) is cyclic, every element its own double coset
    assert [s for _, s in brute_force_double_cosets(GroupParams(r, 1, 1))] == [1] * r
    rep = certify_all(spherical_table(GroupParams(r, 1, 1)))
    assert rep.passed


@pytest.mark.parametrize("triple", [(2, 1, 2), (2, 2, 3), (3, 1, 2), (3, 3, 2), (4, 2, 2), (2, 1, 3)])
def test_small_tables_certify(triple):
    t = spherical_table(GroupParams(*triple))
    rep = certify_all(t)
    assert rep.passed, rep.first_failure()
    names = [c.name for c in rep.checks]
    assert any(n.startswith("functional-equation[") for n in names)
    assert any(n.startswith("convolution[") for n in names)
    if GroupParams(*triple).order <= FULL_RUN_LIMIT:
        assert any(n.startswith("unreduced:functional-equation[") for n in names)


def test_corrupted_cell_has_witness():
    t = spherical_table(GroupParams(3, 1, 2)).copy()
    t.values[1][2] = t.values[1][2] + CyclotomicNumber.one(3)
    rep = certify_spherical_table(t, full=False)
    assert not rep.passed
    fails = rep.failures
    assert any(f.name.startswith("functional-equation[") for f in fails)
    fe = next(f for f in fails if f.name.startswith("functional-equation["))
    assert fe.witness.startswith("(g,k) = (")


def test_swapped_rows_still_pass_but_duplicates_fail():
    t = spherical_table(GroupParams(2, 1, 2)).copy()
    t.values[0], t.values[1] = t.values[1], t.values[0]
    t.dims[0], t.dims[1] = t.dims[1], t.dims[0]
    assert certify_all(t).passed
    t.values[1] = list(t.values[0])
    rep = certify_spherical_table(t)
    assert not rep.passed
    assert any(f.name.startswith("distinct[") for f in rep.failures)


def test_wrong_dimension_fails_convolution():
    t = spherical_table(GroupParams(3, 3, 2)).copy()
    t.dims[1] = 3
    rep = convolution_check(t)
    assert not rep.passed
    assert "claimed dim 3" in rep.first_failure().witness


def test_budget_refusal():
    t = spherical_table(GroupParams(2, 1, 3))
    with pytest.raises(BudgetExceeded):
        certify_all(t, budget=10)
    with pytest.raises(BudgetExceeded):
        brute_force_double_cosets(GroupParams(4, 1, 5))


@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_backends_agree_on_certification(backend):
    t = spherical_table(GroupParams(4, 2, 3))
    rep = certify_all(t, backend=backend)
    assert rep.passed
