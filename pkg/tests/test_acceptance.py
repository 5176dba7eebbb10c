"""End-to-end acceptance criteria.

Each test prints one line of the form
    C<n> PASS|FAIL <what> (<tolerance>, <time> s, limit <limit> s)
and the lines are repeated in the terminal summary.  All comparisons are
exact; there is no floating-point tolerance anywhere in this file.
"""
import itertools
import sys
import time

import numpy as np
import pytest

import zonal
from zonal import cosets, cyclotomic, hypergeom, identities, laplace, oracle, spherical
from zonal.cosets import burnside_counts, count_congruence_tuples, enumerate_double_cosets, enumerate_spherical_indices
from zonal.cyclotomic import CyclotomicNumber, cyclo_root
from zonal.hypergeom import gauss_2f1_terminating
from zonal.indices import GroupParams
from zonal.spherical import spherical_table

GRID = oracle.certification_grid()
EXPLICIT = [(2, 1, 3), (2, 2, 3), (3, 1, 2), (3, 3, 2), (4, 2, 2), (4, 4, 2), (6, 2, 2), (2, 1, 4), (2, 2, 4)]

_tables = {}


def grid_table(triple):
    if triple not in _tables:
        _tables[triple] = spherical_table(GroupParams(*triple))
    return _tables[triple]


def cold():
    """Drop every memo cache so timings include the real work."""
    for mod in (cosets, cyclotomic, hypergeom, spherical):
        for obj in vars(mod).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()


def line(n, ok, what, elapsed, limit=None, tol="exact"):
    lim = f", limit {limit} s" if limit else ""
    return f"C{n} {'PASS' if ok else 'FAIL'} {what} ({tol}, {elapsed:.2f} s{lim})"


def test_grid_contains_listed_triples():
    assert set(EXPLICIT) <= set(GRID)


def test_c1_dihedral(criterion):
    cold()
    t0 = time.perf_counter()
    bad = []
    cells = 0
    for r in range(3, 13):
        t = spherical_table(GroupParams(r, r, 2))
        for k, row in zip(t.rows, t.values):
            i = 0 if 2 in k.rep else k.rep.index(1, 1)  # rep is e_0 + e_i, or 2e_0
            for l, v in zip(t.cols, row):
                kk = l.counts.index(2) if 2 in l.counts else l.counts.index(1)
                want = (cyclo_root(r, i * kk) + cyclo_root(r, -i * kk)) / 2
                cells += 1
                if v != want:
                    bad.append((r, k.rep, l.counts))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 1.0
    criterion(line(1, ok, f"dihedral r=3..12, {cells} cells, mismatches {bad[:1]}", elapsed, 1))
    assert not bad
    assert elapsed < 1.0


def test_c2_type_d_gauss(criterion):
    cold()
    t0 = time.perf_counter()
    bad = []
    cells = 0
    for n in range(1, 11):
        t = spherical_table(GroupParams(2, 2, n))
        for k, row in zip(t.rows, t.values):
            for l, v in zip(t.cols, row):
                assert l.counts[1] % 2 == 0 and k.rep[1] <= n // 2
                cells += 1
                want = CyclotomicNumber.rational(2, gauss_2f1_terminating(-l.counts[1], -k.rep[1], -n, 2))
                if v != want:
                    bad.append((n, k.rep, l.counts))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 1.0
    criterion(line(2, ok, f"G(2,2,n) n<=10 vs 2F1, {cells} cells, mismatches {bad[:1]}", elapsed, 1))
    assert not bad
    assert elapsed < 1.0


@pytest.mark.slow
def test_c3_oracle_grid(criterion):
    cold()
    _tables.clear()
    t0 = time.perf_counter()
    failed = []
    checks = 0
    for triple in GRID:
        t = grid_table(triple)
        rep = oracle.certify_all(t)
        checks += len(rep.checks)
        if not rep.passed:
            f = rep.first_failure()
            failed.append((triple, f.name, f.witness))
    elapsed = time.perf_counter() - t0
    ok = not failed and elapsed < 300
    criterion(line(3, ok, f"oracle on {len(GRID)} triples, {checks} checks, failures {failed[:1]}", elapsed, 300))
    assert not failed
    assert elapsed < 300


@pytest.mark.slow
def test_c4_orthogonality(criterion):
    t0 = time.perf_counter()
    failed = []
    agree = 0
    for triple in GRID:
        rep = spherical.verify_orthogonality(grid_table(triple))
        names = {c.name for c in rep.checks}
        assert any(n.startswith("forms-agree[") for n in names)
        assert any(n.startswith("inv-dim[") for n in names)
        assert any(n.startswith("stabilizer[") for n in names)
        agree += 1
        if not rep.passed:
            f = rep.first_failure()
            failed.append((triple, f.name, f.witness))
    elapsed = time.perf_counter() - t0
    criterion(line(4, not failed, f"orthogonality, both normalizations on {agree} triples, failures {failed[:1]}", elapsed))
    assert not failed


PRODUCT_PARAMS = [(2, 1, n) for n in range(1, 6)] + [(3, 1, n) for n in range(1, 4)] + [(4, 1, 2), (2, 2, 4), (3, 3, 2)]


@pytest.mark.slow
def test_c5_product_formula(criterion):
    t0 = time.perf_counter()
    failed = []
    triples = 0
    for triple in PRODUCT_PARAMS:
        p = GroupParams(*triple)
        rep = identities.verify_product_grid(p)
        m = len(enumerate_double_cosets(p))
        names = [c.name for c in rep.checks]
        assert sum(n.startswith("product[") for n in names) == m**3
        assert sum(n.startswith("coefficients-sum[") for n in names) == m**3
        triples += m**3
        if not rep.passed:
            f = rep.first_failure()
            failed.append((triple, f.name, f.witness))
    elapsed = time.perf_counter() - t0
    criterion(line(5, not failed, f"product formula, {triples} (k,l,l') triples, failures {failed[:1]}", elapsed))
    assert not failed


def test_c6_rahman(criterion):
    t0 = time.perf_counter()
    rep = identities.rahman_grid(8)
    names = [c.name for c in rep.checks]
    assert any(n.startswith("rahman") for n in names)
    assert any(n.startswith("product-route") for n in names)
    assert any(n.startswith("coefficients-coincide") for n in names)
    elapsed = time.perf_counter() - t0
    f = rep.first_failure()
    criterion(line(6, rep.passed, f"Rahman grid N<=8, {len(rep.checks)} checks, failure {f and (f.name, f.witness)}", elapsed))
    assert rep.passed


@pytest.mark.slow
def test_c7_laplace(criterion):
    t0 = time.perf_counter()
    failed = []
    # brute force Delta_1 vs the recurrence, every (r,1,n) with r^n <= 1024
    recurrence = 0
    for r in range(2, 1025):
        n = 1
        while r**n <= 1024:
            p = GroupParams(r, 1, n)
            if not np.array_equal(laplace.build_operator(p, 1).matrix, laplace.analytic_operator(p).matrix):
                failed.append(("recurrence", p.triple))
            recurrence += 1
            n += 1
    # eigenvectors of every Delta_k on the grid, closed form when d = 1
    eigen = 0
    for triple in GRID:
        rep = laplace.verify_laplace(grid_table(triple))
        names = [c.name for c in rep.checks]
        eigen += sum(n.startswith("eigen[") for n in names)
        if triple[1] == 1:
            assert sum(n.startswith("closed-form[") for n in names) == len(grid_table(triple).rows)
        if not rep.passed:
            f = rep.first_failure()
            failed.append((triple, f.name, f.witness))
    # three-term relation at r = 2
    three = 0
    for N in range(1, 11):
        for x, n in itertools.product(range(N + 1), repeat=2):
            three += 1
            if not laplace.three_term_check(x, n, N).passed:
                failed.append(("three-term", x, n, N))
    elapsed = time.perf_counter() - t0
    what = (f"laplace: {recurrence} recurrence cases, {eigen} eigen checks, "
            f"{three} three-term cases, failures {failed[:1]}")
    criterion(line(7, not failed, what, elapsed))
    assert not failed


def _exhaustive_congruence(r, m):
    """{lengths: count} for all lengths in [0, r]^m by direct enumeration of (Z/r)^m."""
    a = np.array(list(itertools.product(range(r), repeat=m)), dtype=np.int64)
    ls = np.array(list(itertools.product(range(r + 1), repeat=m)), dtype=np.int64)
    out = np.empty(len(ls), dtype=np.int64)
    step = 512
    for s in range(0, len(ls), step):
        block = ls[s:s + step]
        out[s:s + step] = ((a @ block.T) % r == 0).sum(axis=0)
    return ls, out


@pytest.mark.slow
def test_c8_counting(criterion):
    t0 = time.perf_counter()
    failed = []
    cases = 0
    for r in range(1, 21):
        for m in range(1, 4):
            ls, counts = _exhaustive_congruence(r, m)
            for lengths, want in zip(ls, counts):
                cases += 1
                if count_congruence_tuples(r, tuple(int(x) for x in lengths)) != want:
                    failed.append(("congruence", r, tuple(lengths)))
    for triple in GRID:
        p = GroupParams(*triple)
        a, b = burnside_counts(p)
        if not (a == b == len(enumerate_double_cosets(p)) == len(enumerate_spherical_indices(p))):
            failed.append(("burnside", triple, a, b))
        if sum(grid_table(triple).dims) != p.r**p.n // p.d:
            failed.append(("dims", triple))
    elapsed = time.perf_counter() - t0
    criterion(line(8, not failed, f"counting: {cases} congruence cases, {len(GRID)} Burnside/dimension triples, "
                                  f"failures {failed[:1]}", elapsed))
    assert not failed


NEGATIVE = [(2, 1, 2), (2, 2, 3), (3, 1, 2), (3, 3, 2), (4, 2, 2)]


def _corrupted_reports(t):
    return [
        ("C3", oracle.certify_all(t)),
        ("C4", spherical.verify_orthogonality(t)),
        ("C7", laplace.verify_laplace(t)),
    ]


def test_c9_negative_control(criterion):
    t0 = time.perf_counter()
    missed = []
    cells = 0
    sample = None
    for triple in NEGATIVE:
        base = spherical_table(GroupParams(*triple))
        for i, j in itertools.product(range(len(base.rows)), range(len(base.cols))):
            t = base.copy()
            t.values[i][j] = t.values[i][j] + 1
            cells += 1
            caught = []
            for name, rep in _corrupted_reports(t):
                f = rep.first_failure()
                if f is not None and f.witness:
                    caught.append((name, f.name, f.witness))
            if not caught:
                missed.append((triple, i, j))
            elif sample is None:
                sample = caught[0]
    elapsed = time.perf_counter() - t0
    criterion(line(9, not missed, f"every one of {cells} single-cell +1 corruptions caught, e.g. {sample}", elapsed))
    assert not missed


def test_version():
    assert zonal.__version__
    assert sys.version_info >= (3, 10)
