"""Hamming distance on G(r,d,n)/S_n and the bi-invariant operators Delta_k.

A left coset (a, sigma) S_n is determined by its exponent tuple a, and the
distance between two cosets is the number of coordinates where the tuples
differ.  Delta_k sums a function over all cosets at distance k; in the basis
of double cosets it is the integer matrix

    M_k[l, l'] = #{y : d(x, y) = k, y in double coset l'}  (x any coset in l).

Spherical functions are eigenvectors of every Delta_k.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .cosets import enumerate_double_cosets, representative_array
from .cyclotomic import CyclotomicNumber, exact_linear, exact_multiply
from .errors import BudgetExceeded, InvalidParameters
from .identities import krawtchouk
from .indices import CosetIndex, GroupParams, SphericalIndex
from .report import Report
from .spherical import spherical_value
from .wreath import GroupElement, enumerate_group, exponent_tuples

__all__ = [
    "BiInvariantOperator",
    "analytic_operator",
    "build_operator",
    "build_operators",
    "closed_form_eigenvalue",
    "contiguity_check",
    "hamming_distance",
    "three_term_check",
    "verify_eigenfunction",
]

DEFAULT_COSET_BUDGET = 10**6


def hamming_distance(x: GroupElement, y: GroupElement) -> int:
    """Distance between the left cosets x S_n and y S_n."""
    if x.r != y.r or x.n != y.n:
        raise InvalidParameters("elements come from different groups")
    return sum(a != b for a, b in zip(x.exponents, y.exponents))


@dataclass
class BiInvariantOperator:
    params: GroupParams
    k: int
    cols: list[CosetIndex]
    matrix: np.ndarray

    def entry(self, l, l_prime) -> int:
        return int(self.matrix[self.cols.index(_coset(l)), self.cols.index(_coset(l_prime))])

    def row_dict(self, l) -> dict[tuple[int, ...], int]:
        i = self.cols.index(_coset(l))
        return {c.counts: int(v) for c, v in zip(self.cols, self.matrix[i]) if v}

    def to_json(self) -> dict:
        return {
            "params": {"r": self.params.r, "d": self.params.d, "n": self.params.n},
            "k": self.k,
            "cols": [c.to_json() for c in self.cols],
            "matrix": self.matrix.tolist(),
        }


def _coset(l) -> CosetIndex:
    return l if isinstance(l, CosetIndex) else CosetIndex(tuple(l))


def _distance_array(params: GroupParams, budget: int | None, backend=None):
    if budget is not None and params.num_left_cosets > budget:
        raise BudgetExceeded(f"coset enumeration of {params}", params.num_left_cosets, budget)
    cols = enumerate_double_cosets(params)
    reps = representative_array(params)
    lookup = kernels.class_lookup(params.r, reps)
    cos = kernels.coset_exponents(*params.triple)
    return cols, kernels.distance_counts(reps, cos, params.r, lookup, backend=backend)


def build_operators(params: GroupParams, budget: int | None = DEFAULT_COSET_BUDGET, backend=None):
    """[Delta_0, ..., Delta_n] by brute-force neighbour enumeration."""
    cols, D = _distance_array(params, budget, backend)
    return [BiInvariantOperator(params, k, cols, np.ascontiguousarray(D[:, k, :])) for k in range(params.n + 1)]


def build_operator(
    params: GroupParams, k: int, budget: int | None = DEFAULT_COSET_BUDGET, method: str = "brute", backend=None
) -> BiInvariantOperator:
    """Delta_k; ``method="analytic"`` uses the recurrence (d = 1, k = 1 only)."""
    if k < 0:
        raise InvalidParameters("distance must be nonnegative")
    if method == "analytic":
        if k != 1:
            raise InvalidParameters("the analytic operator exists only for k = 1")
        return analytic_operator(params)
    if method != "brute":
        raise InvalidParameters(f"unknown method {method!r}")
    cols = enumerate_double_cosets(params)
    if k > params.n:
        return BiInvariantOperator(params, k, cols, np.zeros((len(cols), len(cols)), dtype=np.int64))
    return build_operators(params, budget, backend)[k]


def _rule_matrix(params: GroupParams) -> np.ndarray:
    """l -> l - e_i + e_j with weight l_i, for i != j and j = i mod d.

    A double coset is written as its sorted exponent tuple, one entry per
    ball; moving any one of the l_i balls at i to j gives the weight l_i.
    """
    r, d, n = params.triple
    reps = representative_array(params)
    lookup = kernels.class_lookup(r, reps)
    steps = np.arange(d, r, d, dtype=np.int64)  # j - i, nonzero multiples of d
    s = len(reps)
    M = np.zeros((s, s), dtype=np.int64)
    if not len(steps):
        return M
    pw = r ** np.arange(n - 1, -1, -1, dtype=np.int64)
    rows = np.arange(s, dtype=np.int64)[:, None] * s
    for slot in range(n):
        moved = np.repeat(reps[:, None, :], len(steps), axis=1)  # (s, steps, n)
        moved[:, :, slot] = (moved[:, :, slot] + steps[None, :]) % r
        tgt = lookup[np.sort(moved, axis=2) @ pw]
        M += np.bincount((rows + tgt).ravel(), minlength=s * s).reshape(s, s)
    return M


def analytic_operator(params: GroupParams) -> BiInvariantOperator:
    """Delta_1 on G(r,1,n) from the recurrence: l -> l - e_i + e_j with weight l_i."""
    if params.d != 1:
        raise InvalidParameters("the analytic Delta_1 is only available for d = 1")
    return BiInvariantOperator(params, 1, enumerate_double_cosets(params), _rule_matrix(params))


def closed_form_eigenvalue(k, params: GroupParams) -> int:
    """n(r-1) - r * (k_1 + ... + k_{r-1}) for G(r,1,n)."""
    if params.d != 1:
        raise InvalidParameters("the closed form holds for d = 1 only")
    if not isinstance(k, SphericalIndex):
        k = SphericalIndex.from_tuple(k, params)
    return params.n * (params.r - 1) - params.r * sum(k.tail)


def eigenvalues(table, op: BiInvariantOperator) -> list[CyclotomicNumber]:
    """lambda = sum_l' M[e, l'] w(l') for every row."""
    ident = table.cols.index(CosetIndex.identity(table.params))
    row = op.matrix[ident]
    r = table.params.r
    out = []
    for values in table.values:
        lam = CyclotomicNumber.zero(r)
        for m, v in zip(row, values):
            if m:
                lam = lam + v * int(m)
        out.append(lam)
    return out


def verify_eigenfunction(table, op: BiInvariantOperator) -> Report:
    """Each table row w satisfies M w = lambda w exactly."""
    params = table.params
    if op.params != params:
        raise InvalidParameters("operator and table have different parameters")
    if [c.counts for c in op.cols] != [c.counts for c in table.cols]:
        raise InvalidParameters("operator and table list double cosets differently")
    rep = Report("laplace", params.triple)
    r = params.r
    den, V = table.integer_values()
    ident = table.cols.index(CosetIndex.identity(params))
    MV = exact_linear(op.matrix, V, axes=([1], [1]))  # (l, row, coeff), scale den
    lam = MV[ident]  # (row, coeff), scale den
    rhs = exact_multiply(lam[None, :, :], V.transpose(1, 0, 2), r)  # scale den^2
    lhs = MV * den
    lams = eigenvalues(table, op)
    for i, k in enumerate(table.rows):
        bad = np.nonzero((lhs[:, i, :] != rhs[:, i, :]).any(axis=1))[0]
        rep.add(
            f"eigen[k={op.k},{k}]",
            len(bad) == 0,
            f"(M w)({table.cols[int(bad[0])]}) != lambda w, lambda = {lams[i]}" if len(bad) else None,
        )
    groups: dict[CyclotomicNumber, list[str]] = {}
    for k, lam_i in zip(table.rows, lams):
        groups.setdefault(lam_i, []).append(str(k))
    for lam_i, members in groups.items():
        if len(members) > 1 and op.k > 0:
            rep.note(f"Delta_{op.k}: eigenvalue {lam_i} shared by {', '.join(members)}")
    return rep.finish()


def eigenpairs(table, op: BiInvariantOperator) -> list[dict]:
    return [
        {"spherical_index": list(k.rep), "lambda": str(lam)}
        for k, lam in zip(table.rows, eigenvalues(table, op))
    ]


def verify_laplace(table, budget: int | None = DEFAULT_COSET_BUDGET, backend=None) -> Report:
    """Eigen-equation for every Delta_k plus the structural checks on the operators."""
    params = table.params
    rep = Report("laplace", params.triple)
    ops = build_operators(params, budget, backend)
    s = len(table.cols)
    total = sum(op.matrix for op in ops)
    rep.add(
        "distances-cover",
        bool((total.sum(axis=1) == params.num_left_cosets).all()),
        "some row of sum_k Delta_k does not add up to r^n/d",
    )
    rep.add("identity-at-zero", np.array_equal(ops[0].matrix, np.eye(s, dtype=np.int64)), "Delta_0 is not the identity")
    rule = _rule_matrix(params)
    rep.add(
        "neighbour-rule",
        np.array_equal(ops[1].matrix, rule),
        "Delta_1 differs from the single-coordinate rule j = i mod d",
    )
    if params.d == 1:
        rep.add(
            "analytic-delta1",
            np.array_equal(ops[1].matrix, analytic_operator(params).matrix),
            "brute-force Delta_1 differs from the recurrence",
        )
        rep.add(
            "regular-degree",
            bool((ops[1].matrix.sum(axis=1) == params.n * (params.r - 1)).all()),
            "Delta_1 row sums differ from n(r-1)",
        )
    for op in ops:
        rep.extend(verify_eigenfunction(table, op))
    if params.d == 1:
        for k, lam in zip(table.rows, eigenvalues(table, ops[1])):
            cf = closed_form_eigenvalue(k, params)
            rep.add(
                f"closed-form[{k}]",
                lam == CyclotomicNumber.rational(params.r, cf),
                f"lambda {lam} != {cf}",
            )
    return rep.finish()


def _shift(l: tuple[int, ...], minus: int | None, plus: int | None):
    out = list(l)
    if minus is not None:
        out[minus] -= 1
    if plus is not None:
        out[plus] += 1
    return tuple(out)


def contiguity_check(k, l, params: GroupParams) -> Report:
    """lambda_k w(l) = sum over single-coordinate moves of the moved values.

    In tail coordinates:
      sum_{i>=1} l_0 F(l + e_i) + sum_{i>=1} l_i (F(l - e_i) + sum_{j>=1, j!=i} F(l - e_i + e_j)).
    Terms with a zero multiplier are skipped (their index leaves the simplex).
    """
    if params.d != 1:
        raise InvalidParameters("the contiguity relation is stated for d = 1")
    if not isinstance(k, SphericalIndex):
        k = SphericalIndex.from_tuple(k, params)
    l = _coset(l).check(params)
    r = params.r
    counts = l.counts
    rep = Report("contiguity", params.triple)
    lam = closed_form_eigenvalue(k, params)
    lhs = spherical_value(k, l, params) * lam
    rhs = CyclotomicNumber.zero(r)
    for i in range(1, r):
        if counts[0]:
            rhs = rhs + spherical_value(k, _shift(counts, 0, i), params) * counts[0]
        if counts[i]:
            rhs = rhs + spherical_value(k, _shift(counts, i, 0), params) * counts[i]
            for j in range(1, r):
                if j != i:
                    rhs = rhs + spherical_value(k, _shift(counts, i, j), params) * counts[i]
    diff = lhs - rhs
    rep.add(f"contiguity[{k},{l}]", diff.is_zero(), f"discrepancy {diff}")
    return rep.finish()


def three_term_check(x: int, n: int, N: int) -> Report:
    """(N - 2n) K_n(x) = (N - x) K_n(x + 1) + x K_n(x - 1), K_n(x) = 2F1(-x, -n; -N; 2)."""
    if not (0 <= x <= N and 0 <= n <= N and N >= 1):
        raise InvalidParameters("need 0 <= x, n <= N and N >= 1")
    rep = Report("three-term", (x, n, N))
    lhs = (N - 2 * n) * krawtchouk(n, x, N)
    rhs = 0
    if N - x:
        rhs += (N - x) * krawtchouk(n, x + 1, N)
    if x:
        rhs += x * krawtchouk(n, x - 1, N)
    rep.add(f"three-term[x={x},n={n},N={N}]", lhs == rhs, f"{lhs} != {rhs}")
    return rep.finish()


def check_metric_invariance(params: GroupParams, budget: int | None = 10**6) -> Report:
    """d(g x, g y) = d(x, y) for every g and every pair of cosets."""
    cosets = [GroupElement(params.r, a, tuple(range(params.n))) for a in exponent_tuples(params)]
    work = params.order * len(cosets) ** 2
    if budget is not None and work > budget:
        raise BudgetExceeded(f"metric invariance scan of {params}", work, budget)
    rep = Report("metric", params.triple)
    fail = None
    for g in enumerate_group(params):
        moved = [g * x for x in cosets]
        for (x, gx), (y, gy) in itertools.product(zip(cosets, moved), repeat=2):
            if hamming_distance(gx, gy) != hamming_distance(x, y):
                fail = f"g={g}, x={x}, y={y}"
                break
        if fail:
            break
    rep.add("left-invariance", fail is None, fail)
    return rep.finish()
