"""Double cosets of S_n in G(r,d,n), Gamma-orbits of weight tuples, and counting.

Both index sets are listed in descending lexicographic order of the full
r-tuple, so the identity coset (n, 0, ..., 0) and the trivial spherical
function come first.
"""
from __future__ import annotations

import itertools
import math
import operator
from functools import lru_cache, reduce

import numpy as np

from . import kernels
from .indices import CosetIndex, GroupParams, SphericalIndex, multinomial, shift
from .wreath import check_budget

__all__ = [
    "burnside_counts",
    "compositions",
    "count_congruence_tuples",
    "double_coset_size",
    "enumerate_double_cosets",
    "enumerate_spherical_indices",
]


def compositions(n: int, parts: int):
    """Weak compositions of n into `parts` parts, descending lexicographic."""
    # a composition is the multiset of part indices taken with multiplicity;
    # ascending sorted multisets give descending count tuples
    if parts < 1:
        return
    for balls in itertools.combinations_with_replacement(range(parts), n):
        c = [0] * parts
        for b in balls:
            c[b] += 1
        yield tuple(c)


@lru_cache(maxsize=None)
def _double_cosets(r: int, d: int, n: int) -> tuple[CosetIndex, ...]:
    return tuple(
        CosetIndex(c)
        for c in compositions(n, r)
        if d == 1 or sum(map(operator.mul, range(r), c)) % d == 0
    )


def enumerate_double_cosets(params: GroupParams) -> list[CosetIndex]:
    return list(_double_cosets(*params.triple))


@lru_cache(maxsize=64)
def _representative_array(r: int, d: int, n: int) -> np.ndarray:
    reps = np.array(list(itertools.combinations_with_replacement(range(r), n)), dtype=np.int64).reshape(-1, n)
    reps = reps[reps.sum(axis=1) % d == 0]
    reps.setflags(write=False)
    return reps


def representative_array(params: GroupParams) -> np.ndarray:
    """Sorted exponent tuples of the double cosets, in enumeration order (read-only)."""
    return _representative_array(*params.triple)


def double_coset_size(idx: CosetIndex, params: GroupParams) -> int:
    """|S_n x S_n| = n! * multinomial(n; l_0, ..., l_{r-1})."""
    idx.check(params)
    return math.factorial(params.n) * multinomial(idx.counts)


@lru_cache(maxsize=None)
def _spherical_indices(r: int, d: int, n: int) -> tuple[SphericalIndex, ...]:
    params = GroupParams(r, d, n)
    out = []
    for k in compositions(n, r):
        idx = SphericalIndex.from_tuple(k, params)
        if idx.rep == k:
            out.append(idx)
    return tuple(out)


def enumerate_spherical_indices(params: GroupParams) -> list[SphericalIndex]:
    """One canonical representative per Gamma-orbit of {k : sum k_i = n}."""
    return list(_spherical_indices(*params.triple))


def orbit_of(k, params: GroupParams) -> set[tuple[int, ...]]:
    return {shift(tuple(k), j * params.p) for j in range(params.d)}


def count_congruence_tuples(r: int, lengths) -> int:
    """#{a in (Z/r)^m : sum a_i l_i = 0 mod r} = gcd(r, l_1, ..., l_m) r^(m-1)."""
    lengths = tuple(lengths)
    if r < 1:
        raise ValueError("r must be positive")
    if not lengths:
        return 1
    g = reduce(math.gcd, lengths, r)
    return g * r ** (len(lengths) - 1)


def twisted_coset_reps(params: GroupParams) -> np.ndarray:
    """Representatives of G(r,1,n)/((G/K)H): first exponent in [0, p)."""
    grid = kernels.coset_exponents(params.r, 1, params.n)
    return grid[grid[:, 0] < params.p]


def burnside_counts(params: GroupParams, budget: int | None = None, backend=None) -> tuple[int, int]:
    """(|H\\K/H|, |H\\G/((G/K)H)|) by Burnside's lemma over H = S_n.

    K = G(r,d,n) and G = G(r,1,n); the first count averages fixed points
    on K/H, the second on G/((G/K)H).
    """
    check_budget(params, budget, "Burnside count")
    perms = kernels.all_permutations(params.n)
    fixed_k = kernels.fixed_points_cosets(
        kernels.coset_exponents(*params.triple), perms, backend=backend
    )
    fixed_g = kernels.fixed_points_twisted(
        twisted_coset_reps(params), perms, params.r, params.p, backend=backend
    )
    h = len(perms)
    total_k, total_g = int(fixed_k.sum()), int(fixed_g.sum())
    if total_k % h or total_g % h:
        raise ArithmeticError("Burnside average is not an integer")
    return total_k // h, total_g // h
