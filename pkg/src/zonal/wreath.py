"""Elements of G(r,1,n) = C_r wr S_n and the subgroups G(r,d,n).

An element (xi^a_1, ..., xi^a_n, sigma) is stored as its exponent tuple and
the one-line form of sigma on {0, ..., n-1}.  A permutation acts on tuples by
(sigma . b)_i = b_{sigma^-1(i)}, which gives the product

    (a, sigma)(b, tau) = (a + sigma . b, sigma tau).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetExceeded, InvalidParameters
from .indices import CosetIndex, GroupParams

__all__ = [
    "GroupElement",
    "coset_signature",
    "enumerate_group",
    "in_subgroup",
    "inverse",
    "multiply",
    "negate_exponents",
]


@dataclass(frozen=True)
class GroupElement:
    r: int
    exponents: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        if self.r < 1:
            raise InvalidParameters(f"r must be positive, got {self.r}")
        exps = tuple(int(a) % self.r for a in self.exponents)
        perm = tuple(int(s) for s in self.perm)
        if len(perm) != len(exps) or sorted(perm) != list(range(len(perm))):
            raise InvalidParameters(f"{perm} is not a permutation of {len(exps)} points")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "perm", perm)

    @property
    def n(self) -> int:
        return len(self.exponents)

    @classmethod
    def identity(cls, r: int, n: int) -> GroupElement:
        return cls(r, (0,) * n, tuple(range(n)))

    @classmethod
    def diagonal(cls, r: int, exponents) -> GroupElement:
        exponents = tuple(exponents)
        return cls(r, exponents, tuple(range(len(exponents))))

    @classmethod
    def permutation(cls, r: int, perm) -> GroupElement:
        perm = tuple(perm)
        return cls(r, (0,) * len(perm), perm)

    def __mul__(self, other: GroupElement) -> GroupElement:
        return multiply(self, other)

    def __str__(self):
        exps = ",".join(map(str, self.exponents))
        perm = " ".join(str(s + 1) for s in self.perm)
        return f"({exps} | {perm})"


def _check_compatible(g: GroupElement, h: GroupElement):
    if g.r != h.r or g.n != h.n:
        raise InvalidParameters(
            f"cannot combine elements of G({g.r},1,{g.n}) and G({h.r},1,{h.n})"
        )


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    _check_compatible(g, h)
    sigma = g.perm
    inv = [0] * g.n
    for i, s in enumerate(sigma):
        inv[s] = i
    exps = tuple((g.exponents[i] + h.exponents[inv[i]]) % g.r for i in range(g.n))
    perm = tuple(sigma[t] for t in h.perm)
    return GroupElement(g.r, exps, perm)


def inverse(g: GroupElement) -> GroupElement:
    """(a, sigma)^-1 = ((-a_{sigma(1)}, ..., -a_{sigma(n)}), sigma^-1)."""
    sigma = g.perm
    inv = [0] * g.n
    for i, s in enumerate(sigma):
        inv[s] = i
    exps = tuple((-g.exponents[sigma[i]]) % g.r for i in range(g.n))
    return GroupElement(g.r, exps, tuple(inv))


def negate_exponents(g: GroupElement) -> GroupElement:
    """The automorphism (xi_1, ..., xi_n, sigma) -> (xi_1^-1, ..., xi_n^-1, sigma)."""
    return GroupElement(g.r, tuple(-a for a in g.exponents), g.perm)


def in_subgroup(g: GroupElement, params: GroupParams) -> bool:
    if g.r != params.r:
        raise InvalidParameters(f"element has r={g.r}, params have r={params.r}")
    return sum(g.exponents) % params.d == 0


def coset_signature(g: GroupElement) -> CosetIndex:
    counts = [0] * g.r
    for a in g.exponents:
        counts[a] += 1
    return CosetIndex(tuple(counts))


def check_budget(params: GroupParams, budget: int | None, what: str = "group enumeration"):
    if budget is not None and params.order > budget:
        raise BudgetExceeded(f"{what} of {params}", params.order, budget)


def exponent_tuples(params: GroupParams):
    """Left-coset representatives (a, id) of G(r,d,n)/S_n, lexicographic."""
    for exps in itertools.product(range(params.r), repeat=params.n):
        if sum(exps) % params.d == 0:
            yield exps


def enumerate_group(params: GroupParams, budget: int | None = None):
    """Yield every element of G(r,d,n) once, in lexicographic (exponents, perm) order."""
    check_budget(params, budget)
    perms = list(itertools.permutations(range(params.n)))
    for exps in exponent_tuples(params):
        for perm in perms:
            yield GroupElement(params.r, exps, perm)
