"""Product formula for the spherical values and its Krawtchouk (r = 2) case.

For double cosets l, l' the product w(l) w(l') is a convex combination of
values w(l^A) over r x r nonnegative integer matrices A with row sums l and
column sums l'.  A contributes

    prod_i multinomial(l_i; a_i0, ..., a_i,r-1) / multinomial(n; l')

to the coset with l^A_m = sum_i a_{i, (m - i) mod r}.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .cosets import enumerate_double_cosets, enumerate_spherical_indices
from .errors import InvalidParameters
from .hypergeom import gauss_2f1_terminating, pochhammer
from .indices import CosetIndex, GroupParams, SphericalIndex, multinomial
from .report import Report
from .spherical import spherical_value

__all__ = [
    "LinearizationTerm",
    "contingency_tables",
    "krawtchouk",
    "product_expand",
    "rahman_identity_check",
    "relabelled_tables",
    "verify_product_formula",
]


@dataclass(frozen=True)
class LinearizationTerm:
    coset: CosetIndex
    coefficient: Fraction

    def to_json(self) -> dict:
        q = self.coefficient
        return {
            "coset": self.coset.to_json(),
            "coefficient": str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}",
        }


def contingency_tables(rows, cols):
    """All nonnegative integer matrices with the given row and column sums."""
    rows, cols = tuple(rows), tuple(cols)
    if sum(rows) != sum(cols):
        return

    def fill(i, remaining, acc):
        if i == len(rows) - 1:
            # the last row is forced by the column sums
            if sum(remaining) == rows[i]:
                yield tuple(acc) + (tuple(remaining),)
            return
        for row in _bounded_compositions(rows[i], remaining):
            rest = [c - a for c, a in zip(remaining, row)]
            yield from fill(i + 1, rest, acc + [row])

    if not rows:
        return
    yield from fill(0, list(cols), [])


def _bounded_compositions(total, caps):
    """Compositions of `total` into len(caps) parts with part j <= caps[j]."""
    if len(caps) == 1:
        if total <= caps[0]:
            yield (total,)
        return
    tail_cap = sum(caps[1:])
    for head in range(min(total, caps[0]), max(0, total - tail_cap) - 1, -1):
        for rest in _bounded_compositions(total - head, caps[1:]):
            yield (head,) + rest


def merged_index(A) -> tuple[int, ...]:
    r = len(A)
    return tuple(sum(A[i][(m - i) % r] for i in range(r)) for m in range(r))


def _coerce(l, params: GroupParams) -> CosetIndex:
    if not isinstance(l, CosetIndex):
        l = CosetIndex(tuple(l))
    return l.check(params)


def product_expand(l, l_prime, params: GroupParams) -> list[LinearizationTerm]:
    """Merged linearization terms of w(l) w(l'), descending by coset."""
    l = _coerce(l, params)
    l_prime = _coerce(l_prime, params)
    norm = multinomial(l_prime.counts)
    acc: dict[tuple[int, ...], int] = {}
    for A in contingency_tables(l.counts, l_prime.counts):
        weight = 1
        for i, row in enumerate(A):
            weight *= multinomial(row)
        key = merged_index(A)
        acc[key] = acc.get(key, 0) + weight
    return [
        LinearizationTerm(CosetIndex(key), Fraction(w, norm))
        for key, w in sorted(acc.items(), reverse=True)
    ]


def relabelled_tables(l, l_prime):
    """The same matrix set built from free (r-1) x (r-1) blocks.

    Border entries are reconstructed from the margins and any matrix with a
    negative reconstructed entry is dropped.
    """
    l, l_prime = tuple(l), tuple(l_prime)
    r = len(l)
    out = set()
    ranges = [range(min(l[i], l_prime[j]) + 1) for i in range(1, r) for j in range(1, r)]
    for block in itertools.product(*ranges):
        A = [[0] * r for _ in range(r)]
        for (i, j), a in zip(((i, j) for i in range(1, r) for j in range(1, r)), block):
            A[i][j] = a
        for i in range(1, r):
            A[i][0] = l[i] - sum(A[i][1:])
        for j in range(1, r):
            A[0][j] = l_prime[j] - sum(A[i][j] for i in range(1, r))
        A[0][0] = l[0] - sum(A[0][1:])
        if any(x < 0 for row in A for x in row):
            continue
        out.add(tuple(tuple(row) for row in A))
    return out


def verify_product_formula(k, l, l_prime, params: GroupParams, terms=None) -> Report:
    """w(l) w(l') == sum_terms c * w(l^A), exactly."""
    if not isinstance(k, SphericalIndex):
        k = SphericalIndex.from_tuple(k, params)
    l = _coerce(l, params)
    l_prime = _coerce(l_prime, params)
    rep = Report("product", params.triple)
    if terms is None:
        terms = product_expand(l, l_prime, params)
    label = f"[{k},{l},{l_prime}]"
    total = sum((t.coefficient for t in terms), Fraction(0))
    rep.add(f"coefficients-sum{label}", total == 1, f"coefficients sum to {total}")
    rep.add(
        f"coefficients-positive{label}",
        all(t.coefficient > 0 for t in terms),
        "a coefficient is not positive",
    )
    bad = [t.coset for t in terms if not t.coset.is_valid(params)]
    rep.add(f"closure{label}", not bad, f"term {bad[0]} violates the mod-d constraint" if bad else None)
    if bad:
        return rep.finish()
    lhs = spherical_value(k, l, params) * spherical_value(k, l_prime, params)
    rhs = sum((spherical_value(k, t.coset, params) * t.coefficient for t in terms), spherical_value(k, l, params) * 0)
    diff = lhs - rhs
    rep.add(f"product{label}", diff.is_zero(), f"discrepancy {diff}")
    return rep.finish()


def verify_product_grid(params: GroupParams) -> Report:
    """Every (k, l, l') of the table, plus symmetry and the relabelling cross-check."""
    rep = Report("product", params.triple)
    cols = enumerate_double_cosets(params)
    rows = enumerate_spherical_indices(params)
    expansions = {}
    for l, lp in itertools.product(cols, cols):
        expansions[l, lp] = product_expand(l, lp, params)
    for l, lp in itertools.product(cols, cols):
        rep.add(
            f"symmetric[{l},{lp}]",
            expansions[l, lp] == expansions[lp, l],
            "expansions of (l, l') and (l', l) differ",
        )
        full = set(contingency_tables(l.counts, lp.counts))
        rel = relabelled_tables(l.counts, lp.counts)
        rep.add(f"relabelling[{l},{lp}]", full == rel, f"{len(full)} matrices vs {len(rel)} relabelled")
    for k in rows:
        for l, lp in itertools.product(cols, cols):
            rep.extend(verify_product_formula(k, l, lp, params, expansions[l, lp]))
    return rep.finish()


def krawtchouk(n: int, x: int, N: int) -> Fraction:
    """K_n(x; 1/2, N) = 2F1(-x, -n; -N; 2)."""
    return gauss_2f1_terminating(-x, -n, -N, 2)


def rahman_coefficients(x: int, y: int, N: int) -> dict[int, Fraction]:
    """Coefficients of K_n(2s + y - x) in the p = 1/2 linearization, merged by argument."""
    den = pochhammer(-N, x)
    out: dict[int, Fraction] = {}
    for s in range(x + 1):
        c = Fraction(comb(x, s) * pochhammer(y - N, s) * pochhammer(-y, x - s), den)
        if c:
            arg = 2 * s + y - x
            out[arg] = out.get(arg, 0) + c
    return out


def rahman_identity_check(x: int, y: int, n: int, N: int) -> Report:
    """K_n(x) K_n(y) against the explicit sum and against product_expand at G(2,1,N)."""
    if N < 1:
        raise InvalidParameters("N must be positive")
    if not (0 <= x <= N and 0 <= y <= N and 0 <= n <= N):
        raise InvalidParameters("need 0 <= x, y, n <= N")
    rep = Report("rahman", (x, y, n, N))
    label = f"[x={x},y={y},n={n},N={N}]"
    lhs = krawtchouk(n, x, N) * krawtchouk(n, y, N)
    coeffs = rahman_coefficients(x, y, N)
    rhs = sum((c * krawtchouk(n, arg, N) for arg, c in coeffs.items()), Fraction(0))
    rep.add(f"rahman{label}", lhs == rhs, f"lhs {lhs} != rhs {rhs}")

    params = GroupParams(2, 1, N)
    terms = product_expand((N - x, x), (N - y, y), params)
    k = (N - n, n)
    route = sum(
        (spherical_value(k, t.coset, params) * t.coefficient for t in terms),
        spherical_value(k, terms[0].coset, params) * 0,
    )
    rep.add(
        f"product-route{label}",
        route.is_rational() and route.rational_value() == lhs,
        f"product_expand gives {route}, Krawtchouk product {lhs}",
    )
    merged = {t.coset.counts[1]: t.coefficient for t in terms}
    rep.add(f"coefficients-coincide{label}", merged == coeffs, f"{merged} vs {coeffs}")
    return rep.finish()


def rahman_grid(N_max: int) -> Report:
    rep = Report("rahman", (N_max,))
    for N in range(1, N_max + 1):
        for x, y, n in itertools.product(range(N + 1), repeat=3):
            rep.extend(rahman_identity_check(x, y, n, N))
    return rep.finish()
