"""Terminating (n+1, m+1)-hypergeometric functions over Q(zeta_r).

    F(alpha, beta, gamma, X) = sum over nonnegative integer matrices (a_ij)
        prod_i (alpha_i)_{row_i} prod_j (beta_j)_{col_j}
        / (gamma)_{total}  *  prod X_ij^a_ij / prod a_ij!

with gamma a negative integer and the sum restricted to total <= -gamma.
Only the square case (len(alpha) == len(beta)) is implemented.
"""
from __future__ import annotations

import math
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import CyclotomicNumber, cyclo_root, euler_phi, power_table
from .errors import BudgetExceeded, InvalidParameters

__all__ = [
    "CharacterMatrix",
    "HypergeomSpec",
    "character_matrix",
    "evaluate",
    "evaluate_character",
    "gauss_2f1_terminating",
    "pochhammer",
    "term_budget",
]


def pochhammer(x, m: int):
    """Rising factorial (x)_m = x (x+1) ... (x+m-1), with (x)_0 = 1."""
    if m < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    out = 1
    for i in range(m):
        out *= x + i
        if out == 0:
            return 0
    return out


@dataclass(frozen=True)
class CharacterMatrix:
    """The (r-1) x (r-1) matrix with entries 1 - zeta_r^(ij), 1 <= i, j <= r-1."""

    r: int
    entries: tuple[tuple[CyclotomicNumber, ...], ...]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __len__(self):
        return len(self.entries)


@lru_cache(maxsize=None)
def character_matrix(r: int) -> CharacterMatrix:
    if r < 2:
        raise InvalidParameters(f"character matrix needs r >= 2, got {r}")
    one = CyclotomicNumber.one(r)
    rows = tuple(
        tuple(one - cyclo_root(r, i * j) for j in range(1, r)) for i in range(1, r)
    )
    return CharacterMatrix(r, rows)


@dataclass(frozen=True)
class HypergeomSpec:
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: int
    matrix: object  # CharacterMatrix or square nested sequence of CyclotomicNumber

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(int(b) for b in self.beta))
        m = len(self.alpha)
        if len(self.beta) != m:
            raise InvalidParameters("only square specs are supported: |alpha| must equal |beta|")
        if any(a > 0 for a in self.alpha) or any(b > 0 for b in self.beta):
            raise InvalidParameters("alpha and beta must be nonpositive integers")
        if self.gamma >= 0:
            raise InvalidParameters("gamma must be a negative integer")
        if len(self.matrix) != m or any(len(self._row(i)) != m for i in range(m)):
            raise InvalidParameters(f"matrix must be {m} x {m}")
        orders = {self.entry(i, j).order for i in range(m) for j in range(m)}
        if len(orders) > 1:
            raise InvalidParameters(f"matrix mixes cyclotomic orders {sorted(orders)}")

    def _row(self, i):
        if isinstance(self.matrix, CharacterMatrix):
            return self.matrix.entries[i]
        return self.matrix[i]

    def entry(self, i: int, j: int) -> CyclotomicNumber:
        return self._row(i)[j]

    @property
    def size(self) -> int:
        return len(self.alpha)

    @property
    def order(self) -> int:
        if self.size == 0:
            return 1
        return self.entry(0, 0).order


class TermBudget:
    """Caps the number of series terms enumerated while it is active."""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def charge(self, k: int = 1):
        self.used += k
        if self.used > self.limit:
            raise BudgetExceeded("hypergeometric evaluation", self.used, self.limit)


_active_budget: ContextVar[TermBudget | None] = ContextVar("term_budget", default=None)


@contextmanager
def term_budget(limit: int):
    """Raise BudgetExceeded once more than `limit` terms have been enumerated."""
    b = TermBudget(limit)
    token = _active_budget.set(b)
    try:
        yield b
    finally:
        _active_budget.reset(token)


def _accumulate(alpha, beta, gamma, live, prune: bool) -> dict[tuple[int, ...], Fraction]:
    """Map exponent tuple over `live` cells -> total rational coefficient.

    `live` lists (i, j) cells in row-major order; other cells stay zero.
    The coefficient is built incrementally: placing a at (i, j) multiplies
    by (alpha_i + row_i)_a (beta_j + col_j)_a / ((gamma + total)_a a!).
    """
    limit = -gamma
    rows = [0] * len(alpha)
    cols = [0] * len(beta)
    exps = [0] * len(live)
    acc: dict[tuple[int, ...], Fraction] = {}
    ncell = len(live)
    budget = _active_budget.get()

    def dfs(c: int, total: int, coef: Fraction):
        if c == ncell:
            if budget is not None:
                budget.charge()
            key = tuple(exps)
            acc[key] = acc.get(key, 0) + coef
            return
        i, j = live[c]
        cap = limit - total
        if prune:
            cap = min(cap, -alpha[i] - rows[i], -beta[j] - cols[j])
        # a = 0 contributes a factor of one
        dfs(c + 1, total, coef)
        ai, bj, g = alpha[i] + rows[i], beta[j] + cols[j], gamma + total
        cur = coef
        for a in range(1, cap + 1):
            cur = cur * ((ai + a - 1) * (bj + a - 1)) / ((g + a - 1) * a)
            if not cur:
                if prune:
                    raise AssertionError("pruned enumeration produced a vanishing term")
                break
            exps[c] = a
            rows[i] += a
            cols[j] += a
            dfs(c + 1, total + a, cur)
            rows[i] -= a
            cols[j] -= a
        exps[c] = 0

    dfs(0, 0, Fraction(1))
    return acc


def evaluate(spec: HypergeomSpec, prune: bool = True) -> CyclotomicNumber:
    """Exact value of F(alpha, beta, gamma, X).

    With ``prune`` the enumeration keeps row sums <= -alpha_i, column sums
    <= -beta_j and skips zero entries of X; every skipped term vanishes, so
    the value is the same as the plain sum over total <= -gamma.
    """
    m = spec.size
    order = spec.order
    if prune:
        live = [(i, j) for i in range(m) for j in range(m) if not spec.entry(i, j).is_zero()]
    else:
        live = [(i, j) for i in range(m) for j in range(m)]
    acc = _accumulate(spec.alpha, spec.beta, spec.gamma, live, prune)
    powers: dict[tuple[int, int], CyclotomicNumber] = {}

    def power(c: int, a: int) -> CyclotomicNumber:
        key = (c, a)
        if key not in powers:
            i, j = live[c]
            powers[key] = spec.entry(i, j) ** a
        return powers[key]

    total = CyclotomicNumber.zero(order)
    for key, coef in acc.items():
        if not coef:
            continue
        term = CyclotomicNumber.rational(order, coef)
        for c, a in enumerate(key):
            if a:
                term = term * power(c, a)
        total = total + term
    return total


def _int_mul(u: tuple[int, ...], v: tuple[int, ...], r: int) -> tuple[int, ...]:
    """Product of two integer power-basis vectors in Z[zeta_r]."""
    phi = len(u)
    raw = [0] * (2 * phi - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    raw[i + j] += a * b
    out = raw[:phi]
    table = power_table(r)
    for m in range(phi, 2 * phi - 1):
        if raw[m]:
            for c, t in enumerate(table[m % r]):
                if t:
                    out[c] += raw[m] * t
    return tuple(out)


@lru_cache(maxsize=None)
def _one_minus_root(r: int, e: int) -> tuple[int, ...]:
    vec = [0] * euler_phi(r)
    vec[0] = 1
    for c, t in enumerate(power_table(r)[e % r]):
        vec[c] -= t
    return tuple(vec)


@lru_cache(maxsize=1 << 16)
def _factor_product(r: int, b: tuple[int, ...]) -> tuple[int, ...]:
    """prod_e (1 - zeta^e)^(b_e) as an integer vector; b has length r."""
    last = max((e for e, a in enumerate(b) if a), default=None)
    if last is None:
        one = [0] * euler_phi(r)
        one[0] = 1
        return tuple(one)
    rest = list(b)
    rest[last] -= 1
    return _int_mul(_factor_product(r, tuple(rest)), _one_minus_root(r, last), r)


@lru_cache(maxsize=65536)
def evaluate_character(l_tail: tuple[int, ...], k_tail: tuple[int, ...], n: int, r: int) -> CyclotomicNumber:
    """F((-l_1..-l_{r-1}), (-k_1..-k_{r-1}), -n, character_matrix(r)).

    Entries 1 - zeta^(ij) depend only on e = ij mod r, so terms are merged
    by the exponent vector (b_e) of the factors (1 - zeta^e) before any
    field multiplication happens.
    """
    if len(l_tail) != r - 1 or len(k_tail) != r - 1:
        raise InvalidParameters("index tails must have length r - 1")
    if n < 1:
        raise InvalidParameters("n must be positive")
    alpha = tuple(-x for x in l_tail)
    beta = tuple(-x for x in k_tail)
    # cells with zero row/column capacity or a zero entry never contribute
    live = [
        (i, j)
        for i in range(r - 1)
        for j in range(r - 1)
        if l_tail[i] and k_tail[j] and ((i + 1) * (j + 1)) % r
    ]
    acc = _accumulate(alpha, beta, -n, live, prune=True)
    folded: dict[tuple[int, ...], Fraction] = {}
    for key, coef in acc.items():
        b = [0] * r
        for c, a in enumerate(key):
            if a:
                i, j = live[c]
                b[((i + 1) * (j + 1)) % r] += a
        bk = tuple(b)
        folded[bk] = folded.get(bk, 0) + coef
    terms = [(b, c) for b, c in sorted(folded.items()) if c]
    den = math.lcm(*(c.denominator for _, c in terms)) if terms else 1
    vec = [0] * euler_phi(r)
    for b, coef in terms:
        scale = coef.numerator * (den // coef.denominator)
        for c, x in enumerate(_factor_product(r, b)):
            if x:
                vec[c] += scale * x
    return CyclotomicNumber.from_integer_vector(r, vec, den)


def gauss_2f1_terminating(a: int, b: int, c: int, z) -> Fraction:
    """Terminating 2F1(a, b; c; z) for nonpositive integer a or b and negative c."""
    if c >= 0:
        raise InvalidParameters("c must be a negative integer")
    if a > 0 and b > 0:
        raise InvalidParameters("one of a, b must be a nonpositive integer")
    z = Fraction(z)
    stop = min(x for x in (a, b) if x <= 0)
    total = Fraction(0)
    term = Fraction(1)
    for m in range(-stop + 1):
        total += term
        num = (a + m) * (b + m)
        if num == 0 or z == 0:
            break
        if c + m == 0:
            raise ZeroDivisionError(f"(c)_m vanishes at m={m + 1} before the series terminates")
        term = term * num * z / ((c + m) * (m + 1))
    return total
