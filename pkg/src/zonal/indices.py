"""Index types for double cosets and spherical functions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial

from .errors import InvalidParameters


def multinomial(parts) -> int:
    parts = tuple(parts)
    if any(p < 0 for p in parts):
        return 0
    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


@dataclass(frozen=True)
class GroupParams:
    """Parameters of G(r, d, n); requires d | r and n >= 1."""

    r: int
    d: int
    n: int

    def __post_init__(self):
        if self.r < 1 or self.d < 1 or self.n < 1:
            raise InvalidParameters(f"r, d, n must be positive, got {self.triple}")
        if self.r % self.d:
            raise InvalidParameters(f"d={self.d} does not divide r={self.r}")

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.r, self.d, self.n)

    @property
    def p(self) -> int:
        return self.r // self.d

    @property
    def order(self) -> int:
        return self.r**self.n * factorial(self.n) // self.d

    @property
    def num_left_cosets(self) -> int:
        return self.r**self.n // self.d

    def __str__(self):
        return f"G({self.r},{self.d},{self.n})"


@dataclass(frozen=True, order=True)
class CosetIndex:
    """Multiplicities (l_0, ..., l_{r-1}) of each root of unity on the diagonal."""

    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(map(int, self.counts)))

    @property
    def r(self) -> int:
        return len(self.counts)

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def tail(self) -> tuple[int, ...]:
        return self.counts[1:]

    def weighted_sum(self) -> int:
        return sum(i * c for i, c in enumerate(self.counts))

    def is_valid(self, params: GroupParams) -> bool:
        return (
            len(self.counts) == params.r
            and all(c >= 0 for c in self.counts)
            and self.n == params.n
            and self.weighted_sum() % params.d == 0
        )

    def check(self, params: GroupParams) -> CosetIndex:
        if not self.is_valid(params):
            raise InvalidParameters(f"{self.counts} is not a double coset index of {params}")
        return self

    def inverse(self) -> CosetIndex:
        """Index of the double coset of inverses: l'_i = l_{-i mod r}."""
        r = self.r
        return CosetIndex(tuple(self.counts[(-i) % r] for i in range(r)))

    @classmethod
    def identity(cls, params: GroupParams) -> CosetIndex:
        return cls((params.n,) + (0,) * (params.r - 1))

    def representative(self) -> tuple[int, ...]:
        """Exponent tuple (0,..,0, 1,..,1, ...) with l_i copies of i."""
        return tuple(itertools.chain.from_iterable(map(itertools.repeat, range(self.r), self.counts)))

    def to_json(self) -> list[int]:
        return list(self.counts)

    def __str__(self):
        return "(" + ",".join(map(str, self.counts)) + ")"


def shift(k: tuple[int, ...], step: int) -> tuple[int, ...]:
    """Act by the `step`-th power of the cycle (0 1 ... r-1): entry i moves to i + step."""
    r = len(k)
    return tuple(k[(i - step) % r] for i in range(r))


@dataclass(frozen=True)
class SphericalIndex:
    """A Gamma-orbit of weight tuples, stored by its canonical representative.

    The representative is the lexicographically largest member of the
    orbit, so the trivial function is (n, 0, ..., 0) and, for r = 2, the
    representative satisfies k_0 >= k_1.
    """

    rep: tuple[int, ...]
    stabilizer_order: int
    orbit: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    @property
    def r(self) -> int:
        return len(self.rep)

    @property
    def n(self) -> int:
        return sum(self.rep)

    @property
    def tail(self) -> tuple[int, ...]:
        return self.rep[1:]

    @classmethod
    def from_tuple(cls, k, params: GroupParams) -> SphericalIndex:
        k = tuple(int(x) for x in k)
        if len(k) != params.r or any(x < 0 for x in k) or sum(k) != params.n:
            raise InvalidParameters(f"{k} is not a weight tuple for {params}")
        orbit = sorted({shift(k, j * params.p) for j in range(params.d)}, reverse=True)
        stab = sum(1 for j in range(params.d) if shift(k, j * params.p) == k)
        return cls(orbit[0], stab, tuple(orbit))

    def to_json(self) -> dict:
        return {
            "rep": list(self.rep),
            "orbit": [list(o) for o in self.orbit],
            "stabilizer_order": self.stabilizer_order,
        }

    def __str__(self):
        return "(" + ",".join(map(str, self.rep)) + ")"
