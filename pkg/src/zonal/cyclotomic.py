"""Exact arithmetic in the cyclotomic field Q(zeta_r).

Elements are stored in the power basis 1, x, ..., x^(phi(r)-1) of
Q[x]/(Phi_r(x)), so two elements of the same order are equal exactly when
their coefficient tuples are equal.  Elements of different orders are never
mixed; lift explicitly with ``cyclo_root(r, (r // d) * k)``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import mpmath
import numpy as np

__all__ = [
    "CyclotomicNumber",
    "cyclo_root",
    "cyclotomic_polynomial",
    "euler_phi",
    "power_table",
    "reduction_matrix",
]


def _divisors(r: int) -> list[int]:
    return [d for d in range(1, r + 1) if r % d == 0]


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; coefficients low -> high
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        c = num[shift + len(den) - 1]
        out[shift] = c
        if c:
            for i, b in enumerate(den):
                num[shift + i] -= c * b
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(r: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_r, lowest degree first.

    Computed by dividing x^r - 1 by Phi_d for every proper divisor d of r.
    """
    if r < 1:
        raise ValueError(f"cyclotomic order must be positive, got {r}")
    poly = [-1] + [0] * (r - 1) + [1]
    for d in _divisors(r)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def euler_phi(r: int) -> int:
    return len(cyclotomic_polynomial(r)) - 1


@lru_cache(maxsize=None)
def power_table(r: int) -> tuple[tuple[int, ...], ...]:
    """Row m holds the power-basis coordinates of x^m mod Phi_r, 0 <= m < r."""
    phi = euler_phi(r)
    cyc = cyclotomic_polynomial(r)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(r):
        rows.append(tuple(cur))
        # multiply by x, then fold the overflow coefficient back with Phi_r
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * cyc[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def reduction_matrix(r: int) -> np.ndarray:
    """Integer matrix R with x^m = sum_c R[m, c] x^c mod Phi_r for m < 2*phi(r) - 1."""
    phi = euler_phi(r)
    table = power_table(r)
    out = np.array([table[m % r] for m in range(2 * phi - 1)], dtype=np.int64)
    out.setflags(write=False)
    return out


def _as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, (int, Rational)):
        return Fraction(q)
    raise TypeError(f"cannot interpret {q!r} as an exact rational")


class CyclotomicNumber:
    """An element of Q(zeta_r) in canonical power-basis form."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs=None):
        if order < 1:
            raise ValueError(f"cyclotomic order must be positive, got {order}")
        phi = euler_phi(order)
        if coeffs is None:
            coeffs = ()
        coeffs = tuple(_as_fraction(c) for c in coeffs)
        if len(coeffs) > phi:
            # arbitrary polynomial in x: reduce through the power table
            acc = [Fraction(0)] * phi
            table = power_table(order)
            for m, c in enumerate(coeffs):
                if c:
                    for i, t in enumerate(table[m % order]):
                        if t:
                            acc[i] += c * t
            coeffs = tuple(acc)
        elif len(coeffs) < phi:
            coeffs = coeffs + (Fraction(0),) * (phi - len(coeffs))
        self.order = order
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def _raw(cls, order: int, coeffs: tuple[Fraction, ...]) -> CyclotomicNumber:
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, order: int, q) -> CyclotomicNumber:
        phi = euler_phi(order)
        return cls._raw(order, (_as_fraction(q),) + (Fraction(0),) * (phi - 1))

    @classmethod
    def zero(cls, order: int) -> CyclotomicNumber:
        return cls.rational(order, 0)

    @classmethod
    def one(cls, order: int) -> CyclotomicNumber:
        return cls.rational(order, 1)

    @classmethod
    def from_integer_vector(cls, order: int, vec, denominator: int = 1) -> CyclotomicNumber:
        return cls._raw(order, tuple(Fraction(int(v), denominator) for v in vec))

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def denominator(self) -> int:
        return math.lcm(*(c.denominator for c in self.coeffs))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> CyclotomicNumber:
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                raise ValueError(
                    f"mismatched cyclotomic orders {self.order} and {other.order}"
                )
            return other
        if isinstance(other, (int, Rational)):
            return CyclotomicNumber.rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber._raw(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber._raw(
            self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CyclotomicNumber):
            q = _as_fraction(other)
            return CyclotomicNumber._raw(self.order, tuple(a * q for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        r = self.order
        phi = len(self.coeffs)
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        out = list(prod[:phi])
        table = power_table(r)
        for m in range(phi, 2 * phi - 1):
            c = prod[m]
            if c:
                for i, t in enumerate(table[m % r]):
                    if t:
                        out[i] += c * t
        return CyclotomicNumber._raw(r, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CyclotomicNumber):
            q = _as_fraction(other)
            if q == 0:
                raise ZeroDivisionError("division of a cyclotomic number by zero")
            return self * (1 / q)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = CyclotomicNumber.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def conjugate(self) -> CyclotomicNumber:
        """Apply zeta -> zeta^-1, i.e. complex conjugation."""
        r = self.order
        table = power_table(r)
        out = [Fraction(0)] * len(self.coeffs)
        for j, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(table[(-j) % r]):
                    if t:
                        out[i] += c * t
        return CyclotomicNumber._raw(r, tuple(out))

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.order, self.coeffs))
        return self._hash

    # -- rendering --------------------------------------------------------

    def to_complex(self, digits: int = 15) -> complex:
        """Numerical value at zeta_r = exp(2 pi i / r); display only."""
        if digits < 1:
            raise ValueError("digits must be at least 1")
        with mpmath.workdps(max(digits, 15) + 5):
            z = mpmath.exp(2j * mpmath.pi / self.order)
            acc = mpmath.mpc(0)
            for j, c in enumerate(self.coeffs):
                if c:
                    acc += mpmath.mpf(c.numerator) / c.denominator * z**j
            return complex(acc)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> CyclotomicNumber:
        return cls(obj["order"], [Fraction(n, d) for n, d in obj["coeffs"]])

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                body = str(c)
            else:
                mono = "z" if j == 1 else f"z^{j}"
                if c == 1:
                    body = mono
                elif c == -1:
                    body = "-" + mono
                else:
                    body = f"{c}*{mono}"
            terms.append(body)
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return f"CyclotomicNumber({self.order}, {str(self)!r})"


@lru_cache(maxsize=None)
def cyclo_root(r: int, k: int) -> CyclotomicNumber:
    """zeta_r^k in canonical form."""
    if r < 1:
        raise ValueError(f"cyclotomic order must be positive, got {r}")
    return CyclotomicNumber._raw(r, tuple(Fraction(t) for t in power_table(r)[k % r]))


# -- exact integer arrays -------------------------------------------------
#
# A block of field elements with a common denominator D is stored as an
# integer array whose last axis holds power-basis coordinates.  Products are
# computed per coordinate pair and folded back with `reduction_matrix`.
# The dtype is picked from an a-priori bound on every intermediate: float64
# while integers stay below 2**52 (BLAS, still exact), int64 below 2**62,
# Python integers otherwise.

_F64_LIMIT = 2**52
_I64_LIMIT = 2**62


def to_integer_array(values, order: int) -> tuple[int, np.ndarray]:
    """(D, A) with A[..., c] = D * coeff_c of each value; A has object dtype."""
    flat = list(_flatten(values))
    den = math.lcm(*(v.denominator() for v in flat)) if flat else 1
    arr = np.empty(len(flat) * euler_phi(order), dtype=object)
    pos = 0
    for v in flat:
        if v.order != order:
            raise ValueError(f"mismatched cyclotomic orders {v.order} and {order}")
        for c in v.coeffs:
            arr[pos] = c.numerator * (den // c.denominator)
            pos += 1
    shape = _shape(values) + (euler_phi(order),)
    return den, arr.reshape(shape)


def _flatten(values):
    if isinstance(values, CyclotomicNumber):
        yield values
    else:
        for v in values:
            yield from _flatten(v)


def _shape(values) -> tuple[int, ...]:
    if isinstance(values, CyclotomicNumber):
        return ()
    values = list(values)
    if not values:
        return (0,)
    return (len(values),) + _shape(values[0])


def max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(max(abs(int(a.max())), abs(int(a.min()))))


def _pick_dtype(bound: int):
    if bound < _F64_LIMIT:
        return np.float64
    if bound < _I64_LIMIT:
        return np.int64
    return object


def _cast(a: np.ndarray, dtype) -> np.ndarray:
    if dtype is object:
        return a.astype(object)
    if a.dtype == object:
        a = a.astype(np.int64)
    return a.astype(dtype)


def _to_exact(a: np.ndarray) -> np.ndarray:
    if a.dtype == np.float64:
        return np.rint(a).astype(np.int64).astype(object)
    return a.astype(object)


def exact_linear(X: np.ndarray, Y: np.ndarray, axes) -> np.ndarray:
    """tensordot(X, Y, axes) for integer arrays, exactly."""
    X, Y = np.asarray(X), np.asarray(Y)
    y_axes = axes[1] if isinstance(axes[1], (list, tuple)) else [axes[1]]
    summed = int(np.prod([Y.shape[ax] for ax in y_axes])) if y_axes else 1
    bound = max_abs(X) * max_abs(Y) * max(summed, 1)
    dtype = _pick_dtype(bound)
    return _to_exact(np.tensordot(_cast(X, dtype), _cast(Y, dtype), axes=axes))


def exact_contract(A: np.ndarray, B: np.ndarray, axes, order: int) -> np.ndarray:
    """Field-valued tensordot: sum over paired axes of A (x) B in Z[zeta_order].

    The coordinate axis (last) of A and B must not appear in `axes`.
    """
    phi = euler_phi(order)
    R = reduction_matrix(order)
    a_axes = axes[0] if isinstance(axes[0], (list, tuple)) else [axes[0]]
    summed = int(np.prod([A.shape[ax] for ax in a_axes])) if a_axes else 1
    raw = max_abs(A) * max_abs(B) * max(summed, 1) * phi
    bound = raw * max(max_abs(R), 1) * (2 * phi - 1)
    dtype = _pick_dtype(bound)
    A = _cast(A, dtype)
    B = _cast(B, dtype)
    prod = None
    for c in range(phi):
        Ac = A[..., c]
        for c2 in range(phi):
            term = np.tensordot(Ac, B[..., c2], axes=axes)
            if prod is None:
                prod = np.zeros(term.shape + (2 * phi - 1,), dtype=term.dtype)
            prod[..., c + c2] += term
    return _to_exact(np.tensordot(prod, _cast(R, dtype), axes=([prod.ndim - 1], [0])))


def exact_multiply(A: np.ndarray, B: np.ndarray, order: int) -> np.ndarray:
    """Elementwise field product of broadcast-compatible integer arrays."""
    phi = euler_phi(order)
    R = reduction_matrix(order)
    bound = max_abs(A) * max_abs(B) * phi * max(max_abs(R), 1) * (2 * phi - 1)
    dtype = _pick_dtype(bound)
    A = _cast(A, dtype)
    B = _cast(B, dtype)
    shape = np.broadcast_shapes(A.shape[:-1], B.shape[:-1])
    prod = np.zeros(shape + (2 * phi - 1,), dtype=dtype)
    for c in range(phi):
        for c2 in range(phi):
            prod[..., c + c2] += A[..., c] * B[..., c2]
    return _to_exact(np.tensordot(prod, _cast(R, dtype), axes=([prod.ndim - 1], [0])))


@lru_cache(maxsize=None)
def conjugation_matrix(order: int) -> np.ndarray:
    """Integer matrix C with conj(a)[c'] = sum_c a[c] C[c, c']."""
    phi = euler_phi(order)
    table = power_table(order)
    out = np.array([table[(-j) % order] for j in range(phi)], dtype=np.int64)
    out.setflags(write=False)
    return out


def exact_conjugate(A: np.ndarray, order: int) -> np.ndarray:
    C = conjugation_matrix(order)
    return exact_linear(A, C, axes=([A.ndim - 1], [0]))


def from_integer_array(A: np.ndarray, order: int, denominator: int = 1):
    """Nested lists of CyclotomicNumber from an integer array."""
    if A.ndim == 1:
        return CyclotomicNumber.from_integer_vector(order, A, denominator)
    return [from_integer_array(a, order, denominator) for a in A]
