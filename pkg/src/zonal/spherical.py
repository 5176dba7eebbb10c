"""Zonal spherical functions of the Gelfand pairs (G(r,d,n), S_n).

The value of the function indexed by the orbit of k on the double coset l
is the terminating hypergeometric sum

    F((-l_1, ..., -l_{r-1}), (-k_1, ..., -k_{r-1}), -n, (1 - zeta^{ij})).

Restricting from G(r,1,n) to G(r,d,n) leaves the formula unchanged; only
the index sets shrink (columns must satisfy sum i*l_i = 0 mod d, rows are
Gamma-orbits).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cosets import enumerate_double_cosets, enumerate_spherical_indices, orbit_of
from .cyclotomic import (
    CyclotomicNumber,
    exact_conjugate,
    exact_contract,
    from_integer_array,
    to_integer_array,
)
from .errors import InternalInconsistency, InvalidParameters
from .hypergeom import evaluate_character
from .indices import CosetIndex, GroupParams, SphericalIndex, multinomial
from .report import Report

__all__ = [
    "SphericalTable",
    "dimension",
    "spherical_table",
    "spherical_value",
    "verify_orthogonality",
]


def _as_spherical(k, params: GroupParams) -> SphericalIndex:
    if isinstance(k, SphericalIndex):
        if len(k.rep) != params.r or sum(k.rep) != params.n:
            raise InvalidParameters(f"{k} is not a spherical index of {params}")
        return k
    return SphericalIndex.from_tuple(k, params)


def _as_coset(l, params: GroupParams) -> CosetIndex:
    if not isinstance(l, CosetIndex):
        l = CosetIndex(tuple(l))
    return l.check(params)


def spherical_value(k, l, params: GroupParams) -> CyclotomicNumber:
    """omega^k(l); k may be any member of its Gamma-orbit."""
    if isinstance(k, SphericalIndex):
        k_tuple = _as_spherical(k, params).rep
    else:
        k_tuple = tuple(int(x) for x in k)
        _as_spherical(k_tuple, params)
    l = _as_coset(l, params)
    return evaluate_character(l.tail, k_tuple[1:], params.n, params.r)


def dimension(k, params: GroupParams) -> int:
    """dim W^k = multinomial(n; k) / |Gamma_k|."""
    k = _as_spherical(k, params)
    m = multinomial(k.rep)
    if m % k.stabilizer_order:
        raise InternalInconsistency(
            f"multinomial {m} of {k} not divisible by stabilizer order {k.stabilizer_order}"
        )
    return m // k.stabilizer_order


def coset_weight(l: CosetIndex, params: GroupParams) -> Fraction:
    """|D_l| / |G| = d * multinomial(n; l) / r^n."""
    return Fraction(params.d * multinomial(l.counts), params.r**params.n)


@dataclass
class SphericalTable:
    params: GroupParams
    rows: list[SphericalIndex]
    cols: list[CosetIndex]
    values: list[list[CyclotomicNumber]]
    dims: list[int]
    weights: list[Fraction]

    def value(self, k, l) -> CyclotomicNumber:
        k = _as_spherical(k, self.params)
        l = _as_coset(l, self.params)
        return self.values[self.rows.index(k)][self.cols.index(l)]

    def row_of(self, k) -> int:
        return self.rows.index(_as_spherical(k, self.params))

    def col_of(self, l) -> int:
        return self.cols.index(_as_coset(l, self.params))

    def copy(self) -> SphericalTable:
        return SphericalTable(
            self.params,
            list(self.rows),
            list(self.cols),
            [list(v) for v in self.values],
            list(self.dims),
            list(self.weights),
        )

    def integer_values(self) -> tuple[int, np.ndarray]:
        """(D, V) with V[row, col, c] = D * power-basis coefficient c."""
        return to_integer_array(self.values, self.params.r)

    def to_json(self, float_digits: int = 12) -> dict:
        return {
            "params": {"r": self.params.r, "d": self.params.d, "n": self.params.n},
            "rows": [
                dict(k.to_json(), dim=dim) for k, dim in zip(self.rows, self.dims)
            ],
            "cols": [
                {"counts": l.to_json(), "weight": _frac_str(w)}
                for l, w in zip(self.cols, self.weights)
            ],
            "values": [[v.to_json() for v in row] for row in self.values],
            "display": [[render_float(v, float_digits) for v in row] for row in self.values],
        }

    def to_csv(self, float_digits: int = 12) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "l", "exact", "float"])
        for k, row in zip(self.rows, self.values):
            for l, v in zip(self.cols, row):
                w.writerow([_tuple_str(k.rep), _tuple_str(l.counts), str(v), render_float(v, float_digits)])
        return buf.getvalue()


def _tuple_str(t) -> str:
    return " ".join(map(str, t))


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _round_str(x: float, digits: int) -> str:
    # decimal rounding is half-even, matching the CLI contract
    from decimal import ROUND_HALF_EVEN, Decimal

    q = Decimal(repr(x)).quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)
    if q == 0:
        q = abs(q)
    return format(q, "f")


def render_float(v: CyclotomicNumber, digits: int = 12) -> str:
    z = v.to_complex(digits)
    re = _round_str(z.real, digits)
    if v.order <= 2 or float(_round_str(z.imag, digits)) == 0.0:
        return re
    im = _round_str(abs(z.imag), digits)
    sign = "-" if z.imag < 0 else "+"
    return f"{re}{sign}{im}i"


def spherical_table(params: GroupParams) -> SphericalTable:
    rows = enumerate_spherical_indices(params)
    cols = enumerate_double_cosets(params)
    n, r = params.n, params.r
    values = [[evaluate_character(l.tail, k.tail, n, r) for l in cols] for k in rows]
    dims = [dimension(k, params) for k in rows]
    weights = [coset_weight(l, params) for l in cols]
    return SphericalTable(params, rows, cols, values, dims, weights)


def _discrepancy(scaled: np.ndarray, scale: int, expected: Fraction, order: int) -> CyclotomicNumber:
    return CyclotomicNumber.from_integer_vector(order, scaled, scale) - expected


def verify_orthogonality(table: SphericalTable) -> Report:
    """Weighted orthogonality of the rows, in both normalizations.

    For rows k, k': sum_l w(l) omega^k(l) conj(omega^k'(l)) must equal
    delta / dim(W^k) and also 1_{Gamma k}(k') |Gamma_k| / multinomial(n; k).
    The second form is additionally checked against every member k' of
    every orbit, not only the representatives.
    """
    params = table.params
    r, n = params.r, params.n
    rep = Report("orthogonality", params.triple)
    den, V = table.integer_values()
    wnum = np.array([params.d * multinomial(l.counts) for l in table.cols], dtype=object)
    wden = r**n
    scale = wden * den * den

    A = V * wnum[None, :, None]
    B = exact_conjugate(V, r)
    gram = exact_contract(A, B, axes=([1], [1]), order=r)  # (k, k', coeff)

    for i, k in enumerate(table.rows):
        mult = multinomial(k.rep)
        for j, k2 in enumerate(table.rows):
            delta = 1 if i == j else 0
            form1 = Fraction(delta, table.dims[i])
            form2 = Fraction(k.stabilizer_order, mult) if k2.rep in orbit_of(k.rep, params) else Fraction(0)
            rep.add(
                f"forms-agree[{k},{k2}]",
                form1 == form2,
                f"1/dim gives {form1}, stabilizer form gives {form2}",
            )
            for name, target in (("inv-dim", form1), ("stabilizer", form2)):
                ok = _matches(gram[i, j], scale, target)
                rep.add(
                    f"{name}[{k},{k2}]",
                    ok,
                    None if ok else f"discrepancy {_discrepancy(gram[i, j], scale, target, r)}",
                )

    # the orbit form against every member of X_n^{r-1}
    others = [kk for k in table.rows for kk in k.orbit if kk != k.rep]
    if others:
        extra = [[evaluate_character(l.tail, kk[1:], n, r) for l in table.cols] for kk in others]
        den2, V2 = to_integer_array(extra, r)
        # rescale both blocks to a common denominator
        common = math.lcm(den, den2)
        A2 = V * (common // den) * wnum[None, :, None]
        B2 = exact_conjugate(V2 * (common // den2), r)
        gram2 = exact_contract(A2, B2, axes=([1], [1]), order=r)
        scale2 = wden * common * common
        for i, k in enumerate(table.rows):
            orbit = set(k.orbit)
            for j, kk in enumerate(others):
                target = (
                    Fraction(k.stabilizer_order, multinomial(k.rep)) if kk in orbit else Fraction(0)
                )
                ok = _matches(gram2[i, j], scale2, target)
                rep.add(
                    f"orbit-member[{k},{_tuple_str(kk)}]",
                    ok,
                    None if ok else f"discrepancy {_discrepancy(gram2[i, j], scale2, target, r)}",
                )
    return rep.finish()


def _matches(scaled, scale: int, target: Fraction) -> bool:
    """Is the integer vector `scaled` / scale equal to the rational `target`?"""
    if any(int(x) for x in scaled[1:]):
        return False
    return Fraction(int(scaled[0]), scale) == target


def table_from_values(params: GroupParams, values) -> SphericalTable:
    """Rebuild a table with substituted values (used for negative controls)."""
    t = spherical_table(params)
    t.values = [list(row) for row in values]
    return t


def values_from_integers(V, den: int, order: int):
    return from_integer_array(V, order, den)
