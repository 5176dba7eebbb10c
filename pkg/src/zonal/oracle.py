"""Brute-force certification of spherical tables on the literal group.

Nothing here evaluates a hypergeometric series.  A table is taken as a
list of functions on double cosets; the oracle builds G(r,d,n) element by
element, partitions it into S_n double cosets by orbit closure, and checks
the defining properties of zonal spherical functions:

* the averaging functional equation  (1/n!) sum_h w(g h k) = w(g) w(k),
* bi-invariance, w(e) = 1 and w(g^-1) = conj(w(g)),
* pairwise distinct rows, one per double coset,
* the convolution rule  w_i * w_j = (|G| / dim_i) delta_ij w_i.

Together these pin the table down: the spherical functions of a Gelfand
pair are exactly the nonzero solutions of the functional equation, and the
convolution rule fixes the dimensions.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from . import kernels
from .cyclotomic import exact_conjugate, exact_contract, exact_linear, exact_multiply, to_integer_array
from .errors import BudgetExceeded
from .indices import CosetIndex, GroupParams
from .report import Report
from .wreath import GroupElement, check_budget, coset_signature, enumerate_group, inverse

__all__ = [
    "DEFAULT_BUDGET",
    "brute_force_double_cosets",
    "certification_grid",
    "certify_spherical_table",
    "convolution_check",
    "full_functional_equation",
]

DEFAULT_BUDGET = 10**4
FULL_RUN_LIMIT = 48


def certification_grid(max_order: int = DEFAULT_BUDGET, max_r: int = 8, max_n: int | None = None):
    """All (r, d, n) with d | r and |G(r,d,n)| <= max_order, r <= max_r.

    The order bound alone does not bound r (n = 1 and d = r give order r),
    hence the explicit cap on r.
    """
    out = []
    for r in range(2, max_r + 1):
        for d in (x for x in range(1, r + 1) if r % x == 0):
            n = 1
            while r**n * math.factorial(n) // d <= max_order:
                if max_n is not None and n > max_n:
                    break
                out.append((r, d, n))
                n += 1
    return out


class _Group:
    """G(r,d,n) as integer arrays plus its brute-force double coset partition."""

    def __init__(self, params: GroupParams, budget: int | None, backend=None):
        check_budget(params, budget, "oracle enumeration")
        self.params = params
        r, d, n = params.triple
        self.backend = backend
        self.exps, self.perms = kernels.group_arrays(r, d, n)
        if len(self.exps) != params.order:
            raise AssertionError("group enumeration has the wrong size")
        labels = kernels.double_coset_labels(self.exps, self.perms, r, backend=backend)
        roots, sizes = np.unique(labels, return_counts=True)
        self.labels = labels
        # the smallest element of each class is (sorted exponents, identity)
        self.rep_exps = self.exps[roots]
        self.sizes = sizes
        self.signatures = [coset_signature(GroupElement(r, tuple(e), tuple(range(n)))) for e in self.rep_exps]
        self.root_to_class = {int(x): i for i, x in enumerate(roots)}

    def element_classes(self) -> np.ndarray:
        return np.array([self.root_to_class[int(x)] for x in self.labels], dtype=np.int64)

    def signature_is_complete(self) -> tuple[bool, str | None]:
        """Do multiplicity signatures separate the classes, and are they constant on them?"""
        r = self.params.r
        if len(set(self.signatures)) != len(self.signatures):
            return False, "two double cosets share a signature"
        cls = self.element_classes()
        counts = np.stack([np.bincount(row, minlength=r) for row in self.exps])
        sig_arr = np.array([s.counts for s in self.signatures], dtype=np.int64)
        bad = np.nonzero((counts != sig_arr[cls]).any(axis=1))[0]
        if len(bad):
            t = int(bad[0])
            g = GroupElement(r, tuple(int(x) for x in self.exps[t]), tuple(int(x) for x in self.perms[t]))
            return False, f"{g} has signature {coset_signature(g)} but lies in the class of {self.signatures[cls[t]]}"
        return True, None

    def rep_element(self, i: int) -> GroupElement:
        return GroupElement(self.params.r, tuple(int(x) for x in self.rep_exps[i]), tuple(range(self.params.n)))


def brute_force_double_cosets(params: GroupParams, budget: int | None = DEFAULT_BUDGET, backend=None):
    """[(CosetIndex, size)] from the orbit partition, descending lexicographic."""
    grp = _Group(params, budget, backend)
    ok, witness = grp.signature_is_complete()
    if not ok:
        raise AssertionError(witness)
    out = sorted(zip(grp.signatures, (int(s) for s in grp.sizes)), key=lambda t: t[0].counts, reverse=True)
    return out


def _lift(table, grp: _Group):
    """Integer values of the table rows on the oracle's classes, or a witness."""
    r = grp.params.r
    col_of = {tuple(c.counts): j for j, c in enumerate(table.cols)}
    order = []
    for sig in grp.signatures:
        if sig.counts not in col_of:
            return None, None, f"double coset {sig} has no table column"
        order.append(col_of[sig.counts])
    if len(order) != len(table.cols):
        return None, None, f"table has {len(table.cols)} columns, group has {len(order)} double cosets"
    values = [[row[j] for j in order] for row in table.values]
    den, V = to_integer_array(values, r)
    return den, V, None


def _row_name(table, i) -> str:
    k = table.rows[i]
    k = k.rep if hasattr(k, "rep") else k
    return "(" + ",".join(str(x) for x in k) + ")"


def _identity_class(grp: _Group) -> int:
    ident = CosetIndex.identity(grp.params).counts
    return [s.counts for s in grp.signatures].index(ident)


def certify_spherical_table(table, budget: int | None = DEFAULT_BUDGET, full: bool | None = None, backend=None) -> Report:
    """Certify every row of `table` as a zonal spherical function.

    The functional equation is checked on pairs of double coset
    representatives; bi-invariance makes that equivalent to all pairs.  When
    ``full`` is set (by default for groups of order <= 48) it is also checked
    on every pair of group elements without the reduction.
    """
    params = table.params
    rep = Report("oracle", params.triple)
    grp = _Group(params, budget, backend)
    r, n = params.r, params.n
    s = len(grp.signatures)

    ok, witness = grp.signature_is_complete()
    rep.add("bi-invariance", ok, witness)
    rep.add("row-count", len(table.rows) == s, f"{len(table.rows)} rows for {s} double cosets")
    den, V, witness = _lift(table, grp)
    rep.add("columns", V is not None, witness)
    if V is None:
        return rep.finish()

    # w(e) = 1
    e = _identity_class(grp)
    for i in range(len(table.rows)):
        v = V[i, e]
        good = int(v[0]) == den and not any(int(x) for x in v[1:])
        rep.add(f"unit[{_row_name(table, i)}]", good, f"w(e) != 1 at row {_row_name(table, i)}")

    # w(g^-1) = conj(w(g))
    inv_cls = []
    for i in range(s):
        sig = coset_signature(inverse(grp.rep_element(i)))
        inv_cls.append([x.counts for x in grp.signatures].index(sig.counts))
    conj = exact_conjugate(V, r)
    for i in range(len(table.rows)):
        bad = [g for g in range(s) if not np.array_equal(V[i, inv_cls[g]], conj[i, g])]
        rep.add(
            f"inverse[{_row_name(table, i)}]",
            not bad,
            f"g={grp.rep_element(bad[0])}" if bad else None,
        )

    # distinct rows
    seen = {}
    for i in range(len(table.rows)):
        key = tuple(int(x) for x in V[i].ravel())
        j = seen.setdefault(key, i)
        rep.add(
            f"distinct[{_row_name(table, i)}]",
            j == i,
            f"rows {_row_name(table, j)} and {_row_name(table, i)} coincide",
        )

    # functional equation on representative pairs: D * sum_c C[g,k,c] V(c) == n! V(g) V(k)
    lookup = kernels.class_lookup(r, grp.rep_exps)
    C = kernels.hecke_counts(grp.rep_exps, kernels.all_permutations(n), r, lookup, backend=backend)
    lhs = exact_linear(C, V, axes=([2], [1])) * den  # (g, k, row, coeff)
    rhs = exact_multiply(V[:, :, None, :], V[:, None, :, :], r) * math.factorial(n)  # (row, g, k, coeff)
    for i in range(len(table.rows)):
        diff = np.nonzero((lhs[:, :, i, :] != rhs[i]).any(axis=2))
        good = len(diff[0]) == 0
        witness = None
        if not good:
            g, k = int(diff[0][0]), int(diff[1][0])
            witness = f"(g,k) = ({grp.rep_element(g)}, {grp.rep_element(k)})"
        rep.add(f"functional-equation[{_row_name(table, i)}]", good, witness)

    if full is None:
        full = params.order <= FULL_RUN_LIMIT
    if full:
        rep.extend(full_functional_equation(table, grp, den, V), prefix="unreduced")
    return rep.finish()


def full_functional_equation(table, grp: _Group, den: int, V) -> Report:
    """Functional equation and bi-invariance over all group pairs, with plain element products."""
    params = grp.params
    r, n = params.r, params.n
    rep = Report("oracle-unreduced", params.triple)
    elements = list(enumerate_group(params))
    sn = [GroupElement.permutation(r, p) for p in itertools.permutations(range(n))]
    sig_index = {s.counts: i for i, s in enumerate(grp.signatures)}

    def cls(g):
        return sig_index[coset_signature(g).counts]

    classes = [cls(g) for g in elements]
    fail = None
    for a, g in enumerate(elements):
        for h1, h2 in itertools.product(sn, sn):
            if cls(h1 * g * h2) != classes[a]:
                fail = f"g={g}, h=({h1}, {h2})"
                break
        if fail:
            break
    rep.add("bi-invariance", fail is None, fail)
    for i in range(len(table.rows)):
        vals = V[i]
        fail = None
        for a, g in enumerate(elements):
            for b, k in enumerate(elements):
                total = np.zeros(vals.shape[1], dtype=object)
                for h in sn:
                    total = total + vals[cls(g * h * k)]
                lhs = total * den
                rhs = exact_multiply(vals[classes[a]], vals[classes[b]], r) * math.factorial(n)
                if not np.array_equal(lhs, rhs):
                    fail = f"(g,k) = ({g}, {k})"
                    break
            if fail:
                break
        rep.add(f"functional-equation[{_row_name(table, i)}]", fail is None, fail)
    return rep.finish()


def convolution_check(table, budget: int | None = DEFAULT_BUDGET, backend=None) -> Report:
    """w_i * w_j = (|G| / dim_i) delta_ij w_i with (f*h)(g) = sum_t f(t) h(t^-1 g)."""
    params = table.params
    rep = Report("convolution", params.triple)
    grp = _Group(params, budget, backend)
    r = params.r
    den, V, witness = _lift(table, grp)
    rep.add("columns", V is not None, witness)
    if V is None:
        return rep.finish()
    lookup = kernels.class_lookup(r, grp.rep_exps)
    N = kernels.convolution_counts(grp.rep_exps, grp.exps, grp.perms, r, lookup, backend=backend)
    # X[g, b, i] = sum_a N[g, a, b] V_i(a); conv[g, i, j] = sum_b X[g, b, i] V_j(b)
    X = exact_linear(N, V, axes=([1], [1]))
    conv = exact_contract(X, V, axes=([1], [1]), order=r)
    m = len(table.rows)
    dims = list(table.dims)
    for i in range(m):
        for j in range(m):
            lhs = conv[:, i, j, :] * dims[i]
            target = V[i] * (params.order * den) if i == j else np.zeros_like(V[i])
            bad = np.nonzero((lhs != target).any(axis=1))[0]
            rep.add(
                f"convolution[{_row_name(table, i)},{_row_name(table, j)}]",
                len(bad) == 0,
                f"g={grp.rep_element(int(bad[0]))}, claimed dim {dims[i]}" if len(bad) else None,
            )
    return rep.finish()


def certify_all(table, budget: int | None = DEFAULT_BUDGET, backend=None) -> Report:
    """Functional equation suite, double coset sizes and convolution in one report."""
    params = table.params
    if budget is not None and params.order > budget:
        raise BudgetExceeded(f"oracle certification of {params}", params.order, budget)
    rep = Report("oracle", params.triple)
    rep.extend(certify_spherical_table(table, budget, backend=backend))
    rep.extend(convolution_check(table, budget, backend=backend))
    return rep.finish()


def brute_force_orbit_sizes(params: GroupParams, budget: int | None = DEFAULT_BUDGET) -> dict:
    return {c.counts: size for c, size in brute_force_double_cosets(params, budget)}

