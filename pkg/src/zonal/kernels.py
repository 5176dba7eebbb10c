"""Integer kernels for the brute-force group computations.

Every kernel has two implementations with identical results: a numba
``@njit`` loop nest and a vectorised numpy version.  The numba path is used
when numba imports and ``ZONAL_NUMBA`` is unset or truthy; set
``ZONAL_NUMBA=0`` to force numpy.  Each public function also takes an
explicit ``backend=`` argument ("numba" or "numpy").

Conventions: group elements are rows of an exponent array ``exps`` (int64,
shape (N, n)) and a permutation array ``perms`` (one-line form on 0..n-1).
A double coset is identified by the code of its sorted exponent tuple read
as a base-r number; ``lookup[code]`` maps it to a column index.
"""
from __future__ import annotations

import itertools
import math
import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def _env_wants_numba() -> bool:
    flag = os.environ.get("ZONAL_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


DEFAULT_BACKEND = "numba" if HAVE_NUMBA and _env_wants_numba() else "numpy"

__all__ = [
    "DEFAULT_BACKEND",
    "HAVE_NUMBA",
    "class_lookup",
    "convolution_counts",
    "distance_counts",
    "double_coset_labels",
    "fixed_points_cosets",
    "fixed_points_twisted",
    "group_arrays",
    "hecke_counts",
    "signature_codes",
]


def _resolve(backend: str | None) -> str:
    backend = backend or DEFAULT_BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    return backend


if HAVE_NUMBA:
    njit = numba.njit(cache=True, nogil=True)
else:  # pragma: no cover
    def njit(f):
        return f


# -- construction helpers (pure numpy, not hot) ---------------------------

def all_permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def coset_exponents(r: int, d: int, n: int) -> np.ndarray:
    """Exponent tuples with sum = 0 mod d, lexicographic."""
    grid = np.indices((r,) * n).reshape(n, -1).T.astype(np.int64)
    return grid[grid.sum(axis=1) % d == 0]


def group_arrays(r: int, d: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """All of G(r,d,n) in lexicographic (exponents, permutation) order."""
    cos = coset_exponents(r, d, n)
    perms = all_permutations(n)
    exps = np.repeat(cos, len(perms), axis=0)
    prm = np.tile(perms, (len(cos), 1))
    return exps, prm


def class_lookup(r: int, rep_exps: np.ndarray) -> np.ndarray:
    """Dense map from sorted-exponent code to the row index of ``rep_exps``."""
    n = rep_exps.shape[1]
    lookup = np.full(r**n, -1, dtype=np.int64)
    codes = signature_codes(rep_exps, r, backend="numpy")
    lookup[codes] = np.arange(len(rep_exps))
    return lookup


def _powers(r: int, n: int) -> np.ndarray:
    return r ** np.arange(n - 1, -1, -1, dtype=np.int64)


# -- numpy implementations ------------------------------------------------

def _np_codes(exps, r):
    return np.sort(exps, axis=1) @ _powers(r, exps.shape[1])


def _np_hecke(rep_exps, perms, r, lookup):
    s, n = rep_exps.shape
    inv = np.argsort(perms, axis=1)
    out = np.zeros((s, s, s), dtype=np.int64)
    pw = _powers(r, n)
    for gi in range(s):
        # g h k with g = (a, id), h = (0, sigma), k = (b, id): exponents a + sigma.b
        moved = rep_exps[:, inv]  # (s_k, P, n): b_{sigma^-1(i)}
        prod = (rep_exps[gi][None, None, :] + moved) % r
        cls = lookup[np.sort(prod, axis=2) @ pw]
        for ki in range(s):
            out[gi, ki] = np.bincount(cls[ki], minlength=s)
    return out


def _np_mul(ae, ap, be, bp, r):
    ainv = np.argsort(ap, axis=1)
    exps = (ae + np.take_along_axis(be, ainv, axis=1)) % r
    perm = np.take_along_axis(ap, bp, axis=1)
    return exps, perm


def _np_inv(ae, ap, r):
    return (-np.take_along_axis(ae, ap, axis=1)) % r, np.argsort(ap, axis=1)


def _np_convolution(rep_exps, gexps, gperms, r, lookup):
    s, n = rep_exps.shape
    pw = _powers(r, n)
    cls_t = lookup[np.sort(gexps, axis=1) @ pw]
    ie, ip = _np_inv(gexps, gperms, r)
    ident = np.broadcast_to(np.arange(n, dtype=np.int64), ip.shape)
    out = np.zeros((s, s, s), dtype=np.int64)
    for gi in range(s):
        ge = np.broadcast_to(rep_exps[gi], ie.shape)
        pe, _ = _np_mul(ie, ip, ge, ident, r)
        cls_rest = lookup[np.sort(pe, axis=1) @ pw]
        np.add.at(out[gi], (cls_t, cls_rest), 1)
    return out


def _np_distance(rep_exps, coset_exps, r, lookup):
    s, n = rep_exps.shape
    cls_y = lookup[_np_codes(coset_exps, r)]
    out = np.zeros((s, n + 1, s), dtype=np.int64)
    for xi in range(s):
        dist = (coset_exps != rep_exps[xi]).sum(axis=1)
        np.add.at(out[xi], (dist, cls_y), 1)
    return out


def _np_fixed_cosets(coset_exps, perms):
    inv = np.argsort(perms, axis=1)
    out = np.empty(len(perms), dtype=np.int64)
    for j in range(len(perms)):
        out[j] = np.count_nonzero((coset_exps[:, inv[j]] == coset_exps).all(axis=1))
    return out


def _np_fixed_twisted(reps, perms, r, p):
    inv = np.argsort(perms, axis=1)
    out = np.empty(len(perms), dtype=np.int64)
    for j in range(len(perms)):
        diff = (reps[:, inv[j]] - reps) % r
        const = (diff == diff[:, :1]).all(axis=1)
        out[j] = np.count_nonzero(const & (diff[:, 0] % p == 0))
    return out


def _np_labels(gexps, gperms, r, element_index):
    n = gexps.shape[1]
    N = len(gexps)
    labels = np.arange(N, dtype=np.int64)
    neighbours = []
    for i in range(n - 1):
        tp = np.arange(n, dtype=np.int64)
        tp[i], tp[i + 1] = tp[i + 1], tp[i]
        te = np.zeros((N, n), dtype=np.int64)
        tperm = np.broadcast_to(tp, (N, n))
        for le, lp in (_np_mul(te, tperm, gexps, gperms, r), _np_mul(gexps, gperms, te, tperm, r)):
            rank = _np_perm_rank(lp)
            neighbours.append(element_index[le @ _powers(r, n), rank])
    while True:
        new = labels.copy()
        for nb in neighbours:
            np.minimum(new, new[nb], out=new)
            np.minimum.at(new, nb, new)
        # pointer jumping
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


def _np_perm_rank(perms):
    """Lexicographic rank of each row among permutations of 0..n-1."""
    N, n = perms.shape
    rank = np.zeros(N, dtype=np.int64)
    fact = 1
    for i in range(n - 1, -1, -1):
        smaller = (perms[:, i + 1:] < perms[:, i : i + 1]).sum(axis=1)
        rank += smaller * fact
        fact *= n - i
    return rank


# -- numba implementations ------------------------------------------------

@njit
def _nb_code(vec, r, buf):
    m = vec.shape[0]
    for i in range(m):
        buf[i] = vec[i]
    for i in range(1, m):
        v = buf[i]
        j = i - 1
        while j >= 0 and buf[j] > v:
            buf[j + 1] = buf[j]
            j -= 1
        buf[j + 1] = v
    code = 0
    for i in range(m):
        code = code * r + buf[i]
    return code


@njit
def _nb_codes(exps, r):
    N, n = exps.shape
    out = np.empty(N, dtype=np.int64)
    buf = np.empty(n, dtype=np.int64)
    for t in range(N):
        out[t] = _nb_code(exps[t], r, buf)
    return out


@njit
def _nb_mul(ae, ap, be, bp, r, oe, op):
    n = ae.shape[0]
    for i in range(n):
        oe[ap[i]] = (ae[ap[i]] + be[i]) % r
        op[i] = ap[bp[i]]


@njit
def _nb_inv(ae, ap, r, oe, op):
    n = ae.shape[0]
    for i in range(n):
        oe[i] = (-ae[ap[i]]) % r
        op[ap[i]] = i


@njit
def _nb_hecke(rep_exps, perms, r, lookup):
    s, n = rep_exps.shape
    P = perms.shape[0]
    out = np.zeros((s, s, s), dtype=np.int64)
    ident = np.arange(n)
    zero = np.zeros(n, dtype=np.int64)
    e1 = np.empty(n, dtype=np.int64)
    p1 = np.empty(n, dtype=np.int64)
    e2 = np.empty(n, dtype=np.int64)
    p2 = np.empty(n, dtype=np.int64)
    buf = np.empty(n, dtype=np.int64)
    for gi in range(s):
        for ki in range(s):
            for j in range(P):
                _nb_mul(rep_exps[gi], ident, zero, perms[j], r, e1, p1)
                _nb_mul(e1, p1, rep_exps[ki], ident, r, e2, p2)
                out[gi, ki, lookup[_nb_code(e2, r, buf)]] += 1
    return out


@njit
def _nb_convolution(rep_exps, gexps, gperms, r, lookup):
    s, n = rep_exps.shape
    N = gexps.shape[0]
    out = np.zeros((s, s, s), dtype=np.int64)
    ident = np.arange(n)
    ie = np.empty(n, dtype=np.int64)
    ip = np.empty(n, dtype=np.int64)
    pe = np.empty(n, dtype=np.int64)
    pp = np.empty(n, dtype=np.int64)
    buf = np.empty(n, dtype=np.int64)
    for t in range(N):
        a = lookup[_nb_code(gexps[t], r, buf)]
        _nb_inv(gexps[t], gperms[t], r, ie, ip)
        for gi in range(s):
            _nb_mul(ie, ip, rep_exps[gi], ident, r, pe, pp)
            out[gi, a, lookup[_nb_code(pe, r, buf)]] += 1
    return out


@njit
def _nb_distance(rep_exps, coset_exps, r, lookup):
    s, n = rep_exps.shape
    M = coset_exps.shape[0]
    out = np.zeros((s, n + 1, s), dtype=np.int64)
    buf = np.empty(n, dtype=np.int64)
    cls = np.empty(M, dtype=np.int64)
    for y in range(M):
        cls[y] = lookup[_nb_code(coset_exps[y], r, buf)]
    for xi in range(s):
        for y in range(M):
            dist = 0
            for i in range(n):
                if coset_exps[y, i] != rep_exps[xi, i]:
                    dist += 1
            out[xi, dist, cls[y]] += 1
    return out


@njit
def _nb_fixed_cosets(coset_exps, perms):
    M, n = coset_exps.shape
    P = perms.shape[0]
    out = np.zeros(P, dtype=np.int64)
    for j in range(P):
        for y in range(M):
            fixed = True
            for i in range(n):
                # (sigma . y)_{sigma(i)} = y_i
                if coset_exps[y, perms[j, i]] != coset_exps[y, i]:
                    fixed = False
                    break
            if fixed:
                out[j] += 1
    return out


@njit
def _nb_fixed_twisted(reps, perms, r, p):
    M, n = reps.shape
    P = perms.shape[0]
    out = np.zeros(P, dtype=np.int64)
    for j in range(P):
        for y in range(M):
            # sigma . x - x must be a constant multiple of p
            first = (reps[y, 0] - reps[y, perms[j, 0]]) % r
            ok = first % p == 0
            i = 1
            while ok and i < n:
                if (reps[y, i] - reps[y, perms[j, i]]) % r != first:
                    ok = False
                i += 1
            if ok:
                out[j] += 1
    return out


@njit
def _nb_find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit
def _nb_perm_rank(perm):
    n = perm.shape[0]
    rank = 0
    for i in range(n):
        smaller = 0
        for j in range(i + 1, n):
            if perm[j] < perm[i]:
                smaller += 1
        rank = rank * (n - i) + smaller
    return rank


@njit
def _nb_labels(gexps, gperms, r, element_index):
    N, n = gexps.shape
    parent = np.arange(N)
    te = np.zeros(n, dtype=np.int64)
    tp = np.arange(n)
    oe = np.empty(n, dtype=np.int64)
    op = np.empty(n, dtype=np.int64)
    for t in range(N):
        for i in range(n - 1):
            tp[i] = i + 1
            tp[i + 1] = i
            for side in range(2):
                if side == 0:
                    _nb_mul(te, tp, gexps[t], gperms[t], r, oe, op)
                else:
                    _nb_mul(gexps[t], gperms[t], te, tp, r, oe, op)
                code = 0
                for k in range(n):
                    code = code * r + oe[k]
                other = element_index[code, _nb_perm_rank(op)]
                a = _nb_find(parent, t)
                b = _nb_find(parent, other)
                if a < b:
                    parent[b] = a
                elif b < a:
                    parent[a] = b
            tp[i] = i
            tp[i + 1] = i + 1
    out = np.empty(N, dtype=np.int64)
    for t in range(N):
        out[t] = _nb_find(parent, t)
    return out


# -- public dispatch ------------------------------------------------------

def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def signature_codes(exps, r: int, backend: str | None = None) -> np.ndarray:
    exps = _i64(exps)
    if _resolve(backend) == "numba":
        return _nb_codes(exps, r)
    return _np_codes(exps, r)


def hecke_counts(rep_exps, perms, r: int, lookup, backend: str | None = None) -> np.ndarray:
    """C[g, k, c] = #{sigma in S_n : g sigma k lies in double coset c}."""
    args = (_i64(rep_exps), _i64(perms), r, _i64(lookup))
    if _resolve(backend) == "numba":
        return _nb_hecke(*args)
    return _np_hecke(*args)


def convolution_counts(rep_exps, gexps, gperms, r: int, lookup, backend: str | None = None):
    """N[g, a, b] = #{t in G : t in coset a, t^-1 g in coset b}."""
    args = (_i64(rep_exps), _i64(gexps), _i64(gperms), r, _i64(lookup))
    if _resolve(backend) == "numba":
        return _nb_convolution(*args)
    return _np_convolution(*args)


def distance_counts(rep_exps, coset_exps, r: int, lookup, backend: str | None = None):
    """D[x, k, c] = #{left cosets y in double coset c at Hamming distance k from rep x}."""
    args = (_i64(rep_exps), _i64(coset_exps), r, _i64(lookup))
    if _resolve(backend) == "numba":
        return _nb_distance(*args)
    return _np_distance(*args)


def fixed_points_cosets(coset_exps, perms, backend: str | None = None) -> np.ndarray:
    """Number of exponent tuples fixed by each permutation."""
    args = (_i64(coset_exps), _i64(perms))
    if _resolve(backend) == "numba":
        return _nb_fixed_cosets(*args)
    return _np_fixed_cosets(*args)


def fixed_points_twisted(reps, perms, r: int, p: int, backend: str | None = None) -> np.ndarray:
    """Fixed points on tuples modulo adding constant multiples of p."""
    args = (_i64(reps), _i64(perms), r, p)
    if _resolve(backend) == "numba":
        return _nb_fixed_twisted(*args)
    return _np_fixed_twisted(*args)


def element_index_table(gexps, gperms, r: int) -> np.ndarray:
    n = gexps.shape[1]
    table = np.full((r**n, math.factorial(n)), -1, dtype=np.int64)
    table[gexps @ _powers(r, n), _np_perm_rank(gperms)] = np.arange(len(gexps))
    return table


def double_coset_labels(gexps, gperms, r: int, backend: str | None = None) -> np.ndarray:
    """Smallest element index in each element's S_n x S_n orbit."""
    gexps, gperms = _i64(gexps), _i64(gperms)
    table = element_index_table(gexps, gperms, r)
    if _resolve(backend) == "numba":
        return _nb_labels(gexps, gperms, r, table)
    return _np_labels(gexps, gperms, r, table)
