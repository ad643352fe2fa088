"""Minors and compound matrices over R by Laplace expansion.

The k-th compound of a t x c matrix A holds every k x k minor, indexed by
increasing row and column tuples in itertools.combinations order.  Minors
are built one column at a time: the minor on (I, J) expands along the last
column of J into minors on (I minus one row, J minus its last column).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .ring import RingSpec, mul


@lru_cache(maxsize=None)
def combos(t: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.combinations(range(t), k))


@lru_cache(maxsize=None)
def combo_index(t: int, k: int) -> dict[tuple[int, ...], int]:
    return {c: i for i, c in enumerate(combos(t, k))}


@lru_cache(maxsize=None)
def _row_tables(t: int, l: int):
    rows = combos(t, l)
    prev = combo_index(t, l - 1)
    pick = np.zeros((len(rows), l), dtype=np.int64)
    sub = np.zeros((len(rows), l), dtype=np.int64)
    sign = np.zeros((len(rows), l), dtype=np.int64)
    for r, I in enumerate(rows):
        for p, i in enumerate(I):
            pick[r, p] = i
            sub[r, p] = prev[I[:p] + I[p + 1:]]
            sign[r, p] = -1 if (p + l + 1) % 2 else 1
    return pick, sub, sign


def wedge_sign(subset, j: int) -> int:
    """Sign of e_subset ^ e_j relative to the sorted wedge."""
    return -1 if sum(1 for w in subset if w > j) % 2 else 1


def compound(spec: RingSpec, a, k: int, col_sets=None) -> np.ndarray:
    """All k x k minors of a.

    Returns shape (C(t, k), len(col_sets), n) where col_sets defaults to
    every increasing k-tuple of columns.
    """
    a = np.asarray(a, dtype=np.int64) % spec.q
    t, c = a.shape[0], a.shape[1]
    if col_sets is None:
        col_sets = combos(c, k)
    col_sets = [tuple(s) for s in col_sets]
    if k == 0:
        out = np.zeros((1, len(col_sets), spec.n), dtype=np.int64)
        out[:, :, 0] = 1
        return out
    if k > t:
        return np.zeros((0, len(col_sets), spec.n), dtype=np.int64)
    levels = [sorted({s[:l] for s in col_sets}) for l in range(k + 1)]
    prev = np.zeros((1, 1, spec.n), dtype=np.int64)
    prev[0, 0, 0] = 1
    prev_index = {(): 0}
    for l in range(1, k + 1):
        cols = levels[l]
        last = np.array([s[-1] for s in cols], dtype=np.int64)
        csub = np.array([prev_index[s[:-1]] for s in cols], dtype=np.int64)
        pick, rsub, sign = _row_tables(t, l)
        entries = a[pick[:, :, None], last[None, None, :]]
        minors = prev[rsub[:, :, None], csub[None, None, :]]
        terms = mul(spec, entries, minors) * sign[:, :, None, None]
        prev = terms.sum(axis=1) % spec.q
        prev_index = {s: i for i, s in enumerate(cols)}
    order = np.array([prev_index[s] for s in col_sets], dtype=np.int64)
    return prev[:, order, :]


def det(spec: RingSpec, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    k = a.shape[0]
    if a.shape[1] != k:
        raise ValueError("determinant of a non-square matrix")
    return compound(spec, a, k)[0, 0]


def wedge_vectors(spec: RingSpec, vectors) -> np.ndarray:
    """Coordinates of v_1 ^ ... ^ v_k over sorted generator wedges.

    ``vectors`` has shape (t, k, n): column j is v_j.
    """
    vectors = np.asarray(vectors, dtype=np.int64)
    k = vectors.shape[1]
    return compound(spec, vectors, k)[:, 0, :]
