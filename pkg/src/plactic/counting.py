"""Vectorized counts of column pairs and triples.

Columns are indexed by ``mask - 1``. Each column is a row of its letters
in increasing order padded with ``n + 1``, so that ``(u, v)`` is a tableau
pair exactly when ``u`` is entrywise at most ``v``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .words import check_n

TABLEAU, ONE_COLUMN, TWO_COLUMNS = 0, 1, 2


def _padded(n: int) -> np.ndarray:
    m = (1 << n) - 1
    masks = np.arange(1, m + 1)
    bits = (masks[:, None] >> np.arange(n)) & 1  # (m, n), bit i is letter i+1
    letters = np.where(bits == 1, np.arange(1, n + 1), n + 1)
    return np.sort(letters, axis=1)


def _chunks(m: int, k: int) -> list[tuple[int, int]]:
    k = max(1, min(k, m))
    step = -(-m // k)
    return [(a, min(a + step, m)) for a in range(0, m, step)]


def type_matrix(n: int, threads: int = 1) -> np.ndarray:
    """``T[a, b]`` is the type of the pair of columns with masks a+1, b+1."""
    check_n(n)
    U = _padded(n)
    m = U.shape[0]
    lo = U[:, 0]
    hi = np.max(np.where(U <= n, U, 0), axis=1)
    T = np.empty((m, m), dtype=np.int8)

    def fill(bounds):
        a, b = bounds
        tab = np.all(U[a:b, None, :] <= U[None, :, :], axis=2)
        one = lo[a:b, None] > hi[None, :]
        T[a:b] = np.where(tab, TABLEAU, np.where(one, ONE_COLUMN, TWO_COLUMNS))

    # cap the broadcast block at a few million cells
    k = max(threads, -(-m * m * n // 4_000_000))
    parts = _chunks(m, k)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            list(ex.map(fill, parts))
    else:
        for p in parts:
            fill(p)
    return T


def pair_counts(n: int) -> int:
    """Number of non-tableau column pairs."""
    return int(np.count_nonzero(type_matrix(n)))


def triple_counts(n: int, threads: int = 1) -> tuple[int, int, int]:
    """(Knuth 3-cells, restricted column 3-cells, column 3-cells)."""
    T = type_matrix(n, threads)
    nz = T != TABLEAU
    in0 = nz.sum(axis=0, dtype=np.int64)
    out0 = nz.sum(axis=1, dtype=np.int64)
    colo3 = int(in0 @ out0)

    singles = np.array([(1 << i) - 1 for i in range(n)])  # indices of c_1..c_n
    Ts = T[singles]  # (n, m)
    bar = int((Ts != TABLEAU).sum(axis=0, dtype=np.int64) @ out0)

    out2 = (T == TWO_COLUMNS).sum(axis=1, dtype=np.int64)
    k22 = int((Ts == TWO_COLUMNS).sum(axis=0, dtype=np.int64) @ out2)

    # x v is a column and (xv, t) is a tableau pair while (v, t) is not
    two = T == TWO_COLUMNS
    xs, vs = np.nonzero(Ts == ONE_COLUMN)

    def cprime(bounds):
        a, b = bounds
        x, v = xs[a:b], vs[a:b]
        xv = (singles[x] + 1 | v + 1) - 1
        return int(np.count_nonzero(two[v] & (T[xv] == TABLEAU)))

    parts = _chunks(len(xs), threads) if len(xs) else []
    if threads > 1 and len(parts) > 1:
        with ThreadPoolExecutor(threads) as ex:
            kc = sum(ex.map(cprime, parts))
    else:
        kc = sum(map(cprime, parts))
    return k22 + kc, bar, colo3
