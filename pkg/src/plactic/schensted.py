"""Schensted row insertion and the plactic-equality oracle."""

from __future__ import annotations

from bisect import bisect_right
from typing import Sequence

from .words import Column, Tableau, Word

Rows = list[list[int]]


def _insert_rows(rows: Rows, y: int) -> None:
    # rows are planar, top to bottom; bump into the row below
    for r in rows:
        j = bisect_right(r, y)
        if j == len(r):
            r.append(y)
            return
        r[j], y = y, r[j]
    rows.append([y])


def _rows_to_tableau(rows: Rows) -> Tableau:
    if not rows:
        return Tableau(())
    cols = []
    for j in range(len(rows[0])):
        m = 0
        for r in rows:
            if len(r) <= j:
                break
            m |= 1 << (r[j] - 1)
        cols.append(Column(m))
    return Tableau(tuple(cols))


def schensted_rows(w: Sequence[int]) -> Rows:
    """Planar rows (top to bottom) of P(w)."""
    rows: Rows = []
    for y in w:
        _insert_rows(rows, y)
    return rows


def insert(T: Tableau, y: int) -> Tableau:
    """P(row_reading(T) y)."""
    rows = [list(r) for r in T.rows]
    _insert_rows(rows, y)
    return _rows_to_tableau(rows)


def p_tableau(w: Sequence[int]) -> Tableau:
    return _rows_to_tableau(schensted_rows(w))


def p_columns(w: Sequence[int]) -> tuple[Column, ...]:
    """Column factorization of P(w), left to right."""
    return p_tableau(w).columns


def lnds(w: Sequence[int]) -> int:
    """Length of the longest non-decreasing subsequence of ``w``."""
    rows = schensted_rows(w)
    return len(rows[0]) if rows else 0


def plactic_eq(u: Sequence[int], v: Sequence[int]) -> bool:
    return len(u) == len(v) and schensted_rows(u) == schensted_rows(v)


def plactic_key(w: Sequence[int]) -> tuple[Word, ...]:
    """Hashable invariant of the plactic class of ``w``."""
    return tuple(tuple(r) for r in schensted_rows(w))
