"""Letters, words, columns and tableaux over the ordered alphabet [n].

Words are plain tuples of ints. A column is stored as a bitmask over [n]
(bit ``x - 1`` set iff letter ``x`` occurs), which gives O(1) hashing and
equality; its word is the strictly decreasing sequence of its letters.
Tableaux are stored column-major, left to right.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

MAX_N = 16

Word = tuple[int, ...]


class DomainError(ValueError):
    """Bad input to a plactic operation (letter out of range, bad n, ...)."""


def check_n(n: int) -> int:
    if not isinstance(n, int) or not 1 <= n <= MAX_N:
        raise DomainError(f"rank n must be an integer in 1..{MAX_N}, got {n!r}")
    return n


def check_word(w: Iterable[int], n: int | None = None) -> Word:
    w = tuple(int(x) for x in w)
    hi = MAX_N if n is None else n
    for x in w:
        if not 1 <= x <= hi:
            raise DomainError(f"letter {x} outside 1..{hi}")
    return w


def parse_word(s: str, n: int | None = None) -> Word:
    """Parse ``"2211"`` or ``"10,3,1"`` into a word."""
    s = s.strip()
    if not s:
        return ()
    try:
        if "," in s:
            w = tuple(int(tok) for tok in s.split(","))
        else:
            w = tuple(int(ch) for ch in s)
    except ValueError:
        raise DomainError(f"cannot parse word {s!r}") from None
    return check_word(w, n)


def format_word(w: Sequence[int]) -> str:
    if all(x <= 9 for x in w):
        return "".join(str(x) for x in w)
    return ",".join(str(x) for x in w)


# ---------------------------------------------------------------------------
# Columns


@lru_cache(maxsize=None)
def _mask_letters(mask: int) -> Word:
    return tuple(i + 1 for i in range(MAX_N - 1, -1, -1) if mask >> i & 1)


@dataclass(frozen=True, slots=True)
class Column:
    """A nonempty strictly decreasing word, i.e. a nonempty subset of [n]."""

    mask: int

    def __post_init__(self):
        if not 0 < self.mask < 1 << MAX_N:
            raise DomainError(f"invalid column mask {self.mask!r}")

    @classmethod
    def of(cls, letters: Iterable[int]) -> "Column":
        """Column from a strictly decreasing word."""
        w = check_word(letters)
        if not is_column(w):
            raise DomainError(f"{format_word(w)} is not a column")
        return cls(_word_mask(w))

    @classmethod
    def parse(cls, s: str) -> "Column":
        return cls.of(parse_word(s))

    @property
    def letters(self) -> Word:
        """Letters top of the word first, i.e. in decreasing order."""
        return _mask_letters(self.mask)

    @property
    def top(self) -> int:
        """Largest letter (bottom box in planar form)."""
        return self.mask.bit_length()

    @property
    def bottom(self) -> int:
        """Smallest letter (top box in planar form)."""
        return (self.mask & -self.mask).bit_length()

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return format_word(self.letters)

    def __repr__(self) -> str:
        return f"c{self}"


def _word_mask(w: Iterable[int]) -> int:
    m = 0
    for x in w:
        m |= 1 << (x - 1)
    return m


def is_column(w: Sequence[int]) -> bool:
    return len(w) > 0 and all(a > b for a, b in zip(w, w[1:]))


def is_row(w: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(w, w[1:]))


def deglex_key(c: Column) -> tuple:
    return (len(c), c.letters)


def rev_key(c: Column) -> tuple:
    return (-len(c), c.letters)


_ORDER_KEYS = {"deglex": deglex_key, "rev": rev_key}


def all_columns(n: int, order: str = "deglex") -> list[Column]:
    """Every nonempty column over [n]; there are 2**n - 1 of them."""
    check_n(n)
    key = _ORDER_KEYS[order]
    return sorted((Column(m) for m in range(1, 1 << n)), key=key)


def _cmp(a, b) -> int:
    return (a > b) - (a < b)


def cmp_columns(u: Column, v: Column, order: str = "deglex") -> int:
    """Three-way comparison (-1, 0, 1) under ``deglex`` or ``rev``."""
    key = _ORDER_KEYS[order]
    return _cmp(key(u), key(v))


def cmp_ll(w1: Sequence[Column], w2: Sequence[Column]) -> int:
    """Termination order on column words: shorter first, then the first
    differing position compared under the ``rev`` column order."""
    if len(w1) != len(w2):
        return _cmp(len(w1), len(w2))
    for a, b in zip(w1, w2):
        if a != b:
            return cmp_columns(a, b, "rev")
    return 0


def ll_key(w: Sequence[Column]) -> tuple:
    return (len(w), tuple(rev_key(c) for c in w))


# ---------------------------------------------------------------------------
# Tableaux


@dataclass(frozen=True)
class Tableau:
    """A semistandard tableau stored as its columns, left to right."""

    columns: tuple[Column, ...] = ()

    def __post_init__(self):
        cols = tuple(self.columns)
        object.__setattr__(self, "columns", cols)
        for a, b in zip(cols, cols[1:]):
            if len(a) < len(b):
                raise DomainError("column lengths must be non-increasing")
            ra, rb = a.letters[::-1], b.letters[::-1]
            if any(x > y for x, y in zip(ra, rb)):
                raise DomainError("rows must be non-decreasing")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Tableau":
        """Build from planar rows listed top to bottom."""
        rows = [tuple(r) for r in rows if len(r)]
        if not rows:
            return cls(())
        for r in rows:
            if not is_row(r):
                raise DomainError(f"{format_word(r)} is not a row")
        if any(len(a) < len(b) for a, b in zip(rows, rows[1:])):
            raise DomainError("row lengths must be weakly decreasing downwards")
        cols = []
        for j in range(len(rows[0])):
            entries = [r[j] for r in rows if len(r) > j]
            col = tuple(reversed(entries))
            if not is_column(col):
                raise DomainError("columns must be strictly increasing downwards")
            cols.append(Column.of(col))
        return cls(tuple(cols))

    @property
    def rows(self) -> tuple[Word, ...]:
        """Planar rows, top to bottom."""
        if not self.columns:
            return ()
        height = len(self.columns[0])
        flipped = [c.letters[::-1] for c in self.columns]
        return tuple(tuple(c[i] for c in flipped if len(c) > i) for i in range(height))

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def __len__(self) -> int:
        return sum(len(c) for c in self.columns)

    def row_reading(self) -> Word:
        """Rows from bottom to top; this is the tableau as a word."""
        return tuple(x for r in reversed(self.rows) for x in r)

    def to_json(self) -> str:
        return json.dumps({"rows": [list(r) for r in self.rows]})

    @classmethod
    def from_json(cls, s: str) -> "Tableau":
        return cls.from_rows(json.loads(s)["rows"])

    def planar(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def row_decomposition(w: Sequence[int]) -> list[Word]:
    """Split ``w`` into its maximal non-decreasing factors."""
    rows: list[list[int]] = []
    for x in w:
        if rows and rows[-1][-1] <= x:
            rows[-1].append(x)
        else:
            rows.append([x])
    return [tuple(r) for r in rows]


def dominates(r1: Sequence[int], r2: Sequence[int]) -> bool:
    return len(r1) <= len(r2) and all(a > b for a, b in zip(r1, r2))


def tableau_check(w: Sequence[int]) -> Tableau | None:
    """Return the tableau whose row reading is ``w``, or None."""
    rows = row_decomposition(w)
    if all(dominates(a, b) for a, b in zip(rows, rows[1:])):
        return Tableau.from_rows(rows[::-1])
    return None


def column_reading(T: Tableau) -> Word:
    return tuple(x for c in T.columns for x in c.letters)


def japanese_reading(T: Tableau) -> Word:
    """Columns right to left, each read top to bottom."""
    return tuple(x for c in reversed(T.columns) for x in reversed(c.letters))
