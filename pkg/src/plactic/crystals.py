"""Root operators on paths and the crystal structure of the plactic monoid.

A path is a word over [n], read as the concatenation of the elementary
paths of its letters; the root operators act on it by bracketing, where
an ``i`` followed (after cancellations) by an ``i+1`` cancels.

With this bracketing the Japanese reading of a tableau plays the part the
column reading plays for row insertion. Since ``J(T)`` is the reverse of
``C(T)``, a plactic word ``w`` corresponds to the path ``reversed(w)``;
:func:`path_eq` and :func:`crys_normalize` take plactic words and go
through that identification.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .words import Column, DomainError, Tableau, Word, check_n, check_word, format_word, japanese_reading

DEFAULT_COMPONENT_CAP = 100_000


class ComponentCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class LSWord:
    word: Word
    n: int

    def __post_init__(self):
        check_n(self.n)
        object.__setattr__(self, "word", check_word(self.word, self.n))

    @property
    def weight(self) -> tuple[int, ...]:
        return weight(self.word, self.n)

    def __str__(self) -> str:
        return format_word(self.word)


def weight(w: Sequence[int], n: int) -> tuple[int, ...]:
    out = [0] * n
    for x in w:
        out[x - 1] += 1
    return tuple(out)


def _unbracketed(w: Sequence[int], i: int) -> tuple[list[int], list[int]]:
    """Positions of the surviving i's and i+1's after cancelling i.(i+1) pairs."""
    open_i: list[int] = []
    free_next: list[int] = []
    for p, x in enumerate(w):
        if x == i:
            open_i.append(p)
        elif x == i + 1:
            if open_i:
                open_i.pop()
            else:
                free_next.append(p)
    return open_i, free_next


def root_op(direction: str, i: int, w: Sequence[int], n: int | None = None) -> Word | None:
    """Apply ``e_i`` or ``f_i`` to ``w``; None stands for the zero path."""
    if n is not None and not 1 <= i <= n - 1:
        raise DomainError(f"operator index {i} outside 1..{n - 1}")
    if i < 1:
        raise DomainError(f"operator index {i} must be positive")
    w = tuple(w)
    ones, twos = _unbracketed(w, i)
    if direction == "f":
        if not ones:
            return None
        p, new = ones[0], i + 1
    elif direction == "e":
        if not twos:
            return None
        p, new = twos[-1], i
    else:
        raise DomainError(f"unknown direction {direction!r}")
    return w[:p] + (new,) + w[p + 1 :]


def f(i: int, w: Sequence[int]) -> Word | None:
    return root_op("f", i, w)


def e(i: int, w: Sequence[int]) -> Word | None:
    return root_op("e", i, w)


def is_yamanouchi(w: Sequence[int]) -> bool:
    counts: dict[int, int] = {}
    for x in w:
        counts[x] = counts.get(x, 0) + 1
        if x > 1 and counts[x] > counts.get(x - 1, 0):
            return False
    return True


def _max_letter(w: Sequence[int]) -> int:
    return max(w, default=1)


def highest_weight(w: Sequence[int], n: int | None = None) -> tuple[Word, tuple[int, ...]]:
    """Raise ``w`` with the smallest applicable ``e_i`` until none applies.

    Each step moves one letter down, so the letter sum strictly drops and
    the loop ends.
    """
    w = tuple(w)
    return _raise(w, n if n is not None else _max_letter(w))


@lru_cache(maxsize=1 << 16)
def _raise(w: Word, top: int) -> tuple[Word, tuple[int, ...]]:
    seq = []
    while True:
        for i in range(1, top):
            up = root_op("e", i, w)
            if up is not None:
                w = up
                seq.append(i)
                break
        else:
            return w, tuple(seq)


def yamanouchi_tableau(w: Sequence[int]) -> Word:
    """J of the tableau whose row i holds weight_i copies of i."""
    w = tuple(w)
    if not is_yamanouchi(w):
        raise DomainError(f"{format_word(w)} is not a Yamanouchi word")
    wt = weight(w, _max_letter(w))
    rows = [[i + 1] * k for i, k in enumerate(wt) if k]
    return japanese_reading(Tableau.from_rows(rows))


def path_of_word(w: Sequence[int]) -> Word:
    return tuple(reversed(tuple(w)))


word_of_path = path_of_word


def same_position(p: Sequence[int], q: Sequence[int]) -> bool:
    """True iff the paths sit at the same place of isomorphic components."""
    # A crystal isomorphism commutes with every operator, so the
    # deterministic raising trace identifies the position in a component.
    top = max(_max_letter(p), _max_letter(q))
    hp, sp = highest_weight(p, top)
    hq, sq = highest_weight(q, top)
    return len(p) == len(q) and weight(hp, top) == weight(hq, top) and sp == sq


def path_eq(u: Sequence[int], v: Sequence[int]) -> bool:
    """Plactic equality of words decided on their paths."""
    return same_position(path_of_word(u), path_of_word(v))


def normalize_path(p: Sequence[int], n: int | None = None) -> Word:
    """Raise, replace by the Yamanouchi tableau path, lower back.

    The result is the Japanese reading of a tableau.
    """
    p = tuple(p)
    if not p:
        return p
    top = n if n is not None else _max_letter(p)
    hw, seq = highest_weight(p, top)
    out = yamanouchi_tableau(hw)
    for i in reversed(seq):
        out = root_op("f", i, out)
        assert out is not None
    return out


def crys_normalize(w: Sequence[int], n: int | None = None) -> Word:
    """Normal form of a plactic word through its path.

    The path normal form is ``J(P(w))``, so this returns ``C(P(w))``.
    """
    return word_of_path(normalize_path(path_of_word(w), n))


@dataclass
class CrystalGraph:
    n: int
    vertices: set = field(default_factory=set)
    edges: set = field(default_factory=set)  # (source, i, f_i(source))

    def to_dot(self, name: str = "crystal") -> str:
        lines = [f"digraph {name} {{"]
        for v in sorted(self.vertices):
            lines.append(f'  "{format_word(v)}";')
        for s, i, t in sorted(self.edges):
            lines.append(f'  "{format_word(s)}" -> "{format_word(t)}" [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "vertices": [format_word(v) for v in sorted(self.vertices)],
            "edges": [[format_word(s), i, format_word(t)] for s, i, t in sorted(self.edges)],
        }


def crystal_component(w: Sequence[int], n: int, cap: int = DEFAULT_COMPONENT_CAP) -> CrystalGraph:
    check_n(n)
    w = check_word(w, n)
    g = CrystalGraph(n)
    g.vertices.add(w)
    todo = deque([w])
    while todo:
        x = todo.popleft()
        for i in range(1, n):
            for d in ("f", "e"):
                y = root_op(d, i, x)
                if y is None:
                    continue
                g.edges.add((x, i, y) if d == "f" else (y, i, x))
                if y not in g.vertices:
                    if len(g.vertices) >= cap:
                        raise ComponentCapExceeded(f"component has more than {cap} vertices")
                    g.vertices.add(y)
                    todo.append(y)
    return g


def ls_path_of_column(c: Column) -> Word:
    """The elementary-path word of a column generator: its letters read
    top to bottom, i.e. increasing. This is the Japanese reading of the
    one-column tableau."""
    return tuple(reversed(c.letters))
