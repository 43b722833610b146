"""Presentations of the plactic monoid by generators and oriented rules.

Generators are :class:`~plactic.words.Column` values; a letter ``x`` is the
singleton column ``c_x``, so the Knuth presentation and the column
presentations share one generator type. A generator word (``GenWord``) is a
tuple of columns.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .schensted import p_columns
from .words import Column, DomainError, Word, all_columns, check_n

GenWord = tuple[Column, ...]


def letter(x: int) -> Column:
    return Column(1 << (x - 1))


def letters_to_genword(w: Sequence[int]) -> GenWord:
    return tuple(letter(x) for x in w)


def flatten(gw: Sequence[Column]) -> Word:
    return tuple(x for c in gw for x in c.letters)


def format_genword(gw: Sequence[Column]) -> str:
    return " ".join(f"c{c}" for c in gw) if gw else "1"


class RuleDoesNotExist(DomainError):
    """Asked for the rule of a column pair that is already a tableau."""


class PairType(enum.Enum):
    TABLEAU = "1"
    ONE_COLUMN = "01"
    TWO_COLUMNS = "02"


class Preset(str, enum.Enum):
    KNUTH2 = "knuth2"
    KNUTHCC2 = "knuthcc2"
    CPC2 = "cpc2"
    PRECOLO2 = "precolo2"
    COLO2 = "colo2"


@dataclass(frozen=True)
class Rule2:
    """An oriented rule ``source => target``.

    ``kind`` is one of ``alpha``, ``alpha'``, ``gamma``, ``eta``, ``epsilon``,
    ``eta_c``, ``epsilon_c`` or ``beta`` (added by completion); ``args`` are
    the indices of the label, e.g. ``(u, v)`` for ``alpha`` or ``(x, y, z)``
    for ``eta``.
    """

    kind: str
    args: tuple
    source: GenWord
    target: GenWord

    @property
    def name(self) -> str:
        return f"{self.kind}({','.join(str(a) for a in self.args)})"

    def __str__(self) -> str:
        return f"{self.name}: {format_genword(self.source)} => {format_genword(self.target)}"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "source": [str(c) for c in self.source],
            "target": [str(c) for c in self.target],
        }


@dataclass(frozen=True)
class Presentation2:
    n: int
    preset: str
    generators: tuple[Column, ...]
    rules: tuple[Rule2, ...]
    _by_source: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        index: dict[GenWord, list[Rule2]] = {}
        gens = set(self.generators)
        for r in self.rules:
            if not (set(r.source) <= gens and set(r.target) <= gens):
                raise DomainError(f"rule {r.name} uses undeclared generators")
            index.setdefault(r.source, []).append(r)
        object.__setattr__(self, "_by_source", index)

    @property
    def source_lengths(self) -> tuple[int, ...]:
        return tuple(sorted({len(s) for s in self._by_source}))

    def rules_with_source(self, s: GenWord) -> list[Rule2]:
        return self._by_source.get(tuple(s), [])

    def rule(self, name: str) -> Rule2:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, r: Rule2) -> bool:
        return r in self._by_source.get(r.source, ())

    def with_rules(self, rules: Sequence[Rule2], preset: str | None = None) -> "Presentation2":
        return Presentation2(self.n, preset or self.preset, self.generators, tuple(rules))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "preset": self.preset,
            "generators": [str(c) for c in self.generators],
            "rules": [r.to_dict() for r in self.rules],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


# ---------------------------------------------------------------------------
# Column pairs


def _is_tableau_pair(u: Column, v: Column) -> bool:
    # p >= q and x_i <= y_i, reading both columns from their smallest letter
    if len(u) < len(v):
        return False
    xs, ys = u.letters[::-1], v.letters[::-1]
    return all(x <= y for x, y in zip(xs, ys))


@lru_cache(maxsize=None)
def pair_type(u: Column, v: Column) -> PairType:
    if _is_tableau_pair(u, v):
        return PairType.TABLEAU
    if u.bottom > v.top:
        return PairType.ONE_COLUMN
    return PairType.TWO_COLUMNS


@lru_cache(maxsize=None)
def alpha_target(u: Column, v: Column) -> tuple[Column, Column | None]:
    """Columns of P(uv) for a pair that is not already a tableau."""
    kind = pair_type(u, v)
    if kind is PairType.TABLEAU:
        raise RuleDoesNotExist(f"c{u} c{v} is a tableau; no rule alpha({u},{v})")
    if kind is PairType.ONE_COLUMN:
        return Column(u.mask | v.mask), None
    w, w2 = p_columns(u.letters + v.letters)
    return w, w2


@lru_cache(maxsize=None)
def alpha_rule(u: Column, v: Column) -> Rule2:
    w, w2 = alpha_target(u, v)
    target = (w,) if w2 is None else (w, w2)
    return Rule2("alpha", (u, v), (u, v), target)


def iter_colo2_rules(n: int) -> Iterator[Rule2]:
    """Stream the column rules without materializing the presentation."""
    cols = all_columns(n)
    for u in cols:
        for v in cols:
            if pair_type(u, v) is not PairType.TABLEAU:
                w, w2 = alpha_target(u, v)
                yield Rule2("alpha", (u, v), (u, v), (w,) if w2 is None else (w, w2))


# ---------------------------------------------------------------------------
# Presets


def _knuth_triples(n: int):
    eta = [(x, y, z) for x in range(1, n + 1) for y in range(x, n + 1) for z in range(y + 1, n + 1)]
    eps = [(x, y, z) for x in range(1, n + 1) for y in range(x + 1, n + 1) for z in range(y, n + 1)]
    return eta, eps


def knuth_rules(n: int, on_columns: bool = False) -> list[Rule2]:
    c = letter
    eta, eps = _knuth_triples(n)
    sfx = "_c" if on_columns else ""
    rules = [Rule2("eta" + sfx, (x, y, z), (c(z), c(x), c(y)), (c(x), c(z), c(y))) for x, y, z in eta]
    rules += [Rule2("epsilon" + sfx, (x, y, z), (c(y), c(z), c(x)), (c(y), c(x), c(z))) for x, y, z in eps]
    return rules


def gamma_rules(n: int) -> list[Rule2]:
    return [
        Rule2("gamma", (u,), letters_to_genword(u.letters), (u,))
        for u in all_columns(n)
        if len(u) >= 2
    ]


def pc2_rules(n: int) -> list[Rule2]:
    """The pre-column rules matching the two Knuth relation families."""
    c = letter
    eta, eps = _knuth_triples(n)
    rules = []
    for x, y, z in eta:
        zy = Column.of((z, y))
        rules.append(Rule2("alpha'", (x, zy), (c(x), zy), (Column.of((z, x)), c(y))))
    for x, y, z in eps:
        zx = Column.of((z, x))
        rules.append(Rule2("alpha'", (y, zx), (c(y), zx), (Column.of((y, x)), c(z))))
    return rules


def column_extension_rules(n: int) -> list[Rule2]:
    """alpha'(x, u): c_x c_u => c_xu whenever xu is a column."""
    rules = []
    for x in range(1, n + 1):
        for u in all_columns(n):
            if x > u.top:
                rules.append(Rule2("alpha'", (x, u), (letter(x), u), (Column(u.mask | 1 << (x - 1)),)))
    return rules


def build(preset: str | Preset, n: int) -> Presentation2:
    check_n(n)
    preset = Preset(preset)
    letters_gens = tuple(letter(x) for x in range(1, n + 1))
    if preset is Preset.KNUTH2:
        return Presentation2(n, preset.value, letters_gens, tuple(knuth_rules(n)))
    cols = tuple(all_columns(n))
    if preset is Preset.KNUTHCC2:
        rules = gamma_rules(n) + knuth_rules(n, on_columns=True)
    elif preset is Preset.CPC2:
        rules = gamma_rules(n) + pc2_rules(n)
    elif preset is Preset.PRECOLO2:
        rules = pc2_rules(n) + column_extension_rules(n)
    else:
        if n > 10:
            raise DomainError("colo2 is materialized only for n <= 10; use iter_colo2_rules")
        rules = list(iter_colo2_rules(n))
    return Presentation2(n, preset.value, cols, tuple(rules))


# ---------------------------------------------------------------------------
# Closed-form counts


def gordon_count(n: int, q: int) -> int:
    """Number of tableaux over [n] with at most ``q`` columns (empty included)."""
    if n < 1 or q < 0:
        raise DomainError("gordon_count needs n >= 1 and q >= 0")
    num = den = 1
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            num *= q + i + j - 1
            den *= i + j - 1
    value = Fraction(num, den)
    assert value.denominator == 1
    return int(value)


def kappa(n: int, m: int) -> int:
    """Number of generators (m=1) or rules (m=2) of the column presentation."""
    check_n(n)
    k1 = 2**n - 1
    if m == 1:
        return k1
    if m == 2:
        return k1 * k1 - (gordon_count(n, 2) - gordon_count(n, 1))
    raise DomainError("kappa is defined for m in {1, 2}")


def knuth2_count(n: int) -> int:
    eta, eps = _knuth_triples(n)
    return len(eta) + len(eps)
