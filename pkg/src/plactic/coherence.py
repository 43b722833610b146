"""Hexagonal 3-cells of the column presentation and their reductions.

Every critical branching of the column presentation has source
``c_u c_v c_t`` with neither ``(u, v)`` nor ``(v, t)`` a tableau pair. Both
branches close in at most three steps, giving a hexagon. This module builds
those hexagons, keeps the ones that survive the collapse onto the
pre-column presentation, and transports them down to letter words over
the Knuth rules.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from .engine import Derivation, RewriteStep, check_zigzag
from .presentations import (
    GenWord,
    PairType,
    Rule2,
    alpha_rule,
    build,
    flatten,
    kappa,
    knuth2_count,
    letter,
    letters_to_genword,
    pair_type,
)
from .schensted import p_columns
from .words import Column, DomainError, all_columns, check_n

MAX_MATERIALIZE_N = 6
MAX_PRECOLO_N = 7
MAX_KNUTH3_N = 5


class ResourceCapExceeded(RuntimeError):
    pass


class NonConfluent(AssertionError):
    """A hexagon failed to close; this would contradict coherence."""


class CellKind(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    CPRIME = "Cprime"
    D = "D"
    D1 = "D1"
    D2 = "D2"
    D3 = "D3"
    D4 = "D4"

    @property
    def family(self) -> str:
        if self in (CellKind.C, CellKind.CPRIME):
            return "C"
        if self.value.startswith("D"):
            return "D"
        return self.value


D_FAMILY = frozenset({CellKind.D, CellKind.D1, CellKind.D2, CellKind.D3, CellKind.D4})


# ---------------------------------------------------------------------------
# Closures


def _alpha_step(w: GenWord, pos: int) -> RewriteStep | None:
    if pos < 0 or pos + 1 >= len(w):
        return None
    u, v = w[pos], w[pos + 1]
    if pair_type(u, v) is PairType.TABLEAU:
        return None
    return RewriteStep(alpha_rule(u, v), pos)


def _closure(w: GenWord, first: int) -> Derivation:
    """Apply alpha at ``first``, then alternate sides until normal.

    After each step the other position is tried first; otherwise the
    leftmost redex is taken.
    """
    start = w
    step = _alpha_step(w, first)
    if step is None:
        raise DomainError("no redex at the requested position")
    steps = []
    while step is not None:
        steps.append(step)
        w = step.apply(w)
        if len(steps) > 3:
            raise NonConfluent(f"closure from {start} exceeds three steps")
        other = 1 - step.position
        step = _alpha_step(w, other) or _alpha_step(w, 0) or _alpha_step(w, 1)
    return Derivation(start, tuple(steps))


@lru_cache(maxsize=None)
def left_closure(u: Column, v: Column, t: Column) -> Derivation:
    return _closure((u, v, t), 0)


@lru_cache(maxsize=None)
def right_closure(u: Column, v: Column, t: Column) -> Derivation:
    return _closure((u, v, t), 1)


def is_branching(u: Column, v: Column, t: Column) -> bool:
    return pair_type(u, v) is not PairType.TABLEAU and pair_type(v, t) is not PairType.TABLEAU


def classify(u: Column, v: Column, t: Column, left: Derivation, right: Derivation) -> CellKind:
    sig = (pair_type(u, v), pair_type(v, t))
    one, two = PairType.ONE_COLUMN, PairType.TWO_COLUMNS
    if sig == (one, one):
        return CellKind.A
    if sig == (two, one):
        return CellKind.B
    if sig == (one, two):
        return CellKind.CPRIME if len(left) == 1 else CellKind.C
    shape = (len(left), len(right))
    return {(3, 3): CellKind.D, (2, 3): CellKind.D1, (3, 2): CellKind.D2, (2, 2): CellKind.D3}.get(
        shape, CellKind.D4
    )


def _corners(left: Derivation, right: Derivation) -> dict[str, Column | None]:
    # Named operationally: e, e' after the first left step; w, w' after the
    # first right step; b, b' and a, a' one step further; d heads the
    # normal form.
    lw, rw = left.words(), right.words()

    def pick(words, i, j):
        return words[i][j] if i < len(words) and -len(words[i]) <= j < len(words[i]) else None

    nf = lw[-1]
    return {
        "e": pick(lw, 1, 0),
        "e'": pick(lw, 1, 1) if len(lw[1]) == 3 else None,
        "w": pick(rw, 1, 1),
        "w'": pick(rw, 1, 2),
        "b": pick(lw, 2, -2) if len(lw) > 2 and len(lw[2]) >= 2 else None,
        "b'": pick(lw, 2, -1) if len(lw) > 2 and len(lw[2]) >= 2 else None,
        "a": pick(rw, 2, 0) if len(rw) > 2 else None,
        "a'": pick(rw, 2, 1) if len(rw) > 2 else None,
        "d": nf[0],
    }


@dataclass(frozen=True)
class HexagonCell:
    u: Column
    v: Column
    t: Column
    kind: CellKind
    left_closure: Derivation
    right_closure: Derivation
    corner_columns: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def source(self) -> GenWord:
        return (self.u, self.v, self.t)

    @property
    def target(self) -> GenWord:
        return self.left_closure.target

    @property
    def name(self) -> str:
        return f"{self.kind.value}({self.u},{self.v},{self.t})"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind.value,
            "triple": [str(self.u), str(self.v), str(self.t)],
            "target": [str(c) for c in self.target],
            "left": self.left_closure.to_dict(),
            "right": self.right_closure.to_dict(),
            "corners": {k: (str(c) if c else None) for k, c in self.corner_columns.items()},
        }


@lru_cache(maxsize=None)
def hexagon(u: Column, v: Column, t: Column, n: int | None = None) -> HexagonCell:
    if n is not None:
        check_n(n)
        if max(u.top, v.top, t.top) > n:
            raise DomainError(f"triple uses letters above {n}")
    if not is_branching(u, v, t):
        raise DomainError(f"({u},{v},{t}) is not a critical branching: a pair is already a tableau")
    left = left_closure(u, v, t)
    right = right_closure(u, v, t)
    nf = p_columns(u.letters + v.letters + t.letters)
    if left.target != nf or right.target != nf:
        raise NonConfluent(f"hexagon ({u},{v},{t}) does not close on P(uvt)")
    kind = classify(u, v, t, left, right)
    return HexagonCell(u, v, t, kind, left, right, _corners(left, right))


# ---------------------------------------------------------------------------
# Enumeration


def iter_triples(n: int, restrict: str = "all") -> Iterator[tuple[Column, Column, Column]]:
    if restrict not in ("all", "u_len_1"):
        raise DomainError(f"unknown restriction {restrict!r}")
    cols = all_columns(n)
    succ = {v: [t for t in cols if pair_type(v, t) is not PairType.TABLEAU] for v in cols}
    firsts = cols if restrict == "all" else [c for c in cols if len(c) == 1]
    for u in firsts:
        for v in succ[u]:
            for t in succ[v]:
                yield u, v, t


def iter_cells3(n: int, restrict: str = "all") -> Iterator[HexagonCell]:
    check_n(n)
    if n > MAX_MATERIALIZE_N:
        raise ResourceCapExceeded(f"materializing hexagons is capped at n <= {MAX_MATERIALIZE_N}")
    for u, v, t in iter_triples(n, restrict):
        yield hexagon(u, v, t)


def enumerate_cells3(n: int, restrict: str = "all") -> tuple[list[HexagonCell], int]:
    cells = list(iter_cells3(n, restrict))
    return cells, len(cells)


# ---------------------------------------------------------------------------
# Collapse onto the pre-column presentation


def transport(
    d: Derivation,
    substitution: Callable[[Rule2], Derivation],
    word_map: Callable[[GenWord], GenWord],
) -> Derivation:
    """Rewrite every step of ``d`` through ``substitution``.

    ``substitution(rule)`` is a derivation from ``word_map(rule.source)``
    to ``word_map(rule.target)`` in the target system; contexts are carried
    along through ``word_map``.
    """
    start = word_map(d.start)
    out = Derivation(start)
    w = d.start
    for s in d.steps:
        sub = substitution(s.rule)
        prefix, suffix = s.context(w)
        piece = sub.whisker(word_map(prefix), word_map(suffix))
        if s.inverse:
            piece = piece.inverse()
        out = out.then(piece)
        w = s.apply(w)
    return out


def _identity(w):
    return w


def _alpha_prime(x: int, v: Column) -> Derivation:
    # same label and sides as the pre-column rule on c_x c_v
    c = letter(x)
    r = Rule2("alpha'", (x, v), (c, v), alpha_rule(c, v).target)
    return Derivation((c, v), (RewriteStep(r, 0),))


_in_progress: set = set()


@lru_cache(maxsize=None)
def expand_alpha(u: Column, v: Column) -> Derivation:
    """alpha(u, v) as a zig-zag over the pre-column rules."""
    if pair_type(u, v) is PairType.TABLEAU:
        raise DomainError(f"no rule alpha({u},{v})")
    key = (u, v)
    if key in _in_progress:
        raise RuntimeError(f"cyclic expansion at alpha({u},{v})")
    _in_progress.add(key)
    try:
        return _expand(u, v)
    finally:
        _in_progress.discard(key)


def _expand_derivation(d: Derivation) -> Derivation:
    """Replace each alpha step of a column derivation by its expansion."""
    return transport(d, lambda r: expand_alpha(*r.args), _identity)


def _expand(u: Column, v: Column) -> Derivation:
    if len(u) == 1:
        x = u.top
        if pair_type(u, v) is PairType.ONE_COLUMN or len(v) == 2:
            return _alpha_prime(x, v)
        # v = v1 t1 with t1 its smallest letter; close the hexagon of (x, v1, t1)
        t1 = Column(v.mask & -v.mask)
        v1 = Column(v.mask & ~t1.mask)
        back = Derivation((u, v1, t1), (RewriteStep(alpha_rule(v1, t1), 1),))
        return _expand_derivation(back.inverse().then(left_closure(u, v1, t1)))
    # u = x v0 with x its largest letter; close the hexagon of (x, v0, v)
    x = Column(1 << (u.top - 1))
    v0 = Column(u.mask & ~x.mask)
    back = Derivation((x, v0, v), (RewriteStep(alpha_rule(x, v0), 0),))
    return _expand_derivation(back.inverse().then(right_closure(x, v0, v)))


def expand_cell(cell: HexagonCell) -> tuple[Derivation, Derivation]:
    left = _expand_derivation(cell.left_closure).free_reduce()
    right = _expand_derivation(cell.right_closure).free_reduce()
    return left, right


@dataclass(frozen=True)
class Cell3:
    """A 3-cell given by two parallel zig-zags."""

    name: str
    left: Derivation
    right: Derivation

    @property
    def source(self) -> GenWord:
        return self.left.start

    @property
    def target(self) -> GenWord:
        return self.left.target

    def to_dict(self) -> dict:
        return {"name": self.name, "left": self.left.to_dict(), "right": self.right.to_dict()}


def is_precolo3_member(cell: HexagonCell) -> bool:
    return len(cell.u) == 1 and (cell.kind is CellKind.CPRIME or cell.kind in D_FAMILY)


def precolo3_cells(n: int, check: bool = False) -> list[Cell3]:
    check_n(n)
    if n > MAX_PRECOLO_N:
        raise ResourceCapExceeded(f"pre-column 3-cells are materialized only for n <= {MAX_PRECOLO_N}")
    P = build("precolo2", n) if check else None
    out = []
    for u, v, t in iter_triples(n, "u_len_1"):
        cell = hexagon(u, v, t)
        if not is_precolo3_member(cell):
            continue
        left, right = expand_cell(cell)
        if check and not (check_zigzag(P, left) and check_zigzag(P, right)):
            raise NonConfluent(f"{cell.name} does not reduce to a pre-column zig-zag")
        out.append(Cell3(cell.name, left, right))
    return out


# ---------------------------------------------------------------------------
# Down to the Knuth rules


def _rule(kind: str, args: tuple, source: GenWord, target: GenWord) -> Rule2:
    return Rule2(kind, args, source, target)


def _gamma(u: Column) -> Rule2:
    return _rule("gamma", (u,), letters_to_genword(u.letters), (u,))


def _step(rule: Rule2, pos: int = 0, start: GenWord | None = None) -> Derivation:
    return Derivation(rule.source if start is None else start, (RewriteStep(rule, pos),))


def _precolo_to_cpc(r: Rule2) -> Derivation:
    x, u = r.args
    if len(r.target) == 2:
        return _step(r)  # a pair rule, kept as is
    c = letter(x)
    xu = r.target[0]
    if len(u) == 1:
        return _step(_gamma(xu), start=(c, u))
    undo = _step(_gamma(u), 1, (c,) + letters_to_genword(u.letters)).inverse()
    return undo.then(_step(_gamma(xu)))


def _knuth_triple(r: Rule2) -> tuple[str, int, int, int]:
    a, zb = r.args
    hi, lo = zb.top, zb.bottom
    if a <= lo:
        return "eta", a, lo, hi  # alpha'(x, zy), x <= y < z
    return "epsilon", lo, a, hi  # alpha'(y, zx), x < y <= z


def _cpc_to_knuthcc(r: Rule2) -> Derivation:
    if r.kind == "gamma":
        return _step(r)
    kind, x, y, z = _knuth_triple(r)
    c = letter
    if kind == "eta":
        zy, zx = Column.of((z, y)), Column.of((z, x))
        eta = _rule("eta_c", (x, y, z), (c(z), c(x), c(y)), (c(x), c(z), c(y)))
        d = _step(_gamma(zy), 1, (c(x), c(z), c(y))).inverse()
        d = d.then(_step(eta).inverse())
        return d.then(_step(_gamma(zx), 0, (c(z), c(x), c(y))))
    zx, yx = Column.of((z, x)), Column.of((y, x))
    eps = _rule("epsilon_c", (x, y, z), (c(y), c(z), c(x)), (c(y), c(x), c(z)))
    d = _step(_gamma(zx), 1, (c(y), c(z), c(x))).inverse()
    d = d.then(_step(eps))
    return d.then(_step(_gamma(yx), 0, (c(y), c(x), c(z))))


def _flat(w: GenWord) -> GenWord:
    return letters_to_genword(flatten(w))


def _knuthcc_to_knuth(r: Rule2) -> Derivation:
    start = _flat(r.source)
    if r.kind == "gamma":
        return Derivation(start)
    return _step(_rule(r.kind[:-2], r.args, r.source, r.target), start=start)


def _rotate(left: Derivation, right: Derivation) -> tuple[Derivation, Derivation]:
    """Present the loop left;right^-1 as a forward block then an inverse one.

    Cancels the loop cyclically and picks the first rotation whose steps are
    all forward and then all inverse. Returns the input when none exists.
    """
    loop = left.then(right.inverse()).free_reduce()
    steps = list(loop.steps)
    words = loop.words()[:-1]
    while len(steps) >= 2 and steps[-1] == steps[0].inverted():
        # cancel across the base point
        words = words[1:-1]
        steps = steps[1:-1]
    if not steps:
        return Derivation(left.start), Derivation(left.start)
    m = len(steps)
    for k in range(m):
        rot = steps[k:] + steps[:k]
        signs = [s.inverse for s in rot]
        j = signs.index(True) if True in signs else m
        if j > 0 and not any(not s for s in signs[j:]):
            start = words[k]
            fwd = Derivation(start, tuple(rot[:j]))
            back = Derivation(fwd.target, tuple(rot[j:]))
            return fwd, back.inverse()
    return left, right


def knuth3_cells(n: int, rotate: bool = True, check: bool = False) -> list[Cell3]:
    check_n(n)
    if n > MAX_KNUTH3_N:
        raise ResourceCapExceeded(f"Knuth 3-cells are materialized only for n <= {MAX_KNUTH3_N}")
    K = build("knuth2", n) if check else None
    out = []
    for cell in precolo3_cells(n):
        sides = []
        for d in (cell.left, cell.right):
            d = transport(d, _precolo_to_cpc, _identity)
            d = transport(d, _cpc_to_knuthcc, _identity)
            d = transport(d, _knuthcc_to_knuth, _flat)
            sides.append(d.free_reduce())
        left, right = sides
        if rotate:
            left, right = _rotate(left, right)
        if check and not (check_zigzag(K, left) and check_zigzag(K, right)):
            raise NonConfluent(f"{cell.name} does not reduce to a Knuth zig-zag")
        out.append(Cell3(cell.name, left, right))
    return out


# ---------------------------------------------------------------------------
# Counts


COUNT_FIELDS = ("knuth1", "colo1", "knuth2", "colo2", "knuth3", "bar_colo3", "colo3")
KB_FIELDS = ("kb2", "kb3")


@dataclass
class CellCountReport:
    n: int
    counts: dict[str, int | None]

    def row(self, include_kb: bool = False) -> list:
        fields = COUNT_FIELDS + (KB_FIELDS if include_kb else ())
        return [self.n] + [self.counts.get(f) for f in fields]

    def to_dict(self) -> dict:
        return {"n": self.n, "counts": dict(self.counts)}


def cell_counts(n: int, threads: int = 1, include_kb: bool = False) -> CellCountReport:
    """Sizes of every presentation at rank ``n``.

    Completion sizes are finite only for ``n <= 3`` and are computed by
    running the completion; larger ranks report ``None``.
    """
    from .counting import triple_counts

    check_n(n)
    if n > 10:
        raise DomainError("cell counts are supported for n <= 10")
    k3, bar, c3 = triple_counts(n, threads=threads)
    counts: dict[str, int | None] = {
        "knuth1": n,
        "colo1": kappa(n, 1),
        "knuth2": knuth2_count(n),
        "colo2": kappa(n, 2),
        "knuth3": k3,
        "bar_colo3": bar,
        "colo3": c3,
    }
    if include_kb:
        if n <= 3:
            from .engine import homotopical_complete

            res = homotopical_complete(build("knuth2", n))
            counts["kb2"], counts["kb3"] = len(res.presentation.rules), len(res.cells)
        else:
            counts["kb2"] = counts["kb3"] = None
    return CellCountReport(n, counts)
