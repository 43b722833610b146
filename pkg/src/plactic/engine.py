"""Generic string rewriting over a :class:`Presentation2`.

Rewriting steps are ``(rule, position, inverse)`` triples; a
:class:`Derivation` is a start word plus a sequence of such steps, which
models both reductions (all steps forward) and zig-zags in the free
(2,1)-category (some steps inverted).
"""

from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .presentations import GenWord, Presentation2, Rule2, format_genword
from .words import DomainError, deglex_key

DEFAULT_MAX_STEPS = 100_000


class StepLimitExceeded(RuntimeError):
    pass


class CompletionBudgetExceeded(RuntimeError):
    """Raised by :func:`homotopical_complete`; ``partial`` holds the state."""

    def __init__(self, msg: str, partial: "CompletionResult"):
        super().__init__(msg)
        self.partial = partial


class OrderViolation(DomainError):
    pass


@dataclass(frozen=True)
class RewriteStep:
    rule: Rule2
    position: int
    inverse: bool = False

    @property
    def lhs(self) -> GenWord:
        return self.rule.target if self.inverse else self.rule.source

    @property
    def rhs(self) -> GenWord:
        return self.rule.source if self.inverse else self.rule.target

    def applies_to(self, w: GenWord) -> bool:
        lhs = self.lhs
        return w[self.position : self.position + len(lhs)] == lhs

    def apply(self, w: GenWord) -> GenWord:
        if not self.applies_to(w):
            raise DomainError(f"{self.label()} does not apply to {format_genword(w)}")
        p = self.position
        return w[:p] + self.rhs + w[p + len(self.lhs) :]

    def context(self, w: GenWord) -> tuple[GenWord, GenWord]:
        """(prefix, suffix) of this step on its source word ``w``."""
        return w[: self.position], w[self.position + len(self.lhs) :]

    def shifted(self, k: int) -> "RewriteStep":
        return RewriteStep(self.rule, self.position + k, self.inverse)

    def inverted(self) -> "RewriteStep":
        return RewriteStep(self.rule, self.position, not self.inverse)

    def label(self) -> str:
        return f"{self.rule.name}{'^-' if self.inverse else ''}@{self.position}"


@dataclass(frozen=True)
class Derivation:
    start: GenWord
    steps: tuple[RewriteStep, ...] = ()

    def words(self) -> list[GenWord]:
        out = [self.start]
        for s in self.steps:
            out.append(s.apply(out[-1]))
        return out

    @property
    def target(self) -> GenWord:
        w = self.start
        for s in self.steps:
            w = s.apply(w)
        return w

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def is_reduction(self) -> bool:
        return not any(s.inverse for s in self.steps)

    def inverse(self) -> "Derivation":
        return Derivation(self.target, tuple(s.inverted() for s in reversed(self.steps)))

    def then(self, other: "Derivation") -> "Derivation":
        if other.start != self.target:
            raise DomainError("cannot compose derivations with mismatched endpoints")
        return Derivation(self.start, self.steps + other.steps)

    def whisker(self, prefix: GenWord = (), suffix: GenWord = ()) -> "Derivation":
        k = len(prefix)
        return Derivation(tuple(prefix) + self.start + tuple(suffix), tuple(s.shifted(k) for s in self.steps))

    def free_reduce(self) -> "Derivation":
        """Cancel adjacent step / inverse-step pairs."""
        stack: list[RewriteStep] = []
        for s in self.steps:
            if stack and stack[-1] == s.inverted():
                stack.pop()
            else:
                stack.append(s)
        return Derivation(self.start, tuple(stack))

    def to_dict(self) -> dict:
        return {
            "start": [str(c) for c in self.start],
            "steps": [
                {"rule": s.rule.name, "position": s.position, "inverse": s.inverse} for s in self.steps
            ],
        }

    def describe(self) -> str:
        ws = self.words()
        parts = [format_genword(ws[0])]
        for s, w in zip(self.steps, ws[1:]):
            arrow = "<=" if s.inverse else "=>"
            parts.append(f" {arrow}[{s.rule.name}@{s.position}] {format_genword(w)}")
        return "".join(parts)


def compose(*ds: Derivation) -> Derivation:
    out = ds[0]
    for d in ds[1:]:
        out = out.then(d)
    return out


# ---------------------------------------------------------------------------
# Redexes and normal forms


def rewrite_steps(P: Presentation2, w: Sequence) -> list[RewriteStep]:
    """Every redex of ``w``, ordered by (position, rule name)."""
    w = tuple(w)
    out = []
    lengths = P.source_lengths
    for pos in range(len(w)):
        found = []
        for L in lengths:
            if pos + L > len(w):
                break
            found.extend(P.rules_with_source(w[pos : pos + L]))
        found.sort(key=lambda r: r.name)
        out.extend(RewriteStep(r, pos) for r in found)
    return out


def _first_step(P: Presentation2, w: GenWord, positions: Iterable[int]) -> RewriteStep | None:
    lengths = P.source_lengths
    for pos in positions:
        for L in lengths:
            if pos + L > len(w):
                break
            rules = P.rules_with_source(w[pos : pos + L])
            if rules:
                return RewriteStep(min(rules, key=lambda r: r.name), pos)
    return None


def normalize(
    P: Presentation2,
    w: Sequence,
    strategy: str = "leftmost",
    seed: int | None = None,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> tuple[GenWord, Derivation]:
    """Rewrite ``w`` until no redex remains.

    ``strategy`` is ``leftmost``, ``rightmost`` or ``random`` (``seed``
    required for reproducibility).
    """
    w = tuple(w)
    start = w
    rng = random.Random(seed) if strategy == "random" else None
    if strategy not in ("leftmost", "rightmost", "random"):
        raise DomainError(f"unknown strategy {strategy!r}")
    steps = []
    while True:
        if strategy == "leftmost":
            step = _first_step(P, w, range(len(w)))
        elif strategy == "rightmost":
            step = _first_step(P, w, range(len(w) - 1, -1, -1))
        else:
            cands = rewrite_steps(P, w)
            step = rng.choice(cands) if cands else None
        if step is None:
            return w, Derivation(start, tuple(steps))
        if len(steps) >= max_steps:
            raise StepLimitExceeded(f"no normal form after {max_steps} steps")
        w = step.apply(w)
        steps.append(step)


def is_normal_form(P: Presentation2, w: Sequence) -> bool:
    return _first_step(P, tuple(w), range(len(w))) is None


# ---------------------------------------------------------------------------
# Branchings


class BranchingKind(enum.Enum):
    ASPHERICAL = "aspherical"
    PEIFFER = "peiffer"
    OVERLAP = "overlap"
    CRITICAL = "critical"


@dataclass(frozen=True)
class Branching:
    source: GenWord
    left: RewriteStep
    right: RewriteStep
    kind: BranchingKind = BranchingKind.CRITICAL

    def __str__(self) -> str:
        return f"{format_genword(self.source)}: {self.left.label()} / {self.right.label()}"


def classify_branching(source: GenWord, f: RewriteStep, g: RewriteStep) -> BranchingKind:
    if f == g:
        return BranchingKind.ASPHERICAL
    a0, a1 = f.position, f.position + len(f.lhs)
    b0, b1 = g.position, g.position + len(g.lhs)
    if a1 <= b0 or b1 <= a0:
        return BranchingKind.PEIFFER
    if min(a0, b0) == 0 and max(a1, b1) == len(source):
        return BranchingKind.CRITICAL
    return BranchingKind.OVERLAP


def _prefix_index(rules: Sequence[Rule2]) -> dict:
    index: dict = {}
    for r in rules:
        s = r.source
        for k in range(1, len(s) + 1):
            index.setdefault(s[:k], []).append(r)
    return index


def branchings_between(r1: Rule2, rules_index: dict, order_of: dict) -> list[Branching]:
    """Critical branchings where ``r1`` sits leftmost (or outermost)."""
    s1 = r1.source
    out = []
    for k in range(1, len(s1)):
        # proper overlap: suffix of s1 of length k is a proper prefix of s2
        for r2 in rules_index.get(s1[-k:], ()):
            if len(r2.source) > k:
                src = s1 + r2.source[k:]
                out.append(Branching(src, RewriteStep(r1, 0), RewriteStep(r2, len(s1) - k)))
    # inclusion: s2 is a factor of s1
    for j in range(len(s1)):
        for r2 in rules_index.get(s1[j : j + 1], ()):
            s2 = r2.source
            if r2 is r1 or len(s2) > len(s1) - j or s1[j : j + len(s2)] != s2:
                continue
            if len(s2) == len(s1) and order_of[r2] < order_of[r1]:
                continue  # identical sources: count the unordered pair once
            out.append(Branching(s1, RewriteStep(r1, 0), RewriteStep(r2, j)))
    return out


def critical_branchings(P: Presentation2, rules: Sequence[Rule2] | None = None) -> list[Branching]:
    rules = list(P.rules if rules is None else rules)
    index = _prefix_index(rules)
    order_of = {r: i for i, r in enumerate(rules)}
    out = []
    for r1 in rules:
        out.extend(branchings_between(r1, index, order_of))
    out.sort(key=_branching_key)
    return out


def _branching_key(b: Branching):
    return (len(b.source), tuple(deglex_key(c) for c in b.source), b.left.label(), b.right.label())


# ---------------------------------------------------------------------------
# Orders and zig-zags


def deglex_word_key(w: Sequence) -> tuple:
    return (len(w), tuple(deglex_key(c) for c in w))


def lex_word_key(w: Sequence) -> tuple:
    return tuple(deglex_key(c) for c in w)


def validate_order(P: Presentation2, key: Callable = deglex_word_key) -> bool:
    """True iff every rule's target is strictly below its source."""
    return all(key(r.target) < key(r.source) for r in P.rules)


def check_zigzag(P: Presentation2, d: Derivation) -> bool:
    """True iff every step of ``d`` uses a rule of ``P`` and steps chain."""
    w = d.start
    for s in d.steps:
        if s.rule not in P or not s.applies_to(w):
            return False
        w = s.apply(w)
    return True


# ---------------------------------------------------------------------------
# Homotopical completion


@dataclass(frozen=True)
class Cell3Generic:
    branching: Branching
    left_closure: Derivation
    right_closure: Derivation


@dataclass
class CompletionResult:
    presentation: Presentation2
    cells: list[Cell3Generic] = field(default_factory=list)
    added: list[Rule2] = field(default_factory=list)


def homotopical_complete(
    P: Presentation2,
    key: Callable = deglex_word_key,
    max_rules: int = 10_000,
    max_branchings: int = 100_000,
) -> CompletionResult:
    """Knuth-Bendix completion recording one 3-cell per critical branching.

    Branchings are processed first in, first out; each batch is sorted by
    the deglex order on sources. A non-confluent branching adds a rule from
    the larger to the smaller normal form under ``key``.
    """
    for r in P.rules:
        if not key(r.target) < key(r.source):
            raise OrderViolation(f"rule {r.name} is not decreasing for the given order")
    rules = list(P.rules)
    order_of = {r: i for i, r in enumerate(rules)}
    index = _prefix_index(rules)
    queue = deque(critical_branchings(P))
    result = CompletionResult(P)
    seen = 0

    cache = [P]

    def current() -> Presentation2:
        if len(cache[0].rules) != len(rules):
            cache[0] = P.with_rules(rules)
        return cache[0]

    while queue:
        seen += 1
        if seen > max_branchings:
            result.presentation = current()
            raise CompletionBudgetExceeded(f"more than {max_branchings} critical branchings", result)
        br = queue.popleft()
        Q = current()
        f = Derivation(br.source, (br.left,))
        g = Derivation(br.source, (br.right,))
        nv, dv = normalize(Q, f.target)
        nw, dw = normalize(Q, g.target)
        left, right = f.then(dv), g.then(dw)
        if nv != nw:
            if len(rules) >= max_rules:
                result.presentation = Q
                raise CompletionBudgetExceeded(f"more than {max_rules} rules", result)
            hi, lo = (nv, nw) if key(nv) > key(nw) else (nw, nv)
            beta = Rule2("beta", (len(result.added) + 1,), hi, lo)
            rules.append(beta)
            order_of[beta] = len(rules) - 1
            for k in range(1, len(hi) + 1):
                index.setdefault(hi[:k], []).append(beta)
            result.added.append(beta)
            step = RewriteStep(beta, 0)
            if hi == nv:
                left = left.then(Derivation(nv, (step,)))
            else:
                right = right.then(Derivation(nw, (step,)))
            new = []
            for r in rules:
                new.extend(b for b in branchings_between(r, index, order_of) if beta in (b.left.rule, b.right.rule))
            new.sort(key=_branching_key)
            queue.extend(new)
        result.cells.append(Cell3Generic(br, left, right))
    result.presentation = current()
    return result
