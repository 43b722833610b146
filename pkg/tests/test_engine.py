import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plactic.engine import (
    CompletionBudgetExceeded, Derivation, OrderViolation, RewriteStep, StepLimitExceeded, check_zigzag,
    critical_branchings, deglex_word_key, homotopical_complete, lex_word_key, normalize, rewrite_steps,
    validate_order,
)
from plactic.presentations import Presentation2, Rule2, build, flatten, letters_to_genword
from plactic.schensted import p_columns, plactic_eq
from plactic.words import Column, DomainError, ll_key

C = Column.parse


def G(*names):
    return tuple(C(x) for x in names)


@pytest.fixture(scope="module")
def colo2():
    return {n: build("colo2", n) for n in range(1, 6)}


def test_rewrite_steps_examples(colo2):
    P = colo2[2]
    assert [(s.rule.name, s.position) for s in rewrite_steps(P, G("2", "1"))] == [("alpha(2,1)", 0)]
    assert rewrite_steps(P, G("21", "1")) == []
    steps = rewrite_steps(P, G("2", "1", "21"))
    assert [(s.rule.name, s.position) for s in steps] == [("alpha(2,1)", 0), ("alpha(1,21)", 1)]


def test_normalize_example(colo2):
    w = (4, 2, 1, 5, 3, 2, 4, 3, 5, 4, 5, 2)
    nf, d = normalize(colo2[5], letters_to_genword(w))
    assert nf == p_columns(w)
    assert [str(c) for c in nf] == ["5421", "432", "32", "54", "5"]
    assert d.target == nf and d.is_reduction


def test_normal_form_is_fixed(colo2):
    w = G("21", "21")
    nf, d = normalize(colo2[2], w)
    assert nf == w and len(d) == 0


def _all_normal_forms(P, w):
    seen, todo, out = {w}, [w], set()
    while todo:
        x = todo.pop()
        steps = rewrite_steps(P, x)
        if not steps:
            out.add(x)
        for s in steps:
            y = s.apply(x)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return out


def test_strategies_agree_small(colo2):
    w = G("2", "2", "1", "1")
    a, _ = normalize(colo2[2], w)
    b, _ = normalize(colo2[2], w, "random", seed=7)
    assert a == b == G("21", "21")
    assert _all_normal_forms(colo2[2], w) == {a}


def test_random_strategy_reproducible(colo2):
    w = letters_to_genword((3, 1, 4, 2, 4, 1, 3))
    _, d1 = normalize(colo2[4], w, "random", seed=3)
    _, d2 = normalize(colo2[4], w, "random", seed=3)
    assert d1 == d2


def test_unique_normal_form_sweep(colo2):
    rng = random.Random(2024)
    for k in range(1000):
        n = rng.randint(1, 4)
        cols = colo2[n].generators
        w = tuple(rng.choice(cols) for _ in range(rng.randint(0, 6)))
        forms = {normalize(colo2[n], w, s, seed=k)[0] for s in ("leftmost", "rightmost", "random")}
        assert len(forms) == 1
        assert forms.pop() == p_columns(flatten(w))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.integers(1, n), max_size=12)))
def test_leftmost_is_schensted(w):
    n = max(w, default=1)
    nf, _ = normalize(build("colo2", n), letters_to_genword(w))
    assert nf == p_columns(w)


def test_step_limit(colo2):
    w = letters_to_genword((3, 2, 1, 3, 2, 1))
    with pytest.raises(StepLimitExceeded):
        normalize(colo2[3], w, max_steps=1)
    with pytest.raises(DomainError):
        normalize(colo2[3], w, strategy="sideways")


def test_critical_branchings(colo2):
    br = critical_branchings(colo2[2])
    assert len(br) == 1 and br[0].source == G("2", "1", "21")
    assert len(critical_branchings(colo2[3])) == 42
    K = critical_branchings(build("knuth2", 2))
    assert len(K) == 1 and flatten(K[0].source) == (2, 2, 1, 1)


def test_branchings_are_type0_triples(colo2):
    from plactic.presentations import PairType, pair_type

    for n in range(1, 5):
        cols = colo2[n].generators
        expected = {
            (u, v, t)
            for u, v, t in itertools.product(cols, repeat=3)
            if pair_type(u, v) is not PairType.TABLEAU and pair_type(v, t) is not PairType.TABLEAU
        }
        got = {b.source for b in critical_branchings(colo2[n])}
        assert got == expected


def test_all_branchings_confluent(colo2):
    for n in range(1, 6):
        P = colo2[n]
        for b in critical_branchings(P):
            lv = normalize(P, b.left.apply(b.source))[0]
            rv = normalize(P, b.right.apply(b.source))[0]
            assert lv == rv


def test_completion_knuth3():
    res = homotopical_complete(build("knuth2", 3))
    assert len(res.presentation.rules) == 11
    assert len(res.cells) == 27
    assert len(res.added) == 3
    for r in res.added:
        assert r.kind == "beta"
        assert plactic_eq(flatten(r.source), flatten(r.target))
        assert deglex_word_key(r.target) < deglex_word_key(r.source)
    for cell in res.cells:
        assert cell.left_closure.target == cell.right_closure.target


def test_completion_knuth2():
    res = homotopical_complete(build("knuth2", 2))
    assert (len(res.presentation.rules), len(res.cells)) == (2, 1)


def test_completion_no_overlap():
    a, b, c = G("1", "2", "3")
    P = Presentation2(3, "custom", (a, b, c), (Rule2("r", (), (a, b), (c,)),))
    res = homotopical_complete(P)
    assert res.presentation.rules == P.rules and res.cells == []


def test_completion_budget():
    with pytest.raises(CompletionBudgetExceeded) as exc:
        homotopical_complete(build("knuth2", 4), max_rules=40)
    part = exc.value.partial
    assert len(part.presentation.rules) == 40 and part.cells


def test_completion_order_violation():
    a, b, c = G("1", "2", "3")
    P = Presentation2(3, "custom", (a, b, c), (Rule2("r", (), (c,), (a, b)),))
    with pytest.raises(OrderViolation):
        homotopical_complete(P)


def test_validate_order(colo2):
    assert validate_order(colo2[4], ll_key)
    assert validate_order(build("knuth2", 3), lex_word_key)
    a, b = G("1", "2")
    cyc = Presentation2(2, "custom", (a, b), (Rule2("r", (), (a,), (b,)), Rule2("s", (), (b,), (a,))))
    assert not validate_order(cyc, deglex_word_key)
    assert not validate_order(cyc, lex_word_key)


def test_check_zigzag(colo2):
    from plactic.coherence import hexagon

    P = colo2[2]
    cell = hexagon(*G("2", "1", "21"))
    loop = cell.right_closure.then(cell.left_closure.inverse())
    assert len(cell.right_closure) == 3 and check_zigzag(P, loop)
    assert check_zigzag(P, Derivation(G("2")))
    s1 = rewrite_steps(P, G("2", "1", "21"))[0]
    bad = Derivation(G("2", "1", "21"), (s1, RewriteStep(s1.rule, 0)))
    assert not check_zigzag(P, bad)


def test_derivation_algebra(colo2):
    P = colo2[3]
    w = letters_to_genword((3, 1, 2, 3, 1))
    _, d = normalize(P, w)
    assert d.inverse().inverse() == d
    assert d.then(d.inverse()).free_reduce() == Derivation(w)
    wd = d.whisker(G("3"), G("1"))
    assert wd.start == G("3") + w + G("1") and wd.target == G("3") + d.target + G("1")
    assert check_zigzag(P, wd)
    js = d.to_dict()
    assert js["start"] == ["3", "1", "2", "3", "1"] and len(js["steps"]) == len(d)
    with pytest.raises(DomainError):
        d.then(d)
