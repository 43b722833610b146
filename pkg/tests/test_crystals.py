import itertools
import random
from collections import defaultdict

import pytest

from plactic.crystals import (
    ComponentCapExceeded, LSWord, crys_normalize, crystal_component, highest_weight, is_yamanouchi,
    normalize_path, path_eq, path_of_word, root_op, weight, yamanouchi_tableau, ls_path_of_column,
)
from plactic.schensted import p_tableau, plactic_eq, plactic_key
from plactic.words import Column, DomainError, column_reading, japanese_reading, parse_word

W = parse_word


def test_root_op_examples():
    assert root_op("f", 1, W("312213313")) == W("312223313")
    assert root_op("e", 1, W("312213313")) == W("312113313")
    assert root_op("e", 1, W("12")) is None
    with pytest.raises(DomainError):
        root_op("f", 3, W("12"), n=3)


def test_is_yamanouchi():
    assert is_yamanouchi(W("112312123"))
    assert not is_yamanouchi(W("21"))
    assert is_yamanouchi(())


def test_yamanouchi_is_highest_weight():
    for L in range(7):
        for w in itertools.product(range(1, 4), repeat=L):
            hw = all(root_op("e", i, w) is None for i in (1, 2))
            assert is_yamanouchi(w) == hw


def _raise_bfs(w, n):
    """Shortest number of e-steps to a highest weight word, over all orders."""
    frontier, depth = {tuple(w)}, 0
    while True:
        done = [x for x in frontier if all(root_op("e", i, x) is None for i in range(1, n))]
        if done:
            return depth, set(done)
        frontier = {y for x in frontier for i in range(1, n) if (y := root_op("e", i, x)) is not None}
        depth += 1


def test_highest_weight_examples():
    assert highest_weight(W("313"))[0] == W("112")
    hw, seq = highest_weight(W("323"))
    assert hw == W("112")
    assert seq == (1, 2, 2, 1)
    depth, tops = _raise_bfs(W("323"), 3)
    assert depth == len(seq) == 4 and tops == {W("112")}
    assert highest_weight(W("112312123")) == (W("112312123"), ())


def test_yamanouchi_tableau():
    assert yamanouchi_tableau(W("112312123")) == W("112123123")
    assert yamanouchi_tableau(W("1")) == W("1")
    assert yamanouchi_tableau(W("112")) == W("112")
    with pytest.raises(DomainError):
        yamanouchi_tableau(W("21"))
    for w in itertools.product(range(1, 4), repeat=5):
        if is_yamanouchi(w):
            y = yamanouchi_tableau(w)
            assert is_yamanouchi(y) and yamanouchi_tableau(y) == y


def test_path_eq_examples():
    assert path_eq(W("211"), W("121"))
    assert not path_eq(W("12"), W("21"))
    assert path_eq(W("3213"), W("3213"))


def test_path_eq_exhaustive_n3(knuth_classes_n3):
    for L in range(7):
        by_pos = defaultdict(set)
        for w in itertools.product(range(1, 4), repeat=L):
            hw, seq = highest_weight(path_of_word(w), 3)
            by_pos[(weight(hw, 3), seq)].add(w)
        parts = sorted(sorted(p) for p in by_pos.values())
        oracle = sorted(sorted(c) for c in {knuth_classes_n3[w] for w in itertools.product(range(1, 4), repeat=L)})
        assert parts == oracle


def test_path_eq_random_n4():
    rng = random.Random(99)
    for _ in range(10_000):
        L = rng.randint(0, 8)
        u = tuple(rng.randint(1, 4) for _ in range(L))
        v = tuple(rng.randint(1, 4) for _ in range(L)) if rng.random() < 0.5 else _knuth_shuffle(u, rng)
        assert path_eq(u, v) == plactic_eq(u, v)


def _knuth_shuffle(w, rng):
    from conftest import knuth_class

    return rng.choice(sorted(knuth_class(w)))


def test_root_operator_identities():
    for n in (2, 3):
        for L in range(7):
            for w in itertools.product(range(1, n + 1), repeat=L):
                wt = weight(w, n)
                for i in range(1, n):
                    y = root_op("f", i, w)
                    if y is not None:
                        assert root_op("e", i, y) == w
                        d = [a - b for a, b in zip(weight(y, n), wt)]
                        assert d[i - 1] == -1 and d[i] == 1 and sum(map(abs, d)) == 2
                    x = root_op("e", i, w)
                    if x is not None:
                        assert root_op("f", i, x) == w


def test_components():
    g = crystal_component(W("313"), 3)
    assert len(g.vertices) == 8
    assert crystal_component(W("1"), 2).vertices == {(1,), (2,)}
    h = crystal_component(W("112"), 3)
    assert len(h.vertices) == 8
    assert sorted(i for _, i, _ in g.edges) == sorted(i for _, i, _ in h.edges)
    for s, i, t in g.edges:
        assert root_op("f", i, s) == t and root_op("e", i, t) == s
    with pytest.raises(ComponentCapExceeded):
        crystal_component(W("313"), 3, cap=3)


def test_shape_21_components():
    # every tableau of shape (2,1) over [3]: its word's component has 8 vertices
    for w in itertools.product(range(1, 4), repeat=3):
        if p_tableau(w).shape == (2, 1):
            assert len(crystal_component(path_of_word(w), 3).vertices) == 8


def test_component_dot():
    dot = crystal_component(W("1"), 2).to_dot()
    assert dot.startswith("digraph") and '"1" -> "2" [label="1"];' in dot


def test_crys_normalize():
    assert crys_normalize(W("211")) == crys_normalize(W("121"))
    assert crys_normalize(W("21313123")) == W("21313123")
    assert crys_normalize(()) == ()
    assert normalize_path(W("21313123")) == W("21313123")


def test_crys_normalize_is_tableau_reading():
    for L in range(7):
        classes = {}
        for w in itertools.product(range(1, 4), repeat=L):
            T = p_tableau(w)
            nf = crys_normalize(w, 3)
            assert nf == column_reading(T)
            assert normalize_path(path_of_word(w), 3) == japanese_reading(T)
            assert crys_normalize(nf, 3) == nf
            classes.setdefault(plactic_key(w), set()).add(nf)
        assert all(len(s) == 1 for s in classes.values())


def test_lsword_and_columns():
    x = LSWord(W("3213"), 3)
    assert x.weight == (1, 1, 2) and str(x) == "3213"
    with pytest.raises(DomainError):
        LSWord(W("4"), 3)
    assert ls_path_of_column(Column.parse("31")) == (1, 3)
