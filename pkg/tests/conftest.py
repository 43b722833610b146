import itertools
from collections import deque

import pytest


def knuth_class(w):
    """All words reachable from ``w`` by Knuth moves in either direction."""
    w = tuple(w)
    seen = {w}
    todo = deque([w])
    while todo:
        x = todo.popleft()
        for i in range(len(x) - 2):
            a, b, c = x[i : i + 3]
            moves = []
            # zxy <-> xzy for x <= y < z
            if b <= c < a:
                moves.append((b, a, c))
            if a <= c < b:
                moves.append((b, a, c))
            # yzx <-> yxz for x < y <= z
            if c < a <= b:
                moves.append((a, c, b))
            if b < a <= c:
                moves.append((a, c, b))
            for m in moves:
                y = x[:i] + m + x[i + 3 :]
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
    return frozenset(seen)


def words(n, length):
    return itertools.product(range(1, n + 1), repeat=length)


@pytest.fixture(scope="session")
def knuth_classes_n3():
    """Partition of all words over [3] of length <= 6 into Knuth classes."""
    classes = {}
    for L in range(7):
        for w in words(3, L):
            if w not in classes:
                cls = knuth_class(w)
                for x in cls:
                    classes[x] = cls
    return classes


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.VERDICTS):
        terminalreporter.write_line(line)
