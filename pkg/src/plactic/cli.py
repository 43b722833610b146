"""Command line entry point: ``plactic <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from typing import Sequence

from . import coherence, counting, crystals, engine, presentations
from .schensted import p_tableau
from .words import Column, DomainError, check_n, format_word, parse_word

EXIT_OK, EXIT_DOMAIN, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 64

GRAMMAR = (
    "plactic <command> [--n N] [--n-max N] [--preset P] [--word W] [--triple u,v,t] "
    "[--strategy S] [--seed K] [--format text|json|csv|dot] [--threads K] [--include-kb]"
)

COMMANDS = ("tableau", "rules", "normalize", "complete", "counts", "hexagon", "verify", "crystal", "component")

CAP_ERRORS = (
    coherence.ResourceCapExceeded,
    engine.CompletionBudgetExceeded,
    engine.StepLimitExceeded,
    crystals.ComponentCapExceeded,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="plactic", usage=GRAMMAR, description="Coherent presentations of plactic monoids.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("arg", nargs="?", help="word for the tableau command")
    p.add_argument("--n", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--preset", default="colo2", choices=[x.value for x in presentations.Preset])
    p.add_argument("--word")
    p.add_argument("--triple", help="three columns, e.g. 2,1,21 (use / to separate multi-letter columns)")
    p.add_argument("--strategy", default="leftmost", choices=["leftmost", "rightmost", "random"])
    p.add_argument("--seed", type=int)
    p.add_argument("--format", default="text", choices=["text", "json", "csv", "dot"])
    p.add_argument("--threads", type=int)
    p.add_argument("--include-kb", action="store_true")
    p.add_argument("--trace", action="store_true", help="print every rewriting step")
    p.add_argument("--order", default="deglex", choices=["deglex", "lex"])
    p.add_argument("--max-rules", type=int, default=10_000)
    p.add_argument("--max-branchings", type=int, default=100_000)
    p.add_argument("--op", help="crystal operator: f<i>, e<i>, hw or normalize")
    p.add_argument("--plot", metavar="FILE", help="counts: also write a log-scale figure")
    p.add_argument("--samples", type=int, default=1000, help="verify: random words per check")
    return p


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _threads(args, default_all: bool) -> int:
    if args.threads is not None:
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        return args.threads
    return (os.cpu_count() or 1) if default_all else 1


def _emit(out, text: str) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# Commands


def cmd_tableau(args, out) -> int:
    w = parse_word(_need(args.arg or args.word, "word"), args.n)
    T = p_tableau(w)
    if args.format == "json":
        _emit(out, json.dumps({"word": format_word(w), "rows": [list(r) for r in T.rows],
                               "columns": [str(c) for c in T.columns]}))
    else:
        _emit(out, T.planar() if T.columns else "(empty)")
    return EXIT_OK


def cmd_rules(args, out) -> int:
    P = presentations.build(args.preset, _need(args.n, "--n"))
    if args.format == "json":
        _emit(out, P.to_json())
    elif args.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["name", "source", "target"])
        for r in P.rules:
            wr.writerow([r.name, " ".join(map(str, r.source)), " ".join(map(str, r.target))])
        _emit(out, buf.getvalue())
    else:
        for r in P.rules:
            _emit(out, str(r))
        _emit(out, f"{len(P.generators)} generators, {len(P.rules)} rules")
    return EXIT_OK


def cmd_normalize(args, out) -> int:
    n = _need(args.n, "--n")
    w = parse_word(_need(args.word, "--word"), n)
    if args.strategy == "random" and args.seed is None:
        raise UsageError("--strategy random needs --seed")
    P = presentations.build(args.preset, n)
    nf, d = engine.normalize(P, presentations.letters_to_genword(w), args.strategy, args.seed)
    if args.format == "json":
        _emit(out, json.dumps({"normal_form": [str(c) for c in nf], "derivation": d.to_dict()}))
        return EXIT_OK
    if args.trace:
        ws = d.words()
        _emit(out, presentations.format_genword(ws[0]))
        for s, x in zip(d.steps, ws[1:]):
            _emit(out, f"  => {presentations.format_genword(x)}   [{s.rule.name} at {s.position}]")
    _emit(out, f"{presentations.format_genword(nf)}   ({len(d)} steps)")
    return EXIT_OK


def cmd_complete(args, out) -> int:
    P = presentations.build(args.preset, _need(args.n, "--n"))
    key = engine.deglex_word_key if args.order == "deglex" else engine.lex_word_key
    try:
        res = engine.homotopical_complete(P, key, args.max_rules, args.max_branchings)
    except engine.CompletionBudgetExceeded as exc:
        part = exc.partial
        _emit(out, f"budget exceeded: {exc} (partial: {len(part.presentation.rules)} rules, "
                   f"{len(part.cells)} 3-cells)")
        return EXIT_CAP
    if args.format == "json":
        _emit(out, json.dumps({
            "rules": len(res.presentation.rules),
            "cells": len(res.cells),
            "added": [r.to_dict() for r in res.added],
        }))
    else:
        for r in res.added:
            _emit(out, f"added {r}")
        _emit(out, f"rules: {len(res.presentation.rules)}")
        _emit(out, f"3-cells: {len(res.cells)}")
    return EXIT_OK


def cmd_counts(args, out) -> int:
    if args.n_max is not None:
        ns = range(1, args.n_max + 1)
    else:
        ns = [_need(args.n, "--n or --n-max")]
    for n in ns:
        check_n(n)
    threads = _threads(args, True)
    reports = [coherence.cell_counts(n, threads=threads, include_kb=args.include_kb) for n in ns]
    fields = coherence.COUNT_FIELDS + (coherence.KB_FIELDS if args.include_kb else ())
    fmt = args.format
    if fmt == "json":
        _emit(out, json.dumps([r.to_dict() for r in reports]))
    else:
        buf = io.StringIO()
        sep = "," if fmt == "csv" else "\t"
        wr = csv.writer(buf, delimiter=sep, lineterminator="\n")
        wr.writerow(("n",) + fields)
        for r in reports:
            wr.writerow(["inf" if v is None else v for v in r.row(args.include_kb)])
        _emit(out, buf.getvalue())
    if args.plot:
        from .report import plot_counts

        plot_counts(reports, args.plot)
    return EXIT_OK


def _parse_triple(s: str) -> tuple[Column, Column, Column]:
    parts = s.split("/") if "/" in s else s.split(",")
    if len(parts) != 3:
        raise DomainError(f"expected three columns, got {s!r}")
    return tuple(Column.of(parse_word(p)) for p in parts)


def cmd_hexagon(args, out) -> int:
    n = _need(args.n, "--n")
    u, v, t = _parse_triple(_need(args.triple, "--triple"))
    cell = coherence.hexagon(u, v, t, n)
    if args.format == "json":
        _emit(out, json.dumps(cell.to_dict()))
        return EXIT_OK
    _emit(out, f"kind: {cell.kind.value}")
    _emit(out, f"pair types: {presentations.pair_type(u, v).value}, {presentations.pair_type(v, t).value}")
    _emit(out, f"left:  {cell.left_closure.describe()}")
    _emit(out, f"right: {cell.right_closure.describe()}")
    return EXIT_OK


def _verify_checks(n: int, samples: int, seed: int, threads: int):
    """Yield (name, passed, detail) for each sweep."""
    rng = random.Random(seed)
    P = presentations.build("colo2", n)
    bad = 0
    for _ in range(samples):
        w = tuple(rng.randint(1, n) for _ in range(rng.randint(0, 12)))
        nf, _d = engine.normalize(P, presentations.letters_to_genword(w))
        bad += nf != p_tableau(w).columns
    yield "leftmost normal form is P(w)", bad == 0, f"{samples} words"

    strategies_ok = True
    for k in range(samples):
        w = tuple(rng.randint(1, n) for _ in range(rng.randint(0, 10)))
        g = presentations.letters_to_genword(w)
        forms = {engine.normalize(P, g, s, seed=k)[0] for s in ("leftmost", "rightmost", "random")}
        strategies_ok &= len(forms) == 1
    yield "unique normal form", strategies_ok, f"{samples} words"

    if n <= coherence.MAX_MATERIALIZE_N:
        kinds: dict[str, int] = {}
        total = 0
        ok = True
        for cell in coherence.iter_cells3(n):
            total += 1
            kinds[cell.kind.value] = kinds.get(cell.kind.value, 0) + 1
            ok &= len(cell.left_closure) <= 3 and len(cell.right_closure) <= 3
        _k3, _bar, c3 = counting.triple_counts(n, threads)
        yield "hexagons close in <= 3 steps", ok, f"{total} triples"
        yield "triple count cross-check", total == c3, f"{total} vs {c3}"
        yield "kind partition", sum(kinds.values()) == total, json.dumps(kinds, sort_keys=True)
    if n <= 5:
        cells = coherence.precolo3_cells(n, check=True)
        k3, _bar, _c3 = counting.triple_counts(n, threads)
        yield "pre-column 3-cells are zig-zags", True, f"{len(cells)} cells"
        yield "pre-column count matches", len(cells) == k3, f"{len(cells)} vs {k3}"


def cmd_verify(args, out) -> int:
    n = check_n(_need(args.n, "--n"))
    seed = 0 if args.seed is None else args.seed
    failed = 0
    for name, ok, detail in _verify_checks(n, args.samples, seed, _threads(args, True)):
        failed += not ok
        _emit(out, f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
    _emit(out, f"{'all checks passed' if not failed else f'{failed} check(s) failed'}")
    return EXIT_OK if not failed else EXIT_DOMAIN


def cmd_crystal(args, out) -> int:
    n = check_n(_need(args.n, "--n"))
    w = parse_word(_need(args.word, "--word"), n)
    op = _need(args.op, "--op")
    if op == "hw":
        hw, seq = crystals.highest_weight(w, n)
        result = {"word": format_word(hw), "raising": list(seq)}
    elif op == "normalize":
        result = {"word": format_word(crystals.crys_normalize(w, n))}
    elif op[:1] in ("e", "f") and op[1:].isdigit():
        r = crystals.root_op(op[0], int(op[1:]), w, n)
        result = {"word": None if r is None else format_word(r)}
    else:
        raise UsageError(f"unknown operator {op!r}")
    if args.format == "json":
        _emit(out, json.dumps(result))
    else:
        word = result["word"]
        _emit(out, "0" if word is None else (word or "(empty)"))
        if "raising" in result:
            _emit(out, "raising: " + " ".join(f"e{i}" for i in result["raising"]))
    return EXIT_OK


def cmd_component(args, out) -> int:
    n = check_n(_need(args.n, "--n"))
    w = parse_word(_need(args.word, "--word"), n)
    g = crystals.crystal_component(w, n)
    if args.format == "dot":
        _emit(out, g.to_dot())
    elif args.format == "json":
        _emit(out, json.dumps(g.to_dict()))
    else:
        for s, i, t in sorted(g.edges):
            _emit(out, f"{format_word(s)} -{i}-> {format_word(t)}")
        _emit(out, f"{len(g.vertices)} vertices, {len(g.edges)} edges")
    return EXIT_OK


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
        return HANDLERS[args.command](args, out)
    except UsageError as exc:
        err.write(f"usage: {GRAMMAR}\nerror: {exc}\n")
        return EXIT_USAGE
    except CAP_ERRORS as exc:
        err.write(f"resource cap: {exc}\n")
        return EXIT_CAP
    except (DomainError, KeyError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
