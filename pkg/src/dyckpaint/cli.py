"""Command-line front end.

Exit codes: 0 success, 1 a checked identity failed, 2 usage or cap errors.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from typing import Sequence, TextIO

from . import pathcount as pc
from .choose import EnumerationCapExceeded, format_kappa, m_c_small, lemma2_assignment
from .graphcore import Instance, load_instance
from .paintgame import (
    CapExceeded,
    GameState,
    IllegalMove,
    PaintingSolver,
    max_vertices,
    optimal_strategy_from_solver,
    run_game,
)
from .verify import MULT_LIMIT, SWEEPS, small_parts

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

_NEG_VECTOR = re.compile(r"^-\d[\d,\s-]*$")


class UsageError(Exception):
    pass


def _vector(text: str) -> pc.XVector:
    try:
        return pc.XVector.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(out: TextIO, args, human: str, payload) -> None:
    if args.json:
        print(json.dumps(payload), file=out)
    else:
        print(human, file=out)


# -- path commands ---------------------------------------------------------------


def cmd_psi(args, out, inp) -> int:
    x = _vector(args.x)
    value = pc.psi(x, args.method)
    _emit(out, args, str(value), {"x": x.to_json(), "method": args.method, "psi": str(value)})
    return EXIT_OK


def cmd_reduce(args, out, inp) -> int:
    r = pc.reduce(_vector(args.x))
    _emit(out, args, str(r), {"reduced": r.to_json()})
    return EXIT_OK


def cmd_paths(args, out, inp) -> int:
    x = _vector(args.x)
    paths = pc.enumerate_paths(x)
    if args.encode:
        rows = [sorted(pc.encode_path(p, x)) for p in paths]
        human = "\n".join(f"{p}\t{{{','.join(map(str, s))}}}" for p, s in zip(paths, rows))
        payload = [{"path": str(p), "encoding": s} for p, s in zip(paths, rows)]
    else:
        human = "\n".join(map(str, paths))
        payload = [str(p) for p in paths]
    _emit(out, args, human, payload)
    return EXIT_OK


def cmd_xvec(args, out, inp) -> int:
    try:
        x = pc.x_of_f(_vector(args.f))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    r = pc.reduce(x)
    _emit(out, args, f"{x}\nreduced {r}", {"x": x.to_json(), "reduced": r.to_json()})
    return EXIT_OK


# -- instance commands -------------------------------------------------------------


def _instance(path: str) -> Instance:
    try:
        return load_instance(path)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def cmd_mp(args, out, inp) -> int:
    inst = _instance(args.instance)
    g, f = inst.graph, inst.f
    limit = max_vertices()
    if g.n_vertices > limit:
        raise CapExceeded(f"{g.n_vertices} vertices exceed the solver cap {limit}")
    solver = PaintingSolver(g, limit - g.n_vertices)
    value = solver.m_p(f)
    payload = {"m_p": value, "m": inst.m, "paintable_at_m": inst.m < value}
    human = f"{value}"
    if args.stats:
        payload["stats"] = dict(solver.stats)
        human += f"\nstates {solver.stats['states']} memo_hits {solver.stats['memo_hits']}"
    _emit(out, args, human, payload)
    return EXIT_OK


def cmd_mc(args, out, inp) -> int:
    inst = _instance(args.instance)
    value = m_c_small(inst.graph, inst.f)
    _emit(out, args, format_kappa(value), {"m_c": format_kappa(value)})
    return EXIT_OK


def cmd_badlist(args, out, inp) -> int:
    f = tuple(_vector(args.f))
    try:
        pc.x_of_f(f)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    g, tokens, lists = lemma2_assignment(f)
    m = g.n_vertices - len(f)
    payload = {
        "instance": {"graph": {"kind": "complete", "n": len(f), "edges": []}, "f": list(f), "m": m},
        "assignment": lists.to_json(),
    }
    if args.json:
        print(json.dumps(payload), file=out)
    else:
        print(f"m = {m}", file=out)
        for v, l in enumerate(lists.lists):
            side = "K" if v < len(f) else "E"
            print(f"{side}{v}\t{{{','.join(map(str, sorted(l)))}}}", file=out)
    return EXIT_OK


def cmd_verify(args, out, inp) -> int:
    fn = SWEEPS[args.which]
    kwargs = {}
    if args.which in ("thm1", "thm2", "duel") and args.n_max is not None:
        kwargs["n_max"] = args.n_max
    if args.which in ("thm1", "thm2", "duel", "p3") and args.f_max is not None:
        kwargs["f_max"] = args.f_max
    if args.which == "mult":
        kwargs["limit"] = args.limit or MULT_LIMIT
        if args.f_max is not None:
            kwargs["parts"] = small_parts(args.f_max)
    elif args.limit is not None and args.which != "duel":
        kwargs["limit"] = args.limit
    report = fn(**kwargs)
    text = report.to_json() if args.json else report.to_tsv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    s = report.summary()
    print(f"{report.name}: {s['pass']} pass, {s['fail']} fail, {s['cap']} cap", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VIOLATION


# -- interactive play ------------------------------------------------------------


def render(state: GameState, n_core: int) -> str:
    def cell(v: int) -> str:
        if v not in state.uncoloured:
            return f"{v}:done"
        return f"{v}[{state.tokens[v]}]"

    top = " ".join(cell(v) for v in range(n_core))
    bottom = " ".join(cell(v) for v in range(n_core, state.graph.n_vertices))
    return f"  G: {top or '-'}\n  E: {bottom or '-'}"


def _read_set(inp: TextIO, out: TextIO, prompt: str) -> frozenset:
    while True:
        print(prompt, end="", file=out, flush=True)
        line = inp.readline()
        if not line:
            raise UsageError("input ended before the game finished")
        if not inp.isatty():
            # piped input is not echoed by a terminal
            print(line.rstrip("\n"), file=out)
        text = line.strip()
        if not text or text == "-":
            return frozenset()
        try:
            return frozenset(int(t) for t in text.replace(" ", "").split(","))
        except ValueError:
            print("  enter vertex ids separated by commas", file=out)


def cmd_play(args, out, inp) -> int:
    inst = _instance(args.instance)
    g, tokens = inst.joined()
    opponent = optimal_strategy_from_solver(g, tokens)
    n_core = inst.graph.n_vertices

    def human_lister(state: GameState) -> frozenset:
        print(render(state, n_core), file=out)
        while True:
            marked = _read_set(inp, out, "mark> ")
            if marked and marked <= state.uncoloured:
                return marked
            print("  mark a nonempty set of uncoloured vertices", file=out)

    def human_painter(state: GameState, marked: frozenset) -> frozenset:
        while True:
            coloured = _read_set(inp, out, "colour> ")
            if coloured <= marked and state.graph.is_independent(coloured):
                return coloured
            print("  colour an independent subset of the marked vertices", file=out)

    def shown_lister(state: GameState) -> frozenset:
        marked = opponent.lister(state)
        print(render(state, n_core), file=out)
        print(f"  Lister marks {sorted(marked)}", file=out)
        return marked

    def shown_painter(state: GameState, marked: frozenset) -> frozenset:
        coloured = opponent.painter(state, marked)
        print(f"  Painter colours {sorted(coloured)}", file=out)
        return coloured

    if args.side == "painter":
        winner, transcript = run_game(g, tokens, shown_lister, human_painter)
    else:
        winner, transcript = run_game(g, tokens, human_lister, shown_painter)
    print(f"{winner} wins", file=out)
    if args.json:
        print(json.dumps(transcript), file=out)
    return EXIT_OK


# -- benchmark -------------------------------------------------------------------


def cmd_bench(args, out, inp) -> int:
    rng = random.Random(args.seed)
    rows = []
    for n in range(1, args.nmax + 1):
        xs = [pc.XVector(range(n))]
        xs += [pc.XVector(sorted(rng.randint(0, 2 * n) for _ in range(n))) for _ in range(args.samples)]
        timings = {}
        values = None
        for method in ("dp", "rec", "det"):
            t0 = time.perf_counter()
            got = [pc.psi(x, method) for x in xs]
            timings[method] = time.perf_counter() - t0
            if values is None:
                values = got
            elif got != values:
                print(f"methods disagree at n={n}", file=out)
                return EXIT_VIOLATION
        rows.append({"n": n, **{k: round(v * 1e3, 3) for k, v in timings.items()}})
    if args.json:
        print(json.dumps(rows), file=out)
    else:
        print("n\tdp_ms\trec_ms\tdet_ms", file=out)
        for r in rows:
            print(f"{r['n']}\t{r['dp']}\t{r['rec']}\t{r['det']}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dyckpaint", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("psi", help="count dominated paths")
    s.add_argument("x")
    s.add_argument("--method", choices=pc.METHODS, default="auto")
    s.set_defaults(func=cmd_psi)

    s = sub.add_parser("reduce", help="reduced form of a vector")
    s.add_argument("x")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("paths", help="list dominated paths")
    s.add_argument("x")
    s.add_argument("--encode", action="store_true", help="also print up-step positions")
    s.set_defaults(func=cmd_paths)

    s = sub.add_parser("xvec", help="bound vector of a sorted token map")
    s.add_argument("f")
    s.set_defaults(func=cmd_xvec)

    s = sub.add_parser("mp", help="m_p of an instance by exhaustive game search")
    s.add_argument("instance")
    s.add_argument("--stats", action="store_true")
    s.set_defaults(func=cmd_mp)

    s = sub.add_parser("mc", help="m_c of a tiny instance by list-assignment enumeration")
    s.add_argument("instance")
    s.set_defaults(func=cmd_mc)

    s = sub.add_parser("badlist", help="blocking list assignment for K_n")
    s.add_argument("f")
    s.set_defaults(func=cmd_badlist)

    s = sub.add_parser("verify", help="run a verification sweep")
    s.add_argument("which", choices=sorted(SWEEPS))
    s.add_argument("--n-max", type=int)
    s.add_argument("--f-max", type=int)
    s.add_argument("--limit", type=int, help="vertex cap for joined instances")
    s.add_argument("--out", help="write the report here instead of stdout")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("play", help="play against the solver")
    s.add_argument("instance")
    s.add_argument("--as", dest="side", choices=("painter", "lister"), required=True)
    s.set_defaults(func=cmd_play)

    s = sub.add_parser("bench", help="time the three psi algorithms")
    s.add_argument("--nmax", type=int, default=10)
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = stdout or sys.stdout
    inp = stdin or sys.stdin
    argv = list(sys.argv[1:] if argv is None else argv)
    # keep "-1,2" from being read as an option
    argv = [" " + a if _NEG_VECTOR.match(a) else a for a in argv]
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out, inp)
    except (UsageError, CapExceeded, EnumerationCapExceeded, pc.PathCapExceeded, IllegalMove) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
