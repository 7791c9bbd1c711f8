"""Command-line entry point: ``wak <subcommand> ...``.

Exit status is 0 on success, 1 on domain errors (bad files, budget
exhausted, unsupported input) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys

from . import __version__
from .core import (GameMove, GamePosition, Outcome, apply_move, format_position, legal_moves,
                   parse_position, position_to_dict, position_to_json)
from .errors import PreconditionError, WakError
from .family import build_family, expand_to_arc_kayles, verify_family
from .periodicity import detect_period, grundy_sequence, outcome_sequence
from .reduce import canonicalize
from .rooks import (board_to_wak, horizontal_cover, parse_board, rooks_outcome, validate_cover,
                    vertical_cover)
from .solver import DEFAULT_BUDGET, Solver, TranspositionTable
from .tree2 import tree2_outcome


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise WakError(f"cannot read {path}: {e.strerror}") from None


def _load(path: str) -> GamePosition:
    return parse_position(_read(path))


def _solver(args) -> Solver:
    return Solver(use_reductions=not args.no_reduce, budget=args.budget)


def _emit_json(obj, out):
    out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _move_pair(m: GameMove) -> list[str]:
    return [m.u, m.v]


# -- subcommands -------------------------------------------------------------

def cmd_solve(args, out):
    p = _load(args.file)
    s = _solver(args)
    if args.json:
        g = s.grundy(p)
        moves = s.best_moves(p) if g else []
        _emit_json({"grundy": g, "outcome": "P" if g == 0 else "N",
                    "winning_moves": [_move_pair(m) for m in moves]}, out)
    elif args.command == "grundy":
        out.write(f"{s.grundy(p)}\n")
    elif args.command == "outcome":
        out.write(f"{s.outcome(p)}\n")
    else:
        if s.outcome(p) == Outcome.N:
            for m in s.best_moves(p):
                out.write(f"{m.u} {m.v}\n")
    return 0


def cmd_canon(args, out):
    p = _load(args.file)
    q, steps = canonicalize(p)
    if args.json:
        _emit_json({"position": position_to_dict(q),
                    "steps": [{"kind": str(s.kind), "subject": list(s.subject),
                               "loops_added": list(s.loops_added)} for s in steps]}, out)
        return 0
    out.write(format_position(q))
    if args.trace:
        for s in steps:
            out.write(f"# {s}\n")
    return 0


def cmd_tree2(args, out):
    p = _load(args.file)
    trace: list[str] = []
    result = tree2_outcome(p, trace)
    if args.json:
        _emit_json({"outcome": str(result), "trace": trace}, out)
    else:
        out.write(f"{result}\n")
        for line in trace:
            out.write(f"# {line}\n")
    return 0


def _rect_list(cover):
    return [[r.top, r.left, r.bottom, r.right] for r in cover.rectangles]


def cmd_rooks(args, out):
    b = parse_board(_read(args.file))
    if args.rooks_command == "outcome":
        result = rooks_outcome(b, paranoid=args.paranoid, budget=args.budget)
        if args.json:
            _emit_json({"outcome": str(result)}, out)
        else:
            out.write(f"{result}\n")
    elif args.rooks_command == "convert":
        merge_v = args.cover in ("vertical", "both")
        merge_h = args.cover in ("horizontal", "both")
        p = board_to_wak(b, vertical_cover(b, merge_v), horizontal_cover(b, merge_h))
        out.write(position_to_json(p) + "\n" if args.json else format_position(p))
    else:
        v, h = vertical_cover(b), horizontal_cover(b)
        if args.json:
            _emit_json({"vertical": _rect_list(v), "horizontal": _rect_list(h)}, out)
        else:
            for tag, cover in (("V", v), ("H", h)):
                for k, r in enumerate(cover.rectangles, 1):
                    out.write(f"{tag}{k} rows {r.top}-{r.bottom} cols {r.left}-{r.right}\n")
        problems = validate_cover(b, v) + validate_cover(b, h)
        if problems:
            raise WakError("invalid cover: " + "; ".join(problems))
    return 0


def cmd_period(args, out):
    p = _load(args.file)
    fn = grundy_sequence if args.grundy else outcome_sequence
    seq = fn(p, args.vertex, x_max=args.max, budget=args.budget)
    report = detect_period(seq)
    values = [v if isinstance(v, int) else str(v) for v in seq.values]
    if args.json:
        _emit_json({"vertex": args.vertex, "omega": seq.omega, "values": values,
                    "preperiod": report.preperiod, "period": report.period,
                    "certified_up_to": report.certified_up_to}, out)
    elif args.csv:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["x", "grundy" if args.grundy else "outcome"])
        for x, v in enumerate(values):
            w.writerow([x, v])
    else:
        out.write(" ".join(map(str, values)) + "\n")
        out.write(f"preperiod {report.preperiod} period {report.period} "
                  f"certified_up_to {report.certified_up_to} (2*Omega = {2 * seq.omega})\n")
    return 0


def cmd_family(args, out):
    fam = build_family(args.n)
    if args.verify:
        rep = verify_family(args.n, budget=args.budget)
        if args.json:
            _emit_json({"grundy": rep.grundy, "loop_move_grundy": rep.loop_move_grundy,
                        "distinct": rep.distinct, "verified": rep.verified,
                        "exhausted_at": rep.exhausted_at}, out)
        else:
            out.write("n vertices grundy after_loop\n")
            for i, (g, z) in enumerate(zip(rep.grundy, rep.loop_move_grundy), 1):
                out.write(f"{i} {3 ** (i - 1)} {g} {z}\n")
            if rep.exhausted_at:
                out.write(f"# budget exhausted at n={rep.exhausted_at}\n")
        return 0 if rep.ok else 1
    p = expand_to_arc_kayles(fam.position) if args.expand else fam.position
    out.write(position_to_json(p) + "\n" if args.json else format_position(p))
    return 0


def cmd_selfcheck(args, out):
    """Random oracle comparisons: reductions and disjoint sums against brute force."""
    from .corpus import random_position
    from .reduce import canonicalize as canon
    from .solver import grundy
    rng = random.Random(args.seed)
    brute, fast = TranspositionTable(), TranspositionTable()
    failures = 0
    for k in range(args.count):
        p = random_position(rng, 6, 3)
        q = random_position(rng, 4, 3, prefix="w")
        g = grundy(p, use_reductions=False, table=brute)
        checks = [
            grundy(p, table=fast) == g,
            grundy(canon(p)[0], use_reductions=False, table=brute) == g,
            grundy(GamePosition({**p.weights, **q.weights}, list(p.edges) + list(q.edges),
                                list(p.loops) + list(q.loops)), table=fast)
            == g ^ grundy(q, use_reductions=False, table=brute),
        ]
        if not all(checks):
            failures += 1
            out.write(f"FAIL case {k}: {position_to_json(p)}\n")
    out.write(f"{args.count - failures}/{args.count} cases passed (seed {args.seed})\n")
    return 0 if failures == 0 else 1


def _parse_human_move(line: str):
    toks = line.split()
    if len(toks) == 1:
        return GameMove.of(toks[0])
    if len(toks) == 2:
        return GameMove.of(toks[0], toks[1])
    return None


def play(p: GamePosition, human_side: str = "first", inp=None, out=None, solver: Solver | None = None) -> list[str]:
    """Interactive game against the solver; returns the transcript of moves."""
    inp = inp if inp is not None else sys.stdin
    out = out if out is not None else sys.stdout
    solver = solver or Solver()
    transcript: list[str] = []
    human_turn = human_side == "first"
    while True:
        out.write(format_position(p))
        moves = legal_moves(p)
        if not moves:
            winner = "engine" if human_turn else "human"
            out.write(f"no moves left: {winner} wins\n")
            transcript.append(f"winner {winner}")
            out.flush()
            return transcript
        if human_turn:
            while True:
                out.write("your move> ")
                out.flush()
                line = inp.readline()
                if not line:
                    out.write("\naborted\n")
                    transcript.append("aborted")
                    out.flush()
                    return transcript
                m = _parse_human_move(line)
                if m is None or m not in moves:
                    out.write(f"illegal move {line.strip()!r}; legal: "
                              + ", ".join(f"{x.u} {x.v}" for x in moves) + "\n")
                    continue
                break
            who = "human"
        else:
            # last winning move in canonical order; first legal move when lost
            winning = solver.best_moves(p) if solver.outcome(p) == Outcome.N else []
            m = winning[-1] if winning else moves[0]
            out.write(f"engine plays {m.u} {m.v}\n")
            who = "engine"
        transcript.append(f"{who} {m.u} {m.v}")
        p = apply_move(p, m)
        human_turn = not human_turn


def cmd_play(args, out):
    p = _load(args.file)
    play(p, args.human, sys.stdin, out, _solver(args))
    return 0


# -- argument parsing ------------------------------------------------------------

def _common(suppress: bool) -> argparse.ArgumentParser:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    c.add_argument("--budget", type=int, default=d(DEFAULT_BUDGET), help="max expanded positions")
    c.add_argument("--no-reduce", action="store_true", default=d(False), help="disable reductions in search")
    c.add_argument("--seed", type=int, default=d(0), help="seed for randomized checks")
    return c


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wak", description="Weighted Arc-Kayles solver toolkit",
                                     parents=[_common(False)])
    parser.add_argument("--version", action="version", version=f"wak {__version__}")
    common = _common(True)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, desc in (("grundy", "Grundy value"), ("outcome", "outcome (N or P)"),
                       ("moves", "winning moves")):
        sp = sub.add_parser(name, parents=[common], help=desc)
        sp.add_argument("file")
        sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("canon", parents=[common], help="canonical reduced position")
    sp.add_argument("file")
    sp.add_argument("--trace", action="store_true")
    sp.set_defaults(func=cmd_canon)

    sp = sub.add_parser("tree2", parents=[common], help="outcome of a loopless tree of depth <= 2")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_tree2)

    sp = sub.add_parser("rooks", help="non-attacking rooks boards")
    rsub = sp.add_subparsers(dest="rooks_command", required=True)
    r = rsub.add_parser("outcome", parents=[common])
    r.add_argument("file")
    r.add_argument("--paranoid", action="store_true", help="memoize on raw placements")
    r = rsub.add_parser("convert", parents=[common])
    r.add_argument("file")
    r.add_argument("--cover", choices=["vertical", "horizontal", "both"], default="both",
                   help="covers built with merged rectangles (others use one rectangle per run)")
    r = rsub.add_parser("covers", parents=[common])
    r.add_argument("file")
    sp.set_defaults(func=cmd_rooks)

    sp = sub.add_parser("period", parents=[common], help="sequence in one looped weight")
    sp.add_argument("file")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--max", type=int, default=None)
    sp.add_argument("--grundy", action="store_true")
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_period)

    sp = sub.add_parser("family", parents=[common], help="unbounded-Grundy family graph G_N")
    sp.add_argument("n", type=int)
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--expand", action="store_true", help="emit the Arc-Kayles version")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("selfcheck", parents=[common], help="randomized oracle comparisons")
    sp.add_argument("--count", type=int, default=200)
    sp.set_defaults(func=cmd_selfcheck)

    sp = sub.add_parser("play", parents=[common], help="play against the solver")
    sp.add_argument("file")
    sp.add_argument("--human", choices=["first", "second"], default="first")
    sp.set_defaults(func=cmd_play)
    return parser


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget <= 0:
        parser.error("--budget must be positive")
    try:
        return args.func(args, out)
    except (WakError, PreconditionError) as e:
        sys.stderr.write(f"wak: error: {e}\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
