"""Command-line interface.

Exit codes: 0 ok, 2 bad input, 3 resource cap exceeded, 4 verification mismatch.
``--json`` switches every command to a single JSON object on stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .boardfile import BoardFormatError, dump_board, load_board
from .digraph_yama import GraphError, check_position, dyn_best_move, dyn_rules
from .game_core import DEFAULT_MAX_ENTRIES, MemoTable, ResourceLimitError, is_p_position, sg_value
from .reduction import (PosCnfError, audit_reduction, build_reduction, check_equivalence,
                        parse_poscnf, poscnf_winner, verify_claim_even_moves)
from .structure_theorems import PreconditionError, classify_auto
from .verification import SUITES
from .yama_nim import yama_sg, yama_table

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_MISMATCH = 0, 2, 3, 4


class InputError(Exception):
    pass


def _emit(args, human: str, data: dict) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(human)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _board(args):
    g, p, roles = load_board(_read(args.board))
    if args.tokens:
        p = check_position(g, args.tokens)
    return g, p


def _memo(args) -> MemoTable:
    return MemoTable(args.max_states)


def cmd_sg(args) -> int:
    g, p = _board(args)
    sg = sg_value(dyn_rules(g), p, _memo(args))
    _emit(args, str(sg), {"sg": sg})
    return EXIT_OK


def cmd_outcome(args) -> int:
    g, p = _board(args)
    memo = _memo(args)
    verdict = "P" if sg_value(dyn_rules(g), p, memo) == 0 else "N"
    data: dict = {"outcome": verdict}
    human = verdict
    if args.move and verdict == "N":
        move, q = dyn_best_move(g, p, memo)
        data["move"] = {"vertex": g.labels[move.vertex], "removed": move.removed,
                        "position": list(q)}
        human += f"\n{g.labels[move.vertex]} -{move.removed} -> {' '.join(map(str, q))}"
    _emit(args, human, data)
    return EXIT_OK


def cmd_classify(args) -> int:
    g, p = _board(args)
    res = classify_auto(g, p, _memo(args))
    data = {"method": res.method.value, "outcome": res.outcome.value, "sg": res.sg}
    human = f"{res.method} {res.outcome}" + (f" sg={res.sg}" if res.sg is not None else "")
    status = EXIT_OK
    if args.verify:
        memo = _memo(args)
        if res.sg is not None:
            brute_sg = sg_value(dyn_rules(g), p, memo)
            agree = brute_sg == res.sg
        else:
            agree = is_p_position(dyn_rules(g), p, memo) == (res.outcome.value == "P")
        data["verified"] = agree
        human += "\nverify: " + ("agree" if agree else "MISMATCH")
        if not agree:
            status = EXIT_MISMATCH
    _emit(args, human, data)
    return status


def cmd_yama(args) -> int:
    vals = args.values
    if len(vals) == 2 and vals[0] == "table":
        try:
            bound = int(vals[1])
        except ValueError:
            raise InputError("table bound must be an integer") from None
        if bound < 0:
            raise InputError("table bound must be non-negative")
        table = yama_table(bound)
        human = "\n".join(" ".join(f"{v:>3}" for v in row) for row in table)
        _emit(args, human, {"bound": bound, "table": table.tolist()})
        return EXIT_OK
    try:
        x, y = (int(v) for v in vals)
    except ValueError:
        raise InputError("expected 'yama X Y' or 'yama table B'") from None
    if x < 0 or y < 0:
        raise InputError("pile sizes must be non-negative")
    sg = yama_sg((x, y))
    _emit(args, str(sg), {"x": x, "y": y, "sg": sg})
    return EXIT_OK


def cmd_reduce(args) -> int:
    f = parse_poscnf(_read(args.cnf))
    rg = build_reduction(f)
    text = dump_board(rg.graph, rg.init, rg.role_labels())
    if args.output:
        Path(args.output).write_text(text)
        audit = audit_reduction(rg)
        _emit(args, f"wrote {rg.graph.n} vertices to {args.output}",
              {"vertices": rg.graph.n, "output": args.output, "audit_ok": audit.ok})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_poscnf(args) -> int:
    f = parse_poscnf(_read(args.cnf))
    winner = poscnf_winner(f)
    _emit(args, str(winner), {"winner": winner.value})
    return EXIT_OK


def cmd_check_reduction(args) -> int:
    f = parse_poscnf(_read(args.cnf))
    rg = build_reduction(f)
    audit = audit_reduction(rg)
    claim = verify_claim_even_moves(rg, args.max_states)
    eq = check_equivalence(f, args.max_states)
    ok = audit.ok and claim.holds and bool(eq.agree)
    lines = [f"formula winner: {eq.formula_winner}",
             f"graph outcome:  {eq.dyn_outcome}",
             f"agree: {'yes' if eq.agree else 'NO'}",
             f"audit: {'clean' if audit.ok else 'FAILED'}"]
    lines += [f"  {c.name}: {c.detail}" for c in audit.failed()]
    lines.append(f"move parity: {'holds' if claim.holds else 'VIOLATED'} ({claim.states} states)")
    if not claim.holds:
        lines.append(f"  {claim.detail}")
    data = {"formula_winner": eq.formula_winner.value, "dyn_outcome": eq.dyn_outcome.value,
            "agree": eq.agree, "audit_ok": audit.ok,
            "audit_failures": [c.name for c in audit.failed()],
            "claim_holds": claim.holds, "claim_states": claim.states}
    _emit(args, "\n".join(lines), data)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify(args) -> int:
    suite = SUITES[args.suite]
    res = suite(*args.bounds)
    data = {"suite": res.name, "passed": res.passed, "checked": res.checked,
            "failures": res.failures, "counterexample": repr(res.counterexample)
            if res.counterexample is not None else None, "seconds": round(res.seconds, 3)}
    _emit(args, res.summary(), data)
    return EXIT_OK if res.passed else EXIT_MISMATCH


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    default_cap = int(os.environ.get("YAMANIM_MAX_STATES", DEFAULT_MAX_ENTRIES))
    parser = argparse.ArgumentParser(prog="yamanim", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="structured output")
    parser.add_argument("--max-states", type=_positive, default=default_cap,
                        help="memo entry cap (env YAMANIM_MAX_STATES)")
    sub = parser.add_subparsers(dest="command", required=True)

    def board_cmd(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("board", help="JSON board file")
        p.add_argument("tokens", nargs="*", type=_nonneg,
                       help="token counts in file vertex order (default: tokens in file)")
        p.set_defaults(func=func)
        return p

    board_cmd("sg", cmd_sg, "Sprague-Grundy value of a position")
    p = board_cmd("outcome", cmd_outcome, "P or N")
    p.add_argument("--move", action="store_true", help="also print a winning move")
    p = board_cmd("classify", cmd_classify, "closed-form classification")
    p.add_argument("--verify", action="store_true", help="cross-check by brute force")

    p = sub.add_parser("yama", help="two-pile Yama Nim: 'yama X Y' or 'yama table B'")
    p.add_argument("values", nargs=2)
    p.set_defaults(func=cmd_yama)

    p = sub.add_parser("reduce", help="build the reduction graph of a positive CNF")
    p.add_argument("cnf")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("poscnf", help="winner of the variable-selection game")
    p.add_argument("cnf")
    p.set_defaults(func=cmd_poscnf)

    p = sub.add_parser("check-reduction", help="audit, move parity and winner equivalence")
    p.add_argument("cnf")
    p.set_defaults(func=cmd_check_reduction)

    p = sub.add_parser("verify", help="run a brute-force verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("bounds", nargs="*", type=_nonneg)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, BoardFormatError, GraphError, PosCnfError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
