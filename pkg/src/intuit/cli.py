"""Command-line interface.

Exit status: 0 provable / accepting / valid, 1 unprovable / rejecting /
invalid, 2 input error.  Inputs are literal text, a file name, or ``-``
for stdin; lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .automata import (
    AutomatonSyntaxError,
    accepts,
    check_witness,
    format_automaton,
    format_witness,
    parse_automaton,
    parse_configuration,
    validate,
)
from .formula import Formula, implies, print_formula, target, Var
from .fragments import classify
from .kripke import countermodel_search, format_model, parse_model, refutes
from .parsing import ParseError, parse_formula, parse_sequent, parse_term, strip_comments
from .prover import prove, prove_iipc
from .reductions.classical import classical_order3
from .reductions.cnf import DimacsError, cnf_to_conp_context, cnf_to_np_formula, parse_dimacs
from .reductions.ipc import ipc_to_automaton, ipc_to_iipc3
from .terms import Context, TypeCheckError, check, is_long_normal, print_term


class InputError(Exception):
    pass


class Report:
    def __init__(self, command: str) -> None:
        self.command = command
        self.lines: list[str] = []
        self.data: dict = {}
        self.code = 0

    def say(self, line: str = "") -> None:
        self.lines.append(line)


def _read(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    path = Path(source)
    try:
        if path.is_file():
            return path.read_text()
    except OSError:
        pass
    return source


def _text(source: str) -> str:
    return " ".join(strip_comments(_read(source)).splitlines())


def _sequent(source: str) -> tuple[Context, Formula]:
    hyps, goal = parse_sequent(_text(source))
    return Context((f"a{i}", f) for i, f in enumerate(hyps)), goal


def _formula(source: str) -> Formula:
    ctx, goal = _sequent(source)
    return implies(ctx.formulas(), goal)


def _sequent_text(ctx: Context, goal: Formula) -> str:
    hyps = ", ".join(print_formula(f) for f in ctx.formulas())
    return f"{hyps} |- {print_formula(goal)}" if hyps else print_formula(goal)


def _transcript(ctx: Context, goal: Formula, body: list[str]) -> list[str]:
    lines = ["begin transcript"]
    lines += [f"hyp {name}: {print_formula(f)}" for name, f in ctx.items()]
    lines.append(f"goal: {print_formula(goal)}")
    return lines + body + ["end transcript"]


# -- commands ------------------------------------------------------------------------


def cmd_prove(args, r: Report) -> None:
    ctx, goal = _sequent(args.input)
    r.data["sequent"] = _sequent_text(ctx, goal)
    if args.fragment == "iipc":
        try:
            result = prove_iipc(ctx, goal)
        except ValueError as e:
            raise InputError(str(e)) from None
    else:
        result = prove(ctx, goal)
    r.data["provable"] = result.provable
    r.data["visited"] = result.stats.visited
    if result.provable:
        r.say("provable")
        if args.term:
            term = print_term(result.witness)
            r.data["witness"] = term
            r.say(f"witness: {term}")
            r.lines += _transcript(ctx, goal, [f"term: {term}"])
        return
    r.code = 1
    r.say("unprovable")
    if args.refute is None:
        return
    found = countermodel_search(ctx, goal, args.refute)
    if found is None:
        r.data["countermodel"] = None
        r.say(f"no countermodel with at most {args.refute} states")
        return
    m, root = found
    text = format_model(m)
    r.data["countermodel"] = {"model": text.splitlines(), "root": root, "states": len(m.states)}
    r.say(f"countermodel ({len(m.states)} states, refuted at {root}):")
    r.lines += ["  " + line for line in text.splitlines()]
    r.lines += _transcript(ctx, goal, ["model: " + "; ".join(text.splitlines()), f"root: {root}"])


def cmd_check(args, r: Report) -> None:
    items = []
    for h in args.hyp:
        name, sep, body = h.partition(":")
        if not sep or not name.strip():
            raise InputError(f"expected NAME:FORMULA, got {h!r}")
        items.append((name.strip(), parse_formula(body)))
    try:
        ctx = Context(items)
    except ValueError as e:
        raise InputError(str(e)) from None
    term = parse_term(_text(args.term))
    goal = parse_formula(_text(args.formula))
    try:
        check(ctx, term, goal)
    except TypeCheckError as e:
        r.code = 1
        r.data["welltyped"] = False
        r.data["error"] = str(e)
        r.say(f"type error: {e}")
        return
    lnf = is_long_normal(ctx, term, goal)
    r.data.update(welltyped=True, long_normal=lnf)
    r.say("ok")
    r.say(f"long normal: {'yes' if lnf else 'no'}")


def cmd_reduce(args, r: Report) -> None:
    phi = _formula(args.input)
    if args.to == "iipc3":
        out = print_formula(ipc_to_iipc3(phi))
    elif args.to == "automaton":
        a, init = ipc_to_automaton(phi)
        out = format_automaton(a, init).rstrip("\n")
    else:
        if not isinstance(target(phi), Var):
            raise InputError("classical3 needs a formula whose target is a variable")
        out = print_formula(classical_order3(phi))
    r.data["output"] = out
    r.lines += out.splitlines()


def cmd_encode(args, r: Report) -> None:
    try:
        psi = parse_dimacs(_read(args.file), pad=args.pad)
        if args.mode == "np":
            out = [print_formula(cnf_to_np_formula(psi))]
        else:
            ctx, goal = cnf_to_conp_context(psi)
            out = [f"# {name} = {print_formula(f)}" for name, f in ctx.items()]
            out.append(_sequent_text(ctx, goal))
    except (DimacsError, ValueError) as e:
        raise InputError(str(e)) from None
    r.data["output"] = out
    r.lines += out


def _automaton(args):
    try:
        a, init = parse_automaton(_read(args.file))
        if args.init is not None:
            init = parse_configuration(args.init)
    except AutomatonSyntaxError as e:
        raise InputError(str(e)) from None
    return a, init


def cmd_automaton(args, r: Report) -> None:
    a, init = _automaton(args)
    defects = validate(a, init)
    if args.action == "validate":
        r.data["defects"] = defects
        if defects:
            r.code = 1
            r.lines += defects
        else:
            r.say("no defects")
        return
    if init is None:
        raise InputError("no initial configuration: add an 'init:' line or pass --init")
    if defects:
        raise InputError("; ".join(defects))
    result = accepts(a, init, witness=args.witness)
    r.data["accepting"] = result.accepting
    r.code = 0 if result.accepting else 1
    r.say("accepting" if result.accepting else "rejecting")
    if args.witness and result.witness is not None:
        problems = check_witness(a, result.witness)
        text = format_witness(result.witness, a).rstrip("\n")
        r.data["witness"] = text.splitlines()
        r.data["witness_consistent"] = not problems
        r.lines += text.splitlines()
        r.say("witness consistent" if not problems else "witness INCONSISTENT: " + "; ".join(problems))


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def cmd_classify(args, r: Report) -> None:
    f = _formula(args.input)
    c = classify(f)
    r.data.update(
        implicational=c.is_implicational,
        order=c.order,
        T1=c.in_T1m,
        T2=c.in_T2m,
        T3=c.in_T3m,
        data=sorted(c.data_atoms) if c.data_atoms is not None else None,
        control=sorted(c.control_atoms) if c.control_atoms is not None else None,
        order_two_plus=c.in_order_two_plus,
    )
    r.say(f"implicational: {_yes(c.is_implicational)}")
    if c.order is not None:
        r.say(f"order: {c.order}")
    for name, flag in (("T1-", c.in_T1m), ("T2-", c.in_T2m), ("T3-", c.in_T3m)):
        r.say(f"{name}: {_yes(flag)}")
    if c.data_atoms is not None:
        r.say(f"data: {' '.join(sorted(c.data_atoms))}")
        r.say(f"control: {' '.join(sorted(c.control_atoms))}")
    r.say(f"order-two-plus: {_yes(c.in_order_two_plus)}")


def cmd_verify(args, r: Report) -> None:
    """Re-check every transcript block in the input."""
    blocks: list[list[str]] = []
    current: Optional[list[str]] = None
    for line in _read(args.file).splitlines():
        line = line.strip()
        if line == "begin transcript":
            current = []
        elif line == "end transcript" and current is not None:
            blocks.append(current)
            current = None
        elif current is not None:
            current.append(line)
    if not blocks:
        raise InputError("no transcript block found")
    results = []
    for block in blocks:
        items, goal, term, model, root = [], None, None, None, None
        for line in block:
            key, _, value = line.partition(":")
            if key.startswith("hyp "):
                items.append((key[4:].strip(), parse_formula(value)))
            elif key == "goal":
                goal = parse_formula(value)
            elif key == "term":
                term = parse_term(value)
            elif key == "model":
                model = value
            elif key == "root":
                root = value.strip()
            else:
                raise InputError(f"unexpected transcript line {line!r}")
        if goal is None or (term is None) == (model is None):
            raise InputError("a transcript needs a goal and exactly one of term or model")
        ctx = Context(items)
        if term is not None:
            try:
                check(ctx, term, goal)
                ok = True
            except TypeCheckError:
                ok = False
            kind = "proof"
        else:
            try:
                m, _ = parse_model(model)
            except ValueError as e:
                raise InputError(str(e)) from None
            ok = root in m.states and refutes(m, root, ctx, goal)
            kind = "countermodel"
        results.append(ok)
        r.say(f"{kind} for {_sequent_text(ctx, goal)}: {'verified' if ok else 'FAILED'}")
    r.data["verified"] = results
    r.code = 0 if all(results) else 1


# -- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    p = argparse.ArgumentParser(prog="intuit", description="Intuitionistic propositional logic toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("prove", parents=[common], help="decide a formula or sequent 'A, B |- C'")
    s.add_argument("input")
    s.add_argument("--term", action="store_true", help="print a long normal proof term")
    s.add_argument("--refute", type=int, nargs="?", const=4, metavar="N", help="look for a countermodel (default N=4)")
    s.add_argument("--fragment", choices=["ipc", "iipc"], default="ipc")
    s.set_defaults(run=cmd_prove)

    s = sub.add_parser("check", parents=[common], help="type-check a proof term")
    s.add_argument("term")
    s.add_argument("formula")
    s.add_argument("--hyp", action="append", default=[], metavar="NAME:FORMULA")
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("reduce", parents=[common], help="translate a formula")
    s.add_argument("input")
    s.add_argument("--to", choices=["iipc3", "automaton", "classical3"], required=True)
    s.set_defaults(run=cmd_reduce)

    s = sub.add_parser("encode", parents=[common], help="encode a DIMACS 3-CNF instance")
    s.add_argument("file")
    s.add_argument("--mode", choices=["np", "conp"], required=True)
    s.add_argument("--pad", action="store_true", help="pad short clauses by repeating the last literal")
    s.set_defaults(run=cmd_encode)

    s = sub.add_parser("automaton", parents=[common], help="run or validate an automaton file")
    s.add_argument("action", choices=["run", "validate"])
    s.add_argument("file")
    s.add_argument("--init", metavar="'STATE {R1, R2}'", help="override the initial configuration")
    s.add_argument("--witness", action="store_true", help="print an accepting witness tree")
    s.set_defaults(run=cmd_automaton)

    s = sub.add_parser("classify", parents=[common], help="report fragment membership")
    s.add_argument("input")
    s.set_defaults(run=cmd_classify)

    s = sub.add_parser("verify", parents=[common], help="re-check transcript blocks")
    s.add_argument("file")
    s.set_defaults(run=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    r = Report(args.command)
    try:
        args.run(args, r)
    except (InputError, ParseError, ValueError) as e:
        if args.json:
            print(json.dumps({"command": r.command, "exit": 2, "error": str(e)}, sort_keys=True))
        else:
            print(f"error: {e}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps({"command": r.command, "exit": r.code, **r.data}, sort_keys=True, indent=2))
    else:
        for line in r.lines:
            print(line)
    return r.code


if __name__ == "__main__":
    sys.exit(main())
