"""Command-line front end: ``hamrev models|revise|table|explain|check|matrix``.

Exit codes: 0 success, 1 usage or input error, 2 a sweep disagrees with the
claimed postulate matrix.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .constructions import explain, trace_agrees, verify_trace
from .logic import MAX_ATOMS, LimitError, Signature, SignatureError, interp_text, models
from .metrics import build_table
from .operators import DALAL, DMAX, SMAX, OperatorKind, revise_by_models
from .postulates import PostulateId, SweepLimits, check_operator, render_matrix
from .syntax import FormulaError, ParseError, parse_formula, to_text

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DIVERGENCE = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _user_signature(spec: str | None) -> Signature | None:
    if spec is None:
        return None
    try:
        return Signature.of(spec)
    except SignatureError as e:
        raise UsageError(f"--atoms: {e}") from None


def _parse(text: str, sig: Signature | None):
    try:
        return parse_formula(text, atoms=None if sig is None else sig.atoms)
    except ParseError as e:
        raise UsageError(f"{e}\n{e.caret()}") from None
    except FormulaError as e:
        pos = getattr(e, "position", None)
        msg = str(e)
        if sig is not None and "unknown atom" in msg:
            msg += f" (signature is {', '.join(sig.atoms)})"
        if pos is not None:
            msg += f"\n{text}\n{' ' * pos}^"
        raise UsageError(msg) from None


def _formulas(texts: Sequence[str], atoms: str | None):
    override = _user_signature(atoms)
    fs = [_parse(t, override) for t in texts]
    sig = override if override is not None else Signature.from_formulas(*fs)
    if sig.n > MAX_ATOMS:
        raise UsageError(f"signature has {sig.n} atoms; the cap is {MAX_ATOMS}")
    return sig, fs


def _size(atoms: str | None, default: int = 3) -> int:
    if atoms is None:
        return default
    if atoms.strip().isdigit():
        return int(atoms)
    return _user_signature(atoms).n


# ---------------------------------------------------------------- commands


def cmd_models(args) -> int:
    sig, (f,) = _formulas([args.formula], args.atoms)
    m = models(f, sig)
    if args.json:
        print(_dump({"signature": list(sig.atoms), "models": m.to_json()}))
    else:
        for w in m:
            print(interp_text(sig, w.bits, args.ascii))
    return EXIT_OK


def _operands(args):
    sig, (phi, mu) = _formulas([args.phi, args.mu], args.atoms)
    return sig, models(phi, sig), models(mu, sig)


def cmd_revise(args) -> int:
    kind = OperatorKind.parse(args.op)
    sig, phi, mu = _operands(args)
    res = revise_by_models(kind, phi, mu)
    if args.json:
        print(_dump(res.to_json()))
        return EXIT_OK
    print(f"operator: {kind.label}")
    print(f"signature: {', '.join(sig.atoms)}")
    print(f"models: {res.models.text(args.ascii)}")
    print(f"formula: {to_text(res.formula, ascii=args.ascii)}")
    if res.degenerate:
        print("note: the prior is inconsistent, so every model of the new information is kept")
    return EXIT_OK


def cmd_table(args) -> int:
    sig, phi, mu = _operands(args)
    kind = args.kind or ("surprise" if args.op == "smax" else "distance")
    if not phi or not mu:
        raise UsageError("tables need a consistent prior and consistent new information")
    table = build_table(phi, mu, kind)
    if args.json:
        print(_dump(table.to_json()))
        return EXIT_OK
    mark = {"dalal": "min", "dmax": "max", "smax": "max"}.get(args.op) if args.op else None
    if mark == "min" and kind == "surprise":
        mark = None
    print(table.render(ascii=args.ascii, mark=mark))
    return EXIT_OK


def cmd_explain(args) -> int:
    kind = OperatorKind.parse(args.op)
    sig, phi, mu = _operands(args)
    if not phi or not mu:
        raise UsageError("explanations need a consistent prior and consistent new information")
    trace = explain(kind, phi, mu)
    direct = revise_by_models(kind, phi, mu).models
    if args.json:
        out = trace.to_json()
        out["replays"] = verify_trace(trace)
        out["direct"] = direct.to_json()
        out["agrees"] = trace_agrees(trace, phi, mu)
        print(_dump(out))
        return EXIT_OK
    print(trace.text(ascii=args.ascii))
    if not trace_agrees(trace, phi, mu):
        print(f"note: the direct {kind.value} result is {direct.text(args.ascii)}")
    return EXIT_OK


def _limits(args) -> SweepLimits:
    return SweepLimits(
        max_n=args.max_n,
        budget_ms=args.budget_ms,
        count_all=args.count_all,
        minimal=args.minimal,
        seed=args.seed,
        workers=args.workers,
    )


def _postulates(names):
    if not names:
        return None
    try:
        return [PostulateId.parse(p) for chunk in names for p in chunk.split(",") if p]
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_check(args) -> int:
    kind = OperatorKind.parse(args.op)
    n = _size(args.atoms)
    report = check_operator(kind, n, _postulates(args.postulate), _limits(args))
    if args.json:
        print(_dump(report.to_json()))
    else:
        print(report.text(ascii=args.ascii))
    return EXIT_DIVERGENCE if report.divergences else EXIT_OK


def cmd_matrix(args) -> int:
    n = _size(args.atoms)
    limits = _limits(args)
    ps = _postulates(args.postulate)
    reports = [check_operator(kind, n, ps, limits) for kind in (DALAL, DMAX, SMAX)]
    if args.json:
        print(_dump({"signature_size": n, "operators": [r.to_json() for r in reports]}))
    else:
        print(f"postulate matrix over {n} atoms")
        print(render_matrix(reports, ascii=args.ascii))
        for r in reports:
            for o in r.outcomes.values():
                if o.counterexample is not None and o.expected is not None:
                    print(o.counterexample.text(args.ascii))
        total = sum(r.wall_time for r in reports)
        print(f"wall time {total:.1f}s", file=sys.stderr)
    divergent = [f"{r.operator.value} x {o.postulate.value}" for r in reports for o in r.divergences]
    if divergent:
        print("diverges from the claimed matrix: " + ", ".join(divergent), file=sys.stderr)
        return EXIT_DIVERGENCE
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--atoms", help="signature, e.g. 'a,b,c' (for check/matrix also a size such as 3)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--ascii", action="store_true", help="ASCII-only output")

    ops = [k.value for k in OperatorKind]
    parser = _Parser(prog="hamrev", description="Hamming-distance belief revision")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("models", parents=[common], help="list the models of a formula")
    p.add_argument("formula")
    p.set_defaults(func=cmd_models)

    for name, func, helptext in (
        ("revise", cmd_revise, "revise a prior by new information"),
        ("table", cmd_table, "distance or surprise table"),
        ("explain", cmd_explain, "step-by-step derivation through flips"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("phi", help="prior beliefs")
        p.add_argument("mu", help="new information")
        if name == "table":
            p.add_argument("--op", choices=ops, help="mark the aggregate this operator minimizes")
            p.add_argument("--kind", choices=["distance", "surprise"])
        else:
            p.add_argument("--op", choices=ops, default="dalal")
        p.set_defaults(func=func)

    sweep_opts = argparse.ArgumentParser(add_help=False)
    sweep_opts.add_argument("--postulate", "-p", action="append", help="postulate(s) to check, e.g. R2 or R5,R6")
    sweep_opts.add_argument("--max-n", type=int, default=4, help="refuse sweeps above this signature size")
    sweep_opts.add_argument("--budget-ms", type=int, default=None, help="stop each sweep after this many ms")
    sweep_opts.add_argument("--seed", type=int, default=0, help="seed for sampled renamings")
    sweep_opts.add_argument("--count-all", action="store_true", help="count every violation instead of stopping")
    sweep_opts.add_argument("--minimal", action="store_true", help="report a smallest counterexample")
    sweep_opts.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("check", parents=[common, sweep_opts], help="sweep postulates for one operator")
    p.add_argument("--op", choices=ops, required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("matrix", parents=[common, sweep_opts], help="sweep all operators and postulates")
    p.set_defaults(func=cmd_matrix)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, LimitError, SignatureError, FormulaError, ValueError) as e:
        print(f"hamrev {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
