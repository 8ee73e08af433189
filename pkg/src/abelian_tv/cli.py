"""Command-line front end.

Exit codes: 0 on success, 1 when a computation is refused (budget) or a
verification fails, 2 on invalid input.  Cycles are comma-separated integers
in cell index order; write ``--z1=-1,0`` when the first entry is negative.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import cellcomplex as cx
from .bf import BfObservable, bf_expectation, bf_partition
from .cellcomplex import CellComplex, Cycle, Side
from .cyclotomic import PhaseSum
from .homology import class_of, homology_h1, linking_form
from .reciprocity import lemma_check, reciprocity_check
from .tv import (DEFAULT_BUDGET, STRATEGIES, BudgetExceededError, closed_labeling_count,
                 count_closed_labelings, count_liftable_closed_labelings, tv_expectation)

__all__ = ["run", "main", "build_parser"]


class _InvalidInput(Exception):
    pass


class _VerificationFailed(Exception):
    pass


def _csv_ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {v}")
    return v


COMMANDS = {
    "validate": "check the structural axioms of a complex",
    "dualize": "print the dual complex as JSON",
    "homology": "first Betti number, torsion, generators and linking form",
    "tv-partition": "Turaev-Viro partition function",
    "tv-expect": "Turaev-Viro expectation value of a holonomy pair",
    "bf-partition": "BF partition function from the closed form",
    "bf-expect": "BF expectation value from the closed form",
    "reciprocity": "compare TV against the scaled BF value",
    "lemma-check": "enumerate the counting identity behind the reciprocity factor",
    "kernel-count": "number of closed labelings mod N",
}

_NEEDS_LEVEL = {"tv-partition", "tv-expect", "bf-partition", "bf-expect", "reciprocity",
                "lemma-check", "kernel-count"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("manifold")
    src.add_argument("--manifold", choices=cx.BUILTIN_NAMES)
    src.add_argument("--p", type=int, help="order of the lens space")
    src.add_argument("--file", help="complex in the JSON file format")
    common.add_argument("--level", type=_positive, help="level N")
    common.add_argument("--z1", type=_csv_ints, help="primal cycle over edges")
    common.add_argument("--z2", type=_csv_ints, help="dual cycle over faces")
    common.add_argument("--strategy", choices=STRATEGIES, default="tree")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    common.add_argument("--verify-brute", action="store_true",
                        help="also run the brute-force oracle and require agreement")
    common.add_argument("--float", action="store_true", help="append a floating-point value")

    parser = argparse.ArgumentParser(prog="abelian-tv",
                                     description="Abelian Turaev-Viro and BF invariants.")
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)
    for name, help_text in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def _resolve_complex(args) -> CellComplex:
    if (args.manifold is None) == (args.file is None):
        raise _InvalidInput("give exactly one of --manifold and --file")
    if args.file is not None:
        if args.p is not None:
            raise _InvalidInput("--p only applies to --manifold lens")
        return cx.load(args.file)
    if args.p is not None and args.manifold != "lens":
        raise _InvalidInput("--p only applies to --manifold lens")
    return cx.builtin(args.manifold, args.p)


def _cycle(c: CellComplex, values, side: Side) -> Cycle:
    if values is None:
        return Cycle.checked(c, side)
    return Cycle.checked(c, side, values)


def _value_lines(value: PhaseSum, args) -> str:
    text = value.to_text()
    if args.float:
        text += f"  ({value.to_float_text()})"
    return text


def _envelope(args, c: CellComplex | None, value: PhaseSum | None, metadata: dict) -> dict:
    out = {
        "command": args.command,
        "manifold": c.name if c is not None else None,
        "N": args.level,
        "result_exact": value.to_json_terms() if value is not None else None,
        "result_float": None,
        "metadata": metadata,
    }
    if value is not None:
        z = value.evaluate()
        out["result_float"] = [z.real, z.imag]
    return out


def _verify(args, c: CellComplex, value: PhaseSum, z1, z2) -> dict:
    if not args.verify_brute:
        return {}
    brute = tv_expectation(c, args.level, z1, z2, strategy="brute", budget=args.budget)
    if brute != value:
        raise _VerificationFailed(
            f"brute-force value {brute.to_text()} differs from {args.strategy} value {value.to_text()}")
    return {"verified_brute": True}


def _cmd_validate(args):
    if args.file is not None:
        try:
            with open(args.file) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise cx.ComplexFormatError(f"{args.file}: line {exc.lineno} column {exc.colno}: {exc.msg}")
        c = cx.from_json_dict(data)
    else:
        c = _resolve_complex(args)
    report = cx.validate(c)
    meta = {"ok": report.ok, "counts": c.counts,
            "checks": [{"name": k.name, "passed": k.passed, "detail": k.detail} for k in report.checks]}
    return c, None, meta, report.to_text(), 0 if report.ok else 2


def _cmd_dualize(args):
    c = _resolve_complex(args)
    dual = cx.dualize(c)
    data = cx.to_json_dict(dual)
    return c, None, {"dual": data}, json.dumps(data, indent=2), 0


def _cmd_homology(args):
    c = _resolve_complex(args)
    h = homology_h1(c)
    L = linking_form(h)
    meta = {
        "b1": h.b1,
        "torsion": list(h.torsion),
        "free_generators": [list(g.components) for g in h.free_generators],
        "torsion_generators_primal": [list(g.components) for g in h.torsion_generators_primal],
        "torsion_generators_dual": [list(g.components) for g in h.torsion_generators_dual],
        "linking_form": [[[q.numerator, q.denominator] for q in row] for row in L.form_matrix],
    }
    return c, None, meta, h.summary(), 0


def _cmd_tv(args, partition: bool):
    c = _resolve_complex(args)
    if partition and (args.z1 is not None or args.z2 is not None):
        raise _InvalidInput("tv-partition takes no cycles; use tv-expect")
    z1 = _cycle(c, args.z1, Side.PRIMAL)
    z2 = _cycle(c, args.z2, Side.DUAL)
    value = tv_expectation(c, args.level, z1, z2, strategy=args.strategy, budget=args.budget)
    meta = {"strategy": args.strategy, "z1": list(z1.components), "z2": list(z2.components)}
    meta.update(_verify(args, c, value, z1, z2))
    return c, value, meta, _value_lines(value, args), 0


def _cmd_bf(args, partition: bool):
    c = _resolve_complex(args)
    h = homology_h1(c)
    L = linking_form(h)
    if partition:
        if args.z1 is not None or args.z2 is not None:
            raise _InvalidInput("bf-partition takes no cycles; use bf-expect")
        value = bf_partition(h, L, args.level)
        meta = {}
    else:
        z1 = _cycle(c, args.z1, Side.PRIMAL)
        z2 = _cycle(c, args.z2, Side.DUAL)
        value = bf_expectation(h, L, BfObservable(z1, z2, args.level))
        c1, c2 = class_of(h, z1), class_of(h, z2)
        meta = {"z1": list(z1.components), "z2": list(z2.components),
                "z1_class": {"free": list(c1.free), "torsion": list(c1.torsion)},
                "z2_class": {"free": list(c2.free), "torsion": list(c2.torsion)}}
    return c, value, meta, _value_lines(value, args), 0


def _cmd_reciprocity(args):
    c = _resolve_complex(args)
    strategy = "brute" if args.verify_brute else args.strategy
    if strategy == "closed":
        raise _InvalidInput("reciprocity needs an enumerating strategy, not closed")
    report = reciprocity_check(c, args.level, _cycle(c, args.z1, Side.PRIMAL),
                               _cycle(c, args.z2, Side.DUAL), strategy=strategy, budget=args.budget)
    text = report.to_table()
    if args.float:
        text += f"\nTV (float)   {report.lhs.to_float_text()}"
    return c, report.lhs, report.to_dict(include_timings=False), text, 0 if report.equal else 1


def _cmd_lemma(args):
    c = _resolve_complex(args)
    if args.z1 is not None:
        raise _InvalidInput("lemma-check takes only --z2")
    report = lemma_check(c, args.level, _cycle(c, args.z2, Side.DUAL), budget=args.budget)
    d = report.to_dict()
    text = "\n".join(f"{k}: {v}" for k, v in d.items() if k not in ("manifold", "N"))
    return c, None, d, text, 0 if report.ok else 1


def _cmd_kernel_count(args):
    c = _resolve_complex(args)
    N = args.level
    formula = closed_labeling_count(c, N)
    meta = {"formula": formula}
    lines = [str(formula)]
    if args.verify_brute:
        lift = count_liftable_closed_labelings(c, N, budget=args.budget)
        mod_n = count_closed_labelings(c, N, budget=args.budget)
        meta.update({"liftable": lift, "mod_n": mod_n})
        lines.append(f"liftable closed labelings: {lift}")
        lines.append(f"all closed labelings mod N: {mod_n}")
        if lift != formula:
            raise _VerificationFailed(f"enumerated {lift} liftable labelings, formula gives {formula}")
    return c, PhaseSum.constant(formula), meta, "\n".join(lines), 0


_HANDLERS = {
    "validate": _cmd_validate,
    "dualize": _cmd_dualize,
    "homology": _cmd_homology,
    "tv-partition": lambda a: _cmd_tv(a, True),
    "tv-expect": lambda a: _cmd_tv(a, False),
    "bf-partition": lambda a: _cmd_bf(a, True),
    "bf-expect": lambda a: _cmd_bf(a, False),
    "reciprocity": _cmd_reciprocity,
    "lemma-check": _cmd_lemma,
    "kernel-count": _cmd_kernel_count,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command in _NEEDS_LEVEL and args.level is None:
        print(f"error: {args.command} needs --level", file=stderr)
        return 2
    try:
        c, value, meta, text, code = _HANDLERS[args.command](args)
    except BudgetExceededError as exc:
        print(f"refused: {exc}", file=stderr)
        return 1
    except _VerificationFailed as exc:
        print(f"verification failed: {exc}", file=stderr)
        return 1
    except (_InvalidInput, ValueError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    if args.format == "json":
        print(json.dumps(_envelope(args, c, value, meta), indent=2, ensure_ascii=False), file=stdout)
    else:
        print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())
