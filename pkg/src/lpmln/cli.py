"""Command-line entry point.

    lpmln -i <file> [-e <file>] [-q <preds>] [-all] [-hr] [-map]
          [-r <file>] [-clingo "<opts>"] [--mode M] [--scale N]

Mode resolution for --mode infer: -q without -e computes marginals, -q
with -e conditionals, -all lists every stable model with its probability,
otherwise a MAP estimate is printed.  --mode emit-asp-pnt / emit-asp-rwd /
emit-mln export the translations instead of running inference.

Exit codes: 0 success, 1 parse or safety error, 2 enumeration cap
exceeded, 3 inconsistent evidence / no stable models.  The environment
variable LPMLN_ATOM_CAP overrides the enumeration cap.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from pathlib import Path

from . import asp_backend, inference, mln_backend
from .engine import DEFAULT_ATOM_CAP, EnumerationCapError
from .grounder import GroundingCapError, GroundingError, ground, ground_to_program
from .model import Program, atom_sort_key, merge_programs
from .parser import LpmlnSyntaxError, parse_evidence, parse_program, parse_query_spec

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CAP = 2
EXIT_UNSAT = 3


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lpmln",
        description="Exact inference and translations for weighted answer set programs.")
    p.add_argument("-i", dest="input", required=True, metavar="FILE",
                   help="input program")
    p.add_argument("-e", dest="evidence", metavar="FILE",
                   help="evidence file (hard rules, usually constraints)")
    p.add_argument("-q", dest="query", metavar="PREDS",
                   help="comma-separated query predicate names")
    p.add_argument("-all", dest="all_models", action="store_true",
                   help="list every stable model with its probability")
    p.add_argument("-hr", dest="relax_hard", action="store_true",
                   help="rank hard rules instead of enforcing them (debugging)")
    p.add_argument("-map", dest="map_mode", action="store_true",
                   help="force MAP inference (the default mode)")
    p.add_argument("-r", dest="output", metavar="FILE",
                   help="write output here instead of stdout")
    p.add_argument("-clingo", dest="clingo_opts", metavar="OPTS",
                   help="accepted for drop-in compatibility; ignored")
    p.add_argument("--mode", choices=["infer", "emit-asp-pnt", "emit-asp-rwd", "emit-mln"],
                   default="infer")
    p.add_argument("--scale", type=int, default=inference.DEFAULT_SCALE,
                   help="integer scaling factor for weak-constraint weights")
    return p


def _fmt(p: float) -> str:
    return f"{p:.12g}"


def _atom_line(program: Program, interp, flavor: str = "penalty") -> str:
    shown = asp_backend.phi_extend(program, interp, flavor)
    source = sorted(interp, key=atom_sort_key)
    markers = sorted(shown - frozenset(interp), key=atom_sort_key)
    return " ".join(str(a) for a in source + markers)


def _render_map(program: Program, gp, hard_mode: str, cap: int, scale: int) -> str:
    result = inference.map_estimate(gp, hard_mode, cap, scale)
    lines = []
    for interp, opt in zip(result.models, result.optimizations):
        lines.append(_atom_line(program, interp))
        lines.append(f"Optimization: {opt}")
    lines.append("OPTIMUM FOUND")
    return "".join(l + "\n" for l in lines)


def _render_all(program: Program, gp, hard_mode: str, cap: int, scale: int) -> str:
    dist = inference.distribution(gp, "penalty", hard_mode, cap)
    lines = []
    for k, e in enumerate(dist.entries, start=1):
        lines.append(f"Answer: {k}")
        lines.append(_atom_line(program, e.interpretation))
        lines.append(f"Optimization: {int(round(e.weight.soft * scale))}")
    lines.append("")
    for k, e in enumerate(dist.entries, start=1):
        lines.append(f"Probability of Answer {k} : {_fmt(e.probability)}")
    return "".join(l + "\n" for l in lines)


def _render_marginal(gp, preds, hard_mode: str, cap: int, stderr) -> str:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = inference.marginal(gp, preds, "penalty", hard_mode, cap)
    for w in caught:
        print(f"warning: {w.message}", file=stderr)
    return "".join(f"{a} {_fmt(p)}\n" for a, p in result.items())


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    # strip "-clingo <opts>" up front: its value can look like an option,
    # which argparse refuses to swallow
    argv = list(argv)
    clingo_opts = None
    if "-clingo" in argv:
        at = argv.index("-clingo")
        tail = argv[at + 1:at + 2]
        clingo_opts = tail[0] if tail else ""
        del argv[at:at + 2]
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK

    cap = int(os.environ.get("LPMLN_ATOM_CAP", DEFAULT_ATOM_CAP))
    hard_mode = "relaxed" if args.relax_hard else "strict"
    if clingo_opts is not None:
        print("warning: -clingo options are accepted but ignored", file=stderr)

    try:
        program = parse_program(Path(args.input).read_text(encoding="utf-8"))
        evidence = None
        if args.evidence:
            evidence = parse_evidence(Path(args.evidence).read_text(encoding="utf-8"))
        preds = parse_query_spec(args.query) if args.query else None

        if args.mode == "emit-asp-pnt":
            tp = asp_backend.translate_penalty(program, args.scale,
                                               translate_hard=args.relax_hard)
            text = asp_backend.emit_asp_text(tp)
        elif args.mode == "emit-asp-rwd":
            gp = ground(program)
            tp = asp_backend.translate_reward(ground_to_program(gp), args.scale)
            text = asp_backend.emit_asp_text(tp)
        elif args.mode == "emit-mln":
            mln = mln_backend.tseytin(mln_backend.complete(ground(program)))
            text = mln_backend.emit_mln_text(mln)
            if args.output and mln.aux_defs:
                Path(args.output + ".aux").write_text(
                    mln_backend.aux_mapping_text(mln), encoding="utf-8")
        else:
            merged = merge_programs(program, evidence) if evidence else program
            gp = ground(merged)
            if args.map_mode or not (args.query or args.all_models):
                text = _render_map(merged, gp, hard_mode, cap, args.scale)
            elif preds is not None:
                text = _render_marginal(gp, preds, hard_mode, cap, stderr)
            else:
                text = _render_all(merged, gp, hard_mode, cap, args.scale)
    except (LpmlnSyntaxError, OSError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_INPUT
    except (GroundingCapError, EnumerationCapError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_CAP
    except GroundingError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_INPUT
    except inference.NoStableModelsError as e:
        if args.evidence:
            print("error: evidence is inconsistent with the program", file=stderr)
        else:
            print(f"error: {e}", file=stderr)
        return EXIT_UNSAT
    except ValueError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_INPUT

    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))
