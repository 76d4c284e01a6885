"""Command-line interface.

    alciota prove [--logic L] [--ontology FILE] [--timeout 10s] [--no-cut] [--emit-model FILE] CONCEPT
    alciota eval --concept C MODEL
    alciota bisim [--logic alc|alcil|alci] I.model J.model
    alciota translate --mode exp|poly|internalize-l|internalize-g|fo2|counter ...
    alciota generate [--atoms 10..200] [--gd-frac F] ... [--count N --out DIR]
    alciota bench DIR [--runs 5] [--timeout 10s] [--csv FILE]

CONCEPT is either a file or the concept text itself. ``prove`` exits 0 for
sat, 1 for unsat and 2 on timeout or error. Usage errors exit 64, internal
errors 70.

The fo2 translation is printed in ASCII: ``~``, ``&``, ``|``, ``->``, ``=``,
``exists y``, ``forall y``, ``true``, ``false``.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import bench as bench_mod
from .bisim import max_bisim_alc, max_bisim_alci, max_bisim_alcil
from .generator import GenParams, ParameterError, generate, generate_dataset
from .semantics import InterpretationError, eval_concept, parse_interpretation, print_interpretation
from .syntax import Ontology, ParseError, parse_concept, parse_ontology, print_concept, print_ontology
from .tableau import CapExceeded, LogicError, ProofTimeout, ProverConfig, prove
from .translate import (
    TranslationError,
    counter_concept,
    internalize_tbox,
    local_to_global_exp,
    poly_translate,
    standard_translation,
)

EX_USAGE = 64
EX_SOFTWARE = 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def parse_duration(text: str) -> float:
    m = re.fullmatch(r"\s*([0-9]*\.?[0-9]+)\s*(ms|s|m)?\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"bad duration {text!r}")
    value = float(m.group(1))
    return value * {"ms": 0.001, "s": 1.0, "m": 60.0, None: 1.0}[m.group(2)]


def parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"bad range {text!r}, expected N or LO..HI")
    lo = int(m.group(1))
    return lo, int(m.group(2) or lo)


def _concept_arg(parts: list[str]):
    text = " ".join(parts)
    if len(parts) == 1 and os.path.isfile(parts[0]):
        text = Path(parts[0]).read_text()
    return parse_concept(text)


def _ontology_arg(path: str | None) -> Ontology | None:
    return None if path is None else parse_ontology(Path(path).read_text())


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    elif text:
        print(text)


def cmd_prove(args) -> int:
    try:
        c = _concept_arg(args.concept)
        o = _ontology_arg(args.ontology)
        cfg = ProverConfig(logic=args.logic, enable_cut=not args.no_cut, timeout=args.timeout)
        result = prove(c, o, cfg)
    except ProofTimeout:
        _emit(args, {"verdict": "timeout"}, "timeout")
        return 2
    except (ParseError, LogicError, CapExceeded, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    stats = result.stats
    payload = {
        "verdict": result.verdict,
        "branches": stats.branches,
        "max_individuals": stats.max_individuals,
        "seconds": stats.seconds,
        "rules": dict(stats.rules),
    }
    if result.sat:
        payload["root"] = result.root
        payload["model_checked"] = result.model_checked
        if args.emit_model:
            Path(args.emit_model).write_text(print_interpretation(result.model))
    _emit(args, payload, result.verdict)
    return 0 if result.sat else 1


def cmd_eval(args) -> int:
    I = parse_interpretation(Path(args.model).read_text())
    c = parse_concept(args.concept)
    ext = eval_concept(c, I)
    elems = [d for d in I.domain if d in ext]
    _emit(args, {"extension": elems}, " ".join(elems))
    return 0


def cmd_bisim(args) -> int:
    I = parse_interpretation(Path(args.left).read_text())
    J = parse_interpretation(Path(args.right).read_text())
    fn = {"alc": max_bisim_alc, "alcil": max_bisim_alcil, "alci": max_bisim_alci}[args.logic]
    Z = fn(I, J)
    text = "\n".join(f"{d} {e}" for d, e in Z.pairs) if Z else "EMPTY"
    _emit(args, {"pairs": [list(p) for p in Z.pairs]}, text)
    return 0


def cmd_translate(args) -> int:
    mode = args.mode
    if mode == "counter":
        if args.n is None:
            raise UsageError("counter needs --n")
        out = print_concept(counter_concept(args.n))
        _emit(args, {"concept": out}, out)
        return 0
    if not args.concept:
        raise UsageError(f"{mode} needs a concept")
    c = _concept_arg(args.concept)
    o = _ontology_arg(args.ontology)
    if mode == "exp":
        out = print_concept(local_to_global_exp(c).concept)
        _emit(args, {"concept": out}, out)
    elif mode == "poly":
        concept, onto, names = poly_translate(c, o)
        _emit(
            args,
            {"concept": print_concept(concept), "ontology": print_ontology(onto), "fresh": list(names)},
            print_concept(concept) + "\n" + print_ontology(onto).rstrip("\n"),
        )
    elif mode in ("internalize-l", "internalize-g"):
        if o is not None and o.abox:
            raise UsageError("internalization takes a TBox only")
        target = "alcil" if mode.endswith("l") else "alcig"
        out = print_concept(internalize_tbox(c, o.tbox if o else (), target))
        _emit(args, {"concept": out}, out)
    elif mode == "fo2":
        out = standard_translation(c, args.var)
        _emit(args, {"formula": out}, out)
    return 0


def _gen_params(args, seed: int) -> GenParams:
    return GenParams(
        atom_occurrences=args.atoms,
        distinct_atom_fraction=args.distinct_frac,
        exists_fraction=args.exists_frac,
        gd_fraction=args.gd_frac,
        ld_fraction=args.ld_frac,
        negation_probability=args.neg_prob,
        seed=seed,
    )


def cmd_generate(args) -> int:
    template = _gen_params(args, args.seed)
    if args.out:
        reports = generate_dataset(template, args.count, args.seed, args.out)
        _emit(args, {"count": len(reports), "out": args.out}, f"wrote {len(reports)} concepts to {args.out}")
        return 0
    rows = []
    for i in range(args.count):
        r = generate(_gen_params(args, args.seed + i))
        rows.append({**r.manifest_row(), "concept": print_concept(r.concept)})
        if not args.json:
            print(print_concept(r.concept))
    if args.json:
        print(json.dumps(rows))
    return 0


def cmd_bench(args) -> int:
    cfg = bench_mod.BenchConfig(
        runs=args.runs,
        timeout=args.timeout,
        exclude_trivial=not args.include_trivial,
        workers=args.workers,
        logic=args.logic,
    )
    rows, summary = bench_mod.bench(args.dataset, cfg, args.csv)
    if args.json:
        print(
            json.dumps(
                {
                    "summary": bench_mod.summary_dict(summary),
                    "rows": [{**r.csv_row(), "runs_ms": r.runs_ms} for r in rows],
                }
            )
        )
    else:
        avg = "-" if summary.avg_s is None else f"{summary.avg_s:.3f}s"
        std = "-" if summary.std_s is None else f"{summary.std_s:.3f}s"
        print(f"concepts {summary.count}  measured {summary.measured}  avg {avg}  std {std}  timeouts {summary.timeouts}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="alciota", description="Reasoning with definite descriptions in ALC.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = common(sub.add_parser("prove", help="decide satisfiability"))
    sp.add_argument("--logic", choices=("alcil", "alcig", "alci"), default="alci")
    sp.add_argument("--ontology")
    sp.add_argument("--timeout", type=parse_duration, default=None)
    sp.add_argument("--no-cut", action="store_true", help="disable the cut rules (incomplete)")
    sp.add_argument("--emit-model", metavar="FILE")
    sp.add_argument("concept", nargs="+")
    sp.set_defaults(func=cmd_prove)

    sp = common(sub.add_parser("eval", help="extension of a concept in a model"))
    sp.add_argument("--concept", required=True)
    sp.add_argument("model")
    sp.set_defaults(func=cmd_eval)

    sp = common(sub.add_parser("bisim", help="maximal bisimulation between two models"))
    sp.add_argument("--logic", choices=("alc", "alcil", "alci"), default="alci")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(func=cmd_bisim)

    sp = common(sub.add_parser("translate", help="concept translations"))
    sp.add_argument("--mode", required=True, choices=("exp", "poly", "internalize-l", "internalize-g", "fo2", "counter"))
    sp.add_argument("--ontology")
    sp.add_argument("--n", type=int)
    sp.add_argument("--var", choices=("x", "y"), default="x")
    sp.add_argument("concept", nargs="*")
    sp.set_defaults(func=cmd_translate)

    sp = common(sub.add_parser("generate", help="random concepts"))
    sp.add_argument("--atoms", type=parse_range, default=(10, 200))
    sp.add_argument("--gd-frac", type=float, default=0.0)
    sp.add_argument("--ld-frac", type=float, default=0.0)
    sp.add_argument("--exists-frac", type=float, default=0.3)
    sp.add_argument("--distinct-frac", type=float, default=0.5)
    sp.add_argument("--neg-prob", type=float, default=0.5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_generate)

    sp = common(sub.add_parser("bench", help="timed runs over a dataset directory"))
    sp.add_argument("dataset")
    sp.add_argument("--runs", type=int, default=5)
    sp.add_argument("--timeout", type=parse_duration, default=10.0)
    sp.add_argument("--csv")
    sp.add_argument("--include-trivial", action="store_true")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--logic", choices=("alcil", "alcig", "alci"), default="alci")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, InterpretationError, TranslationError, ParameterError,
            bench_mod.DatasetError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EX_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
