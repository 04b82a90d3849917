"""Command line front end for the verification harness."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import harness, oracle, predictor
from .predictor import NotApplicable

REPORT_DIR_ENV = "ARTIFACT_REPORT_DIR"


def _int_list(text: str) -> tuple[int, ...]:
    """Parse "3,5,7" or "0-3" (inclusive) or a mix of both."""
    out: list[int] = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1) if part[0] != "-" else (part, "")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def _suites(text: str) -> tuple[str, ...]:
    names = tuple(s.strip() for s in str(text).split(",") if s.strip())
    return harness.SUITES if names == ("all",) else names


def _add_sweep_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", help="flat key=value file; flags override it")
    sp.add_argument("--p", help="primes, e.g. 3,5,7")
    sp.add_argument("--r-min", type=int)
    sp.add_argument("--r-max", type=int)
    sp.add_argument("--i", help="i values, e.g. 0-3 or 1,2")
    sp.add_argument("--suite", help=f"comma list from {', '.join(harness.SUITES)} or 'all'")
    sp.add_argument("--format", choices=("jsonl", "csv"))
    sp.add_argument("--out", help="report path; '-' for stdout")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--threads", type=int)
    sp.add_argument("--aux-prime", type=int)


def build_config(args: argparse.Namespace, default_suites: str) -> harness.SweepConfig:
    values = harness.config_from_file(args.config) if args.config else {}
    flags = {
        "p": args.p,
        "r_min": args.r_min,
        "r_max": args.r_max,
        "i": args.i,
        "suite": args.suite,
        "format": args.format,
        "out": args.out,
        "seed": args.seed,
        "threads": args.threads,
        "aux_prime": args.aux_prime,
    }
    values.update({k: v for k, v in flags.items() if v is not None})
    known = set(flags)
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    r_min = int(values.get("r_min", 1))
    return harness.SweepConfig(
        ps=_int_list(values.get("p", "3")),
        r_min=r_min,
        r_max=int(values.get("r_max", r_min)),
        i_values=_int_list(values["i"]) if "i" in values else None,
        suites=_suites(values.get("suite", default_suites)),
        fmt=values.get("format", "jsonl"),
        out=values.get("out"),
        seed=int(values.get("seed", 0)),
        aux_prime=int(values["aux_prime"]) if values.get("aux_prime") not in (None, "") else None,
        threads=int(values.get("threads", 1)),
    )


def _summary(records, stream) -> None:
    for suite, row in harness.summarize(records).items():
        counts = " ".join(f"{k}={v}" for k, v in row.items() if v)
        print(f"{suite}: {counts}", file=stream)


def cmd_verify(args: argparse.Namespace, sweep: bool = False) -> int:
    config = build_config(args, "all" if not sweep else "dims")
    if config.out is None and sweep:
        suffix = "jsonl" if config.fmt == "jsonl" else "csv"
        name = f"sweep-{'-'.join(config.suites)}-p{'-'.join(map(str, config.ps))}.{suffix}"
        config.out = str(Path(os.environ.get(REPORT_DIR_ENV, ".")) / name)
    if config.out == "-":
        config.out = None
        records, code = harness.run_verify(config, stream=sys.stdout)
    else:
        records, code = harness.run_verify(config)
    _summary(records, sys.stderr if config.out is None else sys.stdout)
    if config.out:
        print(f"report written to {config.out}", file=sys.stderr)
    return code


def cmd_dims(args: argparse.Namespace) -> int:
    p = args.p
    print("r\ti\tpredicted\tbrute")
    code = 0
    for r in range(args.r_min, args.r_max + 1):
        for i in range(p):
            try:
                want: object = predictor.dim_x_ri(r, i, p)
            except NotApplicable:
                want = "n/a"
            got = oracle.dim_x(r, i, p)
            if want not in ("n/a", got):
                code = 1
            print(f"{r}\t{i}\t{want}\t{got}")
    return code


def cmd_lattice(args: argparse.Namespace) -> int:
    text = harness.emit_lattice(args.p, args.r, args.max_i)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_qstruct(args: argparse.Namespace) -> int:
    try:
        print(harness.explain_q(args.p, args.r, args.i, compare=args.compare))
    except NotApplicable as exc:
        print(f"not-applicable: {exc}", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artifact", description="Check closed-form predictions for the monomial submodules X_{r-i} against brute force.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", help="run suites (default: all) and write a report")
    _add_sweep_flags(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="like verify, but the report goes to a file in the report directory")
    _add_sweep_flags(sp)
    sp.set_defaults(func=lambda a: cmd_verify(a, sweep=True))

    sp = sub.add_parser("dims", help="predicted and brute-force dim X_{r-i}")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r-min", type=int, required=True)
    sp.add_argument("--r-max", type=int)
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("lattice", help="DOT graph of the X_{r-i}")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--max-i", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_lattice)

    for name in ("qstruct", "explain_q"):
        sp = sub.add_parser(name, help="recursion tree for Q(i)")
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--i", type=int, required=True)
        sp.add_argument("--compare", action="store_true", help="append the oracle factors")
        sp.set_defaults(func=cmd_qstruct)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "r_max", 0) is None:
        args.r_max = args.r_min
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
