"""Command-line front end: ``abmp gen | solve | bench | verify | dq``.

Exit status: 0 when everything passes, 1 when a checked invariant or ratio
floor is violated, 2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from abmp.core import Instance
from abmp.errors import ABMPError, BadParameters, NotUniform
from abmp.generators import KINDS, GeneratorSpec, generate
from abmp.hardness import build_dq, brute_force_dq, parse_partition, partition_decider, partition_witness
from abmp.oracle import OracleResult, brute_force_allocations, brute_force_schemes
from abmp.report import RunRecord, csv_text, decimal_str, summary_rows
from abmp.textio import format_instance, read_instance
from abmp.uniform import ADVERSARIAL, FIRST_FIT, CoverPolicy, uniform_greedy
from abmp.welfare import continuous_greedy, lehmann_greedy
from abmp import verify as verify_mod

ALGORITHMS = ("exact-scheme", "exact-alloc", "greedy-uniform", "greedy-welfare", "continuous", "full-cover-best")


class UsageError(Exception):
    pass


def parse_cover(tokens: Optional[list[str]]) -> CoverPolicy:
    if not tokens:
        return FIRST_FIT
    kind = tokens[0]
    if kind == "first-fit" and len(tokens) == 1:
        return FIRST_FIT
    if kind == "adversarial" and len(tokens) == 1:
        return ADVERSARIAL
    if kind == "seeded" and len(tokens) == 2:
        return CoverPolicy.seeded(int(tokens[1]))
    raise UsageError("--cover takes first-fit, adversarial or 'seeded N'")


def parse_params(items: Optional[list[str]]) -> dict[str, list[str]]:
    """``key=v1,v2`` pairs into a dict of value lists."""
    out: dict[str, list[str]] = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--param expects key=value, got {item!r}")
        key, val = item.split("=", 1)
        out[key.strip()] = [v.strip() for v in val.split(",")]
    return out


def _coerce(key: str, val: str):
    if key in ("n", "m", "k", "seed"):
        return int(val)
    if key == "distribution":
        return val
    return Fraction(val)


def spec_from(kind: str, params: dict[str, str]) -> GeneratorSpec:
    try:
        return GeneratorSpec(kind, {k: _coerce(k, v) for k, v in params.items()})
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad generator parameter: {exc}") from None


def run_algorithm(inst: Instance, algorithm: str, args) -> tuple[OracleResult, str]:
    budget = args.budget
    if algorithm == "exact-scheme":
        return brute_force_schemes(inst, budget), f"budget={budget}"
    if algorithm == "exact-alloc":
        return brute_force_allocations(inst, budget), f"budget={budget}"
    if algorithm == "full-cover-best":
        return brute_force_schemes(inst, budget, full_cover_only=True), f"budget={budget}"
    if algorithm == "greedy-uniform":
        if not inst.uniform:
            raise NotUniform("greedy-uniform needs a uniform instance; use greedy-welfare")
        g = uniform_greedy(inst, args.cover)
        return OracleResult(g.value, g.scheme), f"cover={args.cover}"
    if algorithm == "greedy-welfare":
        return lehmann_greedy(inst, args.cover), f"cover={args.cover}"
    if algorithm == "continuous":
        res = continuous_greedy(inst, args.steps, args.samples, args.seed, args.draws)
        return res, f"steps={args.steps};samples={args.samples};draws={args.draws};seed={args.seed}"
    raise UsageError(f"unknown algorithm {algorithm!r}")


def timed(fn: Callable):
    t0 = time.perf_counter()
    out = fn()
    return out, (time.perf_counter() - t0) * 1000


def emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def load_instance(args) -> tuple[Instance, str]:
    if args.instance and args.gen:
        raise UsageError("give either an instance file or --gen, not both")
    if args.instance:
        return read_instance(args.instance), Path(args.instance).stem
    if args.gen:
        params = {k: v[0] for k, v in parse_params(args.param).items()}
        spec = spec_from(args.gen, params)
        return generate(spec), spec.label()
    raise UsageError("no instance: give a file or --gen KIND")


def cmd_gen(args) -> int:
    params = {k: v[0] for k, v in parse_params(args.param).items()}
    inst = generate(spec_from(args.kind, params))
    emit(format_instance(inst), args.out)
    return 0


def cmd_solve(args) -> int:
    inst, ident = load_instance(args)
    (res, params), ms = timed(lambda: run_algorithm(inst, args.algorithm, args))
    oracle = None
    if args.oracle:
        oracle = brute_force_allocations(inst, args.budget).value
    rec = RunRecord(ident, args.algorithm, params, res.value, oracle, ms)
    if args.format == "csv":
        emit(csv_text([rec.row()]), args.out)
    else:
        lines = [
            f"instance   {ident} ({inst.n}x{inst.m})",
            f"algorithm  {args.algorithm} [{params}]",
            f"value      {res.value} = {decimal_str(res.value)}",
        ]
        if oracle is not None:
            lines.append(f"optimum    {oracle}")
            lines.append(f"ratio      {rec.ratio} = {decimal_str(rec.ratio)}" if rec.ratio is not None else "ratio      n/a")
        if args.show_scheme:
            lines.append(res.scheme.format())
        emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_bench(args) -> int:
    grid = parse_params(args.param)
    keys = list(grid)
    algorithms = args.algorithm or ["greedy-welfare"]
    records = []
    combos = list(itertools.product(*(grid[k] for k in keys))) if keys else [()]
    for combo in combos:
        base = dict(zip(keys, combo))
        for trial in range(args.trials):
            params = dict(base)
            if args.gen == "random":
                params["seed"] = str(args.seed + trial)
            spec = spec_from(args.gen, params)
            inst = generate(spec)
            ident = f"{spec.label()}#{trial}"
            oracle = None
            if args.oracle:
                oracle = brute_force_allocations(inst, args.budget).value
            for alg in algorithms:
                if alg == "greedy-uniform" and not inst.uniform:
                    raise NotUniform(f"{ident} is not uniform")
                (res, ptxt), ms = timed(lambda: run_algorithm(inst, alg, args))
                records.append(RunRecord(ident, alg, ptxt, res.value, oracle, ms))
    rows = [r.row() for r in records] + summary_rows(records)
    emit(csv_text(rows), args.out)
    if args.floor is not None:
        floor = Fraction(args.floor)
        if any(r.ratio is not None and r.ratio < floor for r in records):
            sys.stderr.write(f"ratio below {floor}\n")
            return 1
    return 0


def cmd_verify(args) -> int:
    res = verify_mod.run(args.target, args.trials, args.seed)
    if args.format == "csv":
        emit(csv_text(res.rows, res.columns), args.out)
        sys.stderr.write(res.summary() + "\n")
    else:
        lines = [res.summary()]
        for row in res.violations[:20]:
            lines.append("  violation: " + ", ".join(f"{k}={v}" for k, v in row.items()))
        text = "\n".join(lines) + "\n"
        emit(text, args.out)
        if args.out:
            sys.stdout.write(text)
    return 0 if res.passed else 1


def cmd_dq(args) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    pi = parse_partition(text)
    best, S = brute_force_dq(build_dq(pi), args.max_items)
    verdict = partition_decider(pi, args.max_items)
    witness = partition_witness(pi, args.max_items)
    lines = [
        f"weights    {' '.join(map(str, pi.weights))} (W={pi.W})",
        f"dq_max     {best} (threshold 5/18)",
        f"verdict    {'YES' if verdict else 'NO'}",
    ]
    if witness is not None:
        lines.append("witness    " + " ".join(str(j + 1) for j in sorted(witness)))
    emit("\n".join(lines) + "\n", args.out)
    return 0


def _add_algo_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cover", nargs="+", metavar="POLICY", help="first-fit | adversarial | seeded N")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--draws", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--format", choices=("csv", "text"), default="text")
    p.add_argument("--out", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abmp", description="Asymmetric binary matrix partition solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="run one algorithm on one instance")
    p.add_argument("instance", nargs="?")
    p.add_argument("--gen", choices=KINDS)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--algorithm", "-a", choices=ALGORITHMS, default="exact-alloc")
    p.add_argument("--oracle", action="store_true", help="also compute the exact optimum")
    p.add_argument("--show-scheme", action="store_true")
    _add_algo_options(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="sweep generators x algorithms into CSV")
    p.add_argument("--gen", choices=KINDS, required=True)
    p.add_argument("--param", action="append", metavar="KEY=V1,V2", help="swept parameter values")
    p.add_argument("--algorithm", "-a", action="append", choices=ALGORITHMS)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--floor", help="exit 1 if any ratio falls below this fraction")
    _add_algo_options(p)
    p.set_defaults(func=cmd_bench, format="csv")

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("target", choices=verify_mod.TARGETS)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "text"), default="text")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dq", help="decide PARTITION through the demand-query reduction")
    p.add_argument("file", help="whitespace-separated positive integers")
    p.add_argument("--max-items", type=int, default=20)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_dq)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "cover"):
        try:
            args.cover = parse_cover(args.cover)
        except (UsageError, ValueError) as exc:
            parser.error(str(exc))
    try:
        return args.func(args)
    except (UsageError, BadParameters, ABMPError, OSError) as exc:
        sys.stderr.write(f"abmp: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
