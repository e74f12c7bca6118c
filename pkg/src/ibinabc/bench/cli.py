"""``bench`` command line: run, sweep and compare."""

from __future__ import annotations

import argparse
import logging
import sys

from ibinabc.bench import reference
from ibinabc.bench.experiment import (
    ExperimentSpec,
    VariantSpec,
    run_experiment,
    summary_csv,
    sweep_variants,
    to_json,
    write_result,
)
from ibinabc.engine import VARIANTS
from ibinabc.exceptions import ConfigurationError, ParseError

EXIT_OK, EXIT_INVALID, EXIT_RUNTIME = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # bad flags are input errors, so they share exit code 1 with validation
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _split(values) -> list[str]:
    out = []
    for v in values:
        out.extend(p for p in v.split(",") if p)
    return out


def _common(p: argparse.ArgumentParser, runs_default: int = 30) -> None:
    p.add_argument("--budget", type=int, default=80_000, help="objective evaluations per run")
    p.add_argument("--runs", type=int, default=runs_default, help="repetitions per cell")
    p.add_argument("--seed", type=int, default=0, help="base seed; run k uses seed+k")
    p.add_argument("--out", help="summary output path (stdout when omitted)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--data-dir", help="directory holding OR-Library cap*.txt files")
    p.add_argument("--trace", action="store_true", help="also write convergence traces (needs --out)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bench", description="Binary ABC benchmark harness")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="repeated runs of one variant configuration")
    p.add_argument("--instances", nargs="+", required=True, help="instance names or file paths")
    p.add_argument("--variant", default="ibinabc", help=f"one of {', '.join(VARIANTS)}")
    p.add_argument("--n", type=int, help="population size")
    p.add_argument("--limit-mult", type=float, help="limit = mult * N * D")
    p.add_argument("--qstart", type=float)
    p.add_argument("--qend", type=float)
    p.add_argument("--alpha", type=int)
    p.add_argument("--theta-mode", choices=("prob", "threshold"))
    _common(p)

    p = sub.add_parser("sweep", help="24-cell ibinabc tuning grid on one instance")
    p.add_argument("--instance", required=True)
    _common(p)

    p = sub.add_parser("compare", help="variant comparison with published figures alongside")
    p.add_argument("--instances", nargs="+", required=True)
    p.add_argument("--variants", nargs="+", default=[",".join(VARIANTS)])
    _common(p)
    return parser


def _spec(args) -> ExperimentSpec:
    if args.command == "run":
        variants = [
            VariantSpec(
                name, n_sources=args.n, limit_mult=args.limit_mult, q_start=args.qstart,
                q_end=args.qend, alpha=args.alpha, theta_mode=args.theta_mode,
            )
            for name in _split([args.variant])
        ]
        instances = _split(args.instances)
    elif args.command == "sweep":
        variants, instances = sweep_variants(), [args.instance]
    else:
        variants = [VariantSpec(name) for name in _split(args.variants)]
        instances = _split(args.instances)
    return ExperimentSpec(
        instances=instances, variants=variants, repetitions=args.runs, base_seed=args.seed,
        budget=args.budget, trace=args.trace, workers=args.workers, data_dir=args.data_dir,
    )


def _fmt(v, spec=".3f") -> str:
    return "-" if v is None else format(v, spec)


def comparison_report(rows) -> str:
    """Instance-by-variant Gap/Std/Hit table with published numbers in brackets."""
    lines = [f"{'instance':<10} {'variant':<10} {'gap':>8} {'std':>14} {'hit':>4}   published gap/std"]
    for r in rows:
        pub = reference.published(r.variant, r.instance)
        ref = "-" if pub is None else f"{pub['gap']:.2f} / {pub['std']:,.2f}"
        lines.append(
            f"{r.instance:<10} {r.variant:<10} {_fmt(r.gap):>8} {_fmt(r.std, ',.2f'):>14} "
            f"{_fmt(r.hit, 'd'):>4}   [{ref}]"
        )
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        spec = _spec(args)
        if args.trace and not args.out:
            raise ConfigurationError("--trace requires --out")
        spec.validate()
    except (ConfigurationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        result = run_experiment(spec)
    except (ConfigurationError, ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"runtime failure: {exc!r}", file=sys.stderr)
        return EXIT_RUNTIME

    try:
        if args.out:
            write_result(result, args.out, args.format, trace=args.trace)
        elif args.format == "json":
            sys.stdout.write(to_json(result))
        else:
            sys.stdout.write(summary_csv(result.rows))
        if args.command == "compare":
            sys.stdout.write(comparison_report(result.rows))
    except OSError as exc:
        print(f"runtime failure: could not write output: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
