"""Command-line entry point: ``zslab simulate|sweep|verify|plot``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import experiments, outputs, plots
from .game import AssumptionError

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VERIFY = 2


def _simulate(args) -> int:
    cfg = experiments.parse_run_config(experiments.read_json(args.config), Path(args.config).parent)
    res = experiments.run_simulation(cfg)
    print(f"T={cfg.iterations} eta={cfg.eta:g} boundary={res.boundary} partitions={res.partitions}")
    for name, path in res.files.items():
        print(f"  {name}: {path}")
    return EXIT_OK


def _sweep(args) -> int:
    tasks, out = experiments.parse_sweep_config(experiments.read_json(args.config), Path(args.config).parent)
    rows, path = experiments.run_sweep(tasks, out)
    failed = sum(1 for r in rows if r["error"])
    print(f"{len(rows)} runs ({failed} failed) -> {path}")
    return EXIT_OK


def _verify(args) -> int:
    suite = experiments.SUITES[args.suite]
    kwargs = {}
    if args.t_max is not None:
        if args.suite != "pennies":
            raise experiments.ConfigError("--t-max only applies to the pennies suite")
        kwargs["t_max"] = args.t_max
    if args.iterations is not None:
        if args.suite not in ("energy", "partitions"):
            raise experiments.ConfigError("--iterations only applies to the energy and partitions suites")
        kwargs["T"] = args.iterations
    if args.samples is not None:
        key = {"projection": "samples", "energy": "points"}.get(args.suite)
        if key is None:
            raise experiments.ConfigError("--samples only applies to the projection and energy suites")
        kwargs[key] = args.samples
    result = suite(**kwargs)
    print(result.report())
    return EXIT_OK if result.passed else EXIT_VERIFY


def _plot(args) -> int:
    try:
        data = outputs.read_columns(args.input)
    except OSError as exc:
        raise experiments.ConfigError(f"{args.input}: {exc.strerror}") from None
    path = plots.plot_kind(data, args.kind, args.out)
    print(path)
    return EXIT_OK


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zslab", description="Gradient descent dynamics in 2x2 zero-sum games.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="run one configuration and write CSVs and SVGs")
    s.add_argument("--config", required=True)
    s.set_defaults(func=_simulate)

    s = sub.add_parser("sweep", help="run a grid of games, step sizes and seeds")
    s.add_argument("--config", required=True)
    s.set_defaults(func=_sweep)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite", choices=sorted(experiments.SUITES))
    s.add_argument("--t-max", type=_positive_int, default=None)
    s.add_argument("--iterations", type=_positive_int, default=None)
    s.add_argument("--samples", type=_positive_int, default=None)
    s.set_defaults(func=_verify)

    s = sub.add_parser("verify-pennies", help="shorthand for 'verify pennies'")
    s.add_argument("--t-max", type=_positive_int, default=None)
    s.set_defaults(func=_verify, suite="pennies", iterations=None, samples=None)

    s = sub.add_parser("plot", help="render an SVG from a CSV written by simulate")
    s.add_argument("--input", required=True)
    s.add_argument("--kind", required=True, help="orbit, strategies or line:<column>")
    s.add_argument("--out", required=True)
    s.set_defaults(func=_plot)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (experiments.ConfigError, AssumptionError, plots.SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
