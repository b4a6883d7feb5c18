"""Command-line entry point for the experiment harness."""

from __future__ import annotations

import argparse
import sys

from .config import SystemConfig, load_config, full_scale_config
from .experiments import (DEMO, NMSE_VS_PILOT, RATE_VS_PILOT, RATE_VS_POWER,
                          ExperimentSpec, run_experiment, write_csv)

_SWEEPS = {
    NMSE_VS_PILOT: (10, 15, 20, 25, 30),
    RATE_VS_PILOT: (10, 15, 20, 25, 30, 40),
    RATE_VS_POWER: (20, 25, 30, 35, 40),
    DEMO: (),
}

_SUBCOMMANDS = {
    "nmse-sweep": NMSE_VS_PILOT,
    "rate-vs-pilot": RATE_VS_PILOT,
    "rate-vs-power": RATE_VS_POWER,
    "demo": DEMO,
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH",
                        help="key=value file overriding configuration fields")
    parser.add_argument("--seed", type=int, default=1, metavar="U64",
                        help="master seed (default 1)")
    parser.add_argument("--trials", type=int, default=None, metavar="N",
                        help="Monte Carlo trials (default 200, 1000 at full scale)")
    parser.add_argument("--out", metavar="PATH",
                        help="output path (default <experiment>.csv)")
    parser.add_argument("--paper-scale", action="store_true",
                        help="use the full-scale configuration (M=64, K=50, L=5)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="damsim",
        description="Delay-aligned link experiments: estimation NMSE and "
                    "achievable-rate sweeps written as CSV.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("nmse-sweep", help="estimation NMSE versus pilot length")
    sub.add_parser("rate-vs-pilot", help="achievable rate versus pilot length")
    sub.add_parser("rate-vs-power", help="achievable rate versus transmit power")
    sub.add_parser("demo", help="single-realization textual walkthrough")
    for name in _SUBCOMMANDS:
        _add_common(sub.choices[name])
    return parser


def _resolve_config(args) -> SystemConfig:
    base = full_scale_config() if args.paper_scale else SystemConfig()
    if args.config:
        return load_config(args.config, base=base)
    return base


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    experiment = _SUBCOMMANDS[args.command]
    try:
        cfg = _resolve_config(args)
        trials = args.trials
        if trials is None:
            trials = 1000 if args.paper_scale else 200
        spec = ExperimentSpec(experiment=experiment, sweep=_SWEEPS[experiment],
                              trials=trials, master_seed=args.seed, config=cfg,
                              out=args.out)
        result = run_experiment(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if experiment == DEMO:
        if spec.out:
            with open(spec.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(result)
        else:
            sys.stdout.write(result)
        return 0
    out = spec.out if spec.out else f"{experiment}.csv"
    write_csv(result, out)
    print(f"wrote {len(result)} rows to {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
