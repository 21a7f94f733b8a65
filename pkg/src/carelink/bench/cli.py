"""The bench command. `bench run --help` for the grid knobs."""

from __future__ import annotations

import argparse
import sys

from ..gsm.link import load_link_config
from .harness import ExperimentSpec, check_monotone, run_experiment, summarize


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x)


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bench", description="closed-loop latency grid")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a rate x medicines grid")
    run.add_argument("--rates", type=_floats, default=(1.0, 5.0, 10.0),
                     help="prescriptions per second, comma separated")
    run.add_argument("--medicines", type=_ints, default=(1, 5, 10),
                     help="medicines per prescription, comma separated")
    run.add_argument("--window", type=float, default=30.0,
                     help="simulated seconds per cell")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out", default="", help="write CSV here")
    run.add_argument("--poisson", action="store_true",
                     help="exponential inter-arrivals instead of fixed")
    run.add_argument("--link", default="", help="link config file (JSON)")
    run.add_argument("--min-samples", type=int, default=0,
                     help="extend each cell until it completes this many")
    run.add_argument("--format", choices=("csv", "table"), default="table",
                     help="what to print on stdout")
    run.add_argument("--check", action="store_true",
                     help="exit 2 unless the grid is monotone along both axes")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = ExperimentSpec(
        rates=args.rates,
        medicine_counts=args.medicines,
        window_s=args.window,
        link=load_link_config(args.link) if args.link else None,
        seed=args.seed,
        poisson=args.poisson,
        min_samples=args.min_samples,
    )
    samples = run_experiment(spec)
    sys.stdout.write(summarize(samples, format=args.format))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(summarize(samples, format="csv"))
    if args.check and not check_monotone(samples):
        sys.stderr.write("monotonicity self-check failed\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
