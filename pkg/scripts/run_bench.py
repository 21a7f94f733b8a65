#!/usr/bin/env python3
"""Run the default latency grid and drop results.csv in the working tree.

Same as: bench run --rates 1,5,10 --medicines 1,5,10 --window 30 --seed 7
         --out results.csv --check
"""

import sys

from carelink.bench.cli import main

if __name__ == "__main__":
    sys.exit(
        main(
            [
                "run",
                "--rates", "1,5,10",
                "--medicines", "1,5,10",
                "--window", "30",
                "--seed", "7",
                "--min-samples", "200",
                "--out", "results.csv",
                "--check",
            ]
        )
    )
