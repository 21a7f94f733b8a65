from .harness import (
    CellAccount,
    EmptyInput,
    ExperimentSpec,
    LatencySample,
    ServiceUnavailable,
    check_monotone,
    monotonicity_violations,
    p95,
    run_cell,
    run_experiment,
    summarize,
)

__all__ = [
    "CellAccount",
    "EmptyInput",
    "ExperimentSpec",
    "LatencySample",
    "ServiceUnavailable",
    "check_monotone",
    "monotonicity_violations",
    "p95",
    "run_cell",
    "run_experiment",
    "summarize",
]
