"""Performance model for serialized quantum repeaters built from qudit CSS codes."""

from ._core import (
    ErrorParams,
    PerformancePolynomial,
    approx,
    assemble_S,
    builtin_codes,
    gate_counts,
    optimize,
    preset,
    run_cli,
    simulate_node,
    table1,
    threshold,
    validate_code,
)

__all__ = [
    "ErrorParams",
    "PerformancePolynomial",
    "approx",
    "assemble_S",
    "builtin_codes",
    "gate_counts",
    "optimize",
    "preset",
    "run_cli",
    "simulate_node",
    "table1",
    "threshold",
    "validate_code",
]
