"""Classical and refined Hoelder bounds for isotonic linear functionals."""

import json as _json

from ._core import (
    BoundReport,
    ChainReport,
    Functional,
    HoldrefError,
    IndexGrid,
    IndexRange,
    Interval,
    Partition,
    QuadratureRule,
    Rectangle,
    __version__,
    classical_holder,
    conjugate_of,
    corner_bound_values,
    corner_bounds,
    fuzz_chain,
    hh_identity,
    improved_holder,
    integrate,
    kernel_moment,
    reversed_holder,
    verify_chain,
    young_gap,
)
from ._core import run as _run


def run(command, config, format="csv"):
    """Run a CLI command on a config dict; returns (exit_code, report, diagnostics)."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _run(command, config, format)


__all__ = [name for name in dir() if not name.startswith("_")]
