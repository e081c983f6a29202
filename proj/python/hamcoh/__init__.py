"""Chevalley-Eilenberg cohomology of formal Hamiltonian vector fields."""

import json

from ._core import (
    EmptyCohomology,
    ThresholdExceeded,
    UsageError,
    __version__,
    anomaly_target,
    betti_table,
    betti_table_relative,
    bracket,
    differential,
    model_basis,
    predicted_betti,
    representative,
    sector_dimension,
    sp_cohomology,
)
from ._core import verify as _verify


def verify(suite, **budget):
    """Run a verification suite; returns the report as a dict."""
    return json.loads(_verify(suite, **budget))


def nonzero_betti(table):
    """{degree: betti} for the nonzero rows of a table dict."""
    return {row["d"]: row["betti"] for row in table["rows"] if row["betti"]}


__all__ = [
    "EmptyCohomology",
    "ThresholdExceeded",
    "UsageError",
    "__version__",
    "anomaly_target",
    "betti_table",
    "betti_table_relative",
    "bracket",
    "differential",
    "model_basis",
    "nonzero_betti",
    "predicted_betti",
    "representative",
    "sector_dimension",
    "sp_cohomology",
    "verify",
]
