"""Multivariate higher-order chain rule over multiset indices."""

import json as _json

from ._bagchain import (
    DimensionMismatch,
    Error,
    InsufficientOrder,
    InvalidArgument,
    ParseError,
    bell,
    enumerate_bag,
    expand,
    extend_partitions,
    faa_di_bruno_1d,
    from_labels,
    labelings,
    partition_counts,
    partitions,
    stirling2,
    verify_composition,
)
from ._bagchain import _compose_json, _verify_json


def compose(f_jet, g_jet, order):
    """Derivative tensor of f o g up to `order`.

    Jets are the JSON wire forms as dicts or strings; f may be a bare tensor or
    a one-component map jet. Returns the tensor as a dict.
    """
    as_text = lambda j: j if isinstance(j, str) else _json.dumps(j)
    return _json.loads(_compose_json(as_text(f_jet), as_text(g_jet), order))


def verify(trials=100, seed=20140416, max_order=5, dims=(3, 3), mode="rational", max_cardinality=7):
    """Runs the verification suites; returns the summary dict."""
    d, c = dims
    return _json.loads(_verify_json(trials, seed, max_order, d, c, mode, max_cardinality))


__all__ = [
    "DimensionMismatch",
    "Error",
    "InsufficientOrder",
    "InvalidArgument",
    "ParseError",
    "bell",
    "compose",
    "enumerate_bag",
    "expand",
    "extend_partitions",
    "faa_di_bruno_1d",
    "from_labels",
    "labelings",
    "partition_counts",
    "partitions",
    "stirling2",
    "verify",
    "verify_composition",
]
