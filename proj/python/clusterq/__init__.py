"""Exact cluster algebra engine for valued quivers."""

import json

from ._clusterq import (  # noqa: F401
    Quiver,
    Seed,
    ValidationError,
    catalog_names,
    class_size,
    cluster_variables,
)
from ._clusterq import handle as _handle

__all__ = [
    "Quiver",
    "Seed",
    "ValidationError",
    "catalog_names",
    "class_size",
    "cluster_variables",
    "call",
]


def call(op, request):
    """Run a service operation (as exposed over HTTP) on a request dict."""
    return json.loads(_handle(op, json.dumps(request)))
