"""Comparison tolerances.

Two tolerances are used throughout:

``obj``
    per-object comparisons of Frobenius-Perron dimensions against integers or
    against each other (default ``1e-9``).
``agg``
    aggregated sums over many simples, FP index identities and rounding of
    character inner products (default ``1e-6``).

The environment variable ``FUSCAT_TOL`` overrides both, as two comma separated
reals, e.g. ``FUSCAT_TOL=1e-10,1e-7``.
"""
from __future__ import annotations

import os
from typing import NamedTuple

OBJ_TOL = 1e-9
AGG_TOL = 1e-6
#: stopping criterion of the Perron power iteration
PERRON_TOL = 1e-12
PERRON_MAX_ITER = 10**6


class Tolerances(NamedTuple):
    obj: float = OBJ_TOL
    agg: float = AGG_TOL


DEFAULT = Tolerances()


def from_env(environ=None) -> Tolerances:
    """Read ``FUSCAT_TOL`` or fall back to the defaults."""
    environ = os.environ if environ is None else environ
    raw = environ.get("FUSCAT_TOL")
    if not raw:
        return DEFAULT
    parts = [p.strip() for p in raw.split(",")]
    if len(parts) != 2:
        raise ValueError(f"FUSCAT_TOL must hold two comma separated reals, got {raw!r}")
    obj, agg = (float(p) for p in parts)
    if not (obj > 0 and agg > 0):
        raise ValueError("tolerances must be positive")
    return Tolerances(obj, agg)
