"""Resource caps.

Desk-scale guardrails: constructions refuse to allocate structure tensors
above a dimension cap (the tensors grow cubically), and brute-force
enumerations refuse above a candidate cap.  The dimension cap can be raised
through the DIACAT_MAX_DIM environment variable.
"""

from __future__ import annotations

import os

from .errors import ResourceCapExceeded
from .fields import Field, Rationals

DEFAULT_MAX_DIM_FP = 512
DEFAULT_MAX_DIM_Q = 128
DEFAULT_SEARCH_CAP = 2 ** 20


def max_dim(field: Field) -> int:
    env = os.environ.get("DIACAT_MAX_DIM")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass  # ignore garbage, fall through to defaults
    if isinstance(field, Rationals):
        return DEFAULT_MAX_DIM_Q
    return DEFAULT_MAX_DIM_FP


def guard_dim(field: Field, dim: int):
    cap = max_dim(field)
    if dim > cap:
        raise ResourceCapExceeded(dim, cap, field.name)
