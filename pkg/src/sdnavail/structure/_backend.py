"""Selection between the compiled predicate kernel and the pure fallback.

The compiled extension is preferred when importable; setting the environment
variable ``SDNAVAIL_PURE`` to a non-empty value forces the fallback.  Both
kernels implement the same contract and produce identical outputs for
identical inputs, which the test suite asserts byte-for-byte.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py
from .predicate import CompiledProblem

_core = None
if not os.environ.get("SDNAVAIL_PURE"):
    try:
        from .. import _core  # type: ignore[no-redef]
    except ImportError:
        _core = None

BACKEND = "compiled" if _core is not None else "pure-python"


def backend_name() -> str:
    """Name of the active kernel, 'compiled' or 'pure-python'."""
    return BACKEND


def batch_is_operational(
    problem: CompiledProblem, statuses: np.ndarray, require_anchor: bool
) -> np.ndarray:
    """Evaluate the up predicate for every row of a uint8 status matrix."""
    if _core is None:
        return _kernels_py.batch_is_operational(problem, statuses, require_anchor)
    statuses = np.ascontiguousarray(statuses, dtype=np.uint8)
    if statuses.ndim != 2 or statuses.shape[1] != problem.n_components:
        raise ValueError(
            f"status matrix must be (batch, {problem.n_components}), got {statuses.shape}"
        )
    return _core.batch_is_operational_arrays(
        statuses,
        problem.vertex_comp,
        problem.edges_u,
        problem.edges_v,
        problem.edges_comp,
        problem.attach_term,
        problem.attach_node,
        problem.terminals,
        problem.ctrl_comp,
        problem.homing_offsets,
        problem.homing_comp,
        problem.homing_vertex,
        bool(require_anchor),
    )
