"""Minimal cut set enumeration for the system-up predicate."""

from __future__ import annotations

import itertools

import numpy as np

from ..topology import Topology
from . import _backend
from .predicate import EvaluationError, check_mode, compile_problem

_ROW_CHUNK = 1 << 16


def minimal_cut_sets(
    t: Topology, mode: str = "sdn", max_order: int = 2
) -> list[frozenset[str]]:
    """All minimal component sets of size ≤ max_order whose joint failure
    (everything else up) brings the system down.

    Returned in deterministic order: by size, then lexicographically by the
    sorted component ids.  Minimality follows from enumerating sizes in
    increasing order and pruning supersets of cuts already found.
    """
    check_mode(mode)
    if not isinstance(max_order, int) or max_order < 1:
        raise EvaluationError(f"max_order must be a positive integer, got {max_order!r}")
    problem = compile_problem(t)
    ids = problem.component_ids
    n = problem.n_components
    require_anchor = mode == "sdn"

    found: list[set[int]] = []
    result: list[frozenset[str]] = []
    for order in range(1, min(max_order, n) + 1):
        candidates = [
            combo
            for combo in itertools.combinations(range(n), order)
            if not any(cut <= set(combo) for cut in found)
        ]
        for start in range(0, len(candidates), _ROW_CHUNK):
            chunk = candidates[start : start + _ROW_CHUNK]
            rows = np.ones((len(chunk), n), dtype=np.uint8)
            for r, combo in enumerate(chunk):
                rows[r, list(combo)] = 0
            up = _backend.batch_is_operational(problem, rows, require_anchor)
            for r, combo in enumerate(chunk):
                if not up[r]:
                    found.append(set(combo))
                    result.append(frozenset(ids[i] for i in combo))
    return result
