"""Pure-numpy batch evaluation of the system-up predicate.

Fallback used when the compiled extension is unavailable.  Connectivity is
computed by iterated minimum-label propagation over the edge list, vectorized
across the whole batch; the loop runs per sweep and per edge, so the cost per
sample stays small for problem sizes in the tens of vertices.
"""

from __future__ import annotations

import numpy as np

from .predicate import CompiledProblem


def batch_is_operational(
    problem: CompiledProblem, statuses: np.ndarray, require_anchor: bool
) -> np.ndarray:
    """Evaluate the predicate for a (batch, n_components) uint8 status matrix.

    ``require_anchor`` selects sdn mode (terminal component must contain a
    forwarding node homed by an up controller over an up link); traditional
    mode passes False.  Returns a uint8 vector of length batch.
    """
    statuses = np.ascontiguousarray(statuses, dtype=np.uint8)
    b, ncomp = statuses.shape
    if ncomp != problem.n_components:
        raise ValueError(f"status matrix has {ncomp} columns, expected {problem.n_components}")
    nterm = len(problem.terminals)
    if nterm < 2:
        return np.ones(b, dtype=np.uint8)

    nv = problem.n_vertices
    up = statuses.astype(bool)

    vup = np.ones((b, nv), dtype=bool)
    failable = problem.vertex_comp >= 0
    vup[:, failable] = up[:, problem.vertex_comp[failable]]

    eu, ev = problem.edges_u, problem.edges_v
    eact = up[:, problem.edges_comp] & vup[:, eu] & vup[:, ev]
    aact = vup[:, problem.attach_node]

    # Minimum-label propagation to a fixpoint: every vertex ends up labeled
    # with the smallest vertex index of its connected component.
    labels = np.broadcast_to(np.arange(nv, dtype=np.int32), (b, nv)).copy()
    all_u = np.concatenate([eu, problem.attach_term])
    all_v = np.concatenate([ev, problem.attach_node])
    act = np.concatenate([eact, aact], axis=1)
    order = np.arange(len(all_u))
    for sweep in range(nv):
        changed = False
        sweep_order = order if sweep % 2 == 0 else order[::-1]
        for e in sweep_order:
            u, v = all_u[e], all_v[e]
            lu, lv = labels[:, u], labels[:, v]
            m = act[:, e]
            low = np.where(m & (lv < lu), lv, lu)
            if (low != lu).any():
                labels[:, u] = low
                changed = True
            low = np.where(m & (lu < lv), labels[:, u], lv)
            if (low != lv).any():
                labels[:, v] = low
                changed = True
        if not changed:
            break

    troot = labels[:, problem.terminals[0]]
    connected = np.ones(b, dtype=bool)
    for ti in problem.terminals[1:]:
        connected &= labels[:, ti] == troot

    if not require_anchor:
        return connected.astype(np.uint8)

    anchored = np.zeros(b, dtype=bool)
    off = problem.homing_offsets
    for ci in range(len(problem.ctrl_comp)):
        cup = up[:, problem.ctrl_comp[ci]]
        for h in range(off[ci], off[ci + 1]):
            vtx = problem.homing_vertex[h]
            anchored |= (
                cup
                & up[:, problem.homing_comp[h]]
                & vup[:, vtx]
                & (labels[:, vtx] == troot)
            )
    return (connected & anchored).astype(np.uint8)
