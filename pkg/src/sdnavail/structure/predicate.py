"""The system-up predicate and its array-compiled form.

A status assignment maps every failable component id to up/down.  The system
criterion is:

* traditional mode: all access terminals lie in one connected component of
  the up-graph restricted to forwarding nodes, terminals and the links among
  them (controllers and homing links are ignored);
* sdn mode: additionally, forwarding along that path requires control; an up
  forwarding node is controlled when it reaches at least one up controller in
  the full up-graph, and the terminals must be mutually connected through
  controlled forwarding nodes only.

``is_operational`` below implements that criterion literally and serves as
the reference oracle.  ``compile_problem`` lowers a topology to flat arrays
for the batched evaluators, which use an equivalent single-pass formulation:
with at least two terminals, the terminals must share one component of the
forwarding-plane up-graph and some up controller must have an up homing link
to an up forwarding node inside that component.  (Any path between terminals
crosses a forwarding node, and any control path leaving the component meets
its first controller on a direct homing link from the component, so the two
formulations agree; the test suite cross-checks them exhaustively.)

With fewer than two terminals the criterion is vacuous and the system counts
as up.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..topology import ACCESS, CONTROLLER, FORWARDING, Topology

MODES = ("sdn", "traditional")


class EvaluationError(ValueError):
    """Inputs do not match the topology under evaluation."""


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise EvaluationError(f"unknown mode {mode!r}, valid: {', '.join(MODES)}")
    return mode


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def check_status(t: Topology, status: dict[str, bool]) -> None:
    expected = set(t.failable_ids())
    got = set(status)
    if got != expected:
        missing = sorted(expected - got)
        extra = sorted(got - expected)
        parts = []
        if missing:
            parts.append("missing: " + ", ".join(missing))
        if extra:
            parts.append("unexpected: " + ", ".join(extra))
        raise EvaluationError("status assignment does not match topology (" + "; ".join(parts) + ")")


def is_operational(t: Topology, status: dict[str, bool], mode: str = "sdn") -> bool:
    """Evaluate the system-up criterion for one explicit status assignment."""
    check_mode(mode)
    check_status(t, status)

    def up(component_id: str, perfect: bool = False) -> bool:
        return True if perfect else status[component_id]

    nodes = t.node_map()
    node_up = {
        n.id: (n.kind == ACCESS) or status[n.id] for n in t.nodes
    }
    terminals = [n.id for n in t.terminals]
    if len(terminals) < 2:
        return True

    index = {n.id: i for i, n in enumerate(t.nodes)}

    # Connected components of the full up-graph.
    full = _UnionFind(len(t.nodes))
    for l in t.links:
        if up(l.id, l.perfect) and node_up[l.a] and node_up[l.b]:
            full.union(index[l.a], index[l.b])

    if mode == "sdn":
        controller_roots = {
            full.find(index[n.id]) for n in t.controllers if node_up[n.id]
        }
        controlled = {
            n.id
            for n in t.forwarding_nodes
            if node_up[n.id] and full.find(index[n.id]) in controller_roots
        }
    else:
        controlled = {n.id for n in t.forwarding_nodes if node_up[n.id]}

    # Terminal connectivity through (controlled) forwarding nodes only.
    plane = _UnionFind(len(t.nodes))
    for l in t.links:
        if not up(l.id, l.perfect):
            continue
        ka, kb = nodes[l.a].kind, nodes[l.b].kind
        if CONTROLLER in (ka, kb):
            continue
        ok_a = l.a in controlled if ka == FORWARDING else ka == ACCESS
        ok_b = l.b in controlled if kb == FORWARDING else kb == ACCESS
        if ok_a and ok_b:
            plane.union(index[l.a], index[l.b])

    root = plane.find(index[terminals[0]])
    return all(plane.find(index[term]) == root for term in terminals[1:])


@dataclass(frozen=True)
class CompiledProblem:
    """Array form of a topology for the batched evaluators.

    Vertices are the forwarding nodes and terminals of the forwarding plane;
    components are the failable elements in sorted-id order, which is also
    the column order of status matrices and availability vectors.
    """

    topology: Topology
    component_ids: tuple[str, ...]
    vertex_ids: tuple[str, ...]
    vertex_comp: np.ndarray  # component index per vertex, -1 for terminals
    edges_u: np.ndarray
    edges_v: np.ndarray
    edges_comp: np.ndarray
    attach_term: np.ndarray  # terminal vertex of each perfect attachment
    attach_node: np.ndarray  # forwarding vertex of each perfect attachment
    terminals: np.ndarray
    ctrl_comp: np.ndarray  # component index per controller
    homing_offsets: np.ndarray  # CSR offsets into the two arrays below
    homing_comp: np.ndarray  # homing-link component index
    homing_vertex: np.ndarray  # homed forwarding vertex

    @property
    def n_components(self) -> int:
        return len(self.component_ids)

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_ids)

    def component_index(self, component_id: str) -> int:
        return self.component_ids.index(component_id)

    def availability_vector(self, availability: dict[str, float]) -> np.ndarray:
        check_availability_map(self.topology, availability)
        return np.array([availability[c] for c in self.component_ids], dtype=np.float64)


def check_availability_map(t: Topology, availability: dict[str, float]) -> None:
    expected = set(t.failable_ids())
    if set(availability) != expected:
        missing = sorted(expected - set(availability))
        extra = sorted(set(availability) - expected)
        parts = []
        if missing:
            parts.append("missing: " + ", ".join(missing))
        if extra:
            parts.append("unexpected: " + ", ".join(extra))
        raise EvaluationError("availability map does not match topology (" + "; ".join(parts) + ")")
    bad = sorted(c for c, a in availability.items() if not 0.0 <= a <= 1.0)
    if bad:
        raise EvaluationError("availability outside [0, 1] for: " + ", ".join(bad))


def compile_problem(t: Topology) -> CompiledProblem:
    component_ids = t.failable_ids()
    comp_index = {c: i for i, c in enumerate(component_ids)}
    nodes = t.node_map()

    vertex_ids = tuple(
        sorted(n.id for n in t.nodes if n.kind in (FORWARDING, ACCESS))
    )
    vindex = {v: i for i, v in enumerate(vertex_ids)}
    vertex_comp = np.array(
        [comp_index[v] if nodes[v].kind == FORWARDING else -1 for v in vertex_ids],
        dtype=np.int32,
    )
    terminals = np.array(
        [vindex[n.id] for n in sorted(t.terminals, key=lambda n: n.id)], dtype=np.int32
    )

    edges_u, edges_v, edges_comp = [], [], []
    attach_term, attach_node = [], []
    homing: dict[str, list[tuple[int, int]]] = {c.id: [] for c in t.controllers}
    for l in sorted(t.links, key=lambda l: l.id):
        ka, kb = nodes[l.a].kind, nodes[l.b].kind
        if CONTROLLER in (ka, kb):
            ctrl, peer = (l.a, l.b) if ka == CONTROLLER else (l.b, l.a)
            homing[ctrl].append((comp_index[l.id], vindex[peer]))
        elif ACCESS in (ka, kb):
            term, peer = (l.a, l.b) if ka == ACCESS else (l.b, l.a)
            attach_term.append(vindex[term])
            attach_node.append(vindex[peer])
        else:
            edges_u.append(vindex[l.a])
            edges_v.append(vindex[l.b])
            edges_comp.append(comp_index[l.id])

    ctrl_ids = sorted(homing)
    ctrl_comp = np.array([comp_index[c] for c in ctrl_ids], dtype=np.int32)
    offsets = [0]
    homing_comp: list[int] = []
    homing_vertex: list[int] = []
    for c in ctrl_ids:
        for comp, vtx in homing[c]:
            homing_comp.append(comp)
            homing_vertex.append(vtx)
        offsets.append(len(homing_comp))

    as32 = lambda xs: np.array(xs, dtype=np.int32)
    return CompiledProblem(
        topology=t,
        component_ids=component_ids,
        vertex_ids=vertex_ids,
        vertex_comp=vertex_comp,
        edges_u=as32(edges_u),
        edges_v=as32(edges_v),
        edges_comp=as32(edges_comp),
        attach_term=as32(attach_term),
        attach_node=as32(attach_node),
        terminals=terminals,
        ctrl_comp=ctrl_comp,
        homing_offsets=as32(offsets),
        homing_comp=as32(homing_comp),
        homing_vertex=as32(homing_vertex),
    )


def status_matrix(problem: CompiledProblem, status: dict[str, bool]) -> np.ndarray:
    """One status assignment as a single-row status matrix."""
    check_status(problem.topology, status)
    row = np.array([[status[c] for c in problem.component_ids]], dtype=np.uint8)
    return row
