"""Exact system availability under per-component independence.

The computation conditions on the control subsystem first: controllers and
homing links are independent of every network component, so the probability
that the set of control-anchored forwarding nodes equals ``S`` is a small
discrete distribution, and for each ``S`` the network term is the probability
that all terminals share one component of the forwarding plane that contains
a node of ``S``.  Network terms are computed by pivotal decomposition over
component states with standard reductions (series, parallel, contraction of
certain edges, removal of irrelevant dangling parts) and two-sided bounds
that close most branches early.  Intermediate results are memoized on a
canonical form of the residual network, so repeated evaluations that share
structure — different anchor sets, parameter sweeps that only rescale
controller availabilities — reuse each other's work.

``evaluate_bruteforce`` enumerates all component-state combinations through
the batch predicate kernel instead; it shares none of the factoring code and
serves as an independent cross-check for small instances.
"""

from __future__ import annotations

import math

import numpy as np

from ..topology import ACCESS, CONTROLLER, FORWARDING, Topology
from . import _backend
from .predicate import EvaluationError, check_availability_map, check_mode, compile_problem

BRUTE_FORCE_LIMIT = 24

_MEMO: dict = {}
_MEMO_LIMIT = 500_000

# Residual-network representation during factoring:
#   verts: id -> (prob, tcount, anchor); prob None means certainly up
#   edges: (u, v) with u < v -> probability, parallels already merged
_Verts = dict
_Edges = dict


def clear_cache() -> None:
    """Drop memoized factoring results (mainly for benchmarks and tests)."""
    _MEMO.clear()


def _add_edge(edges: _Edges, u: str, v: str, q: float) -> None:
    if u == v:
        return
    e = (u, v) if u < v else (v, u)
    if e in edges:
        edges[e] = 1.0 - (1.0 - edges[e]) * (1.0 - q)
    else:
        edges[e] = q


def _merge(verts: _Verts, edges: _Edges, u: str, v: str) -> None:
    # Contract a certain edge between two certainly-up vertices.
    keep, drop = (u, v) if u < v else (v, u)
    _, tk, ak = verts[keep]
    _, td, ad = verts[drop]
    verts[keep] = (None, tk + td, ak or ad)
    del verts[drop]
    for e in sorted(e for e in edges if drop in e):
        q = edges.pop(e)
        other = e[0] if e[1] == drop else e[1]
        if other != keep:
            _add_edge(edges, keep, other, q)


def _contract_pass(verts: _Verts, edges: _Edges) -> bool:
    for e in sorted(edges):
        u, v = e
        if edges[e] >= 1.0 and verts[u][0] is None and verts[v][0] is None:
            _merge(verts, edges, u, v)
            return True
    return False


def _eliminate_pass(verts: _Verts, edges: _Edges) -> bool:
    incident: dict[str, list[tuple[str, str]]] = {x: [] for x in verts}
    for e in edges:
        incident[e[0]].append(e)
        incident[e[1]].append(e)
    for x in sorted(verts):
        p, tcount, anchor = verts[x]
        if tcount > 0 or anchor:
            continue
        inc = incident[x]
        if len(inc) == 0:
            del verts[x]
            return True
        if len(inc) == 1:
            del verts[x]
            del edges[inc[0]]
            return True
        if len(inc) == 2:
            e1, e2 = inc
            u = e1[0] if e1[1] == x else e1[1]
            v = e2[0] if e2[1] == x else e2[1]
            if u == v:
                continue
            px = 1.0 if p is None else p
            q = px * edges[e1] * edges[e2]
            del verts[x]
            del edges[e1]
            del edges[e2]
            _add_edge(edges, u, v, q)
            return True
    return False


def _simplify(verts: _Verts, edges: _Edges) -> None:
    while True:
        changed = False
        for e in sorted(edges):
            if edges[e] <= 0.0:
                del edges[e]
                changed = True
        for x in sorted(verts):
            p, tcount, anchor = verts[x]
            if p is None:
                continue
            if p <= 0.0:
                del verts[x]
                for e in sorted(e for e in edges if x in e):
                    del edges[e]
                changed = True
            elif p >= 1.0:
                verts[x] = (None, tcount, anchor)
                changed = True
        if _contract_pass(verts, edges):
            continue
        if _eliminate_pass(verts, edges):
            continue
        if not changed:
            return


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


def _bounds(verts: _Verts, edges: _Edges, require_anchor: bool) -> float | None:
    ids = sorted(verts)
    idx = {v: i for i, v in enumerate(ids)}
    uf = _UnionFind(len(ids))
    for u, v in edges:
        uf.union(idx[u], idx[v])
    troots = {uf.find(idx[x]) for x, (p, tc, an) in verts.items() if tc > 0}
    if not troots:
        return 1.0
    if len(troots) > 1:
        return 0.0  # separated even with every component up
    root = next(iter(troots))
    if require_anchor and not any(
        an and uf.find(idx[x]) == root for x, (p, tc, an) in verts.items()
    ):
        return 0.0
    total = sum(tc for p, tc, an in verts.values())
    for x, (p, tc, an) in verts.items():
        if tc == total and p is None and (an or not require_anchor):
            return 1.0  # all terminals already merged onto one certain, anchored vertex
    return None


def _pick_pivot(verts: _Verts, edges: _Edges):
    # Highest degree in the residual graph first, ties by id.  A node's
    # degree is its incident edge count; a link's is its two endpoints, so
    # undecided nodes of degree ≥ 2 come first and every later edge-up branch
    # contracts immediately, keeping the residual (and the memo) small.
    degree = {x: 0 for x in verts}
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    best = None
    for x in sorted(verts):
        p = verts[x][0]
        if p is not None and (best is None or degree[x] > best[3]):
            best = ("vertex", x, p, degree[x])
    for e in sorted(edges):
        if edges[e] < 1.0 and (best is None or 2 > best[3]):
            best = ("edge", e, edges[e], 2)
    if best is None:
        raise RuntimeError("residual network has no undecided component")
    return best[0], best[1], best[2]


def _canonical(verts: _Verts, edges: _Edges):
    vk = tuple(
        (x, -1.0 if p is None else p, tc, an)
        for x, (p, tc, an) in sorted(verts.items())
    )
    ek = tuple((u, v, edges[(u, v)]) for u, v in sorted(edges))
    return vk, ek


def _factor(verts: _Verts, edges: _Edges, require_anchor: bool) -> float:
    verts = dict(verts)
    edges = dict(edges)
    _simplify(verts, edges)
    bound = _bounds(verts, edges, require_anchor)
    if bound is not None:
        return bound
    key = (_canonical(verts, edges), require_anchor)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit

    kind, pivot, p = _pick_pivot(verts, edges)
    if kind == "vertex":
        _, tcount, anchor = verts[pivot]
        up_verts = dict(verts)
        up_verts[pivot] = (None, tcount, anchor)
        up = _factor(up_verts, edges, require_anchor)
        down_verts = dict(verts)
        del down_verts[pivot]
        down_edges = {e: q for e, q in edges.items() if pivot not in e}
        down = _factor(down_verts, down_edges, require_anchor)
    else:
        up_edges = dict(edges)
        up_edges[pivot] = 1.0
        up = _factor(verts, up_edges, require_anchor)
        down_edges = dict(edges)
        del down_edges[pivot]
        down = _factor(verts, down_edges, require_anchor)

    value = p * up + (1.0 - p) * down
    _MEMO[key] = value
    return value


def _network_state(t: Topology, availability: dict[str, float]):
    nodes = t.node_map()
    verts: _Verts = {}
    for n in t.nodes:
        if n.kind == FORWARDING:
            verts[n.id] = (availability[n.id], 0, False)
        elif n.kind == ACCESS:
            verts[n.id] = (None, 1, False)
    edges: _Edges = {}
    for l in sorted(t.links, key=lambda l: l.id):
        if CONTROLLER in (nodes[l.a].kind, nodes[l.b].kind):
            continue
        _add_edge(edges, l.a, l.b, 1.0 if l.perfect else availability[l.id])
    return verts, edges


def _set_key(s: frozenset) -> tuple:
    return tuple(sorted(s))


def anchor_distribution(
    t: Topology, availability: dict[str, float]
) -> dict[frozenset, float]:
    """Distribution of the anchor set: forwarding nodes homed by an up
    controller over an up homing link.  Depends only on control components."""
    dist: dict[frozenset, float] = {frozenset(): 1.0}
    for c in sorted(t.controllers, key=lambda n: n.id):
        home = sorted(
            (l.id, l.b if l.a == c.id else l.a) for l in t.homing_links(c.id)
        )
        pc = availability[c.id]
        sub: dict[frozenset, float] = {frozenset(): 1.0 - pc}
        for mask in range(1 << len(home)):
            pr = pc
            anchored = set()
            for i, (lid, peer) in enumerate(home):
                if mask >> i & 1:
                    pr *= availability[lid]
                    anchored.add(peer)
                else:
                    pr *= 1.0 - availability[lid]
            fs = frozenset(anchored)
            sub[fs] = sub.get(fs, 0.0) + pr
        combined: dict[frozenset, float] = {}
        for s1, p1 in sorted(dist.items(), key=lambda kv: _set_key(kv[0])):
            for s2, p2 in sorted(sub.items(), key=lambda kv: _set_key(kv[0])):
                u = s1 | s2
                combined[u] = combined.get(u, 0.0) + p1 * p2
        dist = combined
    return {s: w for s, w in dist.items() if w > 0.0}


def evaluate_exact(t: Topology, availability: dict[str, float], mode: str = "sdn") -> float:
    """System availability by exact factoring; deterministic to the bit."""
    check_mode(mode)
    check_availability_map(t, availability)
    if len(t.terminals) < 2:
        return 1.0
    if len(_MEMO) > _MEMO_LIMIT:
        _MEMO.clear()
    verts, edges = _network_state(t, availability)
    if mode == "traditional":
        return min(max(_factor(verts, edges, False), 0.0), 1.0)
    total = 0.0
    for anchors, weight in sorted(
        anchor_distribution(t, availability).items(), key=lambda kv: _set_key(kv[0])
    ):
        if not anchors or weight <= 0.0:
            continue  # empty anchor set can never satisfy the sdn criterion
        flagged = {
            x: (p, tc, an or x in anchors) for x, (p, tc, an) in verts.items()
        }
        total += weight * _factor(flagged, edges, True)
    return min(max(total, 0.0), 1.0)


def evaluate_bruteforce(
    t: Topology, availability: dict[str, float], mode: str = "sdn"
) -> float:
    """System availability by full state enumeration (independent cross-check).

    Guarded to at most ``BRUTE_FORCE_LIMIT`` failable components.
    """
    check_mode(mode)
    problem = compile_problem(t)
    avail = problem.availability_vector(availability)
    n = problem.n_components
    if n > BRUTE_FORCE_LIMIT:
        raise EvaluationError(
            f"brute force over {n} failable components exceeds the {BRUTE_FORCE_LIMIT}-component guard"
        )
    require_anchor = mode == "sdn"
    total = 1 << n
    chunk = 1 << 16
    bits = np.arange(n, dtype=np.uint64)
    partials = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        statuses = ((idx[:, None] >> bits[None, :]) & np.uint64(1)).astype(np.uint8)
        up = _backend.batch_is_operational(problem, statuses, require_anchor).astype(bool)
        pr = np.where(statuses.astype(bool), avail[None, :], 1.0 - avail[None, :]).prod(axis=1)
        partials.append(float(pr[up].sum()))
    return min(max(math.fsum(partials), 0.0), 1.0)
