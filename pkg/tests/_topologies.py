"""Shared reduced topologies for the test suite.

The full backbone has 31 failable components — beyond the brute-force guard —
so oracle-agreement and ordering tests run on reduced variants that keep the
structural features (ring backbone, per-city terminals, controller homing)
at enumerable size.
"""

from __future__ import annotations

import numpy as np

from sdnavail.topology import Link, Node, Topology, validate

# Single-replica analogue of the backbone: one forwarding node per city
# group, the {BRG, STV, OSL1, TRD} ring, and the same eight controller
# homing variants collapsed onto the single replicas.  Case analogues keep
# the nesting relations of the full study (3⊂4⊂5, 6⊂7, 8⊂3).
_RING = (("BRG", "STV"), ("STV", "OSL1"), ("OSL1", "TRD"), ("TRD", "BRG"))

REDUCED_CASE_HOMING = {
    1: {"SC1": ("OSL1",)},
    2: {"SC1": ("TRD",), "SC2": ("OSL1",)},
    3: {"SC1": ("TRD", "OSL1"), "SC2": ("TRD", "OSL1")},
    4: {"SC1": ("TRD", "OSL1", "BRG"), "SC2": ("TRD", "OSL1", "BRG")},
    5: {
        "SC1": ("TRD", "OSL1", "BRG", "STV"),
        "SC2": ("TRD", "OSL1", "BRG", "STV"),
    },
    6: {"SC1": ("TRD", "OSL1"), "SC2": ("TRD", "OSL1"), "SC3": ("BRG",)},
    7: {
        "SC1": ("TRD", "OSL1"),
        "SC2": ("TRD", "OSL1"),
        "SC3": ("BRG",),
        "SC4": ("STV",),
    },
    8: {"SC1": ("TRD", "OSL1")},
}


def reduced_case(case: int) -> Topology:
    homing = REDUCED_CASE_HOMING[case]
    cities = ("BRG", "STV", "TRD", "OSL1")
    nodes = [Node(c, c, "fwd") for c in cities]
    nodes += [Node(c, "-", "ctrl") for c in sorted(homing)]
    nodes += [Node(f"T_{c}", c, "acc") for c in cities]
    links = [Link(f"L_{a}_{b}", a, b, False) for a, b in _RING]
    links += [Link(f"A_T_{c}_{c}", f"T_{c}", c, True) for c in cities]
    for ctrl in sorted(homing):
        links += [Link(f"L_{ctrl}_{n}", ctrl, n, False) for n in homing[ctrl]]
    t = Topology(tuple(nodes), tuple(links))
    assert validate(t) == []
    return t


def series_toy() -> Topology:
    return Topology(
        nodes=(
            Node("A", "X", "fwd"),
            Node("B", "Y", "fwd"),
            Node("T_X", "X", "acc"),
            Node("T_Y", "Y", "acc"),
        ),
        links=(
            Link("L_AB", "A", "B", False),
            Link("A_T_X_A", "T_X", "A", True),
            Link("A_T_Y_B", "T_Y", "B", True),
        ),
    )


def parallel_toy() -> Topology:
    return Topology(
        nodes=(
            Node("A", "X", "fwd"),
            Node("B", "Y", "fwd"),
            Node("T_X", "X", "acc"),
            Node("T_Y", "Y", "acc"),
        ),
        links=(
            Link("L1", "A", "B", False),
            Link("L2", "A", "B", False),
            Link("A_T_X_A", "T_X", "A", True),
            Link("A_T_Y_B", "T_Y", "B", True),
        ),
    )


def bridge_network() -> Topology:
    """Classic bridge with parallel rungs: 4 forwarding nodes, 8 links,
    12 failable components — small enough for exhaustive enumeration but not
    series-parallel reducible."""
    nodes = (
        Node("a", "P", "fwd"),
        Node("b", "Q", "fwd"),
        Node("s", "S", "fwd"),
        Node("t", "T", "fwd"),
        Node("T_S", "S", "acc"),
        Node("T_T", "T", "acc"),
    )
    links = (
        Link("L_sa_1", "s", "a", False),
        Link("L_sa_2", "s", "a", False),
        Link("L_sb", "s", "b", False),
        Link("L_ab_1", "a", "b", False),
        Link("L_ab_2", "a", "b", False),
        Link("L_at", "a", "t", False),
        Link("L_bt_1", "b", "t", False),
        Link("L_bt_2", "b", "t", False),
        Link("A_T_S_s", "T_S", "s", True),
        Link("A_T_T_t", "T_T", "t", True),
    )
    t = Topology(nodes, links)
    assert validate(t) == []
    return t


def random_availability(t: Topology, rng: np.random.Generator, low=0.0, high=1.0):
    ids = t.failable_ids()
    values = rng.uniform(low, high, size=len(ids))
    return dict(zip(ids, (float(v) for v in values)))


def class_uniform_availability(t: Topology, rng: np.random.Generator, low=0.5, high=1.0):
    """One availability per element class; equal for every class member."""
    kinds = {n.id: n.kind for n in t.nodes}
    a_node, a_ctrl, a_link = (float(v) for v in rng.uniform(low, high, size=3))
    amap = {}
    for c in t.failable_ids():
        if c in kinds:
            amap[c] = a_ctrl if kinds[c] == "ctrl" else a_node
        else:
            amap[c] = a_link
    return amap


def shared_union_availability(ts, rng: np.random.Generator, low=0.0, high=1.0):
    """One map covering the union of several topologies' components, so
    shared ids get shared values; restrict per topology before evaluating."""
    union = sorted(set().union(*[set(t.failable_ids()) for t in ts]))
    values = rng.uniform(low, high, size=len(union))
    full = dict(zip(union, (float(v) for v in values)))
    return [{c: full[c] for c in t.failable_ids()} for t in ts]
