"""Network topology model: forwarding nodes, controllers, access terminals, links.

A topology is an immutable value.  Forwarding nodes carry a city label and are
grouped in duplicated pairs (``BRG_1``/``BRG_2`` and so on); every city has one
access terminal that is attached to all forwarding nodes of that city through
perfect (never-failing) links.  Controllers attach to forwarding nodes through
failable homing links.  Everything except access terminals and their
attachment links can fail.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

FORWARDING = "fwd"
CONTROLLER = "ctrl"
ACCESS = "acc"

_KINDS = (FORWARDING, CONTROLLER, ACCESS)

#: Duplicated node-pair groups of the reference backbone, in ring order.
PAIR_GROUPS = ("BRG", "STV", "TRD", "OSL1", "OSL2")

#: City of each pair group (Oslo owns two pair groups).
_CITY_OF_GROUP = {
    "BRG": "BRG",
    "STV": "STV",
    "TRD": "TRD",
    "OSL1": "OSL",
    "OSL2": "OSL",
}

CASE_IDS = tuple(range(1, 9))


class TopologyError(ValueError):
    """Raised for malformed topology documents or invariant violations."""


@dataclass(frozen=True)
class Node:
    id: str
    city: str
    kind: str


@dataclass(frozen=True)
class Link:
    id: str
    a: str
    b: str
    perfect: bool = False

    @property
    def ends(self) -> tuple[str, str]:
        return (self.a, self.b)


@dataclass(frozen=True)
class Topology:
    """Immutable network graph; construct through the builders or the parser."""

    nodes: tuple[Node, ...]
    links: tuple[Link, ...]

    def node_map(self) -> dict[str, Node]:
        return {n.id: n for n in self.nodes}

    def nodes_of_kind(self, kind: str) -> tuple[Node, ...]:
        return tuple(n for n in self.nodes if n.kind == kind)

    @property
    def forwarding_nodes(self) -> tuple[Node, ...]:
        return self.nodes_of_kind(FORWARDING)

    @property
    def controllers(self) -> tuple[Node, ...]:
        return self.nodes_of_kind(CONTROLLER)

    @property
    def terminals(self) -> tuple[Node, ...]:
        return self.nodes_of_kind(ACCESS)

    def homing_links(self, controller_id: str | None = None) -> tuple[Link, ...]:
        """Failable links attaching controllers to forwarding nodes."""
        ctrl = {n.id for n in self.controllers}
        if controller_id is not None:
            ctrl &= {controller_id}
        return tuple(l for l in self.links if l.a in ctrl or l.b in ctrl)

    def failable_ids(self) -> tuple[str, ...]:
        """All failable component ids (nodes and links), sorted."""
        ids = [n.id for n in self.nodes if n.kind != ACCESS]
        ids += [l.id for l in self.links if not l.perfect]
        return tuple(sorted(ids))


def _has_duplicates(ids: Iterable[str]) -> set[str]:
    seen: set[str] = set()
    dups: set[str] = set()
    for i in ids:
        if i in seen:
            dups.add(i)
        seen.add(i)
    return dups


def validate(t: Topology) -> list[str]:
    """Check all topology invariants; return one message per violation."""
    problems: list[str] = []
    node_ids = [n.id for n in t.nodes]
    link_ids = [l.id for l in t.links]
    for dup in sorted(_has_duplicates(node_ids)):
        problems.append(f"duplicate node id {dup!r}")
    for dup in sorted(_has_duplicates(link_ids)):
        problems.append(f"duplicate link id {dup!r}")
    for dup in sorted(set(node_ids) & set(link_ids)):
        problems.append(f"id {dup!r} used for both a node and a link")

    nodes = t.node_map()
    for n in t.nodes:
        if n.kind not in _KINDS:
            problems.append(f"node {n.id!r} has unknown kind {n.kind!r}")

    for l in t.links:
        for end in l.ends:
            if end not in nodes:
                problems.append(f"link {l.id!r} references unknown node {end!r}")
        if l.a == l.b:
            problems.append(f"link {l.id!r} endpoints must differ")

    ok_links = [l for l in t.links if l.a in nodes and l.b in nodes and l.a != l.b]

    # Controllers attach only to forwarding nodes.
    for l in ok_links:
        kinds = {nodes[l.a].kind, nodes[l.b].kind}
        if CONTROLLER in kinds and kinds != {CONTROLLER, FORWARDING}:
            problems.append(f"link {l.id!r} attaches a controller to a non-forwarding node")

    # A controller needs at least one homing link and no duplicate attachments.
    adjacency: dict[str, list[Link]] = {n.id: [] for n in t.nodes}
    for l in ok_links:
        adjacency[l.a].append(l)
        adjacency[l.b].append(l)
    for c in t.controllers:
        peers = [l.b if l.a == c.id else l.a for l in adjacency[c.id]]
        if not peers:
            problems.append(f"controller {c.id!r} has no homing link")
        for dup in sorted(_has_duplicates(peers)):
            problems.append(f"controller {c.id!r} attached more than once to {dup!r}")

    # Terminals attach to every forwarding node of their city and nothing else.
    city_nodes: dict[str, set[str]] = {}
    for n in t.forwarding_nodes:
        city_nodes.setdefault(n.city, set()).add(n.id)
    for term in t.terminals:
        expected = city_nodes.get(term.city, set())
        attached = set()
        for l in adjacency[term.id]:
            peer = l.b if l.a == term.id else l.a
            attached.add(peer)
            if peer in nodes and nodes[peer].kind != FORWARDING:
                problems.append(f"terminal {term.id!r} attached to non-forwarding node {peer!r}")
        if not expected:
            problems.append(f"terminal {term.id!r} city {term.city!r} has no forwarding nodes")
        else:
            missing = expected - attached
            extra = {a for a in attached if a in nodes and nodes[a].kind == FORWARDING} - expected
            if missing:
                problems.append(
                    f"terminal {term.id!r} must attach to all {term.city!r} nodes, missing "
                    + ", ".join(sorted(missing))
                )
            if extra:
                problems.append(
                    f"terminal {term.id!r} attached outside its city: " + ", ".join(sorted(extra))
                )

    # Perfect flags: terminal attachments and nothing else.
    for l in ok_links:
        touches_terminal = ACCESS in (nodes[l.a].kind, nodes[l.b].kind)
        if touches_terminal and not l.perfect:
            problems.append(f"terminal attachment link {l.id!r} must be perfect")
        if not touches_terminal and l.perfect:
            problems.append(f"link {l.id!r} between failable components cannot be perfect")

    # All-up graph is connected.
    if t.nodes and not problems:
        seen = {t.nodes[0].id}
        frontier = [t.nodes[0].id]
        while frontier:
            v = frontier.pop()
            for l in adjacency[v]:
                peer = l.b if l.a == v else l.a
                if peer not in seen:
                    seen.add(peer)
                    frontier.append(peer)
        unreachable = sorted(set(node_ids) - seen)
        if unreachable:
            problems.append("all-up graph is disconnected, unreachable: " + ", ".join(unreachable))

    return problems


def _checked(t: Topology) -> Topology:
    problems = validate(t)
    if problems:
        raise TopologyError("; ".join(problems))
    return t


def _terminal_links(group_nodes: Mapping[str, Sequence[str]]) -> list[Link]:
    links = []
    for city, members in group_nodes.items():
        tid = f"T_{city}"
        for m in members:
            links.append(Link(f"A_{tid}_{m}", tid, m, perfect=True))
    return links


def _homing_link(controller: str, node: str) -> Link:
    return Link(f"L_{controller}_{node}", controller, node)


def build_backbone(homing: Mapping[str, Sequence[str]]) -> Topology:
    """Build the national backbone with an explicit controller homing map.

    ``homing`` maps controller id to the forwarding nodes it attaches to.
    The forwarding plane is always the same: duplicated node pairs ``X_1``,
    ``X_2`` for the five groups, a duplicated inter-city ring per replica
    plane, intra-pair links, and the Oslo-internal links; one access terminal
    per city attached to all of that city's nodes.
    """
    nodes = [Node(f"{g}_{i}", _CITY_OF_GROUP[g], FORWARDING) for g in PAIR_GROUPS for i in (1, 2)]
    cities: dict[str, list[str]] = {}
    for n in nodes:
        cities.setdefault(n.city, []).append(n.id)
    nodes += [Node(f"T_{c}", c, ACCESS) for c in sorted(cities)]

    links = [Link(f"L_{g}_1_{g}_2", f"{g}_1", f"{g}_2") for g in PAIR_GROUPS]
    for i in (1, 2):
        ring = [("BRG", "STV"), ("STV", "OSL2"), ("OSL1", "TRD"), ("TRD", "BRG")]
        links += [Link(f"L_{a}_{i}_{b}_{i}", f"{a}_{i}", f"{b}_{i}") for a, b in ring]
        links.append(Link(f"L_OSL1_{i}_OSL2_{i}", f"OSL1_{i}", f"OSL2_{i}"))
    links += _terminal_links(cities)

    node_ids = {n.id for n in nodes}
    for ctrl in sorted(homing):
        attachments = homing[ctrl]
        unknown = [a for a in attachments if a not in node_ids]
        if unknown:
            raise TopologyError(f"controller {ctrl!r} homed to unknown node {unknown[0]!r}")
        nodes.append(Node(ctrl, "-", CONTROLLER))
        links += [_homing_link(ctrl, a) for a in attachments]

    return _checked(Topology(tuple(nodes), tuple(links)))


def reference_backbone() -> Topology:
    """The default 10-node backbone with two dual-homed controllers."""
    return build_backbone({"SC1": ("TRD_1", "OSL1_1"), "SC2": ("TRD_2", "OSL1_2")})


#: Controller homing per case study; applied on top of the shared backbone.
_CASE_HOMING: dict[int, dict[str, tuple[str, ...]]] = {
    1: {"SC1": ("OSL1_2",)},
    2: {"SC1": ("TRD_2",), "SC2": ("OSL1_2",)},
    3: {"SC1": ("TRD_1", "OSL1_1"), "SC2": ("TRD_2", "OSL1_2")},
    4: {"SC1": ("TRD_1", "OSL1_1", "BRG_1"), "SC2": ("TRD_2", "OSL1_2", "BRG_2")},
    5: {
        "SC1": ("TRD_1", "OSL1_1", "BRG_1", "STV_1"),
        "SC2": ("TRD_2", "OSL1_2", "BRG_2", "STV_2"),
    },
    6: {
        "SC1": ("TRD_1", "OSL1_1"),
        "SC2": ("TRD_2", "OSL1_2"),
        "SC3": ("BRG_1", "BRG_2"),
    },
    7: {
        "SC1": ("TRD_1", "OSL1_1"),
        "SC2": ("TRD_2", "OSL1_2"),
        "SC3": ("BRG_1", "BRG_2"),
        "SC4": ("STV_1", "STV_2"),
    },
    8: {"SC1": ("TRD_1", "OSL1_1")},
}


def check_case_id(case: int) -> int:
    if case not in CASE_IDS:
        raise TopologyError(f"invalid case id {case!r}, valid range 1..8")
    return case


def apply_case(base: Topology, case: int) -> Topology:
    """Return the case-study variant of the reference backbone.

    ``base`` must be the reference backbone; the transformation swaps the
    controller deployment (count and homing) and leaves the forwarding plane
    untouched.
    """
    check_case_id(case)
    ref = reference_backbone()
    if set(base.nodes) != set(ref.nodes) or set(base.links) != set(ref.links):
        raise TopologyError("apply_case requires the reference backbone as base")
    return build_backbone(_CASE_HOMING[case])


def case_topology(case: int) -> Topology:
    """Shorthand for ``apply_case(reference_backbone(), case)``."""
    check_case_id(case)
    return build_backbone(_CASE_HOMING[case])


def backbone_with_placement(group_a: str, group_b: str) -> Topology:
    """Reference backbone with both controllers dual-homed to two pair groups.

    Controller ``SC1`` attaches to the replica-1 nodes of the two groups and
    ``SC2`` to the replica-2 nodes, mirroring the reference pattern.
    """
    for g in (group_a, group_b):
        if g not in PAIR_GROUPS:
            raise TopologyError(f"unknown node-pair group {g!r}, valid: {', '.join(PAIR_GROUPS)}")
    if group_a == group_b:
        raise TopologyError("placement groups must differ")
    return build_backbone(
        {"SC1": (f"{group_a}_1", f"{group_b}_1"), "SC2": (f"{group_a}_2", f"{group_b}_2")}
    )


def serialize(t: Topology) -> str:
    """Render a topology in the line-oriented file format."""
    out = ["# sdnavail topology"]
    for n in t.nodes:
        out.append(f"node {n.id} {n.city} {n.kind}")
    for l in t.links:
        suffix = " perfect" if l.perfect else ""
        out.append(f"link {l.id} {l.a} {l.b}{suffix}")
    return "\n".join(out) + "\n"


def parse(text: str) -> Topology:
    """Parse the line-oriented topology format and validate the result.

    Lines: ``node <id> <city> <kind>`` with kind in {fwd, ctrl, acc}, and
    ``link <id> <endpointA> <endpointB> [perfect]``.  ``#`` starts a comment;
    blank lines are ignored.
    """
    nodes: list[Node] = []
    links: list[Link] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "node":
            if len(fields) != 4:
                raise TopologyError(f"line {lineno}: expected 'node <id> <city> <kind>'")
            _, nid, city, kind = fields
            if kind not in _KINDS:
                raise TopologyError(f"line {lineno}: unknown node kind {kind!r}")
            nodes.append(Node(nid, city, kind))
        elif fields[0] == "link":
            if len(fields) == 5 and fields[4] == "perfect":
                perfect = True
            elif len(fields) == 4:
                perfect = False
            else:
                raise TopologyError(
                    f"line {lineno}: expected 'link <id> <endpointA> <endpointB> [perfect]'"
                )
            links.append(Link(fields[1], fields[2], fields[3], perfect))
        else:
            raise TopologyError(f"line {lineno}: unknown directive {fields[0]!r}")
    if not nodes:
        raise TopologyError("no nodes")
    return _checked(Topology(tuple(nodes), tuple(links)))


def load(path: str) -> Topology:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# canonical long names
build_reference_backbone = reference_backbone
parse_topology = parse
