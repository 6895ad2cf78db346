"""Backbone builders, the eight controller cases, validation, file round-trips."""

import pytest

from sdnavail.topology import (
    Link,
    Node,
    Topology,
    TopologyError,
    apply_case,
    backbone_with_placement,
    build_reference_backbone,
    case_topology,
    parse_topology,
    reference_backbone,
    serialize,
    validate,
)

# controller count and homing width per case
CASE_CONTROLLERS = {1: 1, 2: 2, 3: 2, 4: 2, 5: 2, 6: 3, 7: 4, 8: 1}
CASE_HOMING = {1: 1, 2: 1, 3: 2, 4: 3, 5: 4, 8: 2}


def test_reference_counts():
    t = reference_backbone()
    assert len(t.forwarding_nodes) == 10
    assert len(t.controllers) == 2
    assert len(t.terminals) == 4
    assert len(t.nodes) == 16
    assert len(t.links) == 29
    assert len(t.failable_ids()) == 31


def test_reference_is_valid():
    assert validate(reference_backbone()) == []


def test_reference_alias():
    assert build_reference_backbone() == reference_backbone()


def test_failable_ids_sorted_and_exclude_perfect():
    t = reference_backbone()
    ids = t.failable_ids()
    assert list(ids) == sorted(ids)
    terminal_ids = {n.id for n in t.terminals}
    perfect = {l.id for l in t.links if l.perfect}
    assert not terminal_ids & set(ids)
    assert not perfect & set(ids)


def test_oslo_terminal_covers_four_nodes():
    t = reference_backbone()
    attachments = [l for l in t.links if "T_OSL" in (l.a, l.b)]
    assert len(attachments) == 4
    assert all(l.perfect for l in attachments)


@pytest.mark.parametrize("case", sorted(CASE_CONTROLLERS))
def test_case_controller_counts(case):
    t = case_topology(case)
    assert validate(t) == []
    assert len(t.controllers) == CASE_CONTROLLERS[case]
    for c in t.controllers:
        width = CASE_HOMING.get(case, 2)
        assert len(t.homing_links(c.id)) == width


def test_case3_is_reference():
    assert case_topology(3) == reference_backbone()


@pytest.mark.parametrize("case", sorted(CASE_CONTROLLERS))
def test_cases_share_forwarding_plane(case):
    ref = reference_backbone()
    t = case_topology(case)
    plane = lambda top: {n for n in top.nodes if n.kind != "ctrl"}
    assert plane(t) == plane(ref)
    ctrl_ids = {n.id for n in t.controllers} | {n.id for n in ref.controllers}
    fixed = lambda top: {l for l in top.links if l.a not in ctrl_ids and l.b not in ctrl_ids}
    assert fixed(t) == fixed(ref)


def test_case_link_nesting():
    links = {c: {l.id for l in case_topology(c).links} for c in (3, 4, 5, 6, 7)}
    assert links[3] < links[4] < links[5]
    assert links[3] < links[6] < links[7]


def test_apply_case_identity_and_determinism():
    ref = reference_backbone()
    assert apply_case(ref, 3) == ref
    assert apply_case(ref, 7) == apply_case(ref, 7)
    # base is not mutated
    before = (ref.nodes, ref.links)
    apply_case(ref, 1)
    assert (ref.nodes, ref.links) == before


def test_apply_case_rejects_other_bases():
    with pytest.raises(TopologyError, match="reference backbone"):
        apply_case(case_topology(1), 3)


@pytest.mark.parametrize("case", [0, 9, -1])
def test_invalid_case_ids(case):
    with pytest.raises(TopologyError, match=r"valid range 1\.\.8"):
        case_topology(case)


def test_placements():
    for a, b in (("TRD", "OSL1"), ("BRG", "STV"), ("BRG", "TRD"), ("STV", "OSL1")):
        t = backbone_with_placement(a, b)
        assert validate(t) == []
        assert {l.b for l in t.homing_links("SC1")} == {f"{a}_1", f"{b}_1"}
    assert backbone_with_placement("TRD", "OSL1") == reference_backbone()
    with pytest.raises(TopologyError, match="unknown node-pair group"):
        backbone_with_placement("TRD", "XXX")
    with pytest.raises(TopologyError, match="must differ"):
        backbone_with_placement("TRD", "TRD")


def test_serialize_parse_round_trip():
    for t in (reference_backbone(), case_topology(7), case_topology(8)):
        assert parse_topology(serialize(t)) == t


def test_parse_unknown_node_in_link():
    text = "node A C1 fwd\nnode B C1 fwd\nlink L1 A X_9\n"
    with pytest.raises(TopologyError, match="X_9"):
        parse_topology(text)


def test_parse_empty_document():
    with pytest.raises(TopologyError, match="no nodes"):
        parse_topology("# only a comment\n")


def test_parse_reports_line_numbers():
    with pytest.raises(TopologyError, match="line 2"):
        parse_topology("node A C1 fwd\nnode B C1\n")
    with pytest.raises(TopologyError, match="unknown node kind"):
        parse_topology("node A C1 widget\n")
    with pytest.raises(TopologyError, match="unknown directive"):
        parse_topology("node A C1 fwd\nedge L A A\n")


def _with_extra_link(t: Topology, link: Link) -> Topology:
    return Topology(t.nodes, t.links + (link,))


def test_validate_controller_to_controller_link():
    t = _with_extra_link(reference_backbone(), Link("L_BAD", "SC1", "SC2"))
    assert any("controller" in v and "non-forwarding" in v for v in validate(t))


def test_validate_terminal_missing_attachment():
    ref = reference_backbone()
    pruned = tuple(l for l in ref.links if l.id != "A_T_OSL_OSL2_2")
    bad = Topology(ref.nodes, pruned)
    assert any("must attach to all" in v and "OSL2_2" in v for v in validate(bad))


def test_validate_perfect_flags():
    ref = reference_backbone()
    # backbone link marked perfect
    links = tuple(
        Link(l.id, l.a, l.b, perfect=True) if l.id == "L_BRG_1_BRG_2" else l for l in ref.links
    )
    assert any("cannot be perfect" in v for v in validate(Topology(ref.nodes, links)))
    # terminal attachment stripped of the perfect flag
    links = tuple(
        Link(l.id, l.a, l.b, perfect=False) if l.id == "A_T_BRG_BRG_1" else l for l in ref.links
    )
    assert any("must be perfect" in v for v in validate(Topology(ref.nodes, links)))


def test_validate_duplicate_ids_and_loops():
    n = Node("A", "C1", "fwd")
    t = Topology((n, Node("A", "C1", "fwd")), ())
    assert any("duplicate node id" in v for v in validate(t))
    t = Topology((n, Node("B", "C1", "fwd")), (Link("L", "A", "A"),))
    assert any("endpoints must differ" in v for v in validate(t))


def test_validate_disconnected():
    t = Topology(
        (Node("A", "C1", "fwd"), Node("B", "C2", "fwd"), Node("T_C1", "C1", "acc"),
         Node("T_C2", "C2", "acc")),
        (Link("A_T_C1_A", "T_C1", "A", perfect=True), Link("A_T_C2_B", "T_C2", "B", perfect=True)),
    )
    assert any("disconnected" in v for v in validate(t))


def test_homing_links_filter():
    t = reference_backbone()
    assert len(t.homing_links()) == 4
    sc1 = t.homing_links("SC1")
    assert sorted((l.a, l.b) for l in sc1) == [("SC1", "OSL1_1"), ("SC1", "TRD_1")]
